use std::fmt::Write as _;

use super::CliError;

/// Table with `#` comment lines, one header row and numeric rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { comments: Vec::new(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Fails if any cell in a column other than `allowed_infinite` is non-finite.
    pub fn check_finite(&self, allowed_infinite: &[&str]) -> Result<(), CliError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (name, v) in self.header.iter().zip(row) {
                let tolerated = v.is_infinite() && allowed_infinite.contains(&name.as_str());
                if !v.is_finite() && !tolerated {
                    return Err(CliError::Numeric(format!("non-finite {name} = {v} in row {i}")));
                }
            }
        }
        Ok(())
    }

    /// LF-terminated text; numbers carry 16 significant digits.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.15e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_comment_header_and_rows() {
        let mut t = CsvTable::new(&["r", "U_re"]);
        t.comment("model=test");
        t.push(vec![0.5, -1.0 / 3.0]);
        let s = t.render();
        assert_eq!(s, "# model=test\nr,U_re\n5.000000000000000e-1,-3.333333333333333e-1\n");
    }

    #[test]
    fn non_finite_cells() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.push(vec![1.0, f64::NEG_INFINITY]);
        assert!(t.check_finite(&["b"]).is_ok());
        assert_eq!(t.check_finite(&[]).unwrap_err().exit_code(), 2);
    }
}
