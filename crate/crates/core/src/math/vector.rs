use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Real Cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_complex(self) -> CVec3 {
        CVec3::new(
            Complex64::new(self.x, 0.0),
            Complex64::new(self.y, 0.0),
            Complex64::new(self.z, 0.0),
        )
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

/// Complex Cartesian 3-vector (fields, induced dipoles).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CVec3 {
    pub const fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Bilinear product `Σ aᵢbᵢ` without conjugation.
    pub fn dot(&self, other: &CVec3) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn conj(&self) -> CVec3 {
        CVec3::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    /// Hermitian product `Σ conj(aᵢ)bᵢ`.
    pub fn hdot(&self, other: &CVec3) -> Complex64 {
        self.conj().dot(other)
    }

    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> CVec3 {
        CVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(&self) -> bool {
        [self.x, self.y, self.z].iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<Complex64> for CVec3 {
    type Output = CVec3;
    fn mul(self, s: Complex64) -> CVec3 {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_hermitian_product_is_real_and_nonnegative() {
        let v = CVec3::new(
            Complex64::new(1.0, -2.0),
            Complex64::new(0.5, 3.0),
            Complex64::new(-1.5, 0.25),
        );
        let p = v.dot(&v.conj());
        assert_eq!(p.im, 0.0);
        assert!(p.re >= 0.0);
        assert!((p.re - v.norm().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn zero_vector_has_no_direction() {
        assert!(Vec3::ZERO.normalized().is_none());
        let u = Vec3::new(3.0, 0.0, 4.0).normalized().unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }
}
