//! Classical dipole-dipole chain: induced moment, retarded field, pair
//! energy, its orientation average, and a Monte-Carlo check of the average.
//!
//! Formulas are in Gaussian form without permittivity factors; inputs are
//! assumed to share one consistent unit system.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::math::{CVec3, Vec3};
use crate::{Error, Result};

/// Identifier of the random stream used by [`mc_orientation_average`].
pub const RNG_ALGORITHM: &str = "chacha8 (rand_chacha 0.3, seed_from_u64), f64 from 53 high bits";

/// Smallest accepted Monte-Carlo sample count.
pub const MIN_SAMPLES: usize = 1_000;

/// Real dipole moment d⃗.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleMoment(pub Vec3);

impl DipoleMoment {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vec3::new(x, y, z))
    }
}

/// Separation of the two dipoles and the drive wavevector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairGeometry {
    rvec: Vec3,
    k: f64,
    kvec: Vec3,
}

impl PairGeometry {
    /// Geometry with `k = |kvec|`.
    pub fn new(rvec: Vec3, kvec: Vec3) -> Result<Self> {
        Self::with_wavenumber(rvec, kvec.norm(), kvec)
    }

    /// Checks that `|kvec|` agrees with `k` to 1e-12 relative.
    pub fn with_wavenumber(rvec: Vec3, k: f64, kvec: Vec3) -> Result<Self> {
        if !rvec.is_finite() || !kvec.is_finite() || !k.is_finite() {
            return Err(Error::InvalidInput("geometry must be finite".into()));
        }
        if rvec.norm() == 0.0 {
            return Err(Error::Singularity("dipoles coincide (r = 0)".into()));
        }
        if k < 0.0 || (kvec.norm() - k).abs() > 1e-12 * k.max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidInput(format!(
                "|kvec| = {} does not match k = {k}",
                kvec.norm()
            )));
        }
        Ok(Self { rvec, k, kvec })
    }

    /// Wavevector of magnitude `k` along `rvec` (collinear pair).
    pub fn collinear(rvec: Vec3, k: f64) -> Result<Self> {
        let dir = rvec
            .normalized()
            .ok_or_else(|| Error::Singularity("dipoles coincide (r = 0)".into()))?;
        Self::with_wavenumber(rvec, k, dir.scale(k))
    }

    pub fn rvec(&self) -> Vec3 {
        self.rvec
    }

    pub fn r(&self) -> f64 {
        self.rvec.norm()
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kvec(&self) -> Vec3 {
        self.kvec
    }

    /// Unit vector e⃗_r.
    pub fn unit(&self) -> Vec3 {
        self.rvec.scale(1.0 / self.r())
    }

    /// Scalar phase `k·|r⃗|`.
    pub fn kr(&self) -> f64 {
        self.k * self.r()
    }

    /// Vector phase `k⃗·r⃗`.
    pub fn k_dot_r(&self) -> f64 {
        self.kvec.dot(self.rvec)
    }
}

/// `d⃗ = ξE⃗`.
pub fn induced_dipole(xi: f64, e: &CVec3) -> CVec3 {
    e.scale(Complex64::new(xi, 0.0))
}

/// Radial coefficients `(k²/r + ik/r² − 1/r³, k²/r + 3ik/r² − 3/r³)` of the
/// retarded field.
fn radial_terms(k: f64, r: f64) -> (Complex64, Complex64) {
    let (r2, r3) = (r * r, r * r * r);
    let transverse = Complex64::new(k * k / r - 1.0 / r3, k / r2);
    let longitudinal = Complex64::new(k * k / r - 3.0 / r3, 3.0 * k / r2);
    (transverse, longitudinal)
}

/// Field of a possibly complex dipole at the second site.
pub fn dipole_field_complex(d: &CVec3, geom: &PairGeometry) -> CVec3 {
    let (k, r) = (geom.k, geom.r());
    let (tr, lo) = radial_terms(k, r);
    let er = geom.unit().to_complex();
    let proj = er.dot(d);
    let phase = Complex64::from_polar(1.0, k * r);
    (d.scale(tr) - er.scale(proj * lo)).scale(phase)
}

/// `E⃗_d = {d⃗(k²/r + ik/r² − 1/r³) − e⃗_r(e⃗_r·d⃗)(k²/r + 3ik/r² − 3/r³)} e^{ikr}`.
pub fn dipole_field(d: &DipoleMoment, geom: &PairGeometry) -> CVec3 {
    dipole_field_complex(&d.0.to_complex(), geom)
}

/// Pair energy `U′ = −d⃗₂·E⃗_d(d⃗₁)`, expanded in closed form.
pub fn pair_energy(d1: &DipoleMoment, d2: &DipoleMoment, geom: &PairGeometry) -> Complex64 {
    let (k, r) = (geom.k, geom.r());
    let (tr, lo) = radial_terms(k, r);
    let er = geom.unit();
    let phase = Complex64::from_polar(1.0, k * r);
    -(tr * d2.0.dot(d1.0) - lo * (er.dot(d2.0) * er.dot(d1.0))) * phase
}

/// Average of the pair energy over a common, uniformly random orientation of
/// two equal dipoles: `−(2d²k²)/(3r)·e^{ikr}`. The `r⁻²` and `r⁻³` terms
/// cancel because `⟨(e⃗_r·d⃗)²⟩ = d²/3`.
pub fn averaged_pair_energy(dmag: f64, r: f64, k: f64) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("separation must be positive, got {r}")));
    }
    Ok(Complex64::from_polar(1.0, k * r) * (-2.0 * dmag * dmag * k * k / (3.0 * r)))
}

/// Phase-free magnitude form `−(2d²k²)/(3r)`.
pub fn averaged_pair_energy_printed(dmag: f64, r: f64, k: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("separation must be positive, got {r}")));
    }
    Ok(-2.0 * dmag * dmag * k * k / (3.0 * r))
}

/// Averaged energy including the drive phase difference:
/// `U(r⃗) = −(2d²k²)/(3r)·cos(k⃗·r⃗)`.
pub fn phased_average(dmag: f64, geom: &PairGeometry) -> f64 {
    let (k, r) = (geom.k, geom.r());
    -2.0 * dmag * dmag * k * k / (3.0 * r) * geom.k_dot_r().cos()
}

/// How the two dipole orientations are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OrientationMode {
    /// Both dipoles share one random direction, `⟨d⃗d⃗₂⟩`.
    #[default]
    Correlated,
    /// Independent directions, `⟨d⃗⟩⟨d⃗₂⟩`; averages to zero.
    Independent,
}

/// Monte-Carlo estimate with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AverageEstimate {
    #[serde(serialize_with = "serialize_complex")]
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub rng: &'static str,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl AverageEstimate {
    /// Largest componentwise deviation from `target` in units of the
    /// standard error. A component with zero standard error counts as
    /// infinitely far unless it matches exactly.
    pub fn z_score(&self, target: Complex64) -> f64 {
        let z = |dev: f64, se: f64| {
            if dev == 0.0 {
                0.0
            } else if se > 0.0 {
                dev.abs() / se
            } else {
                f64::INFINITY
            }
        };
        z(self.mean.re - target.re, self.stderr_re).max(z(self.mean.im - target.im, self.stderr_im))
    }
}

/// Area-uniform unit vectors from a seeded stream:
/// `cos θ` uniform on `[−1, 1]`, `φ` uniform on `[0, 2π)`.
pub struct SphereSampler {
    rng: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self) -> Vec3 {
        let cos_theta = 2.0 * self.rng.gen::<f64>() - 1.0;
        let phi = std::f64::consts::TAU * self.rng.gen::<f64>();
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        Vec3::new(sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta)
    }
}

#[derive(Default)]
struct Welford {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        (self.m2 / (self.n - 1.0) / self.n).sqrt()
    }
}

/// Sequential Monte-Carlo orientation average of [`pair_energy`] for two
/// dipoles of magnitude `dmag`. Bit-reproducible for a given seed.
pub fn mc_orientation_average(
    dmag: f64,
    geom: &PairGeometry,
    n_samples: usize,
    seed: u64,
    mode: OrientationMode,
) -> Result<AverageEstimate> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    let mut sampler = SphereSampler::new(seed);
    let (mut re, mut im) = (Welford::default(), Welford::default());
    for _ in 0..n_samples {
        let u1 = sampler.sample();
        let u2 = match mode {
            OrientationMode::Correlated => u1,
            OrientationMode::Independent => sampler.sample(),
        };
        let e = pair_energy(&DipoleMoment(u1.scale(dmag)), &DipoleMoment(u2.scale(dmag)), geom);
        re.push(e.re);
        im.push(e.im);
    }
    Ok(AverageEstimate {
        mean: Complex64::new(re.mean, im.mean),
        stderr_re: re.stderr(),
        stderr_im: im.stderr(),
        n_samples,
        seed,
        rng: RNG_ALGORITHM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn induced_dipole_scales_field() {
        let e = CVec3::new(cz(1.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0));
        assert_eq!(induced_dipole(2.0, &e), CVec3::new(cz(2.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0)));
        assert_eq!(induced_dipole(0.0, &e), CVec3::zero());
    }

    #[test]
    fn static_on_axis_field() {
        let g = PairGeometry::new(Vec3::new(0.0, 0.0, 1.0), Vec3::ZERO).unwrap();
        let e = dipole_field(&DipoleMoment::new(0.0, 0.0, 1.0), &g);
        assert_eq!(e, CVec3::new(cz(0.0, 0.0), cz(0.0, 0.0), cz(2.0, 0.0)));
    }

    #[test]
    fn transverse_unit_field() {
        let g = PairGeometry::collinear(Vec3::new(1.0, 0.0, 0.0), 1.0).unwrap();
        let e = dipole_field(&DipoleMoment::new(0.0, 0.0, 1.0), &g);
        let want = cz(0.0, 1.0) * Complex64::from_polar(1.0, 1.0);
        assert!(e.x.norm() == 0.0 && e.y.norm() == 0.0);
        assert!((e.z - want).norm() < 1e-15);
    }

    #[test]
    fn transverse_pair_energy() {
        let g = PairGeometry::collinear(Vec3::new(1.0, 0.0, 0.0), 1.0).unwrap();
        let d = DipoleMoment::new(0.0, 0.0, 1.0);
        let u = pair_energy(&d, &d, &g);
        let want = -cz(0.0, 1.0) * Complex64::from_polar(1.0, 1.0);
        assert!((u - want).norm() < 1e-15);
    }

    #[test]
    fn mutually_orthogonal_transverse_dipoles_do_not_interact() {
        let g = PairGeometry::collinear(Vec3::new(2.0, 0.0, 0.0), 0.7).unwrap();
        let u = pair_energy(&DipoleMoment::new(0.0, 1.0, 0.0), &DipoleMoment::new(0.0, 0.0, 1.0), &g);
        assert_eq!(u, cz(0.0, 0.0));
    }

    #[test]
    fn zero_separation_is_singular() {
        assert!(matches!(PairGeometry::new(Vec3::ZERO, Vec3::ZERO), Err(Error::Singularity(_))));
        assert!(matches!(PairGeometry::collinear(Vec3::ZERO, 1.0), Err(Error::Singularity(_))));
    }

    #[test]
    fn mismatched_wavenumber_is_rejected() {
        let r = Vec3::new(1.0, 0.0, 0.0);
        assert!(PairGeometry::with_wavenumber(r, 1.0, Vec3::new(0.0, 2.0, 0.0)).is_err());
        assert!(PairGeometry::with_wavenumber(r, 2.0, Vec3::new(0.0, 2.0, 0.0)).is_ok());
    }

    #[test]
    fn closed_form_average_at_unit_parameters() {
        let u = averaged_pair_energy(1.0, 1.0, 1.0).unwrap();
        // −(2/3)(cos 1 + i sin 1)
        assert!((u - cz(-0.360_201_537_245_426_5, -0.560_980_656_538_597_7)).norm() < 1e-15);
        assert!((u.norm() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(averaged_pair_energy_printed(1.0, 1.0, 1.0).unwrap(), -2.0 / 3.0);
        assert_eq!(averaged_pair_energy(1.0, 1.0, 0.0).unwrap().norm(), 0.0);
        assert!(averaged_pair_energy(1.0, 0.0, 1.0).is_err());
        assert!(averaged_pair_energy(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_average_scaling() {
        let base = averaged_pair_energy(1.0, 2.0, 0.5).unwrap();
        let d2 = averaged_pair_energy(3.0, 2.0, 0.5).unwrap();
        assert!((d2 - base * 9.0).norm() < 1e-14);
        // magnitude ∝ 1/r
        let far = averaged_pair_energy(1.0, 4.0, 0.5).unwrap();
        assert!((far.norm() * 4.0 - base.norm() * 2.0).abs() < 1e-15);
    }

    #[test]
    fn phased_average_examples() {
        let g = PairGeometry::collinear(Vec3::new(1.0, 0.0, 0.0), 1.0).unwrap();
        assert!((phased_average(1.0, &g) - (-2.0 / 3.0 * 1f64.cos())).abs() < 1e-15);
        assert!((phased_average(1.0, &g) + 0.360_201_537_245_426_5).abs() < 1e-15);

        let r = std::f64::consts::FRAC_PI_2;
        let g = PairGeometry::collinear(Vec3::new(r, 0.0, 0.0), 1.0).unwrap();
        assert!(phased_average(1.0, &g).abs() < 1e-16);
    }

    #[test]
    fn too_few_samples() {
        let g = PairGeometry::collinear(Vec3::new(1.0, 0.0, 0.0), 1.0).unwrap();
        let err = mc_orientation_average(1.0, &g, 999, 1, OrientationMode::Correlated);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn fixed_seed_is_bit_identical() {
        let g = PairGeometry::collinear(Vec3::new(0.0, 1.5, 0.0), 1.0).unwrap();
        let a = mc_orientation_average(1.0, &g, 5_000, 42, OrientationMode::Correlated).unwrap();
        let b = mc_orientation_average(1.0, &g, 5_000, 42, OrientationMode::Correlated).unwrap();
        assert_eq!(a, b);
        let c = mc_orientation_average(1.0, &g, 5_000, 43, OrientationMode::Correlated).unwrap();
        assert_ne!(a.mean, c.mean);
    }
}
