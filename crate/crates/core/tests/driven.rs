use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twolevel_toolkit::cli::{random_pole_free_point, relative_diff};
use twolevel_toolkit::dipole::PairGeometry;
use twolevel_toolkit::driven::{
    driven_potential, driven_potential_naive, evaluate_driven, frequency_coefficients, DrivenPairParams,
};
use twolevel_toolkit::math::Vec3;

fn params() -> impl Strategy<Value = DrivenPairParams> {
    (0.5..2.0f64, 0.5..2.0f64, -1.0..1.0f64, 0.2..3.0f64, 0.2..3.0f64, -5.0..5.0f64, -5.0..5.0f64)
        .prop_map(|(mu, i0, b, g1, g2, d1, d2)| DrivenPairParams::new(mu, i0, b, g1, g2, d1, d2).unwrap())
}

fn geometry() -> impl Strategy<Value = PairGeometry> {
    ((0.1..5.0f64), (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 0.1..3.0f64)
        .prop_filter_map("direction", |(r, (x, y, z), k)| {
            let dir = Vec3::new(x, y, z).normalized()?;
            PairGeometry::collinear(dir.scale(r), k).ok()
        })
}

#[test]
fn stable_and_literal_forms_agree_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (p, g) = random_pole_free_point(&mut rng, 1e-5);
        let s = driven_potential(&p, &g).unwrap();
        let n = driven_potential_naive(&p, &g).unwrap();
        worst = worst.max(relative_diff(s, n));
    }
    assert!(worst < 1e-10, "{worst}");
}

#[test]
fn symmetric_resonant_reduction_pointwise() {
    let gamma = 0.7;
    let p = DrivenPairParams::new(1.3, 0.8, 0.4, gamma, gamma, 0.0, 0.0).unwrap();
    for i in 1..200 {
        let r = i as f64 * 0.037;
        let g = PairGeometry::new(Vec3::new(r, 0.0, 0.0), Vec3::new(0.6, 0.8, 0.0).scale(1.5)).unwrap();
        let kr = g.kr();
        let want = -std::f64::consts::PI * 1.3f64.powi(2) * 0.8 * 0.4 / (12.0 * r * gamma)
            * kr.cos()
            * (-kr * kr.tan().abs()).exp()
            * g.k_dot_r().cos();
        let got = driven_potential(&p, &g).unwrap();
        assert!(relative_diff(got, want) < 1e-12 || (got - want).abs() < 1e-300, "r={r}: {got} vs {want}");
    }
}

#[test]
fn envelope_decays_as_inverse_distance() {
    // With b = 0 the exponent is kr·|tan kr|, so r·|U| ≤ πμ²I₀|β|a/(12(Γ₁²+Δ₁²)) everywhere.
    let p = DrivenPairParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
    let bound = std::f64::consts::PI / 12.0;
    for i in 1..=5000 {
        let r = i as f64 * 0.01;
        let g = PairGeometry::collinear(Vec3::new(r, 0.0, 0.0), 1.0).unwrap();
        let u = driven_potential(&p, &g).unwrap();
        assert!(u.is_finite());
        assert!(r * u.abs() <= bound * (1.0 + 1e-15), "r={r}");
    }
}

#[test]
fn exponent_column_reports_limit_at_poles() {
    let p = DrivenPairParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
    let c = frequency_coefficients(&p).unwrap();
    // φ = 0, the stable exponent diverges where cos kr vanishes
    assert_eq!(c.phase(), 0.0);
    let g = PairGeometry::collinear(Vec3::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0), 1.0).unwrap();
    let ev = evaluate_driven(&p, &g).unwrap();
    assert_eq!(ev.value, 0.0);
    assert!(ev.exponent_arg < -1e15);
}

proptest! {
    #[test]
    fn linear_in_inversion_and_intensity(p in params(), g in geometry(), s in 0.1..10.0f64) {
        let base = driven_potential(&p, &g).unwrap();
        let scaled_beta = driven_potential(&DrivenPairParams { beta_pop: p.beta_pop * s, ..p }, &g).unwrap();
        let scaled_i0 = driven_potential(&DrivenPairParams { i0: p.i0 * s, ..p }, &g).unwrap();
        prop_assert!((scaled_beta - s * base).abs() <= 1e-13 * (s * base).abs().max(1e-300));
        prop_assert!((scaled_i0 - s * base).abs() <= 1e-13 * (s * base).abs().max(1e-300));
    }

    #[test]
    fn inversion_sign_flips_the_potential(p in params(), g in geometry()) {
        let up = driven_potential(&p, &g).unwrap();
        let down = driven_potential(&DrivenPairParams { beta_pop: -p.beta_pop, ..p }, &g).unwrap();
        prop_assert_eq!(up, -down);
    }

    #[test]
    fn a_is_positive(p in params()) {
        let c = frequency_coefficients(&p).unwrap();
        prop_assert!(c.a > 0.0);
        prop_assert!(c.phase().abs() < std::f64::consts::FRAC_PI_2);
    }
}
