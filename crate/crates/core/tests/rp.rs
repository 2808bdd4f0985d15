use num_complex::Complex64;
use proptest::prelude::*;
use qcyl_core::jacobi::{solve_on_window, SectorVector};
use qcyl_core::rp::{certify_sector, sector_vector};
use qcyl_core::{
    covariant_rp, dense_oracle, invariant_rp, random, sector_jacobi, sigma_sums, solve_sector,
    theta_hilbert, CertifyConfig, Error, HilbertElement, IncrementSequence, Scalar, Sign, Verdict,
    WindowPolicy,
};

const TOL: f64 = 1e-10;

fn lambda() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

fn one() -> IncrementSequence {
    IncrementSequence::constant(Scalar::one())
}

fn delta(k: i64) -> SectorVector {
    SectorVector::new(k, vec![Complex64::new(1.0, 0.0)])
}

#[test]
fn constant_beta_green_function() {
    let j = sector_jacobi(&one(), 1.0, 0).unwrap();
    let sol = solve_sector(&j, &delta(0), TOL, &WindowPolicy::default()).unwrap();
    let l = lambda();
    for k in -20i64..=20 {
        let exact = l.powi(k.abs() as i32) / 5f64.sqrt();
        assert!((sol.g.get(k).re - exact).abs() < 1e-10, "k = {k}");
    }
    assert!((sol.g.get(0).re - 0.4472135955).abs() < 1e-10);
    assert!((sol.g.get(-1).re - 0.1708203932).abs() < 1e-10);
    assert!(sol.residual <= TOL);

    let shifted = solve_sector(&j, &delta(5), TOL, &WindowPolicy::default()).unwrap();
    for k in -15i64..=25 {
        let exact = l.powi((k - 5).abs() as i32) / 5f64.sqrt();
        assert!((shifted.g.get(k).re - exact).abs() < 1e-10);
    }

    let zero = solve_sector(&j, &SectorVector::zero(), TOL, &WindowPolicy::default()).unwrap();
    assert!(zero.g.is_zero());
}

#[test]
fn dense_oracle_examples() {
    let j = sector_jacobi(&one(), 1.0, 0).unwrap();
    let g = dense_oracle(&j, &delta(0), (-64, 64)).unwrap();
    assert!((g.get(0).re - 1.0 / 5f64.sqrt()).abs() < 1e-10);

    // 3x3 system [[3,-1,0],[-1,3,-1],[0,-1,3]] g = e_0 gives g(0) = 3/7.
    let small = dense_oracle(&j, &delta(0), (-1, 1)).unwrap();
    assert!((small.get(0).re - 3.0 / 7.0).abs() < 1e-14);
    assert!((small.get(1).re - 1.0 / 7.0).abs() < 1e-14);
    assert!((small.get(0).re - 1.0 / 5f64.sqrt()).abs() > 1e-2);

    let jk = sector_jacobi(&IncrementSequence::identity(), 1.0, 0).unwrap();
    let reference = dense_oracle(&jk, &delta(1), (-32, 32)).unwrap();
    let fast = solve_on_window(&jk, &delta(1), (-32, 32), 0).unwrap();
    assert!(fast.g.max_abs_diff(&reference) < 1e-12);
    let adaptive = solve_sector(&jk, &delta(1), TOL, &WindowPolicy::default()).unwrap();
    let same_window = dense_oracle(&jk, &delta(1), adaptive.window).unwrap();
    assert!(adaptive.g.max_abs_diff(&same_window) < 1e-8);
}

#[test]
fn golden_covariant_certificate() {
    let cert = covariant_rp(&one(), 1.0, &HilbertElement::unit(0, 0), &CertifyConfig::default())
        .unwrap();
    assert_eq!(cert.verdict.verdict, Verdict::Verified);
    let s = &cert.sectors[0];
    let g0 = 1.0 / 5f64.sqrt();
    assert!((s.direct_value - g0).abs() < 1e-9);
    assert!((s.sigma1.unwrap() - (1.0 - lambda()) / 5.0).abs() < 1e-9);
    assert!((s.sigma1.unwrap() - 0.1236067977).abs() < 1e-9);
    assert!((2.0 * s.sigma1.unwrap() + g0 * g0 - s.direct_value).abs() < 1e-9);
    assert!((s.boundary_value.unwrap() - s.direct_value).abs() < 1e-9);
}

#[test]
fn odd_sector_certificate_matches_dense_solve() {
    let f = HilbertElement::unit(1, 0);
    let cert = covariant_rp(&one(), 1.0, &f, &CertifyConfig::default()).unwrap();
    let s = &cert.sectors[0];
    assert_eq!(s.status, Verdict::Verified);
    assert!(s.direct_value >= 0.0);
    assert!((s.sigma1.unwrap() + s.sigma2.unwrap() - s.direct_value).abs() < 1e-10);
    let j = sector_jacobi(&one(), 1.0, 1).unwrap();
    let g = dense_oracle(&j, &delta(0), (-64, 64)).unwrap();
    // Theta_1 f = delta at -1.
    assert!((g.get(-1).re - s.direct_value).abs() < 1e-10);
    assert!(s.cross_term_imag.unwrap().abs() <= 1e-10);
}

#[test]
fn sigma_sums_of_known_solution() {
    let l = lambda();
    let values: Vec<Complex64> = (-80i64..=80)
        .map(|k| Complex64::new(l.powi(k.abs() as i32) / 5f64.sqrt(), 0.0))
        .collect();
    let g = SectorVector::new(-80, values);
    let s = sigma_sums(&one(), 1.0, 0, &g);
    assert!((s.sigma1 - (1.0 - l) / 5.0).abs() < 1e-12);
    let g0 = g.get(0).re;
    let gm = g.get(-1).re;
    assert!((s.closed1.re - (g0 * g0 - gm * g0)).abs() < 1e-12);
    assert!((s.closed1.re - s.sigma1).abs() < 1e-12);
}

#[test]
fn invariant_examples() {
    let r = invariant_rp(&one(), &HilbertElement::unit(0, 0)).unwrap();
    assert_eq!(r.direct, Scalar::ratio(1, 2));
    let quad = IncrementSequence::tabulate(-16, 16, |k| Scalar::int(1 + k * k));
    let f = HilbertElement::from_entries([((2, -1), Scalar::one()), ((0, 1), Scalar::int(5))]);
    let r = invariant_rp(&quad, &f).unwrap();
    assert_eq!(r.direct, Scalar::ratio(1, 4));
    assert_eq!(r.boundary, Scalar::ratio(1, 4));
    assert!(invariant_rp(&quad, &HilbertElement::zero()).unwrap().direct.is_zero());
    assert!(matches!(
        invariant_rp(&quad, &HilbertElement::unit(0, -1)),
        Err(Error::NotInPositiveHalf { .. })
    ));
}

#[test]
fn growing_beta_can_exhaust_the_window() {
    let policy = WindowPolicy { initial_margin: 2, max_half_width: 24 };
    let flat = IncrementSequence::constant(Scalar::int(4));
    let j = sector_jacobi(&flat, 1e-8, 0).unwrap();
    assert!(matches!(
        solve_sector(&j, &delta(0), 1e-12, &policy),
        Err(Error::WindowExhausted { .. })
    ));
    let cfg = CertifyConfig { policy, solver_tol: 1e-12, ..CertifyConfig::default() };
    let rec = certify_sector(&flat, 1e-8, 0, &delta(0), &cfg).unwrap();
    assert_eq!(rec.status, Verdict::Inconclusive);
    let cert = covariant_rp(&flat, 1e-8, &HilbertElement::unit(0, 0), &cfg).unwrap();
    assert_eq!(cert.verdict.verdict, Verdict::Inconclusive);
    assert!(!cert.verdict.nonnegative);
}

#[test]
fn sign_flipped_branch_shows_negative_odd_sectors() {
    let cfg = CertifyConfig { mu: Sign::Minus, ..CertifyConfig::default() };
    let cert = covariant_rp(&one(), 1.0, &HilbertElement::unit(1, 0), &cfg).unwrap();
    assert_eq!(cert.verdict.verdict, Verdict::Violation);
    assert!(cert.sectors[0].direct_value < 0.0);
    let even = covariant_rp(&one(), 1.0, &HilbertElement::unit(0, 0), &cfg).unwrap();
    assert!(even.sectors[0].direct_value > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_direct_equals_boundary(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let beta = random::positive_beta(&mut rng);
        let f = random::hilbert_plus(&mut rng, 8, 5);
        let r = invariant_rp(&beta, &f).unwrap();
        prop_assert!(r.direct.is_exact());
        prop_assert_eq!(&r.direct, &r.boundary);
        prop_assert!(r.direct.is_zero() || r.direct.is_positive_real());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn covariant_certificates_verify(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let beta = random::constant_tail_beta(&mut rng);
        let m2 = 0.1 + 9.9 * (seed % 1000) as f64 / 1000.0;
        let f = random::rp_vector(&mut rng, 12, 8);
        let cert = covariant_rp(&beta, m2, &f, &CertifyConfig::default()).unwrap();
        prop_assert_eq!(cert.verdict.verdict, Verdict::Verified);
        prop_assert!(cert.verdict.nonnegative);
        for s in &cert.sectors {
            prop_assert!(s.identity_error.unwrap() < 1e-8);
            prop_assert!(s.closed_form_error.unwrap() < 1e-8);
            prop_assert!(s.oracle_deviation.unwrap() < 1e-8);
            prop_assert!((s.restricted_value - s.direct_value).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_value_is_the_reflected_pairing(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let beta = random::constant_tail_beta(&mut rng);
        let f = random::rp_vector(&mut rng, 6, 4);
        let theta_f = theta_hilbert(&f);
        let cert = covariant_rp(&beta, 1.0, &f, &CertifyConfig::default()).unwrap();
        for s in &cert.sectors {
            let j = sector_jacobi(&beta, 1.0, s.n).unwrap();
            let g = dense_oracle(&j, &sector_vector(&f, s.n), s.window).unwrap();
            let pairing: Complex64 = theta_f
                .sector(s.n)
                .into_iter()
                .map(|(k, v)| v.to_complex64().conj() * g.get(k))
                .sum();
            prop_assert!((pairing.re - s.direct_value).abs() < 1e-9);
        }
    }
}
