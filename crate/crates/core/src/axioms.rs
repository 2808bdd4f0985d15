//! Randomized exact-law suites shared by the test targets and the CLI.

use serde::Serialize;

use crate::algebra::generators::{chi, p0, p_ge0, u, u_inv};
use crate::algebra::{AlgebraElement, BoundarySymbolPair, TrigPolynomial};
use crate::derivation::{
    apply_derivation, build_t_fg, decompose_derivation, derivation_symbol, is_approximately_inner,
    DerivationSpec, DerivationTerm,
};
use crate::hilbert::HilbertElement;
use crate::implement::{apply_d, apply_d_adjoint, ImplementationSpec, Sign};
use crate::random;
use crate::reflection::{
    halfspace_membership, theta_algebra, theta_hilbert, HalfSpaceTag,
};
use crate::scalar::Scalar;
use crate::sequence::LatticeSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<usize>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    reports: Vec<LawReport>,
}

impl Tally {
    fn new() -> Self {
        Tally { reports: Vec::new() }
    }

    fn record(&mut self, law: &'static str, case: usize, ok: bool) {
        let idx = match self.reports.iter().position(|r| r.law == law) {
            Some(i) => i,
            None => {
                self.reports.push(LawReport {
                    law,
                    cases: 0,
                    failures: 0,
                    first_failure: None,
                });
                self.reports.len() - 1
            }
        };
        let r = &mut self.reports[idx];
        r.cases += 1;
        if !ok {
            r.failures += 1;
            r.first_failure.get_or_insert(case);
        }
    }
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::passed)
}

/// Multiplication, adjoint, both actions, reflection and symbol laws.
pub fn algebra_suite(seed: u64, cases: usize) -> Vec<LawReport> {
    let mut rng = random::rng(seed);
    let mut t = Tally::new();
    for case in 0..cases {
        let a = random::algebra(&mut rng);
        let b = random::algebra(&mut rng);
        let c = random::algebra(&mut rng);
        let f = random::hilbert(&mut rng, 5, 4);
        let g = random::hilbert(&mut rng, 5, 4);
        let ab = &a * &b;

        t.record("associativity", case, &ab * &c == &a * &(&b * &c));
        t.record("adjoint involution", case, a.adjoint().adjoint() == a);
        t.record(
            "adjoint reverses products",
            case,
            ab.adjoint() == &b.adjoint() * &a.adjoint(),
        );
        t.record(
            "adjoint matches inner product",
            case,
            f.inner(&a.act_left(&g)) == a.adjoint().act_left(&f).inner(&g),
        );
        t.record(
            "left action is a homomorphism",
            case,
            ab.act_left(&f) == a.act_left(&b.act_left(&f)),
        );
        t.record(
            "right action is an anti-homomorphism",
            case,
            ab.act_right(&f) == b.act_right(&a.act_right(&f)),
        );
        t.record(
            "left and right actions commute",
            case,
            a.act_left(&b.act_right(&f)) == b.act_right(&a.act_left(&f)),
        );
        t.record("reflection squares to one", case, theta_hilbert(&theta_hilbert(&f)) == f);
        t.record(
            "reflection is self-adjoint",
            case,
            theta_hilbert(&f).inner(&g) == f.inner(&theta_hilbert(&g)),
        );
        t.record(
            "reflection intertwines the actions",
            case,
            theta_hilbert(&a.act_left(&theta_hilbert(&f))) == theta_algebra(&a).act_right(&f),
        );
        t.record("theta is an involution", case, theta_algebra(&theta_algebra(&a)) == a);
        t.record(
            "theta is an anti-homomorphism",
            case,
            theta_algebra(&ab) == &theta_algebra(&b) * &theta_algebra(&a),
        );
        t.record("symbol is multiplicative", case, ab.symbol() == a.symbol().mul(&b.symbol()));
        let fp = random::hilbert_plus(&mut rng, 5, 4);
        t.record(
            "reflection maps H+ into H-",
            case,
            halfspace_membership(&theta_hilbert(&fp), HalfSpaceTag::Minus),
        );
    }
    t.reports
}

fn symbol_of_u(d: &DerivationSpec) -> BoundarySymbolPair {
    derivation_symbol(d).shift(1)
}

/// Leibniz, grading, `d_{f,g}` evaluations and decomposition round trips.
pub fn derivation_suite(seed: u64, cases: usize) -> Vec<LawReport> {
    let mut rng = random::rng(seed);
    let mut t = Tally::new();
    for case in 0..cases {
        let d = random::derivation(&mut rng);
        let a = random::generator_or_element(&mut rng);
        let b = random::generator_or_element(&mut rng);
        let ab = &a * &b;
        let lhs = apply_derivation(&d, &ab);
        let rhs = apply_derivation(&d, &a)
            .and_then(|da| apply_derivation(&d, &b).map(|db| (&da * &b).add(&(&a * &db))));
        t.record("leibniz", case, matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r));

        let f = random::trig(&mut rng);
        let g = random::trig(&mut rng);
        let lifted = DerivationSpec::lifted(f.clone(), g.clone());
        let du = apply_derivation(&lifted, &u());
        t.record(
            "lifted derivation on U",
            case,
            du.as_ref().is_ok_and(|du| *du == &u() * &build_t_fg(&f, &g)),
        );
        let killed = [p_ge0(), p0()]
            .iter()
            .all(|p| apply_derivation(&lifted, p).is_ok_and(|x| x.is_zero()));
        t.record("lifted derivation kills the projections", case, killed);

        let (inner, lift) = decompose_derivation(&d);
        let round_trip = [u(), u_inv(), p_ge0(), p0()].iter().all(|x| {
            match (
                apply_derivation(&d, x),
                apply_derivation(&inner, x),
                apply_derivation(&lift, x),
            ) {
                (Ok(whole), Ok(i), Ok(l)) => whole == i.add(&l),
                _ => false,
            }
        });
        t.record("decomposition recombines", case, round_trip);
        t.record(
            "decomposition symbols",
            case,
            is_approximately_inner(&inner) && derivation_symbol(&lift) == derivation_symbol(&d),
        );
        t.record(
            "symbol of d(U)",
            case,
            apply_derivation(&d, &u()).is_ok_and(|x| x.symbol() == symbol_of_u(&d)),
        );

        let n = rng.gen_range_i64(-2, 2);
        let beta = random::increment(&mut rng);
        let m = rng.gen_range_i64(-3, 3);
        let graded = AlgebraElement::term(m, random::diagonal(&mut rng));
        let out = apply_derivation(&DerivationSpec::ncovariant(n, beta), &graded);
        t.record(
            "grading covariance",
            case,
            out.is_ok_and(|x| x.grades().all(|k| k == m + n)),
        );
    }
    t.reports
}

trait RangeExt {
    fn gen_range_i64(&mut self, lo: i64, hi: i64) -> i64;
}

impl<R: rand::Rng> RangeExt for R {
    fn gen_range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        self.gen_range(lo..=hi)
    }
}

fn implementation_generators<R: rand::Rng>(rng: &mut R) -> Vec<AlgebraElement> {
    vec![
        u(),
        u_inv(),
        p_ge0(),
        p0(),
        chi(rng.gen_range(0..=3)),
        AlgebraElement::diag(random::diagonal(rng)),
    ]
}

fn commutator_matches(
    spec: &ImplementationSpec,
    d: &DerivationSpec,
    a: &AlgebraElement,
    f: &HilbertElement,
) -> bool {
    let lhs = apply_d(spec, &a.act_left(f)).sub(&a.act_left(&apply_d(spec, f)));
    apply_derivation(d, a).is_ok_and(|da| da.act_left(f) == lhs)
}

/// `[D, pi(a)] f = pi(d(a)) f`, reflection behaviour of `D`, the adjoint
/// pairing and the sector reduction of `D^*D`.
pub fn implementation_suite(seed: u64, cases: usize) -> Vec<LawReport> {
    let mut rng = random::rng(seed);
    let mut t = Tally::new();
    for case in 0..cases {
        let f = random::hilbert(&mut rng, 6, 4);
        let h = random::hilbert(&mut rng, 6, 4);
        let gens = implementation_generators(&mut rng);

        let beta = random::increment(&mut rng);
        let inv = ImplementationSpec::invariant_reflected(beta.clone());
        let d0 = DerivationSpec::ncovariant(0, beta.clone());
        t.record(
            "invariant family implements its derivation",
            case,
            gens.iter().all(|a| commutator_matches(&inv, &d0, a, &f)),
        );
        t.record(
            "invariant family commutes with the reflection",
            case,
            theta_hilbert(&apply_d(&inv, &theta_hilbert(&f))) == apply_d(&inv, &f),
        );

        let cov = ImplementationSpec::covariant_reflected(beta.clone(), Sign::Plus);
        let d1 = DerivationSpec::ncovariant(1, beta.clone());
        t.record(
            "covariant family implements its derivation",
            case,
            gens.iter().all(|a| commutator_matches(&cov, &d1, a, &f)),
        );
        t.record(
            "covariant family anticommutes with the reflection",
            case,
            theta_hilbert(&apply_d(&cov, &theta_hilbert(&f))) == apply_d(&cov, &f).scale(&Scalar::int(-1)),
        );
        let adj_ok = apply_d_adjoint(&cov, &h)
            .is_ok_and(|dh| dh.inner(&f) == h.inner(&apply_d(&cov, &f)));
        t.record("adjoint pairing", case, adj_ok);

        let minus = ImplementationSpec::covariant_reflected(beta.clone(), Sign::Minus);
        t.record(
            "sign-flipped family implements its derivation",
            case,
            gens.iter().all(|a| commutator_matches(&minus, &d1, a, &f)),
        );
        t.record(
            "sign-flipped family commutes with the reflection",
            case,
            theta_hilbert(&apply_d(&minus, &theta_hilbert(&f))) == apply_d(&minus, &f),
        );

        let n = rng.gen_range_i64(-3, 3);
        let sector = HilbertElement::from_entries(
            f.iter().map(|(_, k, v)| ((n, k), v.clone())),
        );
        let dd = apply_d_adjoint(&cov, &apply_d(&cov, &sector)).expect("covariant kind");
        let expected = sector_laplacian_exact(&beta, n, &sector);
        t.record("sector reduction of the Laplacian", case, dd == expected);
    }
    t.reports
}

/// `Delta_n` applied in exact arithmetic, mass term omitted.
fn sector_laplacian_exact(
    beta: &crate::sequence::IncrementSequence,
    n: i64,
    f: &HilbertElement,
) -> HilbertElement {
    let mut out = HilbertElement::zero();
    for (_, k, v) in f.iter() {
        let b1 = beta.eval(k + n);
        let b2 = beta.eval(-k);
        out.add_at(n, k, &((b1.norm_sqr() + b2.norm_sqr()) * v));
        // Coupling from k to k + 1 is conj(off(k)); from k to k - 1 is off(k - 1).
        let off_here = -(beta.eval(k + n).conj() * beta.eval(-k - 1));
        let off_below = -(beta.eval(k - 1 + n).conj() * beta.eval(-k));
        out.add_at(n, k + 1, &(off_here.conj() * v));
        out.add_at(n, k - 1, &(off_below * v));
    }
    out
}

/// Slope criterion evaluated term by term, independent of the symbol code.
pub fn slope_criterion(d: &DerivationSpec) -> bool {
    let mut plus = TrigPolynomial::zero();
    let mut minus = TrigPolynomial::zero();
    for term in d.terms() {
        match term {
            DerivationTerm::NCovariant { n, beta } => {
                plus = plus.add(&TrigPolynomial::monomial(*n, beta.right_slope().clone()));
                minus = minus.add(&TrigPolynomial::monomial(*n, beta.left_slope().clone()));
            }
            DerivationTerm::Lifted { f, g } => {
                plus = plus.add(f);
                minus = minus.add(g);
            }
        }
    }
    plus.is_zero() && minus.is_zero()
}

/// Approximate innerness against the slope criterion, and the lifted part
/// of the decomposition against `sigma(d(U))`.
pub fn classification_suite(seed: u64, cases: usize) -> Vec<LawReport> {
    let mut rng = random::rng(seed);
    let mut t = Tally::new();
    for case in 0..cases {
        let d = if case % 4 == 3 {
            random::cancelling_derivation(&mut rng)
        } else {
            random::derivation(&mut rng)
        };
        t.record("innerness matches slopes", case, is_approximately_inner(&d) == slope_criterion(&d));
        let (inner, lifted) = decompose_derivation(&d);
        let du = apply_derivation(&d, &u());
        let lu = apply_derivation(&lifted, &u());
        let iu = apply_derivation(&inner, &u());
        let ok = match (du, lu, iu) {
            (Ok(du), Ok(lu), Ok(iu)) => du.symbol() == lu.symbol() && iu.symbol().is_zero(),
            _ => false,
        };
        t.record("lifted part reproduces sigma(d(U))", case, ok);
    }
    t.reports
}
