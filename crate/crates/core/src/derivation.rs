//! Derivations of the dense algebra, given by generator data.
//!
//! An n-covariant term acts as `a -> [U^n beta(K), a]`. A lifted term with
//! trigonometric symbols `(f, g)` acts as `a -> [T+ K + K T-, a]`, whose
//! boundary class is `(f (1/i) d/dx, g (1/i) d/dx)`.

use crate::algebra::{AlgebraElement, BoundarySymbolPair, ExtendedElement, TrigPolynomial};
use crate::algebra::generators::{p_ge0, p_lt0};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::sequence::IncrementSequence;

#[derive(Clone, Debug, PartialEq)]
pub enum DerivationTerm {
    NCovariant { n: i64, beta: IncrementSequence },
    Lifted { f: TrigPolynomial, g: TrigPolynomial },
}

/// Formal finite sum of derivation terms. In normal form all lifted terms
/// are merged into one trailing term, and vanishing terms are dropped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DerivationSpec {
    terms: Vec<DerivationTerm>,
}

impl DerivationSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(terms: impl IntoIterator<Item = DerivationTerm>) -> Self {
        let mut covariant = Vec::new();
        let mut lifted = BoundarySymbolPair::default();
        for t in terms {
            match t {
                DerivationTerm::NCovariant { n, beta } => {
                    if !beta.is_zero() {
                        covariant.push(DerivationTerm::NCovariant { n, beta });
                    }
                }
                DerivationTerm::Lifted { f, g } => {
                    lifted = lifted.add(&BoundarySymbolPair::new(f, g));
                }
            }
        }
        if !lifted.is_zero() {
            covariant.push(DerivationTerm::Lifted {
                f: lifted.plus,
                g: lifted.minus,
            });
        }
        DerivationSpec { terms: covariant }
    }

    pub fn ncovariant(n: i64, beta: IncrementSequence) -> Self {
        Self::new([DerivationTerm::NCovariant { n, beta }])
    }

    pub fn lifted(f: TrigPolynomial, g: TrigPolynomial) -> Self {
        Self::new([DerivationTerm::Lifted { f, g }])
    }

    pub fn terms(&self) -> &[DerivationTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.terms.iter().map(|t| match t {
            DerivationTerm::NCovariant { n, beta } => DerivationTerm::NCovariant {
                n: *n,
                beta: beta.neg(),
            },
            DerivationTerm::Lifted { f, g } => DerivationTerm::Lifted {
                f: f.neg(),
                g: g.neg(),
            },
        }))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

/// `X a - a X`, required to land back in the dense algebra.
pub fn extended_commutator(x: &ExtendedElement, a: &AlgebraElement) -> Result<AlgebraElement> {
    let xa = x * a;
    let ax = a * x;
    xa.sub(&ax).to_algebra()
}

/// `T_{f,g} = P_{>=0} f(U) P_{>=0} + P_{<0} g(U) P_{<0}`.
pub fn build_t_fg(f: &TrigPolynomial, g: &TrigPolynomial) -> AlgebraElement {
    let p = p_ge0();
    let q = p_lt0();
    let upper = &(&p * &f.of_shift()) * &p;
    let lower = &(&q * &g.of_shift()) * &q;
    upper.add(&lower)
}

/// The upper Toeplitz-type coefficient `T^+_n(k)`.
fn t_plus(f: &TrigPolynomial, g: &TrigPolynomial, n: i64, k: i64) -> Scalar {
    if n > 0 && k > 0 {
        f.coefficient(n)
    } else if n <= 0 && k <= 0 {
        g.coefficient(n)
    } else {
        Scalar::zero()
    }
}

/// The lower Toeplitz-type coefficient `T^-_n(k)`.
fn t_minus(f: &TrigPolynomial, g: &TrigPolynomial, n: i64, k: i64) -> Scalar {
    if k >= 0 && n <= 0 {
        f.coefficient(n)
    } else if k < 0 && n > 0 {
        g.coefficient(n)
    } else {
        Scalar::zero()
    }
}

/// `X_{f,g} = T^+ K + K T^-`: grade `n` coefficient
/// `x_n(k) = k T^+_n(k) + (k + n) T^-_n(k + n)`.
pub fn build_x_fg(f: &TrigPolynomial, g: &TrigPolynomial) -> ExtendedElement {
    let grades: std::collections::BTreeSet<i64> = f
        .coefficients()
        .chain(g.coefficients())
        .map(|(n, _)| n)
        .collect();
    ExtendedElement::from_terms(grades.into_iter().map(|n| {
        // Outside [lo, hi] both case tables are frozen, so x_n is affine there.
        let lo = -n.abs() - 2;
        let hi = n.abs() + 2;
        let x_n = IncrementSequence::tabulate(lo, hi, |k| {
            Scalar::int(k) * t_plus(f, g, n, k) + Scalar::int(k + n) * t_minus(f, g, n, k + n)
        });
        (n, x_n)
    }))
}

/// The generator whose commutator realizes a single term.
pub fn term_generator(term: &DerivationTerm) -> ExtendedElement {
    match term {
        DerivationTerm::NCovariant { n, beta } => ExtendedElement::term(*n, beta.clone()),
        DerivationTerm::Lifted { f, g } => build_x_fg(f, g),
    }
}

pub fn apply_derivation(d: &DerivationSpec, a: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for term in d.terms() {
        out = out.add(&extended_commutator(&term_generator(term), a)?);
    }
    Ok(out)
}

/// Boundary symbol `(f, g)` with `[d] = (f (1/i) d/dx, g (1/i) d/dx)`.
pub fn derivation_symbol(d: &DerivationSpec) -> BoundarySymbolPair {
    d.terms()
        .iter()
        .map(|t| match t {
            DerivationTerm::NCovariant { n, beta } => BoundarySymbolPair::new(
                TrigPolynomial::monomial(*n, beta.right_slope().clone()),
                TrigPolynomial::monomial(*n, beta.left_slope().clone()),
            ),
            DerivationTerm::Lifted { f, g } => BoundarySymbolPair::new(f.clone(), g.clone()),
        })
        .fold(BoundarySymbolPair::default(), |acc, s| acc.add(&s))
}

pub fn is_approximately_inner(d: &DerivationSpec) -> bool {
    derivation_symbol(d).is_zero()
}

/// Splits `d` as `inner + lifted` with `inner` approximately inner and
/// `lifted` the lift of the boundary symbol of `d`.
pub fn decompose_derivation(d: &DerivationSpec) -> (DerivationSpec, DerivationSpec) {
    let sym = derivation_symbol(d);
    let lifted = DerivationSpec::lifted(sym.plus, sym.minus);
    let inner = d.sub(&lifted);
    (inner, lifted)
}
