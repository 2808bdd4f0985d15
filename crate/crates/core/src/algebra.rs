//! The dense algebra of finite sums `sum_n U^n a_n(K)` and its actions on
//! finitely supported Hilbert vectors.
//!
//! Products follow `a(K) U = U a(K + 1)`, so the grade `n + m` part of
//! `U^n a_n(K) * U^m b_m(K)` is `U^{n+m} a_n(K + m) b_m(K)`.

use std::collections::BTreeMap;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::hilbert::HilbertElement;
use crate::scalar::Scalar;
use crate::sequence::{DiagonalSequence, IncrementSequence, LatticeSequence};

/// Coefficient sequences that can sit in front of a power of `U`.
pub trait Coefficient: LatticeSequence {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn mul_diagonal(&self, d: &DiagonalSequence) -> Self;
}

impl Coefficient for DiagonalSequence {
    fn zero() -> Self {
        DiagonalSequence::zero()
    }
    fn is_zero(&self) -> bool {
        DiagonalSequence::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DiagonalSequence::add(self, other)
    }
    fn neg(&self) -> Self {
        DiagonalSequence::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        DiagonalSequence::scale(self, c)
    }
    fn mul_diagonal(&self, d: &DiagonalSequence) -> Self {
        self.mul(d)
    }
}

impl Coefficient for IncrementSequence {
    fn zero() -> Self {
        IncrementSequence::zero()
    }
    fn is_zero(&self) -> bool {
        IncrementSequence::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        IncrementSequence::add(self, other)
    }
    fn neg(&self) -> Self {
        IncrementSequence::neg(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        IncrementSequence::scale(self, c)
    }
    fn mul_diagonal(&self, d: &DiagonalSequence) -> Self {
        IncrementSequence::mul_diagonal(self, d)
    }
}

/// Finite sum `sum_n U^n c_n(K)`; zero grades are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<C> {
    terms: BTreeMap<i64, C>,
}

/// Element of the dense algebra: eventually constant coefficients.
pub type AlgebraElement = Graded<DiagonalSequence>;

/// Same shape as [`AlgebraElement`] but coefficients may grow affinely.
/// Such elements are only used as commutator generators.
pub type ExtendedElement = Graded<IncrementSequence>;

impl<C: Coefficient> Default for Graded<C> {
    fn default() -> Self {
        Graded {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Graded<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `U^n c(K)`.
    pub fn term(n: i64, c: C) -> Self {
        let mut out = Self::zero();
        out.accumulate(n, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (n, c) in terms {
            out.accumulate(n, c);
        }
        out
    }

    fn accumulate(&mut self, n: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&n) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(n, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grade(&self, n: i64) -> Option<&C> {
        self.terms.get(&n)
    }

    pub fn grades(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// The grade-`n` term `U^n c_n(K)` alone.
    pub fn fourier_component(&self, n: i64) -> Self {
        match self.terms.get(&n) {
            Some(c) => Self::term(n, c.clone()),
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.accumulate(n, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(n, c)| (n, c.neg())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|(n, c)| (n, c.scale(s))))
    }

    /// `self * b` for `b` in the dense algebra.
    pub fn mul_algebra(&self, b: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (n, x) in self.terms() {
            for (m, bm) in b.terms() {
                out.accumulate(n + m, x.shift(m).mul_diagonal(bm));
            }
        }
        out
    }

    /// `a * self` for `a` in the dense algebra.
    pub fn left_mul_algebra(&self, a: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (n, an) in a.terms() {
            for (m, y) in self.terms() {
                out.accumulate(n + m, y.mul_diagonal(&an.shift(m)));
            }
        }
        out
    }

    /// Largest absolute grade present, 0 for the zero element.
    pub fn grade_span(&self) -> i64 {
        self.grades().map(i64::abs).max().unwrap_or(0)
    }
}

impl<C: Coefficient> Mul<&AlgebraElement> for &Graded<C> {
    type Output = Graded<C>;
    fn mul(self, rhs: &AlgebraElement) -> Graded<C> {
        self.mul_algebra(rhs)
    }
}

impl Mul<&ExtendedElement> for &AlgebraElement {
    type Output = ExtendedElement;
    fn mul(self, rhs: &ExtendedElement) -> ExtendedElement {
        rhs.left_mul_algebra(self)
    }
}

impl AlgebraElement {
    pub fn one() -> Self {
        Self::term(0, DiagonalSequence::one())
    }

    pub fn diag(s: DiagonalSequence) -> Self {
        Self::term(0, s)
    }

    /// `(U^n a(K))^* = U^{-n} conj(a)(K - n)`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms().map(|(n, a)| (-n, a.conj().shift(-n))))
    }

    /// Boundary values `(sum a_n(+inf) e^{inx}, sum a_n(-inf) e^{inx})`.
    pub fn symbol(&self) -> BoundarySymbolPair {
        BoundarySymbolPair {
            plus: TrigPolynomial::from_coefficients(
                self.terms().map(|(n, a)| (n, a.right_tail().clone())),
            ),
            minus: TrigPolynomial::from_coefficients(
                self.terms().map(|(n, a)| (n, a.left_tail().clone())),
            ),
        }
    }

    pub fn to_extended(&self) -> ExtendedElement {
        ExtendedElement::from_terms(self.terms().map(|(n, a)| (n, IncrementSequence::from(a))))
    }

    /// Smallest `R` such that every coefficient is constant outside `[-R, R]`.
    pub fn core_radius(&self) -> i64 {
        self.terms()
            .map(|(_, a)| {
                let (lo, hi) = a.core();
                lo.abs().max(hi.abs())
            })
            .max()
            .unwrap_or(0)
    }

    /// `pi(a) f = a f`.
    pub fn act_left(&self, f: &HilbertElement) -> HilbertElement {
        let mut out = HilbertElement::zero();
        for (p, ap) in self.terms() {
            for (n, k, v) in f.iter() {
                out.add_at(p + n, k, &(ap.eval(k + n) * v));
            }
        }
        out
    }

    /// `pi'(a) f = f a`.
    pub fn act_right(&self, f: &HilbertElement) -> HilbertElement {
        let mut out = HilbertElement::zero();
        for (p, ap) in self.terms() {
            for (n, j, v) in f.iter() {
                let k = j - p;
                out.add_at(n + p, k, &(v * ap.eval(k)));
            }
        }
        out
    }
}

impl ExtendedElement {
    /// Returns the element as a member of the dense algebra when every
    /// coefficient has constant tails.
    pub fn to_algebra(&self) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (n, c) in self.terms() {
            let d = c.to_diagonal().ok_or(Error::ResidualGrowth { grade: n })?;
            out.accumulate(n, d);
        }
        Ok(out)
    }
}

/// Either kind of graded element, for call sites that decide at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Algebra(AlgebraElement),
    Extended(ExtendedElement),
}

impl Element {
    pub fn try_mul(&self, rhs: &Element) -> Result<Element> {
        match (self, rhs) {
            (Element::Algebra(a), Element::Algebra(b)) => Ok(Element::Algebra(a * b)),
            (Element::Extended(x), Element::Algebra(b)) => Ok(Element::Extended(x * b)),
            (Element::Algebra(a), Element::Extended(y)) => Ok(Element::Extended(a * y)),
            (Element::Extended(_), Element::Extended(_)) => Err(Error::ExtendedProduct),
        }
    }
}

/// Trigonometric polynomial `sum_n c_n e^{inx}` with finitely many nonzero
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigPolynomial {
    coefficients: BTreeMap<i64, Scalar>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coefficients([(0, c)])
    }

    /// `c e^{inx}`.
    pub fn monomial(n: i64, c: Scalar) -> Self {
        Self::from_coefficients([(n, c)])
    }

    /// `e^{inx}`.
    pub fn exp(n: i64) -> Self {
        Self::monomial(n, Scalar::one())
    }

    pub fn from_coefficients(coeffs: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (n, c) in coeffs {
            p.add_at(n, &c);
        }
        p
    }

    fn add_at(&mut self, n: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(n).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&n);
        }
    }

    pub fn coefficient(&self, n: i64) -> Scalar {
        self.coefficients.get(&n).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coefficients.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.coefficients() {
            out.add_at(n, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_coefficients(self.coefficients().map(|(n, c)| (n, c * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (n, a) in self.coefficients() {
            for (m, b) in other.coefficients() {
                out.add_at(n + m, &(a * b));
            }
        }
        out
    }

    /// Multiplication by `e^{ijx}`.
    pub fn shift(&self, j: i64) -> Self {
        Self::from_coefficients(self.coefficients().map(|(n, c)| (n + j, c.clone())))
    }

    pub fn evaluate(&self, x: f64) -> num_complex::Complex64 {
        self.coefficients()
            .map(|(n, c)| c.to_complex64() * num_complex::Complex64::from_polar(1.0, n as f64 * x))
            .sum()
    }

    /// `f(U) = sum_n c_n U^n`.
    pub fn of_shift(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.coefficients()
                .map(|(n, c)| (n, DiagonalSequence::constant(c.clone()))),
        )
    }
}

/// Pair of boundary functions `(sigma_+, sigma_-)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundarySymbolPair {
    pub plus: TrigPolynomial,
    pub minus: TrigPolynomial,
}

impl BoundarySymbolPair {
    pub fn new(plus: TrigPolynomial, minus: TrigPolynomial) -> Self {
        BoundarySymbolPair { plus, minus }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.plus.add(&other.plus), self.minus.add(&other.minus))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.plus.mul(&other.plus), self.minus.mul(&other.minus))
    }

    pub fn shift(&self, j: i64) -> Self {
        Self::new(self.plus.shift(j), self.minus.shift(j))
    }
}

/// Named elements of the algebra.
pub mod generators {
    use super::*;

    /// Bilateral shift `U E_k = E_{k+1}`.
    pub fn u() -> AlgebraElement {
        AlgebraElement::term(1, DiagonalSequence::one())
    }

    pub fn u_inv() -> AlgebraElement {
        AlgebraElement::term(-1, DiagonalSequence::one())
    }

    /// Projection onto `span{E_k : k >= 0}`.
    pub fn p_ge0() -> AlgebraElement {
        AlgebraElement::diag(DiagonalSequence::step(0))
    }

    /// Projection onto `span{E_k : k < 0}`.
    pub fn p_lt0() -> AlgebraElement {
        AlgebraElement::one().sub(&p_ge0())
    }

    /// Projection onto `span{E_0}`.
    pub fn p0() -> AlgebraElement {
        AlgebraElement::diag(DiagonalSequence::unit(0))
    }

    pub fn diag(s: DiagonalSequence) -> AlgebraElement {
        AlgebraElement::diag(s)
    }

    pub fn chi(n: i64) -> AlgebraElement {
        AlgebraElement::diag(DiagonalSequence::chi(n))
    }

    /// Weighted shift `U_r = U w(K)` with `w = r` on `k < 0` and `1` on `k >= 0`.
    pub fn u_r(r: Scalar) -> Result<AlgebraElement> {
        let inside = r.is_positive_real() && (&Scalar::one() - &r).is_positive_real();
        if !inside {
            return Err(Error::WeightOutOfRange(r.to_string()));
        }
        Ok(AlgebraElement::term(
            1,
            DiagonalSequence::new(0, vec![], r, Scalar::one()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    #[test]
    fn shift_products_follow_commutation_relation() {
        let a = DiagonalSequence::unit(3);
        let b = DiagonalSequence::indicator(-1, 4);
        let lhs = &AlgebraElement::term(1, a.clone()) * &AlgebraElement::term(1, b.clone());
        assert_eq!(lhs, AlgebraElement::term(2, a.shift(1).mul(&b)));
        assert_eq!(&AlgebraElement::one() * &lhs, lhs);
    }

    #[test]
    fn compressed_shift() {
        assert_eq!(
            &(&p_ge0() * &u()) * &p_ge0(),
            AlgebraElement::term(1, DiagonalSequence::step(0))
        );
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(u().adjoint(), u_inv());
        let x = AlgebraElement::term(1, DiagonalSequence::unit(0));
        assert_eq!(x.adjoint(), AlgebraElement::term(-1, DiagonalSequence::unit(1)));
        let real = AlgebraElement::diag(DiagonalSequence::indicator(-2, 5));
        assert_eq!(real.adjoint(), real);
    }

    #[test]
    fn weighted_shift_modulus() {
        let ur = u_r(Scalar::ratio(1, 3)).unwrap();
        let m = &ur.adjoint() * &ur;
        assert_eq!(
            m,
            AlgebraElement::diag(DiagonalSequence::new(0, vec![], Scalar::ratio(1, 9), Scalar::one()))
        );
        assert!(u_r(Scalar::one()).is_err());
        assert!(u_r(Scalar::zero()).is_err());
        assert!(u_r(Scalar::gaussian(0, 1)).is_err());
    }

    #[test]
    fn projections() {
        assert_eq!(&p_ge0() * &p_ge0(), p_ge0());
        assert_eq!(&p0() * &p0(), p0());
        assert_eq!(chi(2), AlgebraElement::diag(DiagonalSequence::indicator(-2, 2)));
    }

    #[test]
    fn symbol_examples() {
        let up = &u() * &p_ge0();
        assert_eq!(
            up.symbol(),
            BoundarySymbolPair::new(TrigPolynomial::exp(1), TrigPolynomial::zero())
        );
        assert!(p0().symbol().is_zero());
        let r = Scalar::ratio(1, 2);
        assert_eq!(
            u_r(r.clone()).unwrap().symbol(),
            BoundarySymbolPair::new(TrigPolynomial::exp(1), TrigPolynomial::monomial(1, r))
        );
    }

    #[test]
    fn fourier_components() {
        let a = u().add(&p_ge0());
        assert_eq!(a.fourier_component(0), p_ge0());
        assert_eq!(a.fourier_component(1), u());
        assert!((&u() * &u()).fourier_component(1).is_zero());
    }

    #[test]
    fn actions_on_basis_vectors() {
        assert_eq!(u().act_left(&HilbertElement::unit(0, 0)), HilbertElement::unit(1, 0));
        assert_eq!(u().act_right(&HilbertElement::unit(0, 0)), HilbertElement::unit(1, -1));
        let a = AlgebraElement::diag(DiagonalSequence::unit(0));
        assert_eq!(a.act_left(&HilbertElement::unit(2, -2)), HilbertElement::unit(2, -2));
        assert!(a.act_left(&HilbertElement::unit(2, 0)).is_zero());
    }

    #[test]
    fn extended_products_rejected() {
        let x = Element::Extended(ExtendedElement::term(1, IncrementSequence::identity()));
        assert_eq!(x.try_mul(&x), Err(Error::ExtendedProduct));
        let a = Element::Algebra(u());
        assert!(matches!(x.try_mul(&a), Ok(Element::Extended(_))));
        assert!(matches!(a.try_mul(&a), Ok(Element::Algebra(_))));
    }
}
