//! Sequences on `Z` with finitely many explicit values.
//!
//! [`DiagonalSequence`] is eventually constant and [`IncrementSequence`] is
//! eventually affine. Both are kept in a canonical normal form, so `==` on
//! the structs coincides with equality of the functions they denote.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Common interface of the two sequence kinds.
pub trait LatticeSequence: Clone + PartialEq + fmt::Debug {
    fn eval(&self, k: i64) -> Scalar;

    /// The sequence `k -> s(k + m)`.
    fn shift(&self, m: i64) -> Self;

    /// The sequence `k -> s(-k)`.
    fn reflect(&self) -> Self;

    /// Inclusive range of the explicitly stored values, or `None` if empty.
    fn window(&self) -> Option<(i64, i64)>;
}

/// Eventually constant sequence: explicit values on a finite window, the
/// constant `left` below it and `right` above it.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSequence {
    start: i64,
    values: Vec<Scalar>,
    left: Scalar,
    right: Scalar,
}

impl DiagonalSequence {
    /// `values[i]` sits at `start + i`. An empty `values` places the jump
    /// between the tails at `start` (left tail strictly below it).
    pub fn new(start: i64, values: Vec<Scalar>, left: Scalar, right: Scalar) -> Self {
        let mut s = DiagonalSequence {
            start,
            values,
            left,
            right,
        };
        s.normalize();
        s
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(0, Vec::new(), c.clone(), c)
    }

    pub fn zero() -> Self {
        Self::constant(Scalar::zero())
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// Indicator of `lo <= k <= hi`.
    pub fn indicator(lo: i64, hi: i64) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let len = (hi - lo + 1) as usize;
        Self::new(lo, vec![Scalar::one(); len], Scalar::zero(), Scalar::zero())
    }

    /// Indicator of `|k| <= n`.
    pub fn chi(n: i64) -> Self {
        Self::indicator(-n, n)
    }

    /// Unit mass at `k0`.
    pub fn unit(k0: i64) -> Self {
        Self::indicator(k0, k0)
    }

    /// Indicator of `k >= k0`.
    pub fn step(k0: i64) -> Self {
        Self::new(k0, Vec::new(), Scalar::zero(), Scalar::one())
    }

    /// Tabulates `f` on `[lo, hi]` with the given tails outside.
    pub fn from_fn(
        lo: i64,
        hi: i64,
        left: Scalar,
        right: Scalar,
        f: impl Fn(i64) -> Scalar,
    ) -> Self {
        let values = (lo..=hi).map(f).collect();
        Self::new(lo, values, left, right)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn left_tail(&self) -> &Scalar {
        &self.left
    }

    pub fn right_tail(&self) -> &Scalar {
        &self.right
    }

    fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty() && self.left.is_zero() && self.right.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.left.is_exact() && self.right.is_exact() && self.values.iter().all(Scalar::is_exact)
    }

    fn normalize(&mut self) {
        let lead = self.values.iter().take_while(|v| **v == self.left).count();
        self.values.drain(..lead);
        self.start += lead as i64;
        while self.values.last().is_some_and(|v| *v == self.right) {
            self.values.pop();
        }
        if self.values.is_empty() && self.left == self.right {
            self.start = 0;
        }
    }

    /// Pointwise combination of two eventually constant sequences.
    pub fn zip_with(&self, other: &Self, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        let values = (lo..hi).map(|k| op(&self.eval(k), &other.eval(k))).collect();
        Self::new(
            lo,
            values,
            op(&self.left, &other.left),
            op(&self.right, &other.right),
        )
    }

    pub fn map(&self, op: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::new(
            self.start,
            self.values.iter().map(&op).collect(),
            op(&self.left),
            op(&self.right),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|a| a * c)
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    /// Smallest inclusive range outside of which the sequence equals its
    /// tail constants. Always nonempty; used to size dense windows.
    pub fn core(&self) -> (i64, i64) {
        if self.values.is_empty() {
            (self.start - 1, self.start)
        } else {
            (self.start, self.end() - 1)
        }
    }
}

impl LatticeSequence for DiagonalSequence {
    fn eval(&self, k: i64) -> Scalar {
        if k < self.start {
            self.left.clone()
        } else if k >= self.end() {
            self.right.clone()
        } else {
            self.values[(k - self.start) as usize].clone()
        }
    }

    fn shift(&self, m: i64) -> Self {
        let mut s = self.clone();
        if !(s.values.is_empty() && s.left == s.right) {
            s.start -= m;
        }
        s
    }

    fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        let start = -self.start - self.values.len() as i64 + 1;
        Self::new(start, values, self.right.clone(), self.left.clone())
    }

    fn window(&self) -> Option<(i64, i64)> {
        (!self.values.is_empty()).then(|| (self.start, self.end() - 1))
    }
}

/// Eventually affine sequence. Below the window it continues from the first
/// stored value with increment `left_slope`, above it from the last stored
/// value with increment `right_slope`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncrementSequence {
    start: i64,
    values: Vec<Scalar>,
    left_slope: Scalar,
    right_slope: Scalar,
}

impl IncrementSequence {
    pub fn new(
        start: i64,
        values: Vec<Scalar>,
        left_slope: Scalar,
        right_slope: Scalar,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence(
                "an eventually affine sequence needs at least one explicit value".into(),
            ));
        }
        let mut s = IncrementSequence {
            start,
            values,
            left_slope,
            right_slope,
        };
        s.normalize();
        Ok(s)
    }

    /// `k -> c0 + slope * k`.
    pub fn affine(c0: Scalar, slope: Scalar) -> Self {
        Self::new(0, vec![c0], slope.clone(), slope).expect("nonempty")
    }

    /// `k -> k`.
    pub fn identity() -> Self {
        Self::affine(Scalar::zero(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::affine(c, Scalar::zero())
    }

    pub fn zero() -> Self {
        Self::constant(Scalar::zero())
    }

    /// Tabulates `f` on `[lo, hi]` (requires `lo <= hi`) and continues
    /// affinely with the increments found at the two ends of the range.
    /// When `lo == hi` the continuation is constant.
    pub fn tabulate(lo: i64, hi: i64, f: impl Fn(i64) -> Scalar) -> Self {
        assert!(lo <= hi, "empty tabulation range");
        let values: Vec<Scalar> = (lo..=hi).map(f).collect();
        let (sl, sr) = if values.len() >= 2 {
            let n = values.len();
            (&values[1] - &values[0], &values[n - 1] - &values[n - 2])
        } else {
            (Scalar::zero(), Scalar::zero())
        };
        Self::new(lo, values, sl, sr).expect("nonempty")
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn left_slope(&self) -> &Scalar {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Scalar {
        &self.right_slope
    }

    fn last(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn is_exact(&self) -> bool {
        self.left_slope.is_exact()
            && self.right_slope.is_exact()
            && self.values.iter().all(Scalar::is_exact)
    }

    /// True when both tails are constant.
    pub fn is_eventually_constant(&self) -> bool {
        self.left_slope.is_zero() && self.right_slope.is_zero()
    }

    fn normalize(&mut self) {
        let mut lead = 0;
        while self.values.len() - lead >= 2
            && &self.values[lead + 1] - &self.values[lead] == self.left_slope
        {
            lead += 1;
        }
        self.values.drain(..lead);
        self.start += lead as i64;
        while self.values.len() >= 2 {
            let n = self.values.len();
            if &self.values[n - 1] - &self.values[n - 2] == self.right_slope {
                self.values.pop();
            } else {
                break;
            }
        }
        if self.values.len() == 1 && self.left_slope == self.right_slope {
            let v0 = &self.values[0] - &(&self.left_slope * &Scalar::int(self.start));
            self.values[0] = v0;
            self.start = 0;
        }
    }

    /// Pointwise `self(k) * d(k)`.
    pub fn mul_diagonal(&self, d: &DiagonalSequence) -> Self {
        let (dlo, dhi) = d.core();
        let lo = self.start.min(dlo - 1);
        let hi = self.last().max(dhi + 1);
        let values = (lo..=hi).map(|k| self.eval(k) * d.eval(k)).collect();
        Self::new(
            lo,
            values,
            &self.left_slope * d.left_tail(),
            &self.right_slope * d.right_tail(),
        )
        .expect("nonempty")
    }

    pub fn zip_add(&self, other: &Self, sign: i64) -> Self {
        let lo = self.start.min(other.start);
        let hi = self.last().max(other.last());
        let sgn = Scalar::int(sign);
        let values = (lo..=hi)
            .map(|k| self.eval(k) + &sgn * other.eval(k))
            .collect();
        Self::new(
            lo,
            values,
            &self.left_slope + &sgn * &other.left_slope,
            &self.right_slope + &sgn * &other.right_slope,
        )
        .expect("nonempty")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_add(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_add(other, -1)
    }

    pub fn map_linear(&self, op: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::new(
            self.start,
            self.values.iter().map(&op).collect(),
            op(&self.left_slope),
            op(&self.right_slope),
        )
        .expect("nonempty")
    }

    pub fn neg(&self) -> Self {
        self.map_linear(|a| -a)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_linear(|a| a * c)
    }

    pub fn conj(&self) -> Self {
        self.map_linear(Scalar::conj)
    }

    /// Converts to an eventually constant sequence when both slopes vanish.
    pub fn to_diagonal(&self) -> Option<DiagonalSequence> {
        if !self.is_eventually_constant() {
            return None;
        }
        Some(DiagonalSequence::new(
            self.start,
            self.values.clone(),
            self.values[0].clone(),
            self.values[self.values.len() - 1].clone(),
        ))
    }
}

impl From<&DiagonalSequence> for IncrementSequence {
    fn from(d: &DiagonalSequence) -> Self {
        let (lo, hi) = d.core();
        let values = (lo - 1..=hi + 1).map(|k| d.eval(k)).collect();
        IncrementSequence::new(lo - 1, values, Scalar::zero(), Scalar::zero()).expect("nonempty")
    }
}

impl LatticeSequence for IncrementSequence {
    fn eval(&self, k: i64) -> Scalar {
        if k < self.start {
            &self.values[0] + &self.left_slope * Scalar::int(k - self.start)
        } else if k > self.last() {
            &self.values[self.values.len() - 1] + &self.right_slope * Scalar::int(k - self.last())
        } else {
            self.values[(k - self.start) as usize].clone()
        }
    }

    fn shift(&self, m: i64) -> Self {
        let mut s = IncrementSequence {
            start: self.start - m,
            ..self.clone()
        };
        s.normalize();
        s
    }

    fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self::new(
            -self.last(),
            values,
            -&self.right_slope,
            -&self.left_slope,
        )
        .expect("nonempty")
    }

    fn window(&self) -> Option<(i64, i64)> {
        Some((self.start, self.last()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense<S: LatticeSequence>(s: &S, lo: i64, hi: i64) -> Vec<Scalar> {
        (lo..=hi).map(|k| s.eval(k)).collect()
    }

    #[test]
    fn constant_far_away() {
        assert_eq!(DiagonalSequence::one().eval(1_000_000), Scalar::one());
    }

    #[test]
    fn chi_outside_support() {
        let chi = DiagonalSequence::chi(2);
        assert_eq!(chi.eval(3), Scalar::zero());
        assert_eq!(chi.eval(-2), Scalar::one());
    }

    #[test]
    fn absolute_value_sequence() {
        let abs = IncrementSequence::new(0, vec![Scalar::zero()], Scalar::int(-1), Scalar::one())
            .unwrap();
        assert_eq!(abs.eval(-4), Scalar::int(4));
        assert_eq!(abs.eval(7), Scalar::int(7));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(DiagonalSequence::chi(1).shift(1), DiagonalSequence::indicator(-2, 0));
        let b = IncrementSequence::identity().shift(3);
        assert_eq!(b, IncrementSequence::affine(Scalar::int(3), Scalar::one()));
        let step = DiagonalSequence::step(0).shift(5);
        assert_eq!(step.left_tail(), &Scalar::zero());
        assert_eq!(step.right_tail(), &Scalar::one());
        assert_eq!(step, DiagonalSequence::step(-5));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(DiagonalSequence::chi(3).reflect(), DiagonalSequence::chi(3));
        let ge0 = DiagonalSequence::step(0);
        let le0 = DiagonalSequence::new(1, vec![], Scalar::one(), Scalar::zero());
        assert_eq!(ge0.reflect(), le0);
        assert_eq!(
            IncrementSequence::identity().reflect(),
            IncrementSequence::affine(Scalar::zero(), Scalar::int(-1))
        );
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = DiagonalSequence::new(
            -3,
            vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::one()],
            Scalar::zero(),
            Scalar::one(),
        );
        assert_eq!(a, DiagonalSequence::step(-1));
        let b = IncrementSequence::tabulate(-5, 5, |k| Scalar::int(2 * k + 1));
        assert_eq!(b, IncrementSequence::affine(Scalar::one(), Scalar::int(2)));
        let c = IncrementSequence::tabulate(-5, 5, |k| Scalar::int(k.abs()));
        assert_eq!(c.window(), Some((0, 0)));
    }

    #[test]
    fn diagonal_embeds_with_zero_slopes() {
        let d = DiagonalSequence::new(2, vec![Scalar::int(4)], Scalar::int(-1), Scalar::int(3));
        let inc = IncrementSequence::from(&d);
        assert!(inc.is_eventually_constant());
        assert_eq!(dense(&inc, -10, 10), dense(&d, -10, 10));
        assert_eq!(inc.to_diagonal().unwrap(), d);
    }

    #[test]
    fn increment_times_diagonal() {
        let beta = IncrementSequence::identity();
        let p = DiagonalSequence::step(0);
        let prod = beta.mul_diagonal(&p);
        for k in -20..20 {
            assert_eq!(prod.eval(k), Scalar::int(if k >= 0 { k } else { 0 }));
        }
        assert_eq!(prod.left_slope(), &Scalar::zero());
        assert_eq!(prod.right_slope(), &Scalar::one());
    }

    #[test]
    fn empty_increment_literal_rejected() {
        assert!(IncrementSequence::new(0, vec![], Scalar::zero(), Scalar::zero()).is_err());
    }
}
