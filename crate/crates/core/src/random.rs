//! Seeded generators for randomized suites. All draws go through a
//! `ChaCha8Rng`, so a seed fixes every case.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, TrigPolynomial};
use crate::derivation::{DerivationSpec, DerivationTerm};
use crate::hilbert::HilbertElement;
use crate::scalar::Scalar;
use crate::sequence::{DiagonalSequence, IncrementSequence};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian rational with small numerators and denominators.
pub fn exact_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let den = rng.gen_range(1..=3);
    let re = Scalar::ratio(rng.gen_range(-3..=3), den);
    if rng.gen_bool(0.5) {
        re
    } else {
        re + Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)) * Scalar::i()
    }
}

fn exact_values<R: Rng>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| exact_scalar(rng)).collect()
}

pub fn diagonal<R: Rng>(rng: &mut R) -> DiagonalSequence {
    let start = rng.gen_range(-4..=4);
    let len = rng.gen_range(0..=4);
    let values = exact_values(rng, len);
    let left = if rng.gen_bool(0.5) { Scalar::zero() } else { exact_scalar(rng) };
    let right = if rng.gen_bool(0.5) { Scalar::zero() } else { exact_scalar(rng) };
    DiagonalSequence::new(start, values, left, right)
}

pub fn increment<R: Rng>(rng: &mut R) -> IncrementSequence {
    let start = rng.gen_range(-3..=3);
    let len = rng.gen_range(1..=4);
    let values = exact_values(rng, len);
    let slope = |rng: &mut R| {
        if rng.gen_bool(0.4) {
            Scalar::zero()
        } else {
            Scalar::int(rng.gen_range(-2..=2))
        }
    };
    let sl = slope(rng);
    let sr = slope(rng);
    IncrementSequence::new(start, values, sl, sr).expect("values are nonempty")
}

/// Up to three grades in `[-3, 3]`.
pub fn algebra<R: Rng>(rng: &mut R) -> AlgebraElement {
    let terms = rng.gen_range(1..=3);
    AlgebraElement::from_terms((0..terms).map(|_| (rng.gen_range(-3..=3), diagonal(rng))))
}

/// One of the named generators, or a random element.
pub fn generator_or_element<R: Rng>(rng: &mut R) -> AlgebraElement {
    use crate::algebra::generators::*;
    match rng.gen_range(0..7) {
        0 => u(),
        1 => u_inv(),
        2 => p_ge0(),
        3 => p0(),
        4 => chi(rng.gen_range(0..=3)),
        5 => diag(diagonal(rng)),
        _ => algebra(rng),
    }
}

pub fn hilbert<R: Rng>(rng: &mut R, max_entries: usize, radius: i64) -> HilbertElement {
    let count = rng.gen_range(0..=max_entries);
    HilbertElement::from_entries((0..count).map(|_| {
        let site = (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        (site, exact_scalar(rng))
    }))
}

/// Exact vector supported in `n + 2k >= 0`.
pub fn hilbert_plus<R: Rng>(rng: &mut R, max_entries: usize, radius: i64) -> HilbertElement {
    let count = rng.gen_range(0..=max_entries);
    HilbertElement::from_entries((0..count).map(|_| {
        let n = rng.gen_range(-radius..=radius);
        let lo = (-n).div_euclid(2) + (-n).rem_euclid(2);
        let k = rng.gen_range(lo..=lo + radius);
        ((n, k), exact_scalar(rng))
    }))
}

pub fn trig<R: Rng>(rng: &mut R) -> TrigPolynomial {
    let count = rng.gen_range(0..=3);
    TrigPolynomial::from_coefficients((0..count).map(|_| (rng.gen_range(-2..=2), exact_scalar(rng))))
}

/// Up to three terms mixing n-covariant and lifted pieces.
pub fn derivation<R: Rng>(rng: &mut R) -> DerivationSpec {
    let count = rng.gen_range(1..=3);
    DerivationSpec::new((0..count).map(|_| {
        if rng.gen_bool(0.7) {
            DerivationTerm::NCovariant {
                n: rng.gen_range(-2..=2),
                beta: increment(rng),
            }
        } else {
            DerivationTerm::Lifted {
                f: trig(rng),
                g: trig(rng),
            }
        }
    }))
}

/// A derivation whose symbol cancels: slopes matched against a lifted term.
pub fn cancelling_derivation<R: Rng>(rng: &mut R) -> DerivationSpec {
    let n = rng.gen_range(-2..=2);
    let beta = increment(rng);
    let plus = TrigPolynomial::monomial(n, beta.right_slope().clone());
    let minus = TrigPolynomial::monomial(n, beta.left_slope().clone());
    DerivationSpec::new([
        DerivationTerm::NCovariant { n, beta },
        DerivationTerm::Lifted {
            f: plus.neg(),
            g: minus.neg(),
        },
    ])
}

/// Strictly positive rational `beta` with tails that do not decrease
/// outward.
pub fn positive_beta<R: Rng>(rng: &mut R) -> IncrementSequence {
    let start = rng.gen_range(-4..=0);
    let len = rng.gen_range(1..=6);
    let values: Vec<Scalar> = (0..len)
        .map(|_| Scalar::ratio(rng.gen_range(1..=12), rng.gen_range(1..=4)))
        .collect();
    let sl = Scalar::int(-rng.gen_range(0..=2));
    let sr = Scalar::int(rng.gen_range(0..=2));
    IncrementSequence::new(start, values, sl, sr).expect("values are nonempty")
}

/// Float complex `beta` with `|beta| <= 4` and constant tails.
pub fn constant_tail_beta<R: Rng>(rng: &mut R) -> IncrementSequence {
    let draw = |rng: &mut R| {
        let r = rng.gen_range(0.2..4.0);
        let phase = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..std::f64::consts::TAU) };
        Scalar::float(r * phase.cos(), r * phase.sin())
    };
    let start = rng.gen_range(-6..=2);
    let len = rng.gen_range(0..=6);
    let values: Vec<Scalar> = (0..len).map(|_| draw(rng)).collect();
    let left = draw(rng);
    let right = draw(rng);
    IncrementSequence::from(&DiagonalSequence::new(start, values, left, right))
}

/// Float vector in `H+` on sectors `|n| <= max_sector` with at most
/// `max_entries` entries.
pub fn rp_vector<R: Rng>(rng: &mut R, max_entries: usize, max_sector: i64) -> HilbertElement {
    let count = rng.gen_range(1..=max_entries);
    let sectors: Vec<i64> = (-max_sector..=max_sector).collect();
    let chosen: Vec<i64> = (0..rng.gen_range(1..=3))
        .map(|_| *sectors.choose(rng).expect("nonempty"))
        .collect();
    HilbertElement::from_entries((0..count).map(|_| {
        let n = *chosen.choose(rng).expect("nonempty");
        let lo = (-n).div_euclid(2) + (-n).rem_euclid(2);
        let k = rng.gen_range(lo..=lo + 6);
        let v = Scalar::float(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        ((n, k), v)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{halfspace_membership, HalfSpaceTag};

    #[test]
    fn seeds_replay() {
        let a: Vec<_> = {
            let mut r = rng(9);
            (0..20).map(|_| algebra(&mut r)).collect()
        };
        let b: Vec<_> = {
            let mut r = rng(9);
            (0..20).map(|_| algebra(&mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn half_space_generators_stay_inside() {
        let mut r = rng(3);
        for _ in 0..200 {
            assert!(halfspace_membership(&hilbert_plus(&mut r, 6, 5), HalfSpaceTag::Plus));
            assert!(halfspace_membership(&rp_vector(&mut r, 20, 8), HalfSpaceTag::Plus));
        }
    }

    #[test]
    fn positive_betas_pass_the_check() {
        let mut r = rng(5);
        for _ in 0..100 {
            crate::rp::check_strictly_positive(&positive_beta(&mut r)).unwrap();
        }
    }
}
