//! Reflection `(n, k) -> (n, -k - n)` on the lattice, its shadows on the
//! algebra and the Hilbert space, rotations, and the half-spaces `H+`/`H-`.

use crate::algebra::AlgebraElement;
use crate::hilbert::HilbertElement;
use crate::scalar::Scalar;
use crate::sequence::LatticeSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfSpaceTag {
    /// Support in `n + 2k >= 0`.
    Plus,
    /// Support in `n + 2k <= 0`.
    Minus,
}

impl HalfSpaceTag {
    pub fn contains(self, n: i64, k: i64) -> bool {
        match self {
            HalfSpaceTag::Plus => n + 2 * k >= 0,
            HalfSpaceTag::Minus => n + 2 * k <= 0,
        }
    }
}

/// Image of a lattice point under the reflection.
pub fn reflect_site(n: i64, k: i64) -> (i64, i64) {
    (n, -k - n)
}

/// `(Theta f)_n(k) = f_n(-k - n)`.
pub fn theta_hilbert(f: &HilbertElement) -> HilbertElement {
    HilbertElement::from_entries(f.iter().map(|(n, k, v)| (reflect_site(n, k), v.clone())))
}

/// `theta(sum U^n a_n(K)) = sum U^n a_n(-K - n)`, the anti-automorphism with
/// `Theta pi(a) Theta = pi'(theta(a))`.
pub fn theta_algebra(a: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(a.terms().map(|(n, c)| (n, c.reflect().shift(n))))
}

/// `U_phi f = sum U^n e^{i n phi} f_n(K)`; float valued.
pub fn rotate_hilbert(f: &HilbertElement, phi: f64) -> HilbertElement {
    f.map_entries(|n, _, v| v * Scalar::cis(n as f64 * phi))
}

/// `rho_phi`, scaling grade `n` by `e^{i n phi}`; float valued.
pub fn rotate_algebra(a: &AlgebraElement, phi: f64) -> AlgebraElement {
    a.scale_by_grade(|n| Scalar::cis(n as f64 * phi))
}

pub fn halfspace_membership(f: &HilbertElement, tag: HalfSpaceTag) -> bool {
    f.iter().all(|(n, k, _)| tag.contains(n, k))
}

pub fn halfspace_project(f: &HilbertElement, tag: HalfSpaceTag) -> HilbertElement {
    HilbertElement::from_entries(
        f.iter()
            .filter(|&(n, k, _)| tag.contains(n, k))
            .map(|(n, k, v)| ((n, k), v.clone())),
    )
}

impl AlgebraElement {
    fn scale_by_grade(&self, factor: impl Fn(i64) -> Scalar) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|(n, c)| (n, c.scale(&factor(n)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generators::*;
    use crate::sequence::DiagonalSequence;

    #[test]
    fn theta_on_basis_vectors() {
        assert_eq!(theta_hilbert(&HilbertElement::unit(1, 0)), HilbertElement::unit(1, -1));
        assert_eq!(theta_hilbert(&HilbertElement::unit(0, 0)), HilbertElement::unit(0, 0));
        assert_eq!(theta_hilbert(&HilbertElement::unit(2, -1)), HilbertElement::unit(2, -1));
    }

    #[test]
    fn theta_on_generators() {
        assert_eq!(theta_algebra(&u()), u());
        let a = DiagonalSequence::indicator(1, 4);
        assert_eq!(
            theta_algebra(&AlgebraElement::diag(a.clone())),
            AlgebraElement::diag(a.reflect())
        );
        let x = AlgebraElement::term(1, DiagonalSequence::unit(0));
        assert_eq!(theta_algebra(&x), AlgebraElement::term(1, DiagonalSequence::unit(-1)));
    }

    #[test]
    fn rotations() {
        let f = HilbertElement::unit(2, 5);
        assert!(rotate_hilbert(&f, 0.0).max_abs_diff(&f) == 0.0);
        assert!(rotate_hilbert(&f, std::f64::consts::PI).max_abs_diff(&f) < 1e-15);
        let g = HilbertElement::unit(1, 0);
        let rotated = rotate_hilbert(&g, std::f64::consts::PI);
        assert!(rotated.max_abs_diff(&g.scale(&Scalar::int(-1))) < 1e-15);
    }

    #[test]
    fn half_spaces() {
        assert!(halfspace_membership(&HilbertElement::unit(0, 1), HalfSpaceTag::Plus));
        assert!(!halfspace_membership(&HilbertElement::unit(1, -1), HalfSpaceTag::Plus));
        let f = HilbertElement::unit(0, 1).add(&HilbertElement::unit(1, -1));
        assert_eq!(halfspace_project(&f, HalfSpaceTag::Plus), HilbertElement::unit(0, 1));
        assert_eq!(halfspace_project(&f, HalfSpaceTag::Minus), HilbertElement::unit(1, -1));
    }
}
