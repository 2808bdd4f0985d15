//! Hilbert-space implementations of invariant and covariant derivations.
//!
//! Invariant: `D f = beta(K) f - f alpha(K)`.
//! Covariant: `D f = U beta(K) f - f U alpha(K)`.

use crate::error::{Error, Result};
use crate::hilbert::HilbertElement;
use crate::scalar::Scalar;
use crate::sequence::{IncrementSequence, LatticeSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ImplementationKind {
    Invariant,
    Covariant,
}

/// Sign `mu` in `alpha(k) = mu beta(-k - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImplementationSpec {
    pub kind: ImplementationKind,
    pub beta: IncrementSequence,
    pub alpha: IncrementSequence,
    pub mu: Option<Sign>,
}

impl ImplementationSpec {
    pub fn new(kind: ImplementationKind, beta: IncrementSequence, alpha: IncrementSequence) -> Self {
        let mut spec = ImplementationSpec {
            kind,
            beta,
            alpha,
            mu: None,
        };
        spec.mu = theta_compatibility(&spec).mu;
        spec
    }

    /// Reflection-invariant invariant implementation, `alpha(k) = -beta(-k)`.
    pub fn invariant_reflected(beta: IncrementSequence) -> Self {
        let alpha = beta.reflect().neg();
        Self::new(ImplementationKind::Invariant, beta, alpha)
    }

    /// Covariant implementation with `alpha(k) = mu beta(-k - 1)`.
    pub fn covariant_reflected(beta: IncrementSequence, mu: Sign) -> Self {
        let alpha = beta.reflect().shift(1).scale(&Scalar::int(mu.as_i64()));
        Self::new(ImplementationKind::Covariant, beta, alpha)
    }
}

pub fn apply_d(spec: &ImplementationSpec, f: &HilbertElement) -> HilbertElement {
    let mut out = HilbertElement::zero();
    match spec.kind {
        ImplementationKind::Invariant => {
            for (n, k, v) in f.iter() {
                let w = spec.beta.eval(k + n) - spec.alpha.eval(k);
                out.add_at(n, k, &(w * v));
            }
        }
        ImplementationKind::Covariant => {
            for (n, k, v) in f.iter() {
                out.add_at(n + 1, k, &(spec.beta.eval(k + n) * v));
                out.add_at(n + 1, k - 1, &-(spec.alpha.eval(k - 1) * v));
            }
        }
    }
    out
}

/// `D^* f = sum U^{n-1} (conj(beta)(K+n-1) f_n(K) - conj(alpha)(K-1) f_n(K-1))`.
pub fn apply_d_adjoint(spec: &ImplementationSpec, f: &HilbertElement) -> Result<HilbertElement> {
    if spec.kind != ImplementationKind::Covariant {
        return Err(Error::KindMismatch {
            expected: "covariant",
        });
    }
    let mut out = HilbertElement::zero();
    for (n, k, v) in f.iter() {
        out.add_at(n - 1, k, &(spec.beta.eval(k + n - 1).conj() * v));
        out.add_at(n - 1, k + 1, &-(spec.alpha.eval(k).conj() * v));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaCompatibility {
    /// Compatible with the reflection: `Theta D Theta = D` for the invariant
    /// kind, `Theta D^*D Theta = D^*D` for the covariant kind.
    pub invariant: bool,
    /// Sign branch of a compatible covariant implementation.
    pub mu: Option<Sign>,
}

pub fn theta_compatibility(spec: &ImplementationSpec) -> ThetaCompatibility {
    match spec.kind {
        ImplementationKind::Invariant => ThetaCompatibility {
            invariant: spec.alpha == spec.beta.reflect().neg(),
            mu: None,
        },
        ImplementationKind::Covariant => {
            let mirrored = spec.beta.reflect().shift(1);
            let mu = if spec.alpha == mirrored {
                Some(Sign::Plus)
            } else if spec.alpha == mirrored.neg() {
                Some(Sign::Minus)
            } else {
                None
            };
            ThetaCompatibility {
                invariant: mu.is_some(),
                mu,
            }
        }
    }
}
