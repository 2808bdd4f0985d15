//! Complex scalars in two modes: exact rational-complex and double-precision.
//!
//! Arithmetic between two exact scalars stays exact. Mixing modes promotes
//! to floating point; there is no route back from float to exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gaussian rational `p + q i` with `p, q` in `Q`.
pub type ExactComplex = Complex<BigRational>;

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(ExactComplex),
    Float(Complex64),
}

/// Absolute tolerance used when comparing floating-point scalars.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-12)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 on huge ratios can fail; fall back to a scaled division.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(ExactComplex::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(ExactComplex::one())
    }

    pub fn i() -> Self {
        Scalar::Exact(ExactComplex::new(rat(0), rat(1)))
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(ExactComplex::new(rat(n), rat(0)))
    }

    /// Exact `re + im i` with integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::Exact(ExactComplex::new(rat(re), rat(im)))
    }

    /// Exact real rational `numer / denom`. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar::Exact(ExactComplex::new(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            rat(0),
        ))
    }

    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact(ExactComplex::new(re, im))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn real(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&ExactComplex> {
        match self {
            Scalar::Exact(z) => Some(z),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im)),
            Scalar::Float(z) => *z,
        }
    }

    /// Converts to float mode unconditionally.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_complex64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.im.is_zero(),
            Scalar::Float(z) => z.im == 0.0,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(z.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(ExactComplex::new(z.re.clone(), rat(0))),
            Scalar::Float(z) => Scalar::Float(Complex64::new(z.re, 0.0)),
        }
    }

    pub fn im(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(ExactComplex::new(z.im.clone(), rat(0))),
            Scalar::Float(z) => Scalar::Float(Complex64::new(z.im, 0.0)),
        }
    }

    /// `|z|^2`, exact when `self` is exact.
    pub fn norm_sqr(&self) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(ExactComplex::new(z.norm_sqr(), rat(0))),
            Scalar::Float(z) => Scalar::Float(Complex64::new(z.norm_sqr(), 0.0)),
        }
    }

    /// Sign of the real part of a real scalar; `None` for a scalar with a
    /// nonzero imaginary part.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        match self {
            Scalar::Exact(z) => Some(if z.re.is_positive() {
                Ordering::Greater
            } else if z.re.is_negative() {
                Ordering::Less
            } else {
                Ordering::Equal
            }),
            Scalar::Float(z) => z.re.partial_cmp(&0.0),
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.real_sign() == Some(Ordering::Greater)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            return None;
        }
        Some(match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            _ => Scalar::Float(self.to_complex64() / rhs.to_complex64()),
        })
    }

    pub fn approx_eq(&self, other: &Scalar, tol: Tolerance) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_complex64() - other.to_complex64()).norm() <= tol.0,
        }
    }

    /// `e^{i phi}` in float mode.
    pub fn cis(phi: f64) -> Scalar {
        Scalar::Float(Complex64::from_polar(1.0, phi))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => self.to_complex64() == other.to_complex64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl From<ExactComplex> for Scalar {
    fn from(z: ExactComplex) -> Self {
        Scalar::Exact(z)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Float(self.to_complex64() $op rhs.to_complex64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on exact division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(_), Scalar::Exact(b)) if b.is_zero() => {
                panic!("exact division by zero")
            }
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            _ => Scalar::Float(self.to_complex64() / rhs.to_complex64()),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a.clone()),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(z) => {
                if z.im.is_zero() {
                    write!(f, "{}", fmt_rat(&z.re))
                } else if z.re.is_zero() {
                    write!(f, "{}i", fmt_rat(&z.im))
                } else if z.im.is_negative() {
                    write!(f, "{}-{}i", fmt_rat(&z.re), fmt_rat(&-z.im.clone()))
                } else {
                    write!(f, "{}+{}i", fmt_rat(&z.re), fmt_rat(&z.im))
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{:e}", z.re)
                } else {
                    write!(f, "{:e}{:+e}i", z.re, z.im)
                }
            }
        }
    }
}
