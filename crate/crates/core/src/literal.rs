//! Serializable literal forms for scalars, sequences, lattice vectors,
//! trigonometric polynomials, algebra elements and derivations.
//!
//! Scalars: an integer, a float, a string (`"3"`, `"-2/7"`, `"0.125"`), or a
//! `[re, im]` pair of those. Integers and strings stay exact.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, TrigPolynomial};
use crate::derivation::{DerivationSpec, DerivationTerm};
use crate::error::{Error, Result};
use crate::hilbert::HilbertElement;
use crate::scalar::Scalar;
use crate::sequence::{DiagonalSequence, IncrementSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealLiteral {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Real(RealLiteral),
    Complex([RealLiteral; 2]),
}

enum RealValue {
    Exact(BigRational),
    Float(f64),
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Literal(format!("cannot parse {text:?} as a number"));
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = BigRational::new(numer, denom);
        return Ok(if negative { -r } else { r });
    }
    let r = BigRational::from_str(t).map_err(|_| bad())?;
    Ok(r)
}

impl RealLiteral {
    fn value(&self) -> Result<RealValue> {
        match self {
            RealLiteral::Int(v) => Ok(RealValue::Exact(BigRational::from_integer((*v).into()))),
            RealLiteral::Float(v) if v.is_finite() => Ok(RealValue::Float(*v)),
            RealLiteral::Float(v) => Err(Error::Literal(format!("non-finite number {v}"))),
            RealLiteral::Text(s) => parse_rational(s).map(RealValue::Exact),
        }
    }

    fn from_rational(r: &BigRational) -> RealLiteral {
        if r.is_integer() {
            if let Some(v) = r.to_integer().to_i64() {
                return RealLiteral::Int(v);
            }
        }
        RealLiteral::Text(r.to_string())
    }
}

impl ScalarLiteral {
    pub fn to_scalar(&self) -> Result<Scalar> {
        let (re, im) = match self {
            ScalarLiteral::Real(r) => (r.value()?, RealValue::Exact(BigRational::zero())),
            ScalarLiteral::Complex([a, b]) => (a.value()?, b.value()?),
        };
        Ok(match (re, im) {
            (RealValue::Exact(a), RealValue::Exact(b)) => Scalar::exact(a, b),
            (a, b) => Scalar::float(as_f64(&a), as_f64(&b)),
        })
    }

    pub fn from_scalar(s: &Scalar) -> ScalarLiteral {
        match s.as_exact() {
            Some(c) if c.im.is_zero() => ScalarLiteral::Real(RealLiteral::from_rational(&c.re)),
            Some(c) => ScalarLiteral::Complex([
                RealLiteral::from_rational(&c.re),
                RealLiteral::from_rational(&c.im),
            ]),
            None => {
                let c = s.to_complex64();
                if c.im == 0.0 {
                    ScalarLiteral::Real(RealLiteral::Float(c.re))
                } else {
                    ScalarLiteral::Complex([RealLiteral::Float(c.re), RealLiteral::Float(c.im)])
                }
            }
        }
    }
}

fn as_f64(v: &RealValue) -> f64 {
    match v {
        RealValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
        RealValue::Float(x) => *x,
    }
}

impl From<i64> for ScalarLiteral {
    fn from(v: i64) -> Self {
        ScalarLiteral::Real(RealLiteral::Int(v))
    }
}

/// `{window_start, values, left_tail | left_slope, right_tail | right_slope}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceLiteral {
    #[serde(default)]
    pub window_start: i64,
    #[serde(default)]
    pub values: Vec<ScalarLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_tail: Option<ScalarLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_tail: Option<ScalarLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_slope: Option<ScalarLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_slope: Option<ScalarLiteral>,
}

fn opt_scalar(v: &Option<ScalarLiteral>) -> Result<Option<Scalar>> {
    v.as_ref().map(ScalarLiteral::to_scalar).transpose()
}

impl SequenceLiteral {
    fn scalars(&self) -> Result<Vec<Scalar>> {
        self.values.iter().map(ScalarLiteral::to_scalar).collect()
    }

    pub fn has_slopes(&self) -> bool {
        self.left_slope.is_some() || self.right_slope.is_some()
    }

    /// Missing tails default to zero. Slopes are rejected.
    pub fn to_diagonal(&self) -> Result<DiagonalSequence> {
        if self.has_slopes() {
            return Err(Error::Literal(
                "a diagonal sequence takes tails, not slopes".into(),
            ));
        }
        let left = opt_scalar(&self.left_tail)?.unwrap_or_else(Scalar::zero);
        let right = opt_scalar(&self.right_tail)?.unwrap_or_else(Scalar::zero);
        Ok(DiagonalSequence::new(self.window_start, self.scalars()?, left, right))
    }

    /// Without slopes the literal is read as a diagonal sequence. A side that
    /// gives a tail instead of a slope is constant beyond the window.
    pub fn to_increment(&self) -> Result<IncrementSequence> {
        if !self.has_slopes() {
            return Ok(IncrementSequence::from(&self.to_diagonal()?));
        }
        if (self.left_tail.is_some() && self.left_slope.is_some())
            || (self.right_tail.is_some() && self.right_slope.is_some())
        {
            return Err(Error::Literal(
                "a side takes either a tail or a slope".into(),
            ));
        }
        let mut start = self.window_start;
        let mut values = self.scalars()?;
        if let Some(t) = opt_scalar(&self.left_tail)? {
            values.insert(0, t);
            start -= 1;
        }
        if let Some(t) = opt_scalar(&self.right_tail)? {
            values.push(t);
        }
        if values.is_empty() {
            return Err(Error::Literal(
                "an increment sequence needs at least one value".into(),
            ));
        }
        let sl = opt_scalar(&self.left_slope)?.unwrap_or_else(Scalar::zero);
        let sr = opt_scalar(&self.right_slope)?.unwrap_or_else(Scalar::zero);
        IncrementSequence::new(start, values, sl, sr)
    }

    pub fn from_diagonal(s: &DiagonalSequence) -> Self {
        SequenceLiteral {
            window_start: s.start(),
            values: s.values().iter().map(ScalarLiteral::from_scalar).collect(),
            left_tail: Some(ScalarLiteral::from_scalar(s.left_tail())),
            right_tail: Some(ScalarLiteral::from_scalar(s.right_tail())),
            left_slope: None,
            right_slope: None,
        }
    }

    pub fn from_increment(s: &IncrementSequence) -> Self {
        SequenceLiteral {
            window_start: s.start(),
            values: s.values().iter().map(ScalarLiteral::from_scalar).collect(),
            left_tail: None,
            right_tail: None,
            left_slope: Some(ScalarLiteral::from_scalar(s.left_slope())),
            right_slope: Some(ScalarLiteral::from_scalar(s.right_slope())),
        }
    }
}

/// One `(n, k, re, im)` entry.
pub type EntryLiteral = (i64, i64, RealLiteral, RealLiteral);

pub fn hilbert_from_entries(entries: &[EntryLiteral]) -> Result<HilbertElement> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (n, k, re, im) in entries {
        if !seen.insert((*n, *k)) {
            return Err(Error::Literal(format!("duplicate entry at ({n}, {k})")));
        }
        let v = ScalarLiteral::Complex([re.clone(), im.clone()]).to_scalar()?;
        out.push(((*n, *k), v));
    }
    Ok(HilbertElement::from_entries(out))
}

pub fn hilbert_to_entries(f: &HilbertElement) -> Vec<EntryLiteral> {
    f.iter()
        .map(|(n, k, v)| match ScalarLiteral::from_scalar(v) {
            ScalarLiteral::Real(re) => (n, k, re, RealLiteral::Int(0)),
            ScalarLiteral::Complex([re, im]) => (n, k, re, im),
        })
        .collect()
}

/// Fourier coefficients keyed by frequency.
pub type TrigLiteral = BTreeMap<String, ScalarLiteral>;

pub fn trig_from_literal(lit: &TrigLiteral) -> Result<TrigPolynomial> {
    let mut coeffs = Vec::with_capacity(lit.len());
    for (key, v) in lit {
        let n = key
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Literal(format!("frequency {key:?} is not an integer")))?;
        coeffs.push((n, v.to_scalar()?));
    }
    Ok(TrigPolynomial::from_coefficients(coeffs))
}

pub fn trig_to_literal(p: &TrigPolynomial) -> TrigLiteral {
    p.coefficients()
        .map(|(n, c)| (n.to_string(), ScalarLiteral::from_scalar(c)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TermLiteral {
    Ncovariant {
        n: i64,
        beta: SequenceLiteral,
    },
    Lifted {
        #[serde(default)]
        f: TrigLiteral,
        #[serde(default)]
        g: TrigLiteral,
    },
}

pub fn derivation_from_literal(terms: &[TermLiteral]) -> Result<DerivationSpec> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        out.push(match t {
            TermLiteral::Ncovariant { n, beta } => DerivationTerm::NCovariant {
                n: *n,
                beta: beta.to_increment()?,
            },
            TermLiteral::Lifted { f, g } => DerivationTerm::Lifted {
                f: trig_from_literal(f)?,
                g: trig_from_literal(g)?,
            },
        });
    }
    Ok(DerivationSpec::new(out))
}

pub fn derivation_to_literal(d: &DerivationSpec) -> Vec<TermLiteral> {
    d.terms()
        .iter()
        .map(|t| match t {
            DerivationTerm::NCovariant { n, beta } => TermLiteral::Ncovariant {
                n: *n,
                beta: SequenceLiteral::from_increment(beta),
            },
            DerivationTerm::Lifted { f, g } => TermLiteral::Lifted {
                f: trig_to_literal(f),
                g: trig_to_literal(g),
            },
        })
        .collect()
}

/// List of `(n, coefficient)` pairs.
pub type AlgebraLiteral = Vec<(i64, SequenceLiteral)>;

pub fn algebra_from_literal(lit: &AlgebraLiteral) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::zero();
    for (n, s) in lit {
        acc = acc.add(&AlgebraElement::term(*n, s.to_diagonal()?));
    }
    Ok(acc)
}

pub fn algebra_to_literal(a: &AlgebraElement) -> AlgebraLiteral {
    a.terms()
        .map(|(n, c)| (n, SequenceLiteral::from_diagonal(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::LatticeSequence;

    fn lit(s: &str) -> ScalarLiteral {
        ScalarLiteral::Real(RealLiteral::Text(s.into()))
    }

    #[test]
    fn scalar_forms() {
        assert_eq!(ScalarLiteral::from(3).to_scalar().unwrap(), Scalar::int(3));
        assert_eq!(lit("-2/6").to_scalar().unwrap(), Scalar::ratio(-1, 3));
        assert_eq!(lit("0.125").to_scalar().unwrap(), Scalar::ratio(1, 8));
        assert_eq!(lit("-1.5").to_scalar().unwrap(), Scalar::ratio(-3, 2));
        assert!(lit("abc").to_scalar().is_err());
        assert!(lit("1.2.3").to_scalar().is_err());
        let c = ScalarLiteral::Complex([RealLiteral::Int(1), RealLiteral::Int(-3)]);
        assert_eq!(c.to_scalar().unwrap(), Scalar::gaussian(1, -3));
        let f = ScalarLiteral::Real(RealLiteral::Float(0.5)).to_scalar().unwrap();
        assert!(!f.is_exact());
    }

    #[test]
    fn scalar_round_trip() {
        for s in [Scalar::ratio(5, 7), Scalar::gaussian(0, 2), Scalar::float(0.25, -1.0)] {
            assert_eq!(ScalarLiteral::from_scalar(&s).to_scalar().unwrap(), s);
        }
    }

    #[test]
    fn sequence_forms() {
        let abs = SequenceLiteral {
            values: vec![0.into()],
            left_slope: Some((-1).into()),
            right_slope: Some(1.into()),
            ..Default::default()
        };
        assert_eq!(abs.to_increment().unwrap().eval(-4), Scalar::int(4));
        assert!(abs.to_diagonal().is_err());

        let step = SequenceLiteral {
            right_tail: Some(1.into()),
            ..Default::default()
        };
        let d = step.to_diagonal().unwrap();
        assert_eq!(d.eval(5), Scalar::one());
        assert_eq!(d.eval(-5), Scalar::zero());

        let half = SequenceLiteral {
            window_start: 0,
            values: vec![0.into()],
            left_tail: Some(0.into()),
            right_slope: Some(1.into()),
            ..Default::default()
        };
        let s = half.to_increment().unwrap();
        assert_eq!(s.eval(-7), Scalar::zero());
        assert_eq!(s.eval(7), Scalar::int(7));

        let bare = SequenceLiteral {
            left_slope: Some(1.into()),
            ..Default::default()
        };
        assert!(bare.to_increment().is_err());
    }

    #[test]
    fn sequence_round_trip() {
        let d = DiagonalSequence::indicator(-2, 3);
        assert_eq!(SequenceLiteral::from_diagonal(&d).to_diagonal().unwrap(), d);
        let b = IncrementSequence::tabulate(-3, 3, |k| Scalar::int(k * k));
        assert_eq!(SequenceLiteral::from_increment(&b).to_increment().unwrap(), b);
    }

    #[test]
    fn entries_reject_duplicates() {
        let e = vec![
            (0, 0, RealLiteral::Int(1), RealLiteral::Int(0)),
            (0, 0, RealLiteral::Int(2), RealLiteral::Int(0)),
        ];
        assert!(hilbert_from_entries(&e).is_err());
        let f = hilbert_from_entries(&e[..1]).unwrap();
        assert_eq!(f, HilbertElement::unit(0, 0));
        assert_eq!(hilbert_from_entries(&hilbert_to_entries(&f)).unwrap(), f);
    }

    #[test]
    fn derivation_literal_json() {
        let text = r#"[{"ncovariant": {"n": 1, "beta": {"values": [0], "left_slope": 1, "right_slope": 1}}},
                       {"lifted": {"f": {"1": 1}, "g": {"0": "2"}}}]"#;
        let terms: Vec<TermLiteral> = serde_json::from_str(text).unwrap();
        let d = derivation_from_literal(&terms).unwrap();
        assert_eq!(d.terms().len(), 2);
        let back = derivation_from_literal(&derivation_to_literal(&d)).unwrap();
        assert_eq!(back, d);
        let bad: Vec<TermLiteral> =
            serde_json::from_str(r#"[{"lifted": {"f": {"x": 1}}}]"#).unwrap();
        assert!(derivation_from_literal(&bad).is_err());
    }
}
