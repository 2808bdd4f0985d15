//! Finitely supported vectors `f = sum_n U^n f_n(K)` of the Hilbert space,
//! stored as a sparse map `(n, k) -> f_n(k)`.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HilbertElement {
    entries: BTreeMap<(i64, i64), Scalar>,
}

impl HilbertElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Basis vector `U^n E_k`-coefficient: one at `(n, k)`.
    pub fn unit(n: i64, k: i64) -> Self {
        let mut f = Self::zero();
        f.add_at(n, k, &Scalar::one());
        f
    }

    /// Sums duplicated coordinates.
    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), Scalar)>) -> Self {
        let mut f = Self::zero();
        for ((n, k), v) in entries {
            f.add_at(n, k, &v);
        }
        f
    }

    pub fn get(&self, n: i64, k: i64) -> Scalar {
        self.entries.get(&(n, k)).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, n: i64, k: i64, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((n, k)).or_insert_with(Scalar::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(n, k));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &Scalar)> {
        self.entries.iter().map(|(&(n, k), v)| (n, k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Grades carrying at least one nonzero entry, ascending.
    pub fn grades(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.entries.keys().map(|&(n, _)| n).collect();
        g.dedup();
        g
    }

    /// The grade-`n` slice as ascending `(k, f_n(k))` pairs.
    pub fn sector(&self, n: i64) -> Vec<(i64, Scalar)> {
        self.entries
            .range((n, i64::MIN)..=(n, i64::MAX))
            .map(|(&(_, k), v)| (k, v.clone()))
            .collect()
    }

    pub fn map_entries(&self, op: impl Fn(i64, i64, &Scalar) -> Scalar) -> Self {
        Self::from_entries(self.iter().map(|(n, k, v)| ((n, k), op(n, k, v))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, k, v) in other.iter() {
            out.add_at(n, k, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, k, v) in other.iter() {
            out.add_at(n, k, &-v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_entries(|_, _, v| v * c)
    }

    /// `<f, g> = sum conj(f_n(k)) g_n(k)`, antilinear in the first slot.
    pub fn inner(&self, other: &Self) -> Scalar {
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Scalar::zero();
        for (key, a) in &small.entries {
            if let Some(b) = large.entries.get(key) {
                acc += &if flip { b.conj() * a } else { a.conj() * b };
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> Scalar {
        self.entries.values().map(Scalar::norm_sqr).sum()
    }

    pub fn to_float(&self) -> Self {
        self.map_entries(|_, _, v| v.to_float())
    }

    /// Largest entrywise deviation, measured in float.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .iter()
            .map(|(_, _, v)| v.to_complex64().norm())
            .fold(0.0, f64::max)
    }
}
