//! Sector blocks of the Laplacian `D^*D + m^2` for the covariant
//! implementation, and their solution on adaptively grown windows.
//!
//! In sector `n` the operator is the Hermitian Jacobi matrix
//!
//! ```text
//! (J g)(k) = diag(k) g(k) + off(k) g(k+1) + conj(off(k-1)) g(k-1)
//! diag(k)  = |beta(k+n)|^2 + |beta(-k)|^2 + m^2
//! off(k)   = -mu conj(beta(k+n)) beta(-k-1)
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::implement::Sign;
use crate::sequence::{IncrementSequence, LatticeSequence};

#[derive(Clone, Debug, PartialEq)]
pub struct SectorJacobi {
    pub n: i64,
    pub m2: f64,
    pub beta: IncrementSequence,
    pub mu: Sign,
}

pub fn sector_jacobi(beta: &IncrementSequence, m2: f64, n: i64) -> Result<SectorJacobi> {
    sector_jacobi_with_sign(beta, m2, n, Sign::Plus)
}

pub fn sector_jacobi_with_sign(
    beta: &IncrementSequence,
    m2: f64,
    n: i64,
    mu: Sign,
) -> Result<SectorJacobi> {
    if !(m2 > 0.0) || !m2.is_finite() {
        return Err(Error::NonPositiveMass(m2));
    }
    Ok(SectorJacobi {
        n,
        m2,
        beta: beta.clone(),
        mu,
    })
}

impl SectorJacobi {
    pub fn beta_at(&self, k: i64) -> Complex64 {
        self.beta.eval(k).to_complex64()
    }

    pub fn diag(&self, k: i64) -> f64 {
        self.beta_at(k + self.n).norm_sqr() + self.beta_at(-k).norm_sqr() + self.m2
    }

    /// Coupling of `g(k+1)` into row `k`.
    pub fn off(&self, k: i64) -> Complex64 {
        -(self.mu.as_i64() as f64) * self.beta_at(k + self.n).conj() * self.beta_at(-k - 1)
    }

    /// Applies the full (untruncated) operator; the support grows by one.
    pub fn apply(&self, g: &SectorVector) -> SectorVector {
        if g.values.is_empty() {
            return SectorVector::zero();
        }
        let lo = g.start - 1;
        let hi = g.end();
        let values = (lo..=hi)
            .map(|k| {
                self.diag(k) * g.get(k)
                    + self.off(k) * g.get(k + 1)
                    + self.off(k - 1).conj() * g.get(k - 1)
            })
            .collect();
        SectorVector::new(lo, values)
    }

    /// Diagonal and super-diagonal of the Dirichlet truncation to `[lo, hi]`.
    pub fn truncate(&self, lo: i64, hi: i64) -> (Vec<f64>, Vec<Complex64>) {
        let diag = (lo..=hi).map(|k| self.diag(k)).collect();
        let sup = (lo..hi).map(|k| self.off(k)).collect();
        (diag, sup)
    }
}

/// Vector on `Z` stored on a contiguous window, zero outside.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SectorVector {
    pub start: i64,
    pub values: Vec<Complex64>,
}

impl SectorVector {
    pub fn new(start: i64, values: Vec<Complex64>) -> Self {
        SectorVector { start, values }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a vector from sparse `(k, value)` pairs.
    pub fn from_sparse(entries: &[(i64, Complex64)]) -> Self {
        let entries: Vec<_> = entries.iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect();
        let Some(lo) = entries.iter().map(|(k, _)| *k).min() else {
            return Self::zero();
        };
        let hi = entries.iter().map(|(k, _)| *k).max().unwrap();
        let mut values = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, v) in entries {
            values[(k - lo) as usize] += v;
        }
        Self::new(lo, values)
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn get(&self, k: i64) -> Complex64 {
        if k < self.start || k >= self.end() {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(k - self.start) as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm_sqr() == 0.0)
    }

    /// Inclusive range of nonzero entries.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.values.iter().position(|v| v.norm_sqr() != 0.0)?;
        let last = self.values.iter().rposition(|v| v.norm_sqr() != 0.0)?;
        Some((self.start + first as i64, self.start + last as i64))
    }

    pub fn max_abs_diff(&self, other: &SectorVector) -> f64 {
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        (lo..hi)
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// Solves the Hermitian positive definite tridiagonal system with diagonal
/// `diag` and super-diagonal `sup` by an `L D L^*` sweep. Returns the solution
/// and the smallest pivot.
pub fn solve_tridiagonal(
    diag: &[f64],
    sup: &[Complex64],
    rhs: &[Complex64],
) -> Result<(Vec<Complex64>, f64)> {
    let n = diag.len();
    assert_eq!(rhs.len(), n);
    assert_eq!(sup.len(), n.saturating_sub(1));
    let mut pivots = vec![0.0f64; n];
    let mut y = rhs.to_vec();
    let mut min_pivot = f64::INFINITY;
    for i in 0..n {
        let mut d = diag[i];
        if i > 0 {
            // l = conj(sup[i-1]) / pivot[i-1]; d_i -= |sup|^2 / pivot
            let s = sup[i - 1];
            d -= s.norm_sqr() / pivots[i - 1];
            let l = s.conj() / pivots[i - 1];
            let prev = y[i - 1];
            y[i] -= l * prev;
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { row: i, pivot: d });
        }
        pivots[i] = d;
        min_pivot = min_pivot.min(d);
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut v = y[i] / pivots[i];
        if i + 1 < n {
            v -= sup[i] / pivots[i] * x[i + 1];
        }
        x[i] = v;
    }
    Ok((x, min_pivot))
}

/// Sites `(ceil(-n/2), ceil(-n/2) - 1)` on either side of the mirror.
pub fn boundary_sites(n: i64) -> (i64, i64) {
    let upper = (-n).div_euclid(2) + (-n).rem_euclid(2);
    (upper, upper - 1)
}

/// `sum_k conj(f(-k-n)) g(k)`.
pub fn reflected_pairing(n: i64, f: &SectorVector, g: &SectorVector) -> Complex64 {
    f.values
        .iter()
        .enumerate()
        .map(|(i, fv)| {
            let j = f.start + i as i64;
            fv.conj() * g.get(-j - n)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowPolicy {
    /// Margin added on each side of the data before the first solve.
    pub initial_margin: i64,
    /// Largest admissible half-width of the truncation window.
    pub max_half_width: i64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy {
            initial_margin: 16,
            max_half_width: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorSolution {
    pub g: SectorVector,
    /// Inclusive truncation window.
    pub window: (i64, i64),
    /// Margin used for the final window.
    pub margin: i64,
    /// `||J g - f||_2` for the truncated operator on the window.
    pub residual: f64,
    pub min_pivot: f64,
    /// `sum_k conj(f(-k-n)) g(k)`.
    pub functional: Complex64,
}

/// Solves once on the window `[lo - margin, hi + margin]` around the data.
pub fn solve_on_margin(j: &SectorJacobi, f: &SectorVector, margin: i64) -> Result<SectorSolution> {
    let (lo, hi) = data_hull(j.n, f);
    solve_on_window(j, f, (lo - margin, hi + margin), margin)
}

fn data_hull(n: i64, f: &SectorVector) -> (i64, i64) {
    let (b_hi, b_lo) = boundary_sites(n);
    let (mut lo, mut hi) = (b_lo, b_hi);
    if let Some((s, e)) = f.support() {
        // The reflected copy of the data matters for the pairing too.
        lo = lo.min(s).min(-e - n);
        hi = hi.max(e).max(-s - n);
    }
    (lo, hi)
}

pub fn solve_on_window(
    j: &SectorJacobi,
    f: &SectorVector,
    window: (i64, i64),
    margin: i64,
) -> Result<SectorSolution> {
    let (lo, hi) = window;
    let (diag, sup) = j.truncate(lo, hi);
    let rhs: Vec<Complex64> = (lo..=hi).map(|k| f.get(k)).collect();
    let (x, min_pivot) = solve_tridiagonal(&diag, &sup, &rhs)?;
    let g = SectorVector::new(lo, x);
    let residual = truncated_residual(&diag, &sup, &g.values, &rhs);
    let functional = reflected_pairing(j.n, f, &g);
    Ok(SectorSolution {
        g,
        window,
        margin,
        residual,
        min_pivot,
        functional,
    })
}

fn truncated_residual(diag: &[f64], sup: &[Complex64], x: &[Complex64], rhs: &[Complex64]) -> f64 {
    let n = diag.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut r = diag[i] * x[i] - rhs[i];
        if i + 1 < n {
            r += sup[i] * x[i + 1];
        }
        if i > 0 {
            r += sup[i - 1].conj() * x[i - 1];
        }
        acc += r.norm_sqr();
    }
    acc.sqrt()
}

/// Solves `J g = f` with Dirichlet truncation, doubling the margin until the
/// boundary values of `g` and the reflected pairing both move by less than
/// `tol`.
pub fn solve_sector(
    j: &SectorJacobi,
    f: &SectorVector,
    tol: f64,
    policy: &WindowPolicy,
) -> Result<SectorSolution> {
    let (b_hi, b_lo) = boundary_sites(j.n);
    if f.is_zero() {
        return Ok(SectorSolution {
            g: SectorVector::zero(),
            window: (b_lo, b_hi),
            margin: 0,
            residual: 0.0,
            min_pivot: f64::INFINITY,
            functional: Complex64::new(0.0, 0.0),
        });
    }
    let (lo, hi) = data_hull(j.n, f);
    let half_width = |margin: i64| (hi - lo + 2 * margin + 1) / 2;
    let mut margin = policy.initial_margin.max(1);
    let mut prev = solve_on_margin(j, f, margin)?;
    loop {
        margin *= 2;
        if half_width(margin) > policy.max_half_width {
            return Err(Error::WindowExhausted {
                sector: j.n,
                half_width: half_width(margin),
            });
        }
        let next = solve_on_margin(j, f, margin)?;
        let moved = [
            (next.functional - prev.functional).norm(),
            (next.g.get(b_hi) - prev.g.get(b_hi)).norm(),
            (next.g.get(b_lo) - prev.g.get(b_lo)).norm(),
        ];
        if moved.iter().all(|d| *d < tol) && next.residual <= tol {
            return Ok(next);
        }
        prev = next;
    }
}
