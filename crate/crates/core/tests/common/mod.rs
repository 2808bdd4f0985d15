#![allow(dead_code)]

use qcyl_core::{AlgebraElement, LatticeSequence, Scalar};

/// Matrix of `a` on basis vectors `E_k`, `|k| <= w`, with
/// `U^n a_n(K) E_k = a_n(k) E_{k+n}`.
pub fn dense(a: &AlgebraElement, w: i64) -> Vec<Vec<Scalar>> {
    let size = (2 * w + 1) as usize;
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for (n, c) in a.terms() {
        for k in -w..=w {
            let row = k + n;
            if row.abs() <= w {
                m[(row + w) as usize][(k + w) as usize] = c.eval(k);
            }
        }
    }
    m
}

pub fn matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let size = a.len();
    let mut out = vec![vec![Scalar::zero(); size]; size];
    for i in 0..size {
        for (j, bj) in b.iter().enumerate() {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..size {
                if !bj[k].is_zero() {
                    out[i][k] += &(&a[i][j] * &bj[k]);
                }
            }
        }
    }
    out
}

pub fn conj_transpose(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let size = a.len();
    (0..size)
        .map(|i| (0..size).map(|j| a[j][i].conj()).collect())
        .collect()
}

/// Columns `|k| <= w - margin` of two window matrices agree.
pub fn agree_on_columns(a: &[Vec<Scalar>], b: &[Vec<Scalar>], w: i64, margin: i64) -> bool {
    let size = a.len();
    (-(w - margin)..=(w - margin)).all(|k| {
        let col = (k + w) as usize;
        (0..size).all(|row| a[row][col] == b[row][col])
    })
}

pub fn max_grade(a: &AlgebraElement) -> i64 {
    a.grades().map(i64::abs).max().unwrap_or(0)
}
