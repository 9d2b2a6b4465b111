//! Naive arithmetic over prime fields, kept separate from the library so
//! tests can cross-check it.

#![allow(dead_code)]

use std::sync::Arc;

use qlnc::gf::Gf;
use qlnc::linalg::Mat;

pub type Rows = Vec<Vec<i64>>;

pub fn reduce(p: i64, rows: &[&[i64]]) -> Rows {
    rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect()
}

pub fn to_mat(field: &Arc<Gf>, rows: &Rows) -> Mat {
    let cols = rows.first().map_or(0, Vec::len);
    let data = rows.iter().flatten().map(|&x| x as u64).collect();
    Mat::from_vec(field, rows.len(), cols, data).expect("entries below p")
}

pub fn from_mat(m: &Mat) -> Rows {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

fn inv_mod(a: i64, p: i64) -> i64 {
    // Fermat
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn rank(p: i64, rows: &Rows) -> usize {
    let mut a = rows.clone();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n_cols {
        let Some(piv) = (r..n_rows).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for i in 0..n_rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn mul(p: i64, a: &Rows, b: &Rows) -> Rows {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<i64>().rem_euclid(p)).collect())
        .collect()
}

pub fn transpose(a: &Rows) -> Rows {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn neg(p: i64, a: &Rows) -> Rows {
    a.iter().map(|r| r.iter().map(|&x| (-x).rem_euclid(p)).collect()).collect()
}

/// Gauss-Jordan on `[A | I]`.
pub fn inverse(p: i64, a: &Rows) -> Option<Rows> {
    let n = a.len();
    let mut aug: Rows = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| i64::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| aug[i][c] != 0)?;
        aug.swap(c, piv);
        let inv = inv_mod(aug[c][c], p);
        for x in aug[c].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != c && aug[i][c] != 0 {
                let f = aug[i][c];
                let pivot = aug[c].clone();
                for (x, y) in aug[i].iter_mut().zip(pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn block(a: &Rows, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Rows {
    a[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// Gaussian binomial `[n, k]_q` as an exact integer.
pub fn gaussian_binomial(q: u128, n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// `|GL(d, F_q)|`.
pub fn gl(q: u128, d: u32) -> u128 {
    (0..d).map(|i| q.pow(d) - q.pow(i)).product()
}
