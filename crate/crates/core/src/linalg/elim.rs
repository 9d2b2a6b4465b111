//! Gaussian elimination: rank, inverse, kernels and the masked solver used by
//! the decoder.

use std::collections::BTreeSet;
use std::ops::Range;

use super::{LinalgError, Mat};
use crate::gf::Gf;

/// Rows of a target space that a projection forces to zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowMask {
    zeroed: BTreeSet<usize>,
}

impl RowMask {
    pub fn none() -> RowMask {
        RowMask::default()
    }

    pub fn range(rows: Range<usize>) -> RowMask {
        RowMask { zeroed: rows.collect() }
    }

    pub fn from_rows(rows: impl IntoIterator<Item = usize>) -> RowMask {
        RowMask { zeroed: rows.into_iter().collect() }
    }

    pub fn contains(&self, row: usize) -> bool {
        self.zeroed.contains(&row)
    }

    pub fn zeroed_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.zeroed.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.zeroed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeroed.is_empty()
    }
}

/// In-place reduction of `data` (rows × cols) to reduced row echelon form,
/// eliminating only within the first `pivot_cols` columns. Returns the pivot
/// columns in row order.
fn reduce(f: &Gf, data: &mut [u64], rows: usize, cols: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = f.mul(inv, data[r * cols + j]);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = f.sub(data[i * cols + j], f.mul(factor, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Mat {
    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut out = self.clone();
        let pivots = reduce(&self.field, &mut out.data, self.rows, self.cols, self.cols);
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch {
                op: "inverse",
                left: self.dims(),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        let aug = Mat::hstack(&[self, &Mat::identity(&self.field, n)])?;
        let mut data = aug.data;
        let pivots = reduce(&self.field, &mut data, n, 2 * n, n);
        if pivots.len() < n {
            return Err(LinalgError::Singular { rank: pivots.len(), size: n });
        }
        let inv = Mat::from_fn(&self.field, n, n, |i, j| data[i * 2 * n + n + j]);
        Ok(inv)
    }

    /// Columns spanning the right kernel `{x : A x = 0}`, one per free column.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = &self.field;
        let mut out = Mat::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Finds an invertible `D` with `(D·O)[u] = target[u]` for every row `u`
    /// outside `mask`.
    ///
    /// Unmasked rows of `D` are the reduced-echelon solutions of
    /// `Oᵀ dᵀ = target[u]ᵀ` with free variables set to zero. Masked rows are
    /// then filled, in increasing index, with the first standard basis
    /// vectors that keep the rows independent.
    pub fn solve_projected(&self, target: &Mat, mask: &RowMask) -> Result<Mat, LinalgError> {
        let o = self;
        if !o.is_square() || target.rows != o.rows || target.cols != o.cols {
            return Err(LinalgError::DimensionMismatch { op: "solve_projected", left: o.dims(), right: target.dims() });
        }
        o.check_field(target)?;
        let m = o.rows;
        let f = o.field.clone();
        if let Some(bad) = mask.zeroed_rows().find(|&u| u >= m) {
            return Err(LinalgError::IndexOutOfRange { index: bad, dim: m });
        }
        if let Some(u) = mask.zeroed_rows().find(|&u| target.row(u).iter().any(|&c| c != 0)) {
            return Err(LinalgError::MaskedTargetNonzero { row: u });
        }
        let free_rows: Vec<usize> = (0..m).filter(|&u| !mask.contains(u)).collect();

        // Augmented system [Oᵀ | t_u1ᵀ t_u2ᵀ ...], one RHS column per unmasked row.
        let w = m + free_rows.len();
        let mut data = vec![0u64; m * w];
        for i in 0..m {
            for j in 0..m {
                data[i * w + j] = o.get(j, i);
            }
            for (k, &u) in free_rows.iter().enumerate() {
                data[i * w + m + k] = target.get(u, i);
            }
        }
        let pivots = reduce(&f, &mut data, m, w, m);
        for i in pivots.len()..m {
            if let Some(k) = (0..free_rows.len()).find(|&k| data[i * w + m + k] != 0) {
                return Err(LinalgError::Inconsistent { row: free_rows[k] });
            }
        }

        let mut d = Mat::zeros(&f, m, m);
        let mut basis = EchelonBasis::new(f.clone(), m);
        for (k, &u) in free_rows.iter().enumerate() {
            for (row, &pc) in pivots.iter().enumerate() {
                d.set(u, pc, data[row * w + m + k]);
            }
            if !basis.insert(d.row(u)) {
                return Err(LinalgError::CannotComplete);
            }
        }
        let mut next = 0;
        for u in mask.zeroed_rows() {
            loop {
                if next == m {
                    return Err(LinalgError::CannotComplete);
                }
                let mut e = vec![0u64; m];
                e[next] = 1;
                next += 1;
                if basis.insert(&e) {
                    d.set(u, next - 1, 1);
                    break;
                }
            }
        }
        Ok(d)
    }
}

/// Incrementally maintained row space, used to test independence.
struct EchelonBasis {
    field: std::sync::Arc<Gf>,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    fn new(field: std::sync::Arc<Gf>, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = &self.field;
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(inv, *x);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push((pc, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_and_kernel_small() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = ctx.base();
        assert_eq!(Mat::zeros(f, 3, 5).rank(), 0);
        assert_eq!(Mat::identity(f, 4).kernel_basis().cols(), 0);
        assert_eq!(Mat::zeros(f, 2, 2).kernel_basis().cols(), 2);
        let k = Mat::from_rows(f, &[[1, 1]]).unwrap().kernel_basis();
        assert_eq!(k, Mat::from_rows(f, &[[1], [1]]).unwrap());
    }

    #[test]
    fn inverse_of_node_matrix() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let a1 = Mat::from_rows(ctx.base(), &[[1, 1], [0, 1]]).unwrap();
        assert_eq!(a1.inverse().unwrap(), a1);
        let sing = Mat::from_rows(ctx.base(), &[[1, 1], [1, 1]]).unwrap();
        assert_eq!(sing.inverse(), Err(LinalgError::Singular { rank: 1, size: 2 }));
    }

    #[test]
    fn inverse_random_f256() {
        let ctx = FieldCtx::new(2, 8, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = Mat::sample_invertible(ctx.base(), 4, &mut rng);
            assert!(a.inverse().unwrap().mul(&a).unwrap().is_identity());
        }
    }

    #[test]
    fn kernel_is_annihilated() {
        let ctx = FieldCtx::new(3, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = Mat::random(ctx.base(), 3, 5, &mut rng);
            let k = a.kernel_basis();
            assert_eq!(k.cols(), 5 - a.rank());
            assert!(a.mul(&k).unwrap().is_zero());
            assert_eq!(k.rank(), k.cols());
        }
    }

    #[test]
    fn solve_identity_unmasked() {
        let ctx = FieldCtx::new(2, 4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = Mat::sample_invertible(ctx.base(), 3, &mut rng);
        let d = Mat::identity(ctx.base(), 3).solve_projected(&t, &RowMask::none()).unwrap();
        assert_eq!(d, t);
    }

    #[test]
    fn solve_inconsistent_and_masked_nonzero() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = ctx.base();
        let o = Mat::zeros(f, 2, 2);
        let t = Mat::from_rows(f, &[[0, 0], [1, 0]]).unwrap();
        assert!(matches!(o.solve_projected(&t, &RowMask::range(0..1)), Err(LinalgError::Inconsistent { row: 1 })));
        assert!(matches!(
            Mat::identity(f, 2).solve_projected(&t, &RowMask::range(1..2)),
            Err(LinalgError::MaskedTargetNonzero { row: 1 })
        ));
    }

    #[test]
    fn solve_cannot_complete() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = ctx.base();
        let o = Mat::identity(f, 2);
        let t = Mat::from_rows(f, &[[1, 1], [1, 1]]).unwrap();
        assert_eq!(o.solve_projected(&t, &RowMask::none()), Err(LinalgError::CannotComplete));
    }
}
