//! Dense matrices over a level of the field tower.

mod elim;
mod json;
mod sample;

pub use elim::RowMask;
pub use json::entry_json;

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::Gf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("projected system has no solution (target row {row})")]
    Inconsistent { row: usize },
    #[error("solution rows are dependent, no invertible completion exists")]
    CannotComplete,
    #[error("target row {row} is masked but nonzero")]
    MaskedTargetNonzero { row: usize },
    #[error("entry {code} is not an element of a field of order {order}")]
    NotInField { code: u64, order: u64 },
    #[error("index {index} out of range for a space of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bad matrix literal: {0}")]
    Literal(String),
}

/// Row-major dense matrix. Entries are element codes of `field`.
#[derive(Clone)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Arc<Gf>,
    data: Vec<u64>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && *self.field == *other.field
    }
}

impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} over {:?} {:?}", self.rows, self.cols, self.field, self.to_rows())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Arc<Gf>, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field: field.clone(), data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<Gf>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Arc<Gf>, rows: usize, cols: usize, data: Vec<u64>) -> Result<Mat, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { op: "from_vec", left: (rows, cols), right: (data.len(), 1) });
        }
        if let Some(&bad) = data.iter().find(|&&c| !field.contains(c)) {
            return Err(LinalgError::NotInField { code: bad, order: field.order() });
        }
        Ok(Mat { rows, cols, field: field.clone(), data })
    }

    /// Builds a matrix from rows; `cols` is needed only when `rows` is empty.
    pub fn from_rows<R: AsRef<[u64]>>(field: &Arc<Gf>, rows: &[R]) -> Result<Mat, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_rows",
                    left: (rows.len(), cols),
                    right: (1, r.len()),
                });
            }
            data.extend_from_slice(r);
        }
        Mat::from_vec(field, rows.len(), cols, data)
    }

    pub fn from_fn(field: &Arc<Gf>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        debug_assert!(data.iter().all(|&c| field.contains(c)));
        Mat { rows, cols, field: field.clone(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    fn check_field(&self, other: &Mat) -> Result<(), LinalgError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch)
        }
    }

    /// Reinterprets the matrix over `target`, which must contain this field.
    pub fn embed(&self, target: &Arc<Gf>) -> Result<Mat, LinalgError> {
        if !target.contains_field(&self.field) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(Mat { rows: self.rows, cols: self.cols, field: target.clone(), data: self.data.clone() })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { op: "mul", left: self.dims(), right: other.dims() });
        }
        let f = &self.field;
        let n = other.cols;
        let mut out = vec![0u64; self.rows * n];
        for i in 0..self.rows {
            let acc = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                if a == 1 {
                    for (o, &b) in acc.iter_mut().zip(brow) {
                        if b != 0 {
                            *o = f.add(*o, b);
                        }
                    }
                } else {
                    for (o, &b) in acc.iter_mut().zip(brow) {
                        if b != 0 {
                            *o = f.add(*o, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(Mat { rows: self.rows, cols: n, field: f.clone(), data: out })
    }

    fn zip_with(&self, other: &Mat, op: &'static str, g: impl Fn(&Gf, u64, u64) -> u64) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.dims() != other.dims() {
            return Err(LinalgError::DimensionMismatch { op, left: self.dims(), right: other.dims() });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| g(&self.field, a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, field: self.field.clone(), data })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.zip_with(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.zip_with(other, "sub", |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Horizontal concatenation. Zero-column parts are allowed.
    pub fn hstack(parts: &[&Mat]) -> Result<Mat, LinalgError> {
        let first = parts.first().ok_or(LinalgError::Literal("hstack of nothing".into()))?;
        let rows = first.rows;
        for p in parts {
            first.check_field(p)?;
            if p.rows != rows {
                return Err(LinalgError::DimensionMismatch { op: "hstack", left: first.dims(), right: p.dims() });
            }
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(i));
            }
        }
        Ok(Mat { rows, cols, field: first.field.clone(), data })
    }

    /// Vertical concatenation. Zero-row parts are allowed.
    pub fn vstack(parts: &[&Mat]) -> Result<Mat, LinalgError> {
        let first = parts.first().ok_or(LinalgError::Literal("vstack of nothing".into()))?;
        let cols = first.cols;
        for p in parts {
            first.check_field(p)?;
            if p.cols != cols {
                return Err(LinalgError::DimensionMismatch { op: "vstack", left: first.dims(), right: p.dims() });
            }
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().copied()).collect();
        Ok(Mat { rows, cols, field: first.field.clone(), data })
    }

    /// Contiguous block `rows × cols`.
    pub fn slice(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Mat, LinalgError> {
        if rows.start > rows.end || cols.start > cols.end || rows.end > self.rows || cols.end > self.cols {
            return Err(LinalgError::DimensionMismatch { op: "slice", left: self.dims(), right: (rows.end, cols.end) });
        }
        let (r, c) = (rows.len(), cols.len());
        Ok(Mat::from_fn(&self.field, r, c, |i, j| self.get(rows.start + i, cols.start + j)))
    }

    pub fn row_block(&self, rows: Range<usize>) -> Result<Mat, LinalgError> {
        self.slice(rows, 0..self.cols)
    }

    pub fn col_block(&self, cols: Range<usize>) -> Result<Mat, LinalgError> {
        self.slice(0..self.rows, cols)
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) -> Result<(), LinalgError> {
        self.check_field(block)?;
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "set_block",
                left: self.dims(),
                right: (r0 + block.rows, c0 + block.cols),
            });
        }
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
        Ok(())
    }

    /// Embeds a `k×k` matrix acting on `wires` into the `n×n` identity.
    pub fn embed_on(&self, wires: &[usize], n: usize) -> Result<Mat, LinalgError> {
        if !self.is_square() || self.rows != wires.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "embed_on",
                left: self.dims(),
                right: (wires.len(), wires.len()),
            });
        }
        if let Some(&w) = wires.iter().find(|&&w| w >= n) {
            return Err(LinalgError::IndexOutOfRange { index: w, dim: n });
        }
        let mut out = Mat::identity(&self.field, n);
        for (a, &wa) in wires.iter().enumerate() {
            for (b, &wb) in wires.iter().enumerate() {
                out.data[wa * n + wb] = self.get(a, b);
            }
        }
        Ok(out)
    }
}
