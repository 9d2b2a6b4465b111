//! Exact state-vector simulation of `F_q^{m×n}` registers at toy sizes.
//!
//! Amplitudes are indexed by bit-basis labels; the label index is the
//! row-major list of entry codes read as base-`q` digits, lowest first.

mod verify;

pub use verify::{general_linear, gl_order, verify_lemma1, verify_shadow, Counterexample, OracleReport};

use std::env;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::gf::{Gf, GfError};
use crate::linalg::{LinalgError, Mat};
use crate::network::NetworkError;

/// Default bound on amplitude count (and on enumeration work).
pub const DEFAULT_CAP: u64 = 1 << 16;

/// Comparison tolerance for amplitudes.
pub const TOLERANCE: f64 = 1e-9;

/// [`DEFAULT_CAP`] unless `QLNC_CAP` holds a positive integer.
pub fn cap_from_env() -> u64 {
    env::var("QLNC_CAP").ok().and_then(|v| v.trim().parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("needs {needed} units of work, cap is {cap} (set QLNC_CAP to raise it)")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("operator is singular (rank {rank} of {size})")]
    SingularMatrix { rank: usize, size: usize },
    #[error("operator is {got:?}, register needs {expected:?}")]
    DimensionMismatch { expected: (usize, usize), got: (usize, usize) },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// A quantum system whose bit basis is labeled by `F_q^{rows×cols}`.
#[derive(Debug, Clone)]
pub struct Register {
    field: Arc<Gf>,
    rows: usize,
    cols: usize,
    dim: usize,
}

impl Register {
    pub fn new(field: &Arc<Gf>, rows: usize, cols: usize, cap: u64) -> Result<Self, OracleError> {
        let dim = checked_power(field.order(), rows * cols);
        if dim > cap as u128 {
            return Err(OracleError::CapExceeded { needed: dim, cap });
        }
        Ok(Register { field: field.clone(), rows, cols, dim: dim as usize })
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of amplitudes, `q^{rows·cols}`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, index: usize) -> Mat {
        let q = self.field.order() as usize;
        let mut c = index;
        Mat::from_fn(&self.field, self.rows, self.cols, |_, _| {
            let d = c % q;
            c /= q;
            d as u64
        })
    }

    pub fn index_of(&self, label: &Mat) -> Result<usize, OracleError> {
        if label.dims() != (self.rows, self.cols) {
            return Err(OracleError::DimensionMismatch { expected: (self.rows, self.cols), got: label.dims() });
        }
        let q = self.field.order() as usize;
        Ok(label.data().iter().rev().fold(0usize, |acc, &d| acc * q + d as usize))
    }

    /// Label bijection `X ↦ AX` or `X ↦ XB` as an index table.
    pub(crate) fn permutation(&self, op: &Mat, side: Side) -> Result<Vec<usize>, OracleError> {
        let size = match side {
            Side::Left => self.rows,
            Side::Right => self.cols,
        };
        if op.dims() != (size, size) {
            return Err(OracleError::DimensionMismatch { expected: (size, size), got: op.dims() });
        }
        if *op.field() != self.field {
            return Err(LinalgError::FieldMismatch.into());
        }
        let rank = op.rank();
        if rank < size {
            return Err(OracleError::SingularMatrix { rank, size });
        }
        (0..self.dim)
            .map(|idx| {
                let x = self.label(idx);
                let image = match side {
                    Side::Left => op.mul(&x)?,
                    Side::Right => x.mul(op)?,
                };
                self.index_of(&image)
            })
            .collect()
    }

    fn same_shape(&self, other: &Register) -> bool {
        *self.field == *other.field && self.rows == other.rows && self.cols == other.cols
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

pub(crate) fn checked_power(base: u64, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

#[derive(Debug, Clone)]
pub struct StateVec {
    reg: Register,
    amps: Vec<Complex64>,
}

impl StateVec {
    /// `|X⟩_b`.
    pub fn bit_basis(reg: &Register, label: &Mat) -> Result<Self, OracleError> {
        let mut amps = vec![Complex64::new(0.0, 0.0); reg.dim];
        amps[reg.index_of(label)?] = Complex64::new(1.0, 0.0);
        Ok(StateVec { reg: reg.clone(), amps })
    }

    /// `|Z⟩_p`: amplitude `q^{-mn/2} ω^{-Σ tr(X_jk Z_jk)}` on `|X⟩_b`, with
    /// `ω = exp(2πi/p)`.
    pub fn phase_basis(reg: &Register, label: &Mat) -> Result<Self, OracleError> {
        reg.index_of(label)?;
        let f = &reg.field;
        let p = f.characteristic();
        let roots: Vec<Complex64> =
            (0..p).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64)).collect();
        let scale = (reg.dim as f64).sqrt().recip();
        let amps = (0..reg.dim)
            .map(|idx| {
                let x = reg.label(idx);
                let s = x.data().iter().zip(label.data()).fold(0u64, |acc, (&a, &b)| (acc + f.trace(f.mul(a, b))) % p);
                roots[((p - s) % p) as usize] * scale
            })
            .collect();
        Ok(StateVec { reg: reg.clone(), amps })
    }

    pub fn from_amplitudes(reg: &Register, amps: Vec<Complex64>) -> Result<Self, OracleError> {
        if amps.len() != reg.dim {
            return Err(OracleError::DimensionMismatch { expected: (reg.dim, 1), got: (amps.len(), 1) });
        }
        Ok(StateVec { reg: reg.clone(), amps })
    }

    pub fn register(&self) -> &Register {
        &self.reg
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVec) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `L_A: |X⟩ ↦ |AX⟩`.
    pub fn apply_left(&self, a: &Mat) -> Result<Self, OracleError> {
        Ok(self.permuted(&self.reg.permutation(a, Side::Left)?))
    }

    /// `R_B: |X⟩ ↦ |XB⟩`.
    pub fn apply_right(&self, b: &Mat) -> Result<Self, OracleError> {
        Ok(self.permuted(&self.reg.permutation(b, Side::Right)?))
    }

    /// Moves the amplitude of label `i` to label `perm[i]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); self.reg.dim];
        for (&amp, &to) in self.amps.iter().zip(perm) {
            amps[to] = amp;
        }
        StateVec { reg: self.reg.clone(), amps }
    }

    /// Equality up to a global phase, fixed by the first amplitude of `self`
    /// whose modulus exceeds `tol`.
    pub fn approx_eq(&self, other: &StateVec, tol: f64) -> bool {
        if !self.reg.same_shape(&other.reg) {
            return false;
        }
        let Some(i) = self.amps.iter().position(|a| a.norm() > tol) else {
            return other.amps.iter().all(|b| b.norm() <= tol);
        };
        if other.amps[i].norm() <= tol {
            return false;
        }
        let phase = self.amps[i] / other.amps[i];
        let phase = phase / phase.norm();
        self.amps.iter().zip(&other.amps).all(|(a, b)| (a - b * phase).norm() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reg(p: u64, t: usize, rows: usize, cols: usize) -> Register {
        Register::new(FieldCtx::new(p, t, 1).unwrap().base(), rows, cols, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn labels_round_trip() {
        let r = reg(3, 1, 2, 2);
        for idx in 0..r.dim() {
            assert_eq!(r.index_of(&r.label(idx)).unwrap(), idx);
        }
    }

    #[test]
    fn single_qubit_phase_states() {
        let r = reg(2, 1, 1, 1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVec::phase_basis(&r, &r.label(0)).unwrap();
        let minus = StateVec::phase_basis(&r, &r.label(1)).unwrap();
        let close = |a: Complex64, re: f64| (a - Complex64::new(re, 0.0)).norm() < TOLERANCE;
        assert!(close(plus.amplitudes()[0], h) && close(plus.amplitudes()[1], h));
        assert!(close(minus.amplitudes()[0], h) && close(minus.amplitudes()[1], -h));
    }

    #[test]
    fn left_action_on_basis_labels() {
        let r = reg(2, 1, 2, 1);
        let a = Mat::from_rows(r.field(), &[[1, 1], [0, 1]]).unwrap();
        let e1 = Mat::from_rows(r.field(), &[[1], [0]]).unwrap();
        let e2 = Mat::from_rows(r.field(), &[[0], [1]]).unwrap();
        let ones = Mat::from_rows(r.field(), &[[1], [1]]).unwrap();
        let s1 = StateVec::bit_basis(&r, &e1).unwrap().apply_left(&a).unwrap();
        let s2 = StateVec::bit_basis(&r, &e2).unwrap().apply_left(&a).unwrap();
        assert!(s1.approx_eq(&StateVec::bit_basis(&r, &e1).unwrap(), TOLERANCE));
        assert!(s2.approx_eq(&StateVec::bit_basis(&r, &ones).unwrap(), TOLERANCE));
    }

    #[test]
    fn singular_operator_rejected() {
        let r = reg(2, 1, 2, 1);
        let s = StateVec::bit_basis(&r, &r.label(0)).unwrap();
        let a = Mat::from_rows(r.field(), &[[1, 1], [1, 1]]).unwrap();
        assert!(matches!(s.apply_left(&a), Err(OracleError::SingularMatrix { rank: 1, size: 2 })));
    }

    #[test]
    fn phase_basis_is_orthonormal() {
        for (p, t, rows, cols) in [(2, 1, 2, 2), (3, 1, 1, 2), (2, 2, 1, 2)] {
            let r = reg(p, t, rows, cols);
            let states: Vec<_> = (0..r.dim()).map(|i| StateVec::phase_basis(&r, &r.label(i)).unwrap()).collect();
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((a.inner(b) - Complex64::new(want, 0.0)).norm() < TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn random_operators_preserve_norm() {
        let r = reg(3, 1, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = StateVec::phase_basis(&r, &r.label(17)).unwrap();
        let a = Mat::sample_invertible(r.field(), 2, &mut rng);
        let b = Mat::sample_invertible(r.field(), 2, &mut rng);
        let out = s.apply_left(&a).unwrap().apply_right(&b).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < TOLERANCE);
    }

    #[test]
    fn global_phase_ignored() {
        let r = reg(3, 1, 1, 1);
        let s = StateVec::phase_basis(&r, &r.label(1)).unwrap();
        let w = Complex64::from_polar(1.0, 0.7);
        let t = StateVec::from_amplitudes(&r, s.amplitudes().iter().map(|a| a * w).collect()).unwrap();
        assert!(s.approx_eq(&t, TOLERANCE));
        assert!(!s.approx_eq(&StateVec::phase_basis(&r, &r.label(2)).unwrap(), TOLERANCE));
    }

    #[test]
    fn cap_is_enforced() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        assert!(matches!(Register::new(f.base(), 3, 4, DEFAULT_CAP), Err(OracleError::CapExceeded { .. })));
    }
}
