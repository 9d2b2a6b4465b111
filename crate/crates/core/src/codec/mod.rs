//! Encoder and decoder acting on the bit and phase shadows of one
//! sender-receiver pair.
//!
//! A codeword is an `m × n'` matrix over `F_{q'}`. Its columns split into
//! three blocks of widths `m | m | n' - 2m`, called A, B and C below. The
//! bit shadow carries `[0; R1]` in A, garbage in B and `[0; M; E2]` in C;
//! the phase shadow carries garbage in A, `[R2; 0]` in B and `[E2'; M'; 0]`
//! in C. The sender scrambles rows with a private invertible `U1` and
//! columns with the structured matrix `U2` built from shared values `V`.

mod pipeline;
mod scramble;
mod vector;

pub use pipeline::{decode_bit, decode_phase, encode_bit, encode_phase, phase_dual};
pub use scramble::{build_u2, build_u2_factors, build_u2_inv, build_u2_inv_factors, u2_blocks, U2Blocks};
pub use vector::{test_vector, TestVector};

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldCtx, Gf, GfError};
use crate::linalg::{LinalgError, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("invalid code configuration: {0}")]
    ConfigInvalid(String),
    #[error("{what} has shape {got:?}, expected {expected:?}")]
    DimensionMismatch { what: &'static str, expected: (usize, usize), got: (usize, usize) },
    #[error("expected {expected} shared values, got {got}")]
    SharedLength { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Rates and block length for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    /// 0-based pair index.
    pub pair: usize,
    pub m: usize,
    /// Bound on the bit interference rank.
    pub a: usize,
    /// Bound on the phase interference rank.
    pub a_phase: usize,
    /// Block length over `F_q`.
    pub n: usize,
    pub alpha: usize,
}

impl CodeConfig {
    pub fn new(pair: usize, m: usize, a: usize, a_phase: usize, n: usize, alpha: usize) -> Result<Self, CodecError> {
        let cfg = CodeConfig { pair, m, a, a_phase, n, alpha };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Config with block length `n' * alpha`.
    pub fn with_n_prime(
        pair: usize,
        m: usize,
        a: usize,
        a_phase: usize,
        n_prime: usize,
        alpha: usize,
    ) -> Result<Self, CodecError> {
        CodeConfig::new(pair, m, a, a_phase, n_prime * alpha, alpha)
    }

    pub fn validate(&self) -> Result<(), CodecError> {
        let bad = |s: String| Err(CodecError::ConfigInvalid(s));
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        if self.a + self.a_phase >= self.m {
            return bad(format!("a + a' = {} must be below m = {}", self.a + self.a_phase, self.m));
        }
        if self.alpha == 0 || !self.n.is_multiple_of(self.alpha) {
            return bad(format!("alpha = {} must divide n = {}", self.alpha, self.n));
        }
        if self.n_prime() <= 2 * self.m {
            return bad(format!("n' = {} must exceed 2m = {}", self.n_prime(), 2 * self.m));
        }
        Ok(())
    }

    pub fn n_prime(&self) -> usize {
        self.n / self.alpha
    }

    /// Width of the C block, `n' - 2m`.
    pub fn c(&self) -> usize {
        self.n_prime() - 2 * self.m
    }

    /// Message rows, `m - a - a'`.
    pub fn k(&self) -> usize {
        self.m - self.a - self.a_phase
    }

    /// Number of `F_{q'}` values in the shared randomness `(R1, R2, V)`.
    pub fn shared_len_ext(&self) -> usize {
        self.m * (2 * self.m - self.a - self.a_phase + 4)
    }

    /// Number of `F_q` values in the shared randomness.
    pub fn shared_len_base(&self) -> usize {
        self.alpha * self.shared_len_ext()
    }

    pub(crate) fn expect(&self, what: &'static str, m: &Mat, rows: usize, cols: usize) -> Result<(), CodecError> {
        if m.dims() != (rows, cols) {
            return Err(CodecError::DimensionMismatch { what, expected: (rows, cols), got: m.dims() });
        }
        Ok(())
    }
}

impl fmt::Display for CodeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair {} (m={}, a={}, a'={}, n={}, alpha={}, n'={})",
            self.pair + 1,
            self.m,
            self.a,
            self.a_phase,
            self.n,
            self.alpha,
            self.n_prime()
        )
    }
}

/// Shared `(R1, R2, V)` and private `U1`, all over `F_{q'}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRandomness {
    /// `(m - a) × m`, full rank.
    pub r1: Mat,
    /// `(m - a') × m`, full rank.
    pub r2: Mat,
    /// `4m` scalars.
    pub v: Vec<u64>,
    /// `m × m`, invertible.
    pub u1: Mat,
}

impl CodeRandomness {
    /// Each component uniform over its support, independently.
    pub fn sample<R: Rng + ?Sized>(cfg: &CodeConfig, field: &Arc<Gf>, rng: &mut R) -> CodeRandomness {
        let m = cfg.m;
        let r1 = Mat::sample_full_rank(field, m - cfg.a, m, rng);
        let r2 = Mat::sample_full_rank(field, m - cfg.a_phase, m, rng);
        let v = (0..4 * m).map(|_| field.random(rng)).collect();
        let u1 = Mat::sample_invertible(field, m, rng);
        CodeRandomness { r1, r2, v, u1 }
    }

    /// Identity scrambling, `V = 0`, and `R` the bottom/top rows of the identity.
    pub fn trivial(cfg: &CodeConfig, field: &Arc<Gf>) -> CodeRandomness {
        let m = cfg.m;
        let id = Mat::identity(field, m);
        CodeRandomness {
            r1: id.row_block(cfg.a..m).expect("in range"),
            r2: id.row_block(0..m - cfg.a_phase).expect("in range"),
            v: vec![0; 4 * m],
            u1: id,
        }
    }

    pub fn validate(&self, cfg: &CodeConfig) -> Result<(), CodecError> {
        let m = cfg.m;
        cfg.expect("R1", &self.r1, m - cfg.a, m)?;
        cfg.expect("R2", &self.r2, m - cfg.a_phase, m)?;
        cfg.expect("U1", &self.u1, m, m)?;
        if self.v.len() != 4 * m {
            return Err(CodecError::SharedLength { expected: 4 * m, got: self.v.len() });
        }
        if self.r1.rank() != m - cfg.a || self.r2.rank() != m - cfg.a_phase {
            return Err(CodecError::ConfigInvalid("R1 and R2 must have full row rank".into()));
        }
        if !self.u1.is_invertible() {
            return Err(CodecError::ConfigInvalid("U1 must be invertible".into()));
        }
        Ok(())
    }

    /// The shared part `(R1, R2, V)` as `F_{q'}` codes, row-major.
    pub fn shared_ext(&self) -> Vec<u64> {
        let mut out = self.r1.data().to_vec();
        out.extend_from_slice(self.r2.data());
        out.extend_from_slice(&self.v);
        out
    }

    /// The shared part expanded to `F_q` coordinates, `alpha` per value.
    pub fn shared_base(&self, ctx: &FieldCtx) -> Vec<u64> {
        ctx.flatten(&self.shared_ext())
    }
}

/// One bit-basis branch of the superposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBranch {
    /// `(m - a - a') × (n' - 2m)`
    pub message: Mat,
    /// `m × m` garbage in block B.
    pub e1: Mat,
    /// `a' × (n' - 2m)` garbage under the message.
    pub e2: Mat,
}

/// One phase-basis branch of the superposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseBranch {
    /// `(m - a - a') × (n' - 2m)`
    pub message: Mat,
    /// `m × m` garbage in block A.
    pub e1: Mat,
    /// `a × (n' - 2m)` garbage above the message.
    pub e2: Mat,
}

impl BitBranch {
    pub fn random<R: Rng + ?Sized>(cfg: &CodeConfig, field: &Arc<Gf>, rng: &mut R) -> BitBranch {
        BitBranch {
            message: Mat::random(field, cfg.k(), cfg.c(), rng),
            e1: Mat::random(field, cfg.m, cfg.m, rng),
            e2: Mat::random(field, cfg.a_phase, cfg.c(), rng),
        }
    }

    pub fn validate(&self, cfg: &CodeConfig) -> Result<(), CodecError> {
        cfg.expect("message", &self.message, cfg.k(), cfg.c())?;
        cfg.expect("E1", &self.e1, cfg.m, cfg.m)?;
        cfg.expect("E2", &self.e2, cfg.a_phase, cfg.c())
    }
}

impl PhaseBranch {
    pub fn random<R: Rng + ?Sized>(cfg: &CodeConfig, field: &Arc<Gf>, rng: &mut R) -> PhaseBranch {
        PhaseBranch {
            message: Mat::random(field, cfg.k(), cfg.c(), rng),
            e1: Mat::random(field, cfg.m, cfg.m, rng),
            e2: Mat::random(field, cfg.a, cfg.c(), rng),
        }
    }

    pub fn validate(&self, cfg: &CodeConfig) -> Result<(), CodecError> {
        cfg.expect("message", &self.message, cfg.k(), cfg.c())?;
        cfg.expect("E1'", &self.e1, cfg.m, cfg.m)?;
        cfg.expect("E2'", &self.e2, cfg.a, cfg.c())
    }
}

/// Why the masked elimination found no decoding matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeFailure {
    Inconsistent,
    CannotComplete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Ok {
        message: Mat,
        /// The garbage rows decoded alongside the message (`E2` on the bit
        /// side, `E2'` on the phase side).
        tail: Mat,
    },
    Failed(DecodeFailure),
}

impl DecodeOutcome {
    pub fn message(&self) -> Option<&Mat> {
        match self {
            DecodeOutcome::Ok { message, .. } => Some(message),
            DecodeOutcome::Failed(_) => None,
        }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, DecodeOutcome::Ok { .. })
    }

    pub fn recovers(&self, message: &Mat) -> bool {
        self.message() == Some(message)
    }

    pub fn recovers_all(&self, message: &Mat, tail: &Mat) -> bool {
        matches!(self, DecodeOutcome::Ok { message: m, tail: t } if m == message && t == tail)
    }
}

/// The nested classical codes behind the CSS construction, as sets of
/// `m × (n' - 2m)` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CssSpace {
    /// Top `a` rows zero.
    C1,
    /// Bottom `a'` rows zero.
    C2,
    /// Everything but the bottom `a'` rows zero.
    C2Perp,
}

pub fn css_membership(x: &Mat, space: CssSpace, cfg: &CodeConfig) -> Result<bool, CodecError> {
    cfg.expect("codeword", x, cfg.m, cfg.c())?;
    let m = cfg.m;
    let zero_rows = |r: std::ops::Range<usize>| r.into_iter().all(|i| x.row(i).iter().all(|&c| c == 0));
    Ok(match space {
        CssSpace::C1 => zero_rows(0..cfg.a),
        CssSpace::C2 => zero_rows(m - cfg.a_phase..m),
        CssSpace::C2Perp => zero_rows(0..m - cfg.a_phase),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn config_validation() {
        assert!(CodeConfig::new(0, 2, 1, 0, 6, 1).is_ok());
        assert!(CodeConfig::new(0, 2, 1, 1, 6, 1).is_err());
        assert!(CodeConfig::new(0, 2, 1, 0, 7, 2).is_err());
        assert!(CodeConfig::new(0, 2, 1, 0, 4, 1).is_err());
        let cfg = CodeConfig::with_n_prime(0, 3, 1, 1, 8, 4).unwrap();
        assert_eq!((cfg.n, cfg.c(), cfg.k()), (32, 2, 1));
    }

    #[test]
    fn shared_randomness_size() {
        let ctx = FieldCtx::new(2, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = CodeConfig::with_n_prime(0, 3, 1, 1, 7, 3).unwrap();
        let r = CodeRandomness::sample(&cfg, ctx.ext(), &mut rng);
        assert_eq!(r.shared_base(&ctx).len(), 3 * 3 * (6 - 2 + 4));
        assert_eq!(cfg.shared_len_base(), 72);
    }

    #[test]
    fn css_containment() {
        let ctx = FieldCtx::new(2, 2, 1).unwrap();
        let f = ctx.base();
        let cfg = CodeConfig::new(0, 4, 1, 2, 10, 1).unwrap();
        let zero = Mat::zeros(f, 4, 2);
        for s in [CssSpace::C1, CssSpace::C2, CssSpace::C2Perp] {
            assert!(css_membership(&zero, s, &cfg).unwrap());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let mut x = Mat::zeros(f, 4, 2);
            x.set_block(2, 0, &Mat::random(f, 2, 2, &mut rng)).unwrap();
            assert!(css_membership(&x, CssSpace::C2Perp, &cfg).unwrap());
            assert!(css_membership(&x, CssSpace::C1, &cfg).unwrap());
        }
        let mut x = Mat::zeros(f, 4, 2);
        x.set(0, 1, 3);
        assert!(!css_membership(&x, CssSpace::C1, &cfg).unwrap());
    }
}
