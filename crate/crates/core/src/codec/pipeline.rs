use super::scramble::{build_u2, build_u2_inv};
use super::{BitBranch, CodeConfig, CodeRandomness, CodecError, DecodeFailure, DecodeOutcome, PhaseBranch};
use crate::linalg::{LinalgError, Mat, RowMask};

/// `(Aᵀ)^-1`, the matrix a phase-basis label sees when `A` acts on bit labels.
pub fn phase_dual(a: &Mat) -> Result<Mat, CodecError> {
    Ok(a.transpose().inverse()?)
}

/// `X = U1 · [[0; R1] | E1 | [0; M; E2]] · U2`.
pub fn encode_bit(branch: &BitBranch, rand: &CodeRandomness, cfg: &CodeConfig) -> Result<Mat, CodecError> {
    cfg.validate()?;
    branch.validate(cfg)?;
    rand.validate(cfg)?;
    let (m, a) = (cfg.m, cfg.a);
    let f = rand.u1.field();
    let mut s = Mat::zeros(f, m, cfg.n_prime());
    s.set_block(a, 0, &rand.r1)?;
    s.set_block(0, m, &branch.e1)?;
    s.set_block(a, 2 * m, &branch.message)?;
    s.set_block(m - cfg.a_phase, 2 * m, &branch.e2)?;
    let u2 = build_u2(f, &rand.v, cfg)?;
    Ok(rand.u1.mul(&s)?.mul(&u2)?)
}

/// `X' = Ũ1 · [E1' | [R2; 0] | [E2'; M'; 0]] · Ũ2` with `Ũ = (Uᵀ)^-1`.
pub fn encode_phase(branch: &PhaseBranch, rand: &CodeRandomness, cfg: &CodeConfig) -> Result<Mat, CodecError> {
    cfg.validate()?;
    branch.validate(cfg)?;
    rand.validate(cfg)?;
    let m = cfg.m;
    let f = rand.u1.field();
    let mut s = Mat::zeros(f, m, cfg.n_prime());
    s.set_block(0, 0, &branch.e1)?;
    s.set_block(0, m, &rand.r2)?;
    s.set_block(0, 2 * m, &branch.e2)?;
    s.set_block(cfg.a, 2 * m, &branch.message)?;
    let u1_dual = phase_dual(&rand.u1)?;
    let u2_dual = build_u2_inv(f, &rand.v, cfg)?.transpose();
    Ok(u1_dual.mul(&s)?.mul(&u2_dual)?)
}

fn solve(o: &Mat, target: &Mat, mask: &RowMask) -> Result<Result<Mat, DecodeFailure>, CodecError> {
    match o.solve_projected(target, mask) {
        Ok(d) => Ok(Ok(d)),
        Err(LinalgError::Inconsistent { .. }) => Ok(Err(DecodeFailure::Inconsistent)),
        Err(LinalgError::CannotComplete) => Ok(Err(DecodeFailure::CannotComplete)),
        Err(e) => Err(e.into()),
    }
}

/// Undoes `U2`, solves for `D1` on the A block and reads `[M; E2]` from
/// rows `a..m` of `D1 · Ȳ^C`.
pub fn decode_bit(y: &Mat, r1: &Mat, v: &[u64], cfg: &CodeConfig) -> Result<DecodeOutcome, CodecError> {
    cfg.validate()?;
    let (m, a) = (cfg.m, cfg.a);
    cfg.expect("received block", y, m, cfg.n_prime())?;
    cfg.expect("R1", r1, m - a, m)?;
    let f = y.field();
    let ybar = y.mul(&build_u2_inv(f, v, cfg)?)?;
    let o = ybar.col_block(0..m)?;
    let target = Mat::vstack(&[&Mat::zeros(f, a, m), r1])?;
    let d = match solve(&o, &target, &RowMask::range(0..a))? {
        Ok(d) => d,
        Err(fail) => return Ok(DecodeOutcome::Failed(fail)),
    };
    let c = d.mul(&ybar.col_block(2 * m..cfg.n_prime())?)?;
    let split = m - cfg.a_phase;
    Ok(DecodeOutcome::Ok { message: c.row_block(a..split)?, tail: c.row_block(split..m)? })
}

/// Mirror of [`decode_bit`]: undoes `Ũ2` (multiplying by `U2ᵀ`), solves for
/// `D2` on the B block and reads `[E2'; M']` from rows `0..m-a'`.
pub fn decode_phase(y: &Mat, r2: &Mat, v: &[u64], cfg: &CodeConfig) -> Result<DecodeOutcome, CodecError> {
    cfg.validate()?;
    let (m, a_phase) = (cfg.m, cfg.a_phase);
    cfg.expect("received block", y, m, cfg.n_prime())?;
    cfg.expect("R2", r2, m - a_phase, m)?;
    let f = y.field();
    let ybar = y.mul(&build_u2(f, v, cfg)?.transpose())?;
    let o = ybar.col_block(m..2 * m)?;
    let target = Mat::vstack(&[r2, &Mat::zeros(f, a_phase, m)])?;
    let d = match solve(&o, &target, &RowMask::range(m - a_phase..m))? {
        Ok(d) => d,
        Err(fail) => return Ok(DecodeOutcome::Failed(fail)),
    };
    let c = d.mul(&ybar.col_block(2 * m..cfg.n_prime())?)?;
    Ok(DecodeOutcome::Ok { message: c.row_block(cfg.a..m - a_phase)?, tail: c.row_block(0..cfg.a)? })
}
