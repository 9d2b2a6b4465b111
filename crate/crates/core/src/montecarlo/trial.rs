use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Interference, MonteCarloError, TrialConfig};
use crate::codec::{
    build_u2, build_u2_inv, decode_bit, decode_phase, encode_bit, encode_phase, phase_dual, BitBranch, CodeConfig,
    CodeRandomness, DecodeFailure, DecodeOutcome, PhaseBranch,
};
use crate::linalg::Mat;

/// Per-trial generator: `master_seed ^ trial_index`.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master_seed ^ trial)
}

/// The four decodability conditions for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GammaFlags {
    /// Own and interference column spaces meet only in zero.
    pub g1: bool,
    /// The paired columns `(x_j, y_j)` span the direct sum.
    pub g2: bool,
    /// Unscrambling keeps the full interference rank on the key block.
    pub g2prime: bool,
    /// The own block has the rank the decoder targets.
    pub g3: bool,
}

impl GammaFlags {
    pub fn all(&self) -> bool {
        self.g1 && self.g2 && self.g3
    }
}

/// Data for the condition check on one shadow.
#[derive(Debug, Clone)]
pub struct GammaInstance {
    /// Own contribution to the key block, `K_ii U1 [0; R1]` on the bit side.
    pub own: Mat,
    /// Interference after unscrambling, `K_{i^c} Z U2^-1` on the bit side.
    pub scrambled: Mat,
    /// Columns of the key block (A on the bit side, B on the phase side).
    pub block: Range<usize>,
    /// Rank the decoder expects of `own`, `m - a` on the bit side.
    pub own_rank: usize,
    /// `rank K_{i^c} Z` before unscrambling.
    pub interference_rank: usize,
}

impl GammaInstance {
    pub fn bit(
        own: &Mat,
        others: &Mat,
        z: &Mat,
        rand: &CodeRandomness,
        cfg: &CodeConfig,
    ) -> Result<Self, MonteCarloError> {
        let f = rand.u1.field();
        let key = Mat::vstack(&[&Mat::zeros(f, cfg.a, cfg.m), &rand.r1])?;
        let interference = others.mul(z)?;
        Ok(GammaInstance {
            own: own.mul(&rand.u1)?.mul(&key)?,
            scrambled: interference.mul(&build_u2_inv(f, &rand.v, cfg)?)?,
            block: 0..cfg.m,
            own_rank: cfg.m - cfg.a,
            interference_rank: interference.rank(),
        })
    }

    /// `own_phase` and `others_phase` are blocks of `(K^T)^-1`.
    pub fn phase(
        own_phase: &Mat,
        others_phase: &Mat,
        z: &Mat,
        rand: &CodeRandomness,
        cfg: &CodeConfig,
    ) -> Result<Self, MonteCarloError> {
        let f = rand.u1.field();
        let key = Mat::vstack(&[&rand.r2, &Mat::zeros(f, cfg.a_phase, cfg.m)])?;
        let interference = others_phase.mul(z)?;
        let u2_dual_inv = build_u2(f, &rand.v, cfg)?.transpose();
        Ok(GammaInstance {
            own: own_phase.mul(&phase_dual(&rand.u1)?)?.mul(&key)?,
            scrambled: interference.mul(&u2_dual_inv)?,
            block: cfg.m..2 * cfg.m,
            own_rank: cfg.m - cfg.a_phase,
            interference_rank: interference.rank(),
        })
    }

    pub fn check(&self) -> Result<GammaFlags, MonteCarloError> {
        let d1 = self.own.rank();
        let d2 = self.scrambled.rank();
        let y = self.scrambled.col_block(self.block.clone())?;
        Ok(GammaFlags {
            g1: Mat::hstack(&[&self.own, &self.scrambled])?.rank() == d1 + d2,
            g2: Mat::vstack(&[&self.own, &y])?.rank() == d1 + d2,
            g2prime: y.rank() == self.interference_rank,
            g3: d1 == self.own_rank,
        })
    }
}

/// Result of one trial on one shadow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    /// The message was recovered.
    pub success: bool,
    /// The message and the garbage rows decoded with it were recovered.
    pub strict: bool,
    pub failure: Option<DecodeFailure>,
    pub gamma: GammaFlags,
}

impl TrialOutcome {
    fn from_decode(out: &DecodeOutcome, message: &Mat, tail: &Mat, gamma: GammaFlags) -> Self {
        TrialOutcome {
            success: out.recovers(message),
            strict: out.recovers_all(message, tail),
            failure: match out {
                DecodeOutcome::Failed(why) => Some(*why),
                DecodeOutcome::Ok { .. } => None,
            },
            gamma,
        }
    }

    /// The conditions held but decoding did not reproduce the input.
    pub fn violates_implication(&self) -> bool {
        self.gamma.all() && !self.strict
    }
}

fn sample_z<R: Rng + ?Sized>(tc: &TrialConfig, rng: &mut R) -> Mat {
    let f = tc.ctx().ext();
    let rows = tc.transfer().wires() - tc.cfg().m;
    let cols = tc.cfg().n_prime();
    match tc.interference() {
        Interference::Zero => Mat::zeros(f, rows, cols),
        Interference::Uniform => Mat::random(f, rows, cols, rng),
        Interference::Fixed(z) => z.clone(),
    }
}

/// `Y = K_ii X + K_{i^c} Z` on the bit shadow, then decode.
pub fn run_bit_trial<R: Rng + ?Sized>(tc: &TrialConfig, rng: &mut R) -> Result<TrialOutcome, MonteCarloError> {
    let cfg = tc.cfg();
    let f = tc.ctx().ext();
    let blocks = tc.lifted();
    let rand = CodeRandomness::sample(cfg, f, rng);
    let branch = BitBranch::random(cfg, f, rng);
    let z = sample_z(tc, rng);
    let x = encode_bit(&branch, &rand, cfg)?;
    let y = blocks.own.mul(&x)?.add(&blocks.others.mul(&z)?)?;
    let out = decode_bit(&y, &rand.r1, &rand.v, cfg)?;
    let gamma = GammaInstance::bit(&blocks.own, &blocks.others, &z, &rand, cfg)?.check()?;
    Ok(TrialOutcome::from_decode(&out, &branch.message, &branch.e2, gamma))
}

/// `Y' = K̃_ii X' + K̃_{i^c} Z` on the phase shadow, then decode.
pub fn run_phase_trial<R: Rng + ?Sized>(tc: &TrialConfig, rng: &mut R) -> Result<TrialOutcome, MonteCarloError> {
    let cfg = tc.cfg();
    let f = tc.ctx().ext();
    let blocks = tc.lifted();
    let rand = CodeRandomness::sample(cfg, f, rng);
    let branch = PhaseBranch::random(cfg, f, rng);
    let z = sample_z(tc, rng);
    let x = encode_phase(&branch, &rand, cfg)?;
    let y = blocks.own_phase.mul(&x)?.add(&blocks.others_phase.mul(&z)?)?;
    let out = decode_phase(&y, &rand.r2, &rand.v, cfg)?;
    let gamma = GammaInstance::phase(&blocks.own_phase, &blocks.others_phase, &z, &rand, cfg)?.check()?;
    Ok(TrialOutcome::from_decode(&out, &branch.message, &branch.e2, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use crate::network::butterfly;

    #[test]
    fn zero_interference_all_flags_hold() {
        let ctx = FieldCtx::new(2, 1, 4).unwrap();
        let f = ctx.ext();
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 4).unwrap();
        let mut rng = trial_rng(1, 0);
        let rand = CodeRandomness::sample(&cfg, f, &mut rng);
        let own = Mat::identity(f, 2);
        let others = Mat::from_rows(f, &[[0, 0], [1, 0]]).unwrap();
        let z = Mat::zeros(f, 2, 6);
        let flags = GammaInstance::bit(&own, &others, &z, &rand, &cfg).unwrap().check().unwrap();
        assert_eq!(flags, GammaFlags { g1: true, g2: true, g2prime: true, g3: true });
    }

    #[test]
    fn aligned_interference_breaks_g1() {
        // With U1 = I the own columns span e2, and the butterfly leak also
        // lands on e2, so the two spaces coincide.
        let ctx = FieldCtx::new(2, 1, 4).unwrap();
        let f = ctx.ext();
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 4).unwrap();
        let mut rand = CodeRandomness::trivial(&cfg, f);
        rand.v = vec![3, 5, 7, 9, 2, 4, 6, 8];
        let own = Mat::identity(f, 2);
        let others = Mat::from_rows(f, &[[0, 0], [1, 0]]).unwrap();
        let mut z = Mat::zeros(f, 2, 6);
        z.set(0, 0, 1);
        let flags = GammaInstance::bit(&own, &others, &z, &rand, &cfg).unwrap().check().unwrap();
        assert!(!flags.g1);
    }

    #[test]
    fn trials_reproduce_with_same_rng() {
        let tp = butterfly().compose_transfer().unwrap();
        let ctx = butterfly().field().with_alpha(4).unwrap();
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 4).unwrap();
        let tc = TrialConfig::new(tp, cfg, ctx, Interference::Uniform, 1, 0).unwrap();
        let a = run_bit_trial(&tc, &mut trial_rng(5, 3)).unwrap();
        let b = run_bit_trial(&tc, &mut trial_rng(5, 3)).unwrap();
        assert_eq!(a, b);
    }
}
