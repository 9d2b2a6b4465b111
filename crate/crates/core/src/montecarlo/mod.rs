//! Monte Carlo estimation of bit and phase decoding failures, with
//! instrumentation of the subspace conditions that guarantee decoding, plus
//! the auxiliary probability experiments and parameter schedules.

mod lemmas;
mod params;
mod report;
mod trial;

pub use lemmas::{
    field_of_order, lemma3_closed_form, lemma3_exhaustive, lemma3_experiment, lemma4_closed_form, lemma4_exhaustive,
    lemma4_experiment, lemma5_experiment, lemma5_zero_probability, Lemma5Report, Ratio,
};
pub use params::{bound_ratio, choose_qprime, theorem2_params, QPrimeChoice, Theorem2Params};
pub use report::{estimate, estimate_with_jobs, GammaCounts, GammaStats, ReasonCounts, TrialReport};
pub use trial::{run_bit_trial, run_phase_trial, trial_rng, GammaFlags, GammaInstance, TrialOutcome};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::codec::{CodeConfig, CodecError};
use crate::gf::{FieldCtx, GfError};
use crate::linalg::{LinalgError, Mat};
use crate::network::{Basis, NetworkError, TransferPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonteCarloError {
    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(String),
    #[error("invalid dimensions: {0}")]
    DimensionInvalid(String),
    #[error("n = {n} is too small: beta = floor(2 log2 log2 n / (m log2 q)) is 0")]
    NTooSmall { n: u64 },
    #[error("parameters out of range: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// How the other senders' inputs `Z` are chosen in each trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interference {
    Zero,
    Uniform,
    /// The same `(m - m_i) × n'` matrix over `F_{q'}` in every trial, on
    /// both shadows.
    Fixed(Mat),
}

impl Interference {
    pub fn label(&self) -> &'static str {
        match self {
            Interference::Zero => "zero",
            Interference::Uniform => "uniform",
            Interference::Fixed(_) => "fixed",
        }
    }
}

/// Parses `zero` and `uniform`; `fixed:PATH` needs a field and is handled
/// by the caller.
impl FromStr for Interference {
    type Err = MonteCarloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(Interference::Zero),
            "uniform" => Ok(Interference::Uniform),
            other => Err(MonteCarloError::Infeasible(format!("unknown interference mode {other:?}"))),
        }
    }
}

impl fmt::Display for Interference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Transfer blocks of the chosen pair, lifted to `F_{q'}`.
#[derive(Debug, Clone)]
pub(crate) struct LiftedBlocks {
    pub own: Mat,
    pub others: Mat,
    pub own_phase: Mat,
    pub others_phase: Mat,
}

/// Everything one estimation run needs.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    transfer: TransferPair,
    cfg: CodeConfig,
    ctx: FieldCtx,
    interference: Interference,
    trials: u64,
    master_seed: u64,
    lifted: LiftedBlocks,
}

impl TrialConfig {
    /// `ctx` must extend the transfer field with `alpha = cfg.alpha`.
    pub fn new(
        transfer: TransferPair,
        cfg: CodeConfig,
        ctx: FieldCtx,
        interference: Interference,
        trials: u64,
        master_seed: u64,
    ) -> Result<Self, MonteCarloError> {
        cfg.validate()?;
        if trials == 0 {
            return Err(MonteCarloError::InfeasibleConfig("trials must be at least 1".into()));
        }
        if **ctx.base() != **transfer.field() {
            return Err(MonteCarloError::InfeasibleConfig("field tower does not extend the network field".into()));
        }
        if ctx.alpha() != cfg.alpha {
            return Err(MonteCarloError::InfeasibleConfig(format!(
                "field has alpha = {}, config has alpha = {}",
                ctx.alpha(),
                cfg.alpha
            )));
        }
        let Some(&m_i) = transfer.pair_sizes().get(cfg.pair) else {
            return Err(NetworkError::IndexOutOfRange { index: cfg.pair, pairs: transfer.pairs() }.into());
        };
        if m_i != cfg.m {
            return Err(MonteCarloError::InfeasibleConfig(format!(
                "pair {} has m = {m_i}, config says {}",
                cfg.pair + 1,
                cfg.m
            )));
        }
        let row = transfer.rate_table()[cfg.pair];
        if !row.admissible() {
            return Err(MonteCarloError::InfeasibleConfig(format!(
                "own blocks have ranks ({}, {}), need {} for both",
                row.rank_own, row.rank_own_phase, row.m
            )));
        }
        let others = transfer.wires() - m_i;
        if let Interference::Fixed(z) = &interference {
            if z.dims() != (others, cfg.n_prime()) || **z.field() != **ctx.ext() {
                return Err(MonteCarloError::DimensionInvalid(format!(
                    "fixed interference must be {others}x{} over F_{}",
                    cfg.n_prime(),
                    ctx.q_prime()
                )));
            }
        }
        let ext = ctx.ext();
        let lift = |basis: Basis, own: bool| -> Result<Mat, MonteCarloError> {
            let m = if own {
                transfer.block(cfg.pair, cfg.pair, basis)?
            } else {
                transfer.complement_block(cfg.pair, basis)?
            };
            Ok(m.embed(ext)?)
        };
        let lifted = LiftedBlocks {
            own: lift(Basis::Bit, true)?,
            others: lift(Basis::Bit, false)?,
            own_phase: lift(Basis::Phase, true)?,
            others_phase: lift(Basis::Phase, false)?,
        };
        Ok(TrialConfig { transfer, cfg, ctx, interference, trials, master_seed, lifted })
    }

    pub fn transfer(&self) -> &TransferPair {
        &self.transfer
    }

    pub fn cfg(&self) -> &CodeConfig {
        &self.cfg
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn interference(&self) -> &Interference {
        &self.interference
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub(crate) fn lifted(&self) -> &LiftedBlocks {
        &self.lifted
    }
}
