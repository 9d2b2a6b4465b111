use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trial::{run_bit_trial, run_phase_trial, trial_rng, GammaFlags, TrialOutcome};
use super::{MonteCarloError, TrialConfig};
use crate::codec::{CodeConfig, DecodeFailure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GammaCounts {
    pub g1: u64,
    pub g2: u64,
    pub g2prime: u64,
    pub g3: u64,
    /// Trials where `g1`, `g2` and `g3` all held.
    pub all: u64,
}

impl GammaCounts {
    fn add(&mut self, f: &GammaFlags) {
        self.g1 += u64::from(f.g1);
        self.g2 += u64::from(f.g2);
        self.g2prime += u64::from(f.g2prime);
        self.g3 += u64::from(f.g3);
        self.all += u64::from(f.all());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GammaStats {
    pub bit: GammaCounts,
    pub phase: GammaCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReasonCounts {
    pub inconsistent: u64,
    pub cannot_complete: u64,
    /// Decoding produced a matrix but the message was wrong.
    pub wrong_message: u64,
}

impl ReasonCounts {
    fn add(&mut self, o: &TrialOutcome) {
        match o.failure {
            Some(DecodeFailure::Inconsistent) => self.inconsistent += 1,
            Some(DecodeFailure::CannotComplete) => self.cannot_complete += 1,
            None if !o.success => self.wrong_message += 1,
            None => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub cfg: CodeConfig,
    pub q_prime: u64,
    pub n_prime: usize,
    pub interference: String,
    pub trials: u64,
    pub master_seed: u64,
    pub bit_failures: u64,
    pub phase_failures: u64,
    /// Failures when the decoded garbage rows must also match.
    pub strict_bit_failures: u64,
    pub strict_phase_failures: u64,
    pub bit_reasons: ReasonCounts,
    pub phase_reasons: ReasonCounts,
    pub p_bit: f64,
    pub p_phase: f64,
    /// `1 - (p_bit + p_phase)`, a lower bound on the entanglement fidelity.
    pub fidelity_lower_bound: f64,
    pub gamma_stats: GammaStats,
    /// Trials whose conditions all held but which failed strict decoding,
    /// summed over both shadows. Always 0 for a correct decoder.
    pub implication_violations: u64,
    pub bit_violations: u64,
    pub phase_violations: u64,
}

impl TrialReport {
    pub const CSV_HEADER: [&'static str; 7] =
        ["q_prime", "n_prime", "trials", "bit_failures", "phase_failures", "fidelity_lower_bound", "violations"];

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.q_prime.to_string(),
            self.n_prime.to_string(),
            self.trials.to_string(),
            self.bit_failures.to_string(),
            self.phase_failures.to_string(),
            self.fidelity_lower_bound.to_string(),
            self.implication_violations.to_string(),
        ]
    }
}

fn run_one(tc: &TrialConfig, t: u64) -> Result<(TrialOutcome, TrialOutcome), MonteCarloError> {
    let mut rng = trial_rng(tc.master_seed(), t);
    let bit = run_bit_trial(tc, &mut rng)?;
    let phase = run_phase_trial(tc, &mut rng)?;
    Ok((bit, phase))
}

fn fold(tc: &TrialConfig, outcomes: Vec<(TrialOutcome, TrialOutcome)>) -> TrialReport {
    let cfg = *tc.cfg();
    let mut r = TrialReport {
        cfg,
        q_prime: tc.ctx().q_prime(),
        n_prime: cfg.n_prime(),
        interference: tc.interference().label().to_string(),
        trials: tc.trials(),
        master_seed: tc.master_seed(),
        bit_failures: 0,
        phase_failures: 0,
        strict_bit_failures: 0,
        strict_phase_failures: 0,
        bit_reasons: ReasonCounts::default(),
        phase_reasons: ReasonCounts::default(),
        p_bit: 0.0,
        p_phase: 0.0,
        fidelity_lower_bound: 0.0,
        gamma_stats: GammaStats::default(),
        implication_violations: 0,
        bit_violations: 0,
        phase_violations: 0,
    };
    for (bit, phase) in &outcomes {
        r.bit_failures += u64::from(!bit.success);
        r.phase_failures += u64::from(!phase.success);
        r.strict_bit_failures += u64::from(!bit.strict);
        r.strict_phase_failures += u64::from(!phase.strict);
        r.bit_reasons.add(bit);
        r.phase_reasons.add(phase);
        r.gamma_stats.bit.add(&bit.gamma);
        r.gamma_stats.phase.add(&phase.gamma);
        r.bit_violations += u64::from(bit.violates_implication());
        r.phase_violations += u64::from(phase.violates_implication());
    }
    let n = tc.trials() as f64;
    r.p_bit = r.bit_failures as f64 / n;
    r.p_phase = r.phase_failures as f64 / n;
    r.fidelity_lower_bound = 1.0 - (r.p_bit + r.p_phase);
    r.implication_violations = r.bit_violations + r.phase_violations;
    r
}

/// Runs every trial (in parallel on the global pool) and folds the outcomes
/// in trial order.
pub fn estimate(tc: &TrialConfig) -> Result<TrialReport, MonteCarloError> {
    let outcomes = (0..tc.trials()).into_par_iter().map(|t| run_one(tc, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(fold(tc, outcomes))
}

/// [`estimate`] on a dedicated pool of `jobs` threads.
pub fn estimate_with_jobs(tc: &TrialConfig, jobs: Option<usize>) -> Result<TrialReport, MonteCarloError> {
    match jobs {
        None => estimate(tc),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| MonteCarloError::Infeasible(format!("thread pool: {e}")))?;
            pool.install(|| estimate(tc))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::Interference;
    use crate::network::butterfly;

    fn tc(interference: Interference, trials: u64, seed: u64) -> TrialConfig {
        let spec = butterfly();
        let ctx = spec.field().with_alpha(4).unwrap();
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 4).unwrap();
        TrialConfig::new(spec.compose_transfer().unwrap(), cfg, ctx, interference, trials, seed).unwrap()
    }

    #[test]
    fn single_trial_zero_interference() {
        let r = estimate(&tc(Interference::Zero, 1, 0)).unwrap();
        assert_eq!((r.p_bit, r.p_phase, r.fidelity_lower_bound), (0.0, 0.0, 1.0));
    }

    #[test]
    fn reports_are_deterministic_across_pools() {
        let t = tc(Interference::Uniform, 200, 42);
        let a = estimate_with_jobs(&t, Some(1)).unwrap();
        let b = estimate_with_jobs(&t, Some(4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.implication_violations, 0);
        assert_eq!(a.phase_failures, 0);
    }
}
