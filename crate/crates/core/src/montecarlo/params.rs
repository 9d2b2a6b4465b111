//! Field-size and block-length schedules.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::MonteCarloError;

fn check_rates(m: usize, a: usize, a_phase: usize) -> Result<(), MonteCarloError> {
    if a + a_phase >= m {
        return Err(MonteCarloError::Infeasible(format!("a + a' = {} must be below m = {m}", a + a_phase)));
    }
    Ok(())
}

/// `n · n'^m / q'^{m - A}` with `q' = q^alpha`, evaluated in log space.
pub fn bound_ratio(n: u64, n_prime: u64, q: u64, alpha: usize, m: usize, big_a: usize) -> f64 {
    let lq = (q as f64).log2();
    let log = (n as f64).log2() + m as f64 * (n_prime as f64).log2() - (m - big_a) as f64 * alpha as f64 * lq;
    log.exp2()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QPrimeChoice {
    pub alpha: usize,
    /// `log2 q'`
    pub q_prime_log2: f64,
    pub n_requested: u64,
    /// Block length after padding to a multiple of `alpha`.
    pub n: u64,
    pub n_prime: u64,
    pub padded: bool,
    /// Padding had to go beyond the next multiple because `n' <= 2m`.
    pub forced_block: bool,
    /// `1 + (A + 2) / (m - A)` with `A = max(a, a')`.
    pub exponent: f64,
    pub bound_ratio: f64,
}

/// Smallest `alpha` with `q^alpha >= n^{1 + (A+2)/(m-A)}`, i.e.
/// `q^{alpha (m-A)} >= n^{m+2}`, compared exactly. `n` is then padded up to
/// a multiple of `alpha`, and further to `alpha (2m + 1)` if that leaves
/// `n' <= 2m`.
pub fn choose_qprime(n: u64, q: u64, m: usize, a: usize, a_phase: usize) -> Result<QPrimeChoice, MonteCarloError> {
    check_rates(m, a, a_phase)?;
    if q < 2 || n < 1 {
        return Err(MonteCarloError::Infeasible(format!("need q >= 2 and n >= 1, got q = {q}, n = {n}")));
    }
    let big_a = a.max(a_phase);
    let gap = (m - big_a) as u32;
    let target = BigUint::from(n).pow((m + 2) as u32);
    let qb = BigUint::from(q);
    let mut alpha = 1usize;
    let mut lhs = qb.pow(gap);
    let step = lhs.clone();
    while lhs < target {
        alpha += 1;
        lhs *= &step;
    }
    let a64 = alpha as u64;
    let mut n_pad = n.div_ceil(a64) * a64;
    let mut forced_block = false;
    if n_pad / a64 <= 2 * m as u64 {
        n_pad = a64 * (2 * m as u64 + 1);
        forced_block = true;
    }
    let n_prime = n_pad / a64;
    Ok(QPrimeChoice {
        alpha,
        q_prime_log2: alpha as f64 * (q as f64).log2(),
        n_requested: n,
        n: n_pad,
        n_prime,
        padded: n_pad != n,
        forced_block,
        exponent: 1.0 + (big_a as f64 + 2.0) / (m - big_a) as f64,
        bound_ratio: bound_ratio(n_pad, n_prime, q, alpha, m, big_a),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub n: u64,
    pub q: u64,
    pub m: usize,
    pub a: usize,
    pub a_phase: usize,
    /// `floor(2 log2 log2 n / (m log2 q))`
    pub beta: u64,
    /// `floor((m + 2) log2 n / log2 q)`
    pub alpha: u64,
    /// Bits of shared randomness, `ceil(m (2m - a - a' + 4) log2 q')`.
    pub k: u64,
    /// Block length of the sharing protocol, `m (m - a' + 1) k beta`.
    pub n1: u64,
    /// `q^beta`
    pub q1: u64,
    /// `q1^m`
    pub q2: u128,
    /// `k m / q2`
    pub p_err_bound: f64,
    /// `n1 / n`
    pub overhead: f64,
}

/// Schedule for attaching a secret-sharing front end to the code.
pub fn theorem2_params(n: u64, q: u64, m: usize, a: usize, a_phase: usize) -> Result<Theorem2Params, MonteCarloError> {
    check_rates(m, a, a_phase)?;
    if q < 2 {
        return Err(MonteCarloError::Infeasible(format!("need q >= 2, got {q}")));
    }
    if n <= 2 {
        return Err(MonteCarloError::NTooSmall { n });
    }
    let log_n = (n as f64).log2();
    let lq = (q as f64).log2();
    let beta = (2.0 * log_n.log2() / (m as f64 * lq)).floor() as u64;
    if beta < 1 {
        return Err(MonteCarloError::NTooSmall { n });
    }
    let alpha = ((m as f64 + 2.0) * log_n / lq).floor() as u64;
    let per = (m * (2 * m - a - a_phase + 4)) as u64;
    let k = (per as f64 * alpha as f64 * lq).ceil() as u64;
    let n1 = (m * (m - a_phase + 1)) as u64 * k * beta;
    let overflow = || MonteCarloError::Infeasible("q^(beta m) does not fit in 128 bits".into());
    let q1 = q.checked_pow(beta as u32).ok_or_else(overflow)?;
    let q2 = (q1 as u128).checked_pow(m as u32).ok_or_else(overflow)?;
    Ok(Theorem2Params {
        n,
        q,
        m,
        a,
        a_phase,
        beta,
        alpha,
        k,
        n1,
        q1,
        q2,
        p_err_bound: (k as f64 * m as f64) / q2 as f64,
        overhead: n1 as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qprime_pads_short_blocks() {
        let c = choose_qprime(64, 2, 2, 1, 0).unwrap();
        assert_eq!((c.alpha, c.n, c.n_prime), (24, 120, 5));
        assert!(c.padded && c.forced_block);
    }

    #[test]
    fn qprime_unicast_exponent_three() {
        // q^alpha >= n^3 with n = 3^4: alpha = 12, and 81 pads to 84 = 12 * 7
        let c = choose_qprime(81, 3, 1, 0, 0).unwrap();
        assert_eq!(c.alpha, 12);
        assert_eq!((c.n, c.n_prime), (84, 7));
        assert!(!c.forced_block);
    }

    #[test]
    fn rejects_infeasible() {
        assert!(choose_qprime(64, 2, 2, 1, 1).is_err());
        assert!(matches!(theorem2_params(4, 2, 3, 1, 1), Err(MonteCarloError::NTooSmall { .. })));
    }
}
