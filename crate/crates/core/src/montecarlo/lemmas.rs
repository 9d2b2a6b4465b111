//! Probability experiments on random subspaces and on the scrambler `U2`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MonteCarloError;
use crate::codec::{build_u2_inv, CodeConfig};
use crate::gf::{poly, FieldCtx, Gf};
use crate::linalg::Mat;

/// Exhaustive modes refuse to enumerate more matrices than this.
const ENUM_CAP: u64 = 1 << 20;

/// `hits / total`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub hits: u64,
    pub total: u64,
}

impl Ratio {
    pub fn value(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }

    /// Exact comparison with `num / den`.
    pub fn equals(&self, num: u64, den: u64) -> bool {
        self.hits as u128 * den as u128 == num as u128 * self.total as u128
    }
}

/// `F_q` for a prime power `q`, built as a degree-`k` extension of `F_p`.
pub fn field_of_order(q: u64) -> Result<Arc<Gf>, MonteCarloError> {
    let (p, k) =
        poly::prime_power(q).ok_or_else(|| MonteCarloError::Infeasible(format!("{q} is not a prime power")))?;
    Ok(FieldCtx::new(p, k as usize, 1)?.base().clone())
}

fn for_each_matrix(field: &Arc<Gf>, rows: usize, cols: usize, mut f: impl FnMut(&Mat)) -> Result<(), MonteCarloError> {
    let q = field.order();
    let cells = (rows * cols) as u32;
    let count = q.checked_pow(cells).filter(|&c| c <= ENUM_CAP).ok_or_else(|| {
        MonteCarloError::DimensionInvalid(format!("{q}^{cells} matrices exceed the enumeration cap {ENUM_CAP}"))
    })?;
    let mut data = vec![0u64; rows * cols];
    for idx in 0..count {
        let mut c = idx;
        for d in data.iter_mut() {
            *d = c % q;
            c /= q;
        }
        f(&Mat::from_vec(field, rows, cols, data.clone()).expect("codes below q"));
    }
    Ok(())
}

fn lemma3_check(da: usize, db: usize, dc: usize) -> Result<(), MonteCarloError> {
    if da < db + dc {
        return Err(MonteCarloError::DimensionInvalid(format!("need d_a >= d_b + d_c, got {da} < {db} + {dc}")));
    }
    Ok(())
}

fn fixed_subspace(field: &Arc<Gf>, da: usize, db: usize) -> Mat {
    Mat::identity(field, da).col_block(0..db).expect("db <= da")
}

fn meets_trivially(w: &Mat, r: &Mat, expected: usize) -> bool {
    Mat::hstack(&[w, r]).expect("same row count").rank() == expected
}

/// Fraction of `d_c`-dimensional subspaces `R ⊂ F^{d_a}` meeting the span of
/// the first `d_b` basis vectors only in zero, counted over every full-rank
/// `d_a × d_c` basis matrix (each subspace has the same number of bases).
pub fn lemma3_exhaustive(field: &Arc<Gf>, da: usize, db: usize, dc: usize) -> Result<Ratio, MonteCarloError> {
    lemma3_check(da, db, dc)?;
    let w = fixed_subspace(field, da, db);
    let mut r = Ratio { hits: 0, total: 0 };
    for_each_matrix(field, da, dc, |m| {
        if m.rank() == dc {
            r.total += 1;
            r.hits += u64::from(meets_trivially(&w, m, db + dc));
        }
    })?;
    Ok(r)
}

/// Monte Carlo version of [`lemma3_exhaustive`] with uniform full-rank bases.
pub fn lemma3_experiment(
    field: &Arc<Gf>,
    da: usize,
    db: usize,
    dc: usize,
    trials: u64,
    seed: u64,
) -> Result<Ratio, MonteCarloError> {
    lemma3_check(da, db, dc)?;
    let w = fixed_subspace(field, da, db);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..trials)
        .filter(|_| meets_trivially(&w, &Mat::sample_full_rank(field, da, dc, &mut rng), db + dc))
        .count() as u64;
    Ok(Ratio { hits, total: trials })
}

/// Gaussian binomial `[n, k]_q` in floating point.
fn gaussian_binomial(q: u64, n: usize, k: usize) -> f64 {
    let q = q as f64;
    (0..k).map(|i| (q.powi((n - i) as i32) - 1.0) / (q.powi(i as i32 + 1) - 1.0)).product()
}

/// `q^{d_b d_c} [d_a - d_b, d_c]_q / [d_a, d_c]_q`, the exact fraction of
/// `d_c`-dimensional subspaces missing a fixed `d_b`-dimensional one.
pub fn lemma3_closed_form(q: u64, da: usize, db: usize, dc: usize) -> f64 {
    (q as f64).powi((db * dc) as i32) * gaussian_binomial(q, da - db, dc) / gaussian_binomial(q, da, dc)
}

fn lemma4_check(d: usize, dp: usize) -> Result<(), MonteCarloError> {
    if d < dp {
        return Err(MonteCarloError::DimensionInvalid(format!("need d >= d', got {d} < {dp}")));
    }
    Ok(())
}

/// Fraction of all `d' × d` matrices with rank `d'`.
pub fn lemma4_exhaustive(field: &Arc<Gf>, d: usize, dp: usize) -> Result<Ratio, MonteCarloError> {
    lemma4_check(d, dp)?;
    let mut r = Ratio { hits: 0, total: 0 };
    for_each_matrix(field, dp, d, |m| {
        r.total += 1;
        r.hits += u64::from(m.rank() == dp);
    })?;
    Ok(r)
}

pub fn lemma4_experiment(
    field: &Arc<Gf>,
    d: usize,
    dp: usize,
    trials: u64,
    seed: u64,
) -> Result<Ratio, MonteCarloError> {
    lemma4_check(d, dp)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..trials).filter(|_| Mat::random(field, dp, d, &mut rng).rank() == dp).count() as u64;
    Ok(Ratio { hits, total: trials })
}

/// `prod_{j=0}^{d'-1} (1 - q^{j-d})`.
pub fn lemma4_closed_form(q: u64, d: usize, dp: usize) -> f64 {
    (0..dp).map(|j| 1.0 - (q as f64).powi(j as i32 - d as i32)).product()
}

fn key_columns(field: &Arc<Gf>, cfg: &CodeConfig, rng: &mut impl Rng) -> Result<Mat, MonteCarloError> {
    let v: Vec<u64> = (0..4 * cfg.m).map(|_| field.random(rng)).collect();
    Ok(build_u2_inv(field, &v, cfg)?.col_block(0..cfg.m)?)
}

fn annihilates(x: &Mat, cols: &Mat) -> bool {
    x.mul(cols).expect("row vector of length n'").is_zero()
}

/// `Pr_V[xᵀ (U2^-1)^A = 0]` for one fixed `x`, over `draws` samples of `V`.
pub fn lemma5_zero_probability(
    field: &Arc<Gf>,
    cfg: &CodeConfig,
    x: &[u64],
    draws: u64,
    seed: u64,
) -> Result<Ratio, MonteCarloError> {
    let xm = Mat::from_vec(field, 1, x.len(), x.to_vec())?;
    if x.len() != cfg.n_prime() {
        return Err(MonteCarloError::DimensionInvalid(format!("x has length {}, n' = {}", x.len(), cfg.n_prime())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..draws {
        hits += u64::from(annihilates(&xm, &key_columns(field, cfg, &mut rng)?));
    }
    Ok(Ratio { hits, total: draws })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Report {
    pub m: usize,
    pub n_prime: usize,
    pub q_prime: u64,
    pub draws: u64,
    pub x_samples: u64,
    /// Largest empirical zero probability over the sampled `x`.
    pub max_probability: f64,
    /// `((n' - 2m) / q')^m`
    pub bound: f64,
    pub slack: f64,
    pub within_bound: bool,
}

/// Samples `x_samples` nonzero `x ∈ F_{q'}^{n'}` and `draws` values of `V`
/// (shared across all `x`), and reports the largest zero frequency.
pub fn lemma5_experiment(
    field: &Arc<Gf>,
    cfg: &CodeConfig,
    draws: u64,
    x_samples: u64,
    seed: u64,
) -> Result<Lemma5Report, MonteCarloError> {
    cfg.validate()?;
    let n = cfg.n_prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<Mat> = (0..x_samples)
        .map(|_| loop {
            let x = Mat::random(field, 1, n, &mut rng);
            if !x.is_zero() {
                break x;
            }
        })
        .collect();
    let mut hits = vec![0u64; xs.len()];
    for _ in 0..draws {
        let cols = key_columns(field, cfg, &mut rng)?;
        for (h, x) in hits.iter_mut().zip(&xs) {
            *h += u64::from(annihilates(x, &cols));
        }
    }
    let max_probability = hits.iter().map(|&h| h as f64 / draws as f64).fold(0.0, f64::max);
    let q = field.order() as f64;
    let bound = (cfg.c() as f64 / q).powi(cfg.m as i32);
    let slack = 5.0;
    Ok(Lemma5Report {
        m: cfg.m,
        n_prime: n,
        q_prime: field.order(),
        draws,
        x_samples,
        max_probability,
        bound,
        slack,
        within_bound: max_probability <= slack * bound,
    })
}
