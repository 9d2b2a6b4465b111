use std::sync::Arc;

use rand::Rng;

use super::Mat;
use crate::gf::Gf;

impl Mat {
    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(field: &Arc<Gf>, rows: usize, cols: usize, rng: &mut R) -> Mat {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Mat { rows, cols, field: field.clone(), data }
    }

    /// Uniform over `rows × cols` matrices of rank `min(rows, cols)`, by
    /// rejection. Also returns the number of draws it took.
    pub fn sample_full_rank_counted<R: Rng + ?Sized>(
        field: &Arc<Gf>,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> (Mat, u64) {
        let target = rows.min(cols);
        let mut draws = 0;
        loop {
            draws += 1;
            let m = Mat::random(field, rows, cols, rng);
            if m.rank() == target {
                return (m, draws);
            }
        }
    }

    pub fn sample_full_rank<R: Rng + ?Sized>(field: &Arc<Gf>, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::sample_full_rank_counted(field, rows, cols, rng).0
    }

    /// Uniform over `GL(n)`.
    pub fn sample_invertible<R: Rng + ?Sized>(field: &Arc<Gf>, n: usize, rng: &mut R) -> Mat {
        Mat::sample_full_rank_counted(field, n, n, rng).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one_over_f2_is_one() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            assert_eq!(Mat::sample_invertible(ctx.base(), 1, &mut rng).data(), &[1]);
        }
    }

    #[test]
    fn full_rank_rectangular() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert_eq!(Mat::sample_full_rank(ctx.base(), 2, 5, &mut rng).rank(), 2);
        }
    }

    #[test]
    fn acceptance_rate_matches_product_formula() {
        let ctx = FieldCtx::new(2, 4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 10_000;
        let draws: u64 = (0..trials).map(|_| Mat::sample_full_rank_counted(ctx.base(), 3, 3, &mut rng).1).sum();
        let rate = trials as f64 / draws as f64;
        let expected: f64 = (1..=3).map(|j| 1.0 - 16f64.powi(-j)).product();
        assert!((rate - expected).abs() <= 0.02, "rate {rate} vs {expected}");
    }
}
