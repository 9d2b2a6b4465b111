mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlnc::codec::{build_u2, CodeConfig};
use qlnc::gf::{FieldCtx, Gf};
use qlnc::linalg::{Mat, RowMask};
use qlnc::montecarlo::{field_of_order, lemma3_exhaustive, lemma4_exhaustive};
use qlnc::network::random_network;

const FIELDS: [(u64, usize, usize); 8] =
    [(2, 1, 1), (3, 1, 1), (5, 1, 1), (7, 1, 2), (2, 1, 4), (2, 2, 3), (3, 2, 2), (2, 3, 2)];

fn ctx_at(i: usize) -> FieldCtx {
    let (p, t, alpha) = FIELDS[i % FIELDS.len()];
    FieldCtx::new(p, t, alpha).unwrap()
}

fn levels(ctx: &FieldCtx) -> [Arc<Gf>; 3] {
    [ctx.prime().clone(), ctx.base().clone(), ctx.ext().clone()]
}

fn elem(f: &Gf, raw: u64) -> u64 {
    raw % f.order()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(i in 0usize..8, level in 0usize..3, x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let f = levels(&ctx_at(i))[level].clone();
        let (a, b, c) = (elem(&f, x), elem(&f, y), elem(&f, z));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        prop_assert_eq!(f.mul(a, 1), a);
        match f.inv(a) {
            Some(inv) => prop_assert_eq!(f.mul(a, inv), 1),
            None => prop_assert_eq!(a, 0),
        }
        // Frobenius order: a^|F| = a
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn trace_is_linear_into_prime_field(i in 0usize..8, x in any::<u64>(), y in any::<u64>(), s in any::<u64>()) {
        let ctx = ctx_at(i);
        let f = ctx.ext();
        let p = ctx.p();
        let (a, b, c) = (elem(f, x), elem(f, y), s % p);
        prop_assert!(f.trace(a) < p);
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
        prop_assert_eq!(f.trace(f.mul(c, a)), c * f.trace(a) % p);
        // trace is invariant under Frobenius
        prop_assert_eq!(f.trace(f.pow(a, p)), f.trace(a));
    }

    #[test]
    fn lift_flatten_roundtrip(i in 0usize..8, seed in any::<u64>(), len in 0usize..6) {
        let ctx = ctx_at(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base: Vec<u64> = (0..len * ctx.alpha()).map(|_| ctx.base().random(&mut rng)).collect();
        let lifted = ctx.lift(&base).unwrap();
        prop_assert_eq!(lifted.len(), len);
        prop_assert_eq!(ctx.flatten(&lifted), base);
        // the base field embeds as constants
        let b = ctx.base().random(&mut rng);
        let mut padded = vec![0; ctx.alpha()];
        padded[0] = b;
        prop_assert_eq!(ctx.lift(&padded).unwrap(), vec![b]);
    }

    #[test]
    fn extension_contains_base_subfield(i in 0usize..8, x in any::<u64>(), y in any::<u64>()) {
        let ctx = ctx_at(i);
        let (base, ext) = (ctx.base(), ctx.ext());
        let (a, b) = (elem(base, x), elem(base, y));
        prop_assert_eq!(ext.add(a, b), base.add(a, b));
        prop_assert_eq!(ext.mul(a, b), base.mul(a, b));
    }

    #[test]
    fn rank_matches_naive(p_idx in 0usize..4, rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let p = [2u64, 3, 5, 7][p_idx];
        let f = FieldCtx::new(p, 1, 1).unwrap().base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // low-rank products exercise more than the generic case
        let inner = rng.random_range(0..=rows.min(cols));
        let a = Mat::random(&f, rows, inner, &mut rng).mul(&Mat::random(&f, inner, cols, &mut rng)).unwrap();
        let naive = common::rank(p as i64, &common::from_mat(&a));
        prop_assert_eq!(a.rank(), naive);
        prop_assert!(a.rank() <= inner);
        prop_assert_eq!(a.transpose().rank(), naive);
        let b = Mat::random(&f, cols, 3, &mut rng);
        prop_assert!(a.mul(&b).unwrap().rank() <= naive.min(b.rank()));
    }

    #[test]
    fn inverse_roundtrip(i in 0usize..8, level in 0usize..3, n in 1usize..6, seed in any::<u64>()) {
        let f = levels(&ctx_at(i))[level].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::sample_invertible(&f, n, &mut rng);
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&a).unwrap().is_identity());
        prop_assert_eq!(a.transpose().inverse().unwrap(), inv.transpose());
    }

    #[test]
    fn inverse_matches_naive(p_idx in 0usize..4, n in 1usize..6, seed in any::<u64>()) {
        let p = [2u64, 3, 5, 7][p_idx];
        let f = FieldCtx::new(p, 1, 1).unwrap().base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(&f, n, n, &mut rng);
        let naive = common::inverse(p as i64, &common::from_mat(&a));
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(Some(common::from_mat(&inv)), naive),
            Err(_) => prop_assert!(naive.is_none()),
        }
    }

    #[test]
    fn solve_projected_hits_unmasked_rows(i in 0usize..8, m in 1usize..6, seed in any::<u64>()) {
        let f = ctx_at(i).ext().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = Mat::sample_invertible(&f, m, &mut rng);
        let masked: Vec<usize> = (0..m).filter(|_| rng.random_bool(0.4)).collect();
        let mask = RowMask::from_rows(masked.iter().copied());
        // target rows taken from an invertible matrix so a solution exists
        let mut target = Mat::sample_invertible(&f, m, &mut rng);
        for &u in &masked {
            for c in 0..m {
                target.set(u, c, 0);
            }
        }
        let d = o.solve_projected(&target, &mask).unwrap();
        prop_assert!(d.is_invertible());
        let product = d.mul(&o).unwrap();
        for u in (0..m).filter(|u| !mask.contains(*u)) {
            prop_assert_eq!(product.row(u), target.row(u));
        }
        // deterministic
        prop_assert_eq!(o.solve_projected(&target, &mask).unwrap(), d);
    }

    #[test]
    fn solve_projected_rejects_nonzero_masked_target(m in 2usize..5, seed in any::<u64>()) {
        let f = FieldCtx::new(3, 1, 1).unwrap().base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = Mat::sample_invertible(&f, m, &mut rng);
        let target = Mat::sample_invertible(&f, m, &mut rng);
        prop_assert!(o.solve_projected(&target, &RowMask::range(0..m)).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn phase_transfer_is_dual_inverse(i in 0usize..8, seed in any::<u64>(), r in 1usize..4, nodes in 0usize..8) {
        let ctx = ctx_at(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes: Vec<usize> = (0..r).map(|_| rng.random_range(1..=3)).collect();
        let tp = random_network(&ctx, &sizes, nodes, &mut rng).compose_transfer().unwrap();
        prop_assert!(tp.bit().transpose().mul(tp.phase()).unwrap().is_identity());
        prop_assert_eq!(tp.phase(), &tp.bit().transpose().inverse().unwrap());
        // symplectic pairing: <Kx, K~z> = <x, z>
        let x = Mat::random(tp.field(), tp.wires(), 1, &mut rng);
        let z = Mat::random(tp.field(), tp.wires(), 1, &mut rng);
        let lhs = tp.bit().mul(&x).unwrap().transpose().mul(&tp.phase().mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.transpose().mul(&z).unwrap());
    }

    #[test]
    fn u2_matches_naive_closed_form(p_idx in 0usize..4, m in 1usize..4, extra in 1usize..5, seed in any::<u64>()) {
        let p = [2i64, 3, 5, 7][p_idx];
        let f = FieldCtx::new(p as u64, 1, 1).unwrap().base().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_prime = 2 * m + extra;
        let c = n_prime - 2 * m;
        let cfg = CodeConfig::with_n_prime(0, m, 0, 0, n_prime, 1).unwrap();
        let v: Vec<u64> = (0..4 * m).map(|_| f.random(&mut rng)).collect();
        let pow = |x: u64, e: usize| (0..e).fold(1i64, |acc, _| acc * x as i64 % p);
        let powers = |off: usize, rows: usize| -> common::Rows {
            (0..rows).map(|j| (0..m).map(|k| pow(v[off + k], j + 1)).collect()).collect()
        };
        let (q1, q2, q3, q4) = (powers(0, c), powers(m, c), powers(2 * m, m), powers(3 * m, m));
        let middle: common::Rows = common::mul(p, &common::transpose(&q3), &q4)
            .iter()
            .zip(common::mul(p, &common::transpose(&q2), &q1))
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            .collect();
        let mut expected = vec![vec![0i64; n_prime]; n_prime];
        for (i, row) in expected.iter_mut().enumerate() {
            row[i] = 1;
        }
        for r in 0..m {
            for k in 0..m {
                expected[m + r][k] = middle[r][k];
            }
            for k in 0..c {
                expected[m + r][2 * m + k] = q2[k][r];
            }
        }
        for r in 0..c {
            for k in 0..m {
                expected[2 * m + r][k] = q1[r][k];
            }
        }
        prop_assert_eq!(common::from_mat(&build_u2(&f, &v, &cfg).unwrap()), expected);
    }
}

#[test]
fn lemma_counts_match_closed_forms() {
    for q in [2u64, 3] {
        let f = field_of_order(q).unwrap();
        let qq = q as u128;
        for da in 1..=3u32 {
            for db in 0..da {
                for dc in 1..=da - db {
                    if q.pow(da * dc) > 1 << 20 {
                        continue;
                    }
                    let r = lemma3_exhaustive(&f, da as usize, db as usize, dc as usize).unwrap();
                    // every subspace has |GL(dc)| bases
                    let gl = common::gl(qq, dc);
                    assert_eq!(r.total as u128, common::gaussian_binomial(qq, da, dc) * gl, "q={q} {da} {db} {dc}");
                    let avoiding = qq.pow(db * dc) * common::gaussian_binomial(qq, da - db, dc);
                    assert_eq!(r.hits as u128, avoiding * gl, "q={q} {da} {db} {dc}");
                }
            }
        }
        for d in 1..=3u32 {
            for dp in 1..=d {
                let r = lemma4_exhaustive(&f, d as usize, dp as usize).unwrap();
                let full: u128 = (0..dp).map(|j| qq.pow(d) - qq.pow(j)).product();
                assert_eq!(r.total as u128, qq.pow(d * dp));
                assert_eq!(r.hits as u128, full, "q={q} d={d} dp={dp}");
            }
        }
    }
}
