//! The column scrambler `U2` built from `4m` shared values.
//!
//! With `c = n' - 2m` and 1-based powers,
//! `Q1[j][k] = V[k]^j`, `Q2[j][k] = V[m+k]^j` (`c × m`) and
//! `Q3[j][k] = V[2m+k]^j`, `Q4[j][k] = V[3m+k]^j` (`m × m`).
//! `U2` is the product of three unitriangular factors carrying `Q3ᵀQ4`,
//! `Q2ᵀ` and `Q1`; in closed form
//!
//! ```text
//! U2     = [ I            0  0   ]      U2^-1 = [ I       0  0    ]
//!          [ Q3ᵀQ4+Q2ᵀQ1  I  Q2ᵀ ]              [ -Q3ᵀQ4  I  -Q2ᵀ ]
//!          [ Q1           0  I   ]              [ -Q1     0  I    ]
//! ```

use std::sync::Arc;

use super::{CodeConfig, CodecError};
use crate::gf::Gf;
use crate::linalg::Mat;

/// The power matrices derived from `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct U2Blocks {
    pub q1: Mat,
    pub q2: Mat,
    pub q3: Mat,
    pub q4: Mat,
}

fn powers(field: &Arc<Gf>, vals: &[u64], rows: usize) -> Mat {
    Mat::from_fn(field, rows, vals.len(), |j, k| field.pow(vals[k], j as u64 + 1))
}

pub fn u2_blocks(field: &Arc<Gf>, v: &[u64], cfg: &CodeConfig) -> Result<U2Blocks, CodecError> {
    cfg.validate()?;
    let m = cfg.m;
    if v.len() != 4 * m {
        return Err(CodecError::SharedLength { expected: 4 * m, got: v.len() });
    }
    if let Some(&bad) = v.iter().find(|&&x| !field.contains(x)) {
        return Err(CodecError::Linalg(crate::linalg::LinalgError::NotInField { code: bad, order: field.order() }));
    }
    let c = cfg.c();
    Ok(U2Blocks {
        q1: powers(field, &v[0..m], c),
        q2: powers(field, &v[m..2 * m], c),
        q3: powers(field, &v[2 * m..3 * m], m),
        q4: powers(field, &v[3 * m..4 * m], m),
    })
}

fn unit(field: &Arc<Gf>, n: usize, r0: usize, c0: usize, block: &Mat) -> Mat {
    let mut out = Mat::identity(field, n);
    out.set_block(r0, c0, block).expect("block fits by construction");
    out
}

/// The three displayed factors whose product is `U2`, left to right.
pub fn build_u2_factors(field: &Arc<Gf>, v: &[u64], cfg: &CodeConfig) -> Result<[Mat; 3], CodecError> {
    let b = u2_blocks(field, v, cfg)?;
    let (m, n) = (cfg.m, cfg.n_prime());
    let q34 = b.q3.transpose().mul(&b.q4)?;
    Ok([unit(field, n, m, 0, &q34), unit(field, n, m, 2 * m, &b.q2.transpose()), unit(field, n, 2 * m, 0, &b.q1)])
}

/// The three displayed factors whose product is `U2^-1`, left to right.
pub fn build_u2_inv_factors(field: &Arc<Gf>, v: &[u64], cfg: &CodeConfig) -> Result<[Mat; 3], CodecError> {
    let b = u2_blocks(field, v, cfg)?;
    let (m, n) = (cfg.m, cfg.n_prime());
    let q34 = b.q3.transpose().mul(&b.q4)?;
    Ok([
        unit(field, n, 2 * m, 0, &b.q1.neg()),
        unit(field, n, m, 2 * m, &b.q2.transpose().neg()),
        unit(field, n, m, 0, &q34.neg()),
    ])
}

pub fn build_u2(field: &Arc<Gf>, v: &[u64], cfg: &CodeConfig) -> Result<Mat, CodecError> {
    let b = u2_blocks(field, v, cfg)?;
    let m = cfg.m;
    let q2t = b.q2.transpose();
    let lower = b.q3.transpose().mul(&b.q4)?.add(&q2t.mul(&b.q1)?)?;
    let mut u = Mat::identity(field, cfg.n_prime());
    u.set_block(m, 0, &lower)?;
    u.set_block(m, 2 * m, &q2t)?;
    u.set_block(2 * m, 0, &b.q1)?;
    Ok(u)
}

pub fn build_u2_inv(field: &Arc<Gf>, v: &[u64], cfg: &CodeConfig) -> Result<Mat, CodecError> {
    let b = u2_blocks(field, v, cfg)?;
    let m = cfg.m;
    let mut u = Mat::identity(field, cfg.n_prime());
    u.set_block(m, 0, &b.q3.transpose().mul(&b.q4)?.neg())?;
    u.set_block(m, 2 * m, &b.q2.transpose().neg())?;
    u.set_block(2 * m, 0, &b.q1.neg())?;
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(f: &[Mat; 3]) -> Mat {
        f[0].mul(&f[1]).unwrap().mul(&f[2]).unwrap()
    }

    #[test]
    fn zero_values_give_identity() {
        let ctx = FieldCtx::new(2, 4, 1).unwrap();
        let cfg = CodeConfig::new(0, 2, 1, 0, 6, 1).unwrap();
        let v = vec![0; 8];
        assert!(build_u2(ctx.base(), &v, &cfg).unwrap().is_identity());
        assert!(build_u2_inv(ctx.base(), &v, &cfg).unwrap().is_identity());
    }

    #[test]
    fn single_row_by_hand() {
        let ctx = FieldCtx::new(3, 2, 1).unwrap();
        let f = ctx.base();
        let cfg = CodeConfig::new(0, 1, 0, 0, 3, 1).unwrap();
        let v = [2u64, 5, 7, 4];
        let u = build_u2(f, &v, &cfg).unwrap();
        let mid = f.add(f.mul(v[2], v[3]), f.mul(v[0], v[1]));
        let expected = Mat::from_rows(f, &[[1, 0, 0], [mid, 1, v[1]], [v[0], 0, 1]]).unwrap();
        assert_eq!(u, expected);
        let inv = build_u2_inv(f, &v, &cfg).unwrap();
        assert!(u.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn closed_forms_match_factor_products() {
        let ctx = FieldCtx::new(2, 4, 1).unwrap();
        let f = ctx.base();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (m, n) in [(1, 3), (2, 6), (2, 7), (3, 12)] {
            let cfg = CodeConfig::new(0, m, 0, 0, n, 1).unwrap();
            let v: Vec<u64> = (0..4 * m).map(|_| f.random(&mut rng)).collect();
            let u = build_u2(f, &v, &cfg).unwrap();
            let ui = build_u2_inv(f, &v, &cfg).unwrap();
            assert_eq!(u, product(&build_u2_factors(f, &v, &cfg).unwrap()));
            assert_eq!(ui, product(&build_u2_inv_factors(f, &v, &cfg).unwrap()));
            assert_eq!(ui, u.inverse().unwrap());
        }
    }

    #[test]
    fn rejects_wrong_length() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let cfg = CodeConfig::new(0, 1, 0, 0, 3, 1).unwrap();
        assert!(matches!(build_u2(ctx.base(), &[0, 0], &cfg), Err(CodecError::SharedLength { .. })));
    }
}
