//! Example networks and random generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use super::{NetworkError, NetworkSpec, NodeOp};
use crate::gf::FieldCtx;
use crate::linalg::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinExample {
    Butterfly,
    OneSender,
    TwoWay,
}

impl BuiltinExample {
    pub fn build(self) -> NetworkSpec {
        match self {
            BuiltinExample::Butterfly => butterfly(),
            BuiltinExample::OneSender => one_sender_default(),
            BuiltinExample::TwoWay => two_way(),
        }
    }
}

impl FromStr for BuiltinExample {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "butterfly" => Ok(BuiltinExample::Butterfly),
            "one_sender" | "one-sender" => Ok(BuiltinExample::OneSender),
            "two_way" | "two-way" => Ok(BuiltinExample::TwoWay),
            other => Err(NetworkError::Parse(format!(
                "unknown example {other:?} (expected butterfly, one_sender or two_way)"
            ))),
        }
    }
}

impl fmt::Display for BuiltinExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinExample::Butterfly => "butterfly",
            BuiltinExample::OneSender => "one_sender",
            BuiltinExample::TwoWay => "two_way",
        })
    }
}

/// Two pairs of two wires over `F_2`; one node mixes wire 2 into wire 1.
pub fn butterfly() -> NetworkSpec {
    let ctx = FieldCtx::new(2, 1, 1).expect("F_2 is valid");
    let a1 = Mat::from_rows(ctx.base(), &[[1, 1], [0, 1]]).expect("literal");
    NetworkSpec::new(ctx, vec![2, 2], vec![NodeOp::new(vec![1, 2], a1)]).expect("valid example")
}

/// Two pairs of three wires over `F_3` with bit interference both ways.
pub fn two_way() -> NetworkSpec {
    let ctx = FieldCtx::new(3, 1, 1).expect("F_3 is valid");
    let k = Mat::from_rows(
        ctx.base(),
        &[
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [2, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
        ],
    )
    .expect("literal");
    NetworkSpec::from_transfer(ctx, vec![3, 3], k).expect("valid example")
}

/// No nodes at all.
pub fn identity(ctx: &FieldCtx, pair_sizes: &[usize]) -> NetworkSpec {
    NetworkSpec::new(ctx.clone(), pair_sizes.to_vec(), vec![]).expect("empty node list is valid")
}

/// Interference only from sender 1: `K` is block diagonal plus the first
/// block row `K_{1,2}, ..., K_{1,r}`.
pub fn one_sender(ctx: &FieldCtx, diagonal: &[Mat], first_row: &[Mat]) -> Result<NetworkSpec, NetworkError> {
    let r = diagonal.len();
    if r == 0 || first_row.len() + 1 != r {
        return Err(NetworkError::InvalidBlocks(format!(
            "{} diagonal blocks need {} off-diagonal blocks, got {}",
            r,
            r.saturating_sub(1),
            first_row.len()
        )));
    }
    let sizes: Vec<usize> = diagonal.iter().map(Mat::rows).collect();
    for (i, d) in diagonal.iter().enumerate() {
        if !d.is_invertible() {
            return Err(NetworkError::InvalidBlocks(format!("diagonal block {i} is not invertible")));
        }
    }
    for (j, b) in first_row.iter().enumerate() {
        if b.dims() != (sizes[0], sizes[j + 1]) {
            return Err(NetworkError::InvalidBlocks(format!("block (1, {}) has shape {:?}", j + 2, b.dims())));
        }
    }
    let m: usize = sizes.iter().sum();
    let mut k = Mat::zeros(ctx.base(), m, m);
    let mut offset = 0;
    for d in diagonal {
        k.set_block(offset, offset, d)?;
        offset += d.rows();
    }
    let mut col = sizes[0];
    for b in first_row {
        k.set_block(0, col, b)?;
        col += b.cols();
    }
    NetworkSpec::from_transfer(ctx.clone(), sizes, k)
}

/// Three pairs `(3, 2, 2)` over `F_2` where sender 1 leaks rank-1
/// interference into both other receivers.
fn one_sender_default() -> NetworkSpec {
    let ctx = FieldCtx::new(2, 1, 1).expect("F_2 is valid");
    let f = ctx.base();
    let diag = [Mat::identity(f, 3), Mat::identity(f, 2), Mat::identity(f, 2)];
    let row = [
        Mat::from_rows(f, &[[1, 0], [0, 0], [0, 0]]).expect("literal"),
        Mat::from_rows(f, &[[1, 1], [0, 0], [0, 0]]).expect("literal"),
    ];
    one_sender(&ctx, &diag, &row).expect("valid example")
}

/// Random network: `nodes` operations, each on a random wire subset of size
/// 1..=min(m, 4) with a uniform invertible matrix.
pub fn random_network<R: Rng + ?Sized>(ctx: &FieldCtx, pair_sizes: &[usize], nodes: usize, rng: &mut R) -> NetworkSpec {
    let m: usize = pair_sizes.iter().sum();
    let ops = (0..nodes)
        .map(|_| {
            let k = rng.random_range(1..=m.min(4));
            let wires = sample(rng, m, k).into_vec();
            NodeOp::new(wires, Mat::sample_invertible(ctx.base(), k, rng))
        })
        .collect();
    NetworkSpec::new(ctx.clone(), pair_sizes.to_vec(), ops).expect("random nodes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Basis;

    #[test]
    fn one_sender_without_interference() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = ctx.base();
        let diag = vec![Mat::identity(f, 2), Mat::identity(f, 1), Mat::identity(f, 2)];
        let row = vec![Mat::zeros(f, 2, 1), Mat::zeros(f, 2, 2)];
        let tp = one_sender(&ctx, &diag, &row).unwrap().compose_transfer().unwrap();
        assert!(tp.rate_table().iter().all(|r| r.interference == 0 && r.interference_phase == 0));
        assert!(tp.block(0, 1, Basis::Bit).unwrap().is_zero());
    }

    #[test]
    fn one_sender_rejects_bad_blocks() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = ctx.base();
        assert!(one_sender(&ctx, &[Mat::zeros(f, 2, 2)], &[]).is_err());
        assert!(one_sender(&ctx, &[Mat::identity(f, 2), Mat::identity(f, 1)], &[Mat::zeros(f, 1, 1)]).is_err());
    }

    #[test]
    fn names_parse() {
        assert_eq!("butterfly".parse::<BuiltinExample>().unwrap(), BuiltinExample::Butterfly);
        assert_eq!("two_way".parse::<BuiltinExample>().unwrap(), BuiltinExample::TwoWay);
        assert!("fig1".parse::<BuiltinExample>().is_err());
    }
}
