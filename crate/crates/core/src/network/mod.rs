//! Multiple-unicast networks of invertible node operations on `m` wires.
//!
//! Sender `S_i` feeds the contiguous wire block of pair `i` and receiver
//! `T_i` reads the same block after every node has acted. Bit-basis inputs
//! see the transfer matrix `K = A_c ⋯ A_1`; phase-basis inputs see
//! `(K^T)^{-1}`.

mod builtin;
mod file;

pub use builtin::{butterfly, identity, one_sender, random_network, two_way, BuiltinExample};
pub use file::NetworkFile;

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldCtx, Gf, GfError};
use crate::linalg::{LinalgError, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("node {index} has a singular matrix (rank {rank})")]
    SingularNode { index: usize, rank: usize },
    #[error("node {index}: {reason}")]
    InvalidNode { index: usize, reason: String },
    #[error("pair sizes sum to {sum}, but the network has {wires} wires")]
    WireCount { sum: usize, wires: usize },
    #[error("pair index {index} out of range for {pairs} pairs")]
    IndexOutOfRange { index: usize, pairs: usize },
    #[error("invalid blocks: {0}")]
    InvalidBlocks(String),
    #[error("phase transfer composed node-wise disagrees with (K^T)^-1")]
    PhaseMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which classical shadow of the network to look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Bit,
    Phase,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Bit => "bit",
            Basis::Phase => "phase",
        })
    }
}

/// An invertible operation on an ordered set of wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOp {
    wires: Vec<usize>,
    matrix: Mat,
}

impl NodeOp {
    pub fn new(wires: Vec<usize>, matrix: Mat) -> NodeOp {
        NodeOp { wires, matrix }
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    fn validate(&self, index: usize, total: usize, field: &Arc<Gf>) -> Result<(), NetworkError> {
        let bad = |reason: String| NetworkError::InvalidNode { index, reason };
        if self.matrix.field() != field {
            return Err(bad("matrix is not over the base field".into()));
        }
        if !self.matrix.is_square() || self.matrix.rows() != self.wires.len() {
            return Err(bad(format!("{:?} matrix on {} wires", self.matrix.dims(), self.wires.len())));
        }
        let mut seen = vec![false; total];
        for &w in &self.wires {
            if w >= total {
                return Err(bad(format!("wire {w} out of range for {total} wires")));
            }
            if std::mem::replace(&mut seen[w], true) {
                return Err(bad(format!("wire {w} repeated")));
            }
        }
        let rank = self.matrix.rank();
        if rank < self.wires.len() {
            return Err(NetworkError::SingularNode { index, rank });
        }
        Ok(())
    }
}

/// A network: field, pair sizes `(m_1, ..., m_r)` and nodes in transmission order.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    field: FieldCtx,
    pair_sizes: Vec<usize>,
    nodes: Vec<NodeOp>,
}

impl NetworkSpec {
    pub fn new(field: FieldCtx, pair_sizes: Vec<usize>, nodes: Vec<NodeOp>) -> Result<Self, NetworkError> {
        if pair_sizes.is_empty() {
            return Err(NetworkError::InvalidBlocks("at least one pair is required".into()));
        }
        let m: usize = pair_sizes.iter().sum();
        for (index, node) in nodes.iter().enumerate() {
            node.validate(index, m, field.base())?;
        }
        Ok(NetworkSpec { field, pair_sizes, nodes })
    }

    /// A network given directly by its transfer matrix, realized as one node
    /// acting on every wire.
    pub fn from_transfer(field: FieldCtx, pair_sizes: Vec<usize>, k: Mat) -> Result<Self, NetworkError> {
        let m: usize = pair_sizes.iter().sum();
        if k.dims() != (m, m) {
            return Err(NetworkError::WireCount { sum: m, wires: k.rows() });
        }
        NetworkSpec::new(field, pair_sizes, vec![NodeOp::new((0..m).collect(), k)])
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn pair_sizes(&self) -> &[usize] {
        &self.pair_sizes
    }

    pub fn nodes(&self) -> &[NodeOp] {
        &self.nodes
    }

    pub fn wires(&self) -> usize {
        self.pair_sizes.iter().sum()
    }

    /// Composes the bit and phase transfer matrices. The phase matrix is
    /// built node by node and cross-checked against `(K^T)^{-1}`.
    pub fn compose_transfer(&self) -> Result<TransferPair, NetworkError> {
        let f = self.field.base();
        let m = self.wires();
        let mut k = Mat::identity(f, m);
        let mut k_phase = Mat::identity(f, m);
        for (index, node) in self.nodes.iter().enumerate() {
            let a = node.matrix.embed_on(&node.wires, m)?;
            let a_dual = node
                .matrix
                .transpose()
                .inverse()
                .map_err(|e| match e {
                    LinalgError::Singular { rank, .. } => NetworkError::SingularNode { index, rank },
                    other => other.into(),
                })?
                .embed_on(&node.wires, m)?;
            k = a.mul(&k)?;
            k_phase = a_dual.mul(&k_phase)?;
        }
        if k.transpose().inverse()? != k_phase {
            return Err(NetworkError::PhaseMismatch);
        }
        Ok(TransferPair { k, k_phase, pair_sizes: self.pair_sizes.clone() })
    }
}

/// Bit and phase transfer matrices of a network with their pair layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferPair {
    k: Mat,
    k_phase: Mat,
    pair_sizes: Vec<usize>,
}

impl TransferPair {
    /// Builds the pair from `K` alone.
    pub fn from_bit(k: Mat, pair_sizes: Vec<usize>) -> Result<Self, NetworkError> {
        let m: usize = pair_sizes.iter().sum();
        if k.dims() != (m, m) {
            return Err(NetworkError::WireCount { sum: m, wires: k.rows() });
        }
        let k_phase = k.transpose().inverse()?;
        Ok(TransferPair { k, k_phase, pair_sizes })
    }

    pub fn bit(&self) -> &Mat {
        &self.k
    }

    pub fn phase(&self) -> &Mat {
        &self.k_phase
    }

    pub fn matrix(&self, basis: Basis) -> &Mat {
        match basis {
            Basis::Bit => &self.k,
            Basis::Phase => &self.k_phase,
        }
    }

    pub fn field(&self) -> &Arc<Gf> {
        self.k.field()
    }

    pub fn pair_sizes(&self) -> &[usize] {
        &self.pair_sizes
    }

    pub fn pairs(&self) -> usize {
        self.pair_sizes.len()
    }

    pub fn wires(&self) -> usize {
        self.k.rows()
    }

    /// Wire range of pair `i` (0-based).
    pub fn pair_range(&self, i: usize) -> Result<Range<usize>, NetworkError> {
        if i >= self.pair_sizes.len() {
            return Err(NetworkError::IndexOutOfRange { index: i, pairs: self.pair_sizes.len() });
        }
        let start: usize = self.pair_sizes[..i].iter().sum();
        Ok(start..start + self.pair_sizes[i])
    }

    /// Block `(i, j)`: rows read by receiver `i`, columns fed by sender `j`.
    pub fn block(&self, i: usize, j: usize, basis: Basis) -> Result<Mat, NetworkError> {
        let rows = self.pair_range(i)?;
        let cols = self.pair_range(j)?;
        Ok(self.matrix(basis).slice(rows, cols)?)
    }

    /// Everything receiver `i` gets from the other senders, in sender order.
    pub fn complement_block(&self, i: usize, basis: Basis) -> Result<Mat, NetworkError> {
        let rows = self.pair_range(i)?;
        let k = self.matrix(basis);
        let mut out = Mat::zeros(k.field(), rows.len(), 0);
        for j in 0..self.pairs() {
            if j != i {
                out = Mat::hstack(&[&out, &k.slice(rows.clone(), self.pair_range(j)?)?])?;
            }
        }
        Ok(out)
    }

    pub fn rate_table(&self) -> Vec<RateRow> {
        (0..self.pairs())
            .map(|i| {
                let rank = |r: Result<Mat, NetworkError>| r.expect("pair index is in range").rank();

                RateRow {
                    pair: i,
                    m: self.pair_sizes[i],
                    rank_own: rank(self.block(i, i, Basis::Bit)),
                    rank_own_phase: rank(self.block(i, i, Basis::Phase)),
                    interference: rank(self.complement_block(i, Basis::Bit)),
                    interference_phase: rank(self.complement_block(i, Basis::Phase)),
                }
            })
            .collect()
    }
}

/// Information rates of one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateRow {
    /// 0-based pair index.
    pub pair: usize,
    pub m: usize,
    /// `rank K_{i,i}`
    pub rank_own: usize,
    /// `rank K̃_{i,i}`
    pub rank_own_phase: usize,
    /// `rank K_{i^c}`
    pub interference: usize,
    /// `rank K̃_{i^c}`
    pub interference_phase: usize,
}

impl RateRow {
    /// Both own blocks have full rank `m`.
    pub fn admissible(&self) -> bool {
        self.rank_own == self.m && self.rank_own_phase == self.m
    }

    /// Checks a choice of interference bounds for this pair.
    pub fn feasible(&self, a: usize, a_phase: usize) -> Feasibility {
        let feasible = a + a_phase < self.m;
        Feasibility {
            feasible,
            rate: if feasible { self.m - a - a_phase } else { 0 },
            covers_bit: a >= self.interference,
            covers_phase: a_phase >= self.interference_phase,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    /// `a + a' < m`.
    pub feasible: bool,
    /// `m - a - a'` when feasible.
    pub rate: usize,
    /// `a` bounds the bit interference rank.
    pub covers_bit: bool,
    /// `a'` bounds the phase interference rank.
    pub covers_phase: bool,
}

impl Feasibility {
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.covers_bit {
            w.push("a is below the bit interference rank".to_string());
        }
        if !self.covers_phase {
            w.push("a' is below the phase interference rank".to_string());
        }
        w
    }
}
