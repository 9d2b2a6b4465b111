//! JSON network description.
//!
//! ```json
//! {"field": {"p": 2, "t": 1, "alpha": 1},
//!  "pairs": [2, 2],
//!  "nodes": [{"wires": [1, 2], "matrix": [[1, 1], [0, 1]]}]}
//! ```
//!
//! Wire indices are 0-based. `"transfer": [[...]]` may replace `"nodes"` to
//! give `K` directly.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{NetworkError, NetworkSpec, NodeOp};
use crate::gf::{FieldCtx, FieldSpec};
use crate::linalg::Mat;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeFile {
    pub wires: Vec<usize>,
    pub matrix: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub field: FieldSpec,
    pub pairs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<NodeFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer: Option<Value>,
}

impl NetworkFile {
    pub fn parse(text: &str) -> Result<NetworkSpec, NetworkError> {
        let file: NetworkFile = serde_json::from_str(text).map_err(|e| NetworkError::Parse(e.to_string()))?;
        file.into_spec()
    }

    pub fn read(path: &Path) -> Result<NetworkSpec, NetworkError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| NetworkError::Parse(format!("{}: {e}", path.display())))?;
        NetworkFile::parse(&text)
    }

    pub fn into_spec(self) -> Result<NetworkSpec, NetworkError> {
        let ctx = FieldCtx::from_spec(&self.field)?;
        let f = ctx.base();
        let m: usize = self.pairs.iter().sum();
        match (self.nodes, self.transfer) {
            (Some(_), Some(_)) => Err(NetworkError::Parse("give either \"nodes\" or \"transfer\", not both".into())),
            (None, Some(k)) => {
                let k = Mat::from_json(f, &k, Some(m))?;
                NetworkSpec::from_transfer(ctx, self.pairs, k)
            }
            (nodes, None) => {
                let nodes = nodes
                    .unwrap_or_default()
                    .into_iter()
                    .map(|n| {
                        let cols = n.wires.len();
                        Ok(NodeOp::new(n.wires, Mat::from_json(f, &n.matrix, Some(cols))?))
                    })
                    .collect::<Result<Vec<_>, NetworkError>>()?;
                NetworkSpec::new(ctx, self.pairs, nodes)
            }
        }
    }

    pub fn from_spec(spec: &NetworkSpec) -> NetworkFile {
        NetworkFile {
            field: spec.field().spec(),
            pairs: spec.pair_sizes().to_vec(),
            nodes: Some(
                spec.nodes()
                    .iter()
                    .map(|n| NodeFile { wires: n.wires().to_vec(), matrix: n.matrix().to_json() })
                    .collect(),
            ),
            transfer: None,
        }
    }
}
