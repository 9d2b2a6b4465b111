use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{checked_power, OracleError, Register, Side, StateVec, TOLERANCE};
use crate::gf::{poly, FieldCtx, Gf};
use crate::linalg::Mat;
use crate::network::NetworkSpec;

/// The first label on which simulation and prediction disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// `left`, `right`, `bit` or `phase`.
    pub check: String,
    /// The operator applied (the transfer matrix for shadow checks).
    pub operator: Vec<Vec<u64>>,
    pub label: Vec<Vec<u64>>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} check fails for operator {:?} on label {:?}", self.check, self.operator, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub suite: String,
    pub q: u64,
    pub m: usize,
    pub n: usize,
    /// State comparisons performed.
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `|GL(d, F_q)| = prod_{i<d} (q^d - q^i)`, saturating.
pub fn gl_order(q: u64, d: usize) -> u128 {
    let qd = checked_power(q, d);
    (0..d).fold(1u128, |acc, i| acc.saturating_mul(qd.saturating_sub(checked_power(q, i))))
}

/// Every invertible `d × d` matrix over `field`, in code order.
pub fn general_linear(field: &Arc<Gf>, d: usize, cap: u64) -> Result<Vec<Mat>, OracleError> {
    let needed = gl_order(field.order(), d);
    if needed > cap as u128 {
        return Err(OracleError::CapExceeded { needed, cap });
    }
    let reg = Register::new(field, d, d, u64::MAX)?;
    Ok((0..reg.dim()).map(|i| reg.label(i)).filter(|a| a.is_invertible()).collect())
}

fn field_of_order(q: u64) -> Result<Arc<Gf>, OracleError> {
    let (p, k) = poly::prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
    Ok(FieldCtx::new(p, k as usize, 1)?.base().clone())
}

fn phase_states(reg: &Register) -> Result<Vec<StateVec>, OracleError> {
    (0..reg.dim()).map(|i| StateVec::phase_basis(reg, &reg.label(i))).collect()
}

/// Checks `L_A |M⟩_p = |(A^T)^-1 M⟩_p` for every invertible `A` and
/// `R_B |M⟩_p = |M (B^T)^-1⟩_p` for every invertible `B`, over all labels
/// `M ∈ F_q^{m×n}`. Work is `q^{mn} · max(|GL(m)|, |GL(n)|)`.
pub fn verify_lemma1(q: u64, m: usize, n: usize, cap: u64) -> Result<OracleReport, OracleError> {
    let field = field_of_order(q)?;
    let labels = checked_power(q, m * n);
    let needed = labels.saturating_mul(gl_order(q, m).max(gl_order(q, n)));
    if needed > cap as u128 {
        return Err(OracleError::CapExceeded { needed, cap });
    }
    let reg = Register::new(&field, m, n, cap)?;
    let states = phase_states(&reg)?;
    let mut report = OracleReport { suite: "lemma1".into(), q, m, n, checks: 0, counterexample: None };
    for (side, d) in [(Side::Left, m), (Side::Right, n)] {
        for op in general_linear(&field, d, cap)? {
            let perm = reg.permutation(&op, side)?;
            let dual = op.transpose().inverse()?;
            for (idx, state) in states.iter().enumerate() {
                let label = reg.label(idx);
                let predicted = match side {
                    Side::Left => dual.mul(&label)?,
                    Side::Right => label.mul(&dual)?,
                };
                report.checks += 1;
                if !state.permuted(&perm).approx_eq(&states[reg.index_of(&predicted)?], TOLERANCE) {
                    let check = if side == Side::Left { "left" } else { "right" };
                    report.counterexample =
                        Some(Counterexample { check: check.into(), operator: op.to_rows(), label: label.to_rows() });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Runs every node of `spec` as `L_A` on an `F_q^{wires×n}` register and
/// compares with the shadows: `|X⟩_b ↦ |KX⟩_b` and `|M⟩_p ↦ |K̃M⟩_p`.
pub fn verify_shadow(spec: &NetworkSpec, n: usize, cap: u64) -> Result<OracleReport, OracleError> {
    let field = spec.field().base();
    let wires = spec.wires();
    let reg = Register::new(field, wires, n, cap)?;
    let transfer = spec.compose_transfer()?;
    let node_perms = spec
        .nodes()
        .iter()
        .map(|node| reg.permutation(&node.matrix().embed_on(node.wires(), wires)?, Side::Left))
        .collect::<Result<Vec<_>, _>>()?;
    let simulate = |s: &StateVec| node_perms.iter().fold(s.clone(), |acc, perm| acc.permuted(perm));
    let phase = phase_states(&reg)?;
    let mut report =
        OracleReport { suite: "shadow".into(), q: field.order(), m: wires, n, checks: 0, counterexample: None };
    for (check, k) in [("bit", transfer.bit()), ("phase", transfer.phase())] {
        for idx in 0..reg.dim() {
            let label = reg.label(idx);
            let target = reg.index_of(&k.mul(&label)?)?;
            let (input, expected) = if check == "bit" {
                (StateVec::bit_basis(&reg, &label)?, StateVec::bit_basis(&reg, &reg.label(target))?)
            } else {
                (phase[idx].clone(), phase[target].clone())
            };
            report.checks += 1;
            if !simulate(&input).approx_eq(&expected, TOLERANCE) {
                report.counterexample =
                    Some(Counterexample { check: check.into(), operator: k.to_rows(), label: label.to_rows() });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{butterfly, NodeOp};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 1), 2);
        assert_eq!(gl_order(3, 2), 48);
        assert_eq!(gl_order(2, 3), 168);
        let f = field_of_order(3).unwrap();
        assert_eq!(general_linear(&f, 2, 1 << 16).unwrap().len(), 48);
    }

    #[test]
    fn lemma1_small_cases() {
        let r = verify_lemma1(2, 2, 1, 1 << 16).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks, 6 * 4 + 4);
        let r = verify_lemma1(3, 1, 2, 1 << 16).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks, 2 * 9 + 48 * 9);
        assert!(verify_lemma1(4, 1, 2, 1 << 16).unwrap().passed());
    }

    #[test]
    fn lemma1_cap() {
        assert!(matches!(verify_lemma1(3, 3, 3, 1 << 16), Err(OracleError::CapExceeded { .. })));
        assert!(matches!(verify_lemma1(6, 1, 1, 1 << 16), Err(OracleError::NotPrimePower(6))));
    }

    #[test]
    fn butterfly_shadows() {
        let r = verify_shadow(&butterfly(), 1, 1 << 16).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
        assert_eq!(r.checks, 32);
    }

    #[test]
    fn empty_and_random_single_node() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let empty = NetworkSpec::new(ctx.clone(), vec![3], vec![]).unwrap();
        assert!(verify_shadow(&empty, 1, 1 << 16).unwrap().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Mat::sample_invertible(ctx.base(), 3, &mut rng);
        let one = NetworkSpec::new(ctx, vec![3], vec![NodeOp::new(vec![0, 1, 2], a)]).unwrap();
        assert!(verify_shadow(&one, 1, 1 << 16).unwrap().passed());
    }
}
