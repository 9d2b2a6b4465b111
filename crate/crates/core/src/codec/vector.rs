//! Deterministic golden vectors for cross-implementation checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{decode_bit, decode_phase, encode_bit, encode_phase};
use super::{BitBranch, CodeConfig, CodeRandomness, CodecError, DecodeOutcome, PhaseBranch};
use crate::gf::{FieldCtx, FieldSpec};
use crate::linalg::entry_json;

#[derive(Debug, Clone, Serialize)]
pub struct TestVector {
    pub seed: u64,
    pub field: FieldSpec,
    pub cfg: CodeConfig,
    pub randomness: Value,
    pub bit: Value,
    pub phase: Value,
}

fn outcome_json(out: &DecodeOutcome) -> Value {
    match out {
        DecodeOutcome::Ok { message, tail } => {
            json!({"status": "ok", "message": message.to_json(), "tail": tail.to_json()})
        }
        DecodeOutcome::Failed(why) => json!({"status": "failed", "reason": why}),
    }
}

/// Samples randomness and one branch per basis from `seed`, encodes and
/// decodes them over a noiseless channel. Matrices are over `ctx.ext()`.
pub fn test_vector(ctx: &FieldCtx, cfg: &CodeConfig, seed: u64) -> Result<TestVector, CodecError> {
    if ctx.alpha() != cfg.alpha {
        return Err(CodecError::ConfigInvalid(format!("field has alpha = {}, config has {}", ctx.alpha(), cfg.alpha)));
    }
    let f = ctx.ext();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand = CodeRandomness::sample(cfg, f, &mut rng);
    let bit = BitBranch::random(cfg, f, &mut rng);
    let phase = PhaseBranch::random(cfg, f, &mut rng);
    let x = encode_bit(&bit, &rand, cfg)?;
    let xp = encode_phase(&phase, &rand, cfg)?;
    let out = decode_bit(&x, &rand.r1, &rand.v, cfg)?;
    let outp = decode_phase(&xp, &rand.r2, &rand.v, cfg)?;
    let v: Vec<Value> = rand.v.iter().map(|&c| entry_json(f, c)).collect();
    Ok(TestVector {
        seed,
        field: ctx.spec(),
        cfg: *cfg,
        randomness: json!({
            "r1": rand.r1.to_json(),
            "r2": rand.r2.to_json(),
            "v": v,
            "u1": rand.u1.to_json(),
        }),
        bit: json!({
            "message": bit.message.to_json(),
            "e1": bit.e1.to_json(),
            "e2": bit.e2.to_json(),
            "codeword": x.to_json(),
            "outcome": outcome_json(&out),
        }),
        phase: json!({
            "message": phase.message.to_json(),
            "e1": phase.e1.to_json(),
            "e2": phase.e2.to_json(),
            "codeword": xp.to_json(),
            "outcome": outcome_json(&outp),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_are_deterministic_and_decode() {
        let ctx = FieldCtx::new(2, 1, 2).unwrap();
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 2).unwrap();
        let a = serde_json::to_string(&test_vector(&ctx, &cfg, 5).unwrap()).unwrap();
        let b = serde_json::to_string(&test_vector(&ctx, &cfg, 5).unwrap()).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["bit"]["outcome"]["message"], v["bit"]["message"]);
        assert_eq!(v["phase"]["outcome"]["message"], v["phase"]["message"]);
    }
}
