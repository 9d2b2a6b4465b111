// Exact state vectors: phase-basis states, node actions and the shadow
// reduction on the butterfly.

use qlnc::gf::FieldCtx;
use qlnc::linalg::Mat;
use qlnc::network::butterfly;
use qlnc::oracle::{verify_lemma1, verify_shadow, Register, StateVec, DEFAULT_CAP};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FieldCtx::new(3, 1, 1)?;
    let reg = Register::new(ctx.base(), 1, 1, DEFAULT_CAP)?;
    let z = Mat::from_rows(ctx.base(), &[[1]])?;
    let s = StateVec::phase_basis(&reg, &z)?;
    println!("|1>_p over F_3: {:?}", s.amplitudes());

    let a = Mat::from_rows(ctx.base(), &[[2]])?;
    let moved = s.apply_left(&a)?;
    let expected = StateVec::phase_basis(&reg, &a.transpose().inverse()?.mul(&z)?)?;
    println!("L_2 |1>_p = |2>_p: {}", moved.approx_eq(&expected, 1e-9));

    for (q, m, n) in [(2, 2, 1), (2, 1, 2), (3, 1, 2)] {
        let r = verify_lemma1(q, m, n, DEFAULT_CAP)?;
        println!("lemma1 q={q} m={m} n={n}: {} over {} checks", r.passed(), r.checks);
    }
    let r = verify_shadow(&butterfly(), 1, DEFAULT_CAP)?;
    println!("butterfly shadows: {} over {} checks", r.passed(), r.checks);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
