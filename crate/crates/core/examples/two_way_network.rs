// The two-way network over F_3: ranks, feasibility and one noisy trial per
// shadow.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlnc::codec::CodeConfig;
use qlnc::montecarlo::{run_bit_trial, run_phase_trial, Interference, TrialConfig};
use qlnc::network::two_way;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = two_way();
    let tp = spec.compose_transfer()?;
    println!("K =\n{}", tp.bit());
    println!("K~ =\n{}", tp.phase());
    let row = tp.rate_table()[0];
    println!("pair 1: m = {}, interference ranks ({}, {})", row.m, row.interference, row.interference_phase);
    let f = row.feasible(1, 1);
    println!("(a, a') = (1, 1): feasible {}, rate {}", f.feasible, f.rate);

    let alpha = 4;
    let ctx = spec.field().with_alpha(alpha)?;
    let cfg = CodeConfig::with_n_prime(0, 3, 1, 1, 8, alpha)?;
    let tc = TrialConfig::new(tp, cfg, ctx, Interference::Uniform, 1, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bit = run_bit_trial(&tc, &mut rng)?;
    let phase = run_phase_trial(&tc, &mut rng)?;
    println!("bit trial: success {} conditions {:?}", bit.success, bit.gamma);
    println!("phase trial: success {} conditions {:?}", phase.success, phase.gamma);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
