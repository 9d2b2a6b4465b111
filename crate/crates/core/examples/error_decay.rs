// Bit and phase failure rates on the butterfly as the code field grows.

use qlnc::codec::CodeConfig;
use qlnc::montecarlo::{estimate, Interference, TrialConfig};
use qlnc::network::butterfly;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = butterfly();
    let tp = spec.compose_transfer()?;
    println!("q'      p_bit   p_phase fidelity>=");
    for alpha in [2, 4, 8, 12] {
        let ctx = spec.field().with_alpha(alpha)?;
        let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, alpha)?;
        let tc = TrialConfig::new(tp.clone(), cfg, ctx, Interference::Uniform, 400, 1)?;
        let r = estimate(&tc)?;
        println!("{:<7} {:.4}  {:.4}  {:.4}", r.q_prime, r.p_bit, r.p_phase, r.fidelity_lower_bound);
        assert_eq!(r.implication_violations, 0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
