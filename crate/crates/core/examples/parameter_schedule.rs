// Extension degrees and the secret-sharing schedule for growing n.

use qlnc::montecarlo::{choose_qprime, theorem2_params};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [64, 1024, 4096] {
        let c = choose_qprime(n, 2, 2, 1, 0)?;
        println!("n = {n}: alpha = {}, n padded to {}, n' = {}, ratio {:.3e}", c.alpha, c.n, c.n_prime, c.bound_ratio);
    }
    for e in [20u32, 30, 40] {
        let t = theorem2_params(1 << e, 2, 3, 1, 1)?;
        println!(
            "n = 2^{e}: beta {} alpha {} k {} n1 {} overhead {:.3e} p_err <= {:.3e}",
            t.beta, t.alpha, t.k, t.n1, t.overhead, t.p_err_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
