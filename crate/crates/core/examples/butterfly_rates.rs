// Transfer matrices and information rates of the butterfly network.

use qlnc::network::{butterfly, Basis};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = butterfly();
    let tp = spec.compose_transfer()?;
    println!("K =\n{}", tp.matrix(Basis::Bit));
    println!("K~ = (K^T)^-1 =\n{}", tp.matrix(Basis::Phase));
    println!("pair m rank_own rank_own_phase interference interference_phase");
    for r in tp.rate_table() {
        println!(
            "{} {} {} {} {} {}",
            r.pair + 1,
            r.m,
            r.rank_own,
            r.rank_own_phase,
            r.interference,
            r.interference_phase
        );
    }
    let row = tp.rate_table()[0];
    for (a, a_phase) in [(1, 0), (0, 0), (1, 1)] {
        let f = row.feasible(a, a_phase);
        println!("pair 1, a = {a}, a' = {a_phase}: feasible {} rate {} {:?}", f.feasible, f.rate, f.warnings());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
