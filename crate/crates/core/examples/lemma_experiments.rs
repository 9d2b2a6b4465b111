// Random-subspace and scrambler probabilities, exact and sampled.

use qlnc::codec::CodeConfig;
use qlnc::montecarlo::{
    field_of_order, lemma3_closed_form, lemma3_exhaustive, lemma3_experiment, lemma4_closed_form, lemma4_exhaustive,
    lemma4_experiment, lemma5_experiment,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = field_of_order(2)?;
    let r = lemma3_exhaustive(&f2, 2, 1, 1)?;
    println!("trivial intersection, F_2^2: {}/{} (closed form {:.4})", r.hits, r.total, lemma3_closed_form(2, 2, 1, 1));
    let r = lemma4_exhaustive(&f2, 2, 2)?;
    println!("full rank 2x2 over F_2: {}/{} (closed form {})", r.hits, r.total, lemma4_closed_form(2, 2, 2));

    let f16 = field_of_order(16)?;
    let r = lemma3_experiment(&f16, 4, 2, 2, 2000, 5)?;
    println!("trivial intersection, F_16^4, 2+2: {:.4} (exact {:.4})", r.value(), lemma3_closed_form(16, 4, 2, 2));
    let r = lemma4_experiment(&f16, 5, 2, 2000, 5)?;
    println!("full rank 2x5 over F_16: {:.4} (exact {:.4})", r.value(), lemma4_closed_form(16, 5, 2));

    let cfg = CodeConfig::with_n_prime(0, 1, 0, 0, 5, 1)?;
    let r = lemma5_experiment(&f16, &cfg, 500, 20, 5)?;
    println!("scrambler kills x: max {:.4}, bound {:.4} x {}", r.max_probability, r.bound, r.slack);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
