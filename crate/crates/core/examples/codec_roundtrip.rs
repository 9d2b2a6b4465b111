// Encodes a message on both shadows, pushes it through the butterfly with
// random interference and decodes it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlnc::codec::{
    decode_bit, decode_phase, encode_bit, encode_phase, BitBranch, CodeConfig, CodeRandomness, PhaseBranch,
};
use qlnc::linalg::Mat;
use qlnc::network::{butterfly, Basis};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = butterfly();
    let tp = spec.compose_transfer()?;
    let ctx = spec.field().with_alpha(8)?;
    let f = ctx.ext();
    let cfg = CodeConfig::with_n_prime(0, 2, 1, 0, 6, 8)?;
    println!("{cfg}: {} shared F_q symbols", cfg.shared_len_base());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rand = CodeRandomness::sample(&cfg, f, &mut rng);
    let own = tp.block(0, 0, Basis::Bit)?.embed(f)?;
    let others = tp.complement_block(0, Basis::Bit)?.embed(f)?;
    let z = Mat::random(f, others.cols(), cfg.n_prime(), &mut rng);

    let branch = BitBranch::random(&cfg, f, &mut rng);
    let x = encode_bit(&branch, &rand, &cfg)?;
    let y = own.mul(&x)?.add(&others.mul(&z)?)?;
    let out = decode_bit(&y, &rand.r1, &rand.v, &cfg)?;
    println!("bit message\n{}", branch.message);
    println!("bit shadow recovered: {}", out.recovers(&branch.message));

    let own_p = tp.block(0, 0, Basis::Phase)?.embed(f)?;
    let others_p = tp.complement_block(0, Basis::Phase)?.embed(f)?;
    let branch = PhaseBranch::random(&cfg, f, &mut rng);
    let x = encode_phase(&branch, &rand, &cfg)?;
    let y = own_p.mul(&x)?.add(&others_p.mul(&z)?)?;
    let out = decode_phase(&y, &rand.r2, &rand.v, &cfg)?;
    println!("phase shadow recovered: {}", out.recovers(&branch.message));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
