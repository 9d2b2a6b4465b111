// Builds the tower F_2 ⊂ F_4 ⊂ F_64 and does some arithmetic in it.

use qlnc::gf::FieldCtx;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FieldCtx::new(2, 2, 3)?;
    println!("q = {}, q' = {}", ctx.q(), ctx.q_prime());
    println!("base modulus {:?}, extension modulus {:?}", ctx.base_poly(), ctx.ext_poly());

    let f = ctx.ext();
    let x = f.from_digits(&[1, 2, 3])?;
    let y = f.from_digits(&[0, 1, 0])?;
    let prod = f.mul(x, y);
    let inv = f.inv(x).ok_or("x is nonzero")?;
    println!("x = {:?}, y = {:?}", f.digits(x), f.digits(y));
    println!("x * y = {:?}", f.digits(prod));
    println!("x * x^-1 = {}", f.mul(x, inv));

    let codes = ctx.lift(&[1, 2, 3, 0, 0, 1])?;
    println!("lift -> {codes:?}, flatten -> {:?}", ctx.flatten(&codes));
    let b = ctx.base();
    for c in 0..b.order() {
        println!("tr({c}) = {}", b.trace(c));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
