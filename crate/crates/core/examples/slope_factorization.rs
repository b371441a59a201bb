//! Splitting an operator into a factor for one slope times the rest.

use diffmod::cli::parse::parse_operator;
use diffmod::factor::{decompose_reg_irr, slope_factor};
use diffmod::rat::{int, rat};

fn main() -> diffmod::Result<()> {
    let p = parse_operator("(D - 1/S)*(D - 2)", 20)?;
    let f = slope_factor(&p, &int(1), None)?;
    println!("P = {p}");
    println!("slope 1: R = {}, Q = {}", f.left, f.right);

    let (reg, irr) = decompose_reg_irr(&p, None)?;
    println!("regular part {reg}\nirregular part {irr}");

    let p = parse_operator("(D^2 - 1/S)*(D - 1/2 - S)", 20)?;
    let f = slope_factor(&p, &rat(1, 2), None)?;
    println!("P = {p}");
    println!(
        "slope 1/2 (width {}), exact below S^{} after {} steps:\n  R = {}\n  Q = {}",
        f.width, f.precision, f.iterations, f.left, f.right
    );
    Ok(())
}
