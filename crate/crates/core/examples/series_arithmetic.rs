//! Puiseux series: exact arithmetic, precision tracking, inversion and the
//! gauge unit of a rank-one connection.

use diffmod::cli::parse::parse_series;
use diffmod::rat::{self, rat};
use diffmod::Puiseux;

fn main() -> diffmod::Result<()> {
    let f = parse_series("1 - S", 10)?;
    let inv = f.invert(6)?;
    println!("1/({f}) = {inv}");
    println!("check: {}", f.mul(&inv)?);

    let g = parse_series("S^(-1/2) + 3 + S^(1/2)", 10)?;
    println!("g = {g}, ram {}, v(g) = {:?}", g.ram(), g.valuation());
    println!("delta(g) = {}", g.delta());
    println!("|g| at r = 1/4: {:?}", g.abs_value(&rat(1, 4))?);

    // f - delta(u)/u = f(0) up to S^6
    let f = parse_series("2 + S + S^2", 10)?;
    let u = f.gauge_solve(&rat::int(6))?;
    let moved = &f - &u.delta().mul(&u.invert(8)?)?;
    println!("gauge unit u = {u}");
    println!("f - delta(u)/u = {}", moved.truncate(&rat::int(6)));
    assert_eq!(moved.truncate(&rat::int(6)), Puiseux::constant(rat::int(2)).truncate(&rat::int(6)));
    Ok(())
}
