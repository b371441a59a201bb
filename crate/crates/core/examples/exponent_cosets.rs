//! Exponents modulo a lattice: rational and algebraic cosets.

use diffmod::exponents::{coset_eq, cosets_with_multiplicity, translate_coset, ExponentCoset};
use diffmod::rat::rat;
use diffmod::UniPoly;

fn main() -> diffmod::Result<()> {
    let p: UniPoly = "(x - 1/2)*(x - 5/2)*(x^2 - 2*x - 1)".parse()?;
    println!("p = {p}");
    for (c, k) in cosets_with_multiplicity(&p, 1) {
        println!("  coset {c} with multiplicity {k}");
    }
    let a = ExponentCoset::of_rational(&rat(1, 3), 1);
    let b = translate_coset(&a, &rat(1, 2));
    println!("{a} translated by 1/2: {b}");
    let w = a.widen_lattice(2)?;
    println!("{a} over the lattice (1/2)Z: {w}, parts {:?}", w.expand_to_integer_cosets().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let r2 = ExponentCoset::new(&"x^2 - 2".parse()?, 1);
    let r2_shift = ExponentCoset::new(&"x^2 - 6*x + 7".parse()?, 1);
    println!("{r2} == {r2_shift}: {}", coset_eq(&r2, &r2_shift)?);
    Ok(())
}
