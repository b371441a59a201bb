//! Pullback along `S = T^m`, pushforward back down, and the translated
//! spectra they produce.

use diffmod::cli::parse::parse_operator;
use diffmod::ramify::{
    check_block_decomposition, check_eq22, check_pushforward_spectrum, pushforward_by, Module,
};
use diffmod::spectrum::spectrum_of_operator;

fn main() -> diffmod::Result<()> {
    for text in ["D", "D - 1/3", "D - 1/S", "D^2 - 1/S"] {
        let p = parse_operator(text, 30)?;
        let module = Module::Operator(p.clone());
        for m in [2, 3] {
            let pulled = module.pullback(m);
            println!(
                "{text}, m = {m}: {} -> {}   translates {} blocks {} pushforward {}",
                spectrum_of_operator(&p)?,
                pulled.spectrum(30)?,
                check_eq22(&module, m, 30)?,
                check_block_decomposition(&module.to_matrix(30)?, m)?,
                check_pushforward_spectrum(&module, m, 30)?,
            );
        }
    }
    let trivial = Module::Operator(parse_operator("D", 30)?).pullback(2);
    println!("pushforward of the trivial module over ram 2:\n{}", pushforward_by(&trivial.to_matrix(30)?, 2)?);
    Ok(())
}
