//! The spectrum of `D` is `Z` together with the Gauss point `x_{0,1}`;
//! constant matrices give one coset per eigenvalue class.

use diffmod::rat::{int, rat};
use diffmod::spectrum::{spectrum_constant_matrix, spectrum_of_matrix, spectrum_of_operator};
use diffmod::{DiffOperator, MatrixModule};

fn main() -> diffmod::Result<()> {
    let euler = spectrum_of_operator(&DiffOperator::d())?;
    println!("spectrum(D) = {euler}");

    let g = vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 3)]];
    println!("spectrum(diag(1/2, 1/3)) = {}", spectrum_constant_matrix(&g)?);
    println!("via cyclic vector: {}", spectrum_of_matrix(&MatrixModule::constant(&g)?, 50)?);

    let g = vec![vec![int(0), int(1)], vec![int(1), int(2)]];
    println!("spectrum([[0,1],[1,2]]) = {}", spectrum_constant_matrix(&g)?);

    // eigenvalues differing by integers share a coset
    let g = vec![vec![rat(1, 2), int(0)], vec![int(0), rat(5, 2)]];
    println!("spectrum(diag(1/2, 5/2)) = {}", spectrum_constant_matrix(&g)?);
    Ok(())
}
