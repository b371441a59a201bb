//! From a connection matrix to a differential operator via a cyclic vector.

use diffmod::cli::json::parse_matrix;
use diffmod::cyclic_vector;
use diffmod::spectrum::{spectrum_of_matrix, spectrum_of_operator};

fn main() -> diffmod::Result<()> {
    // column j of G is nabla(e_j)
    let g = parse_matrix(r#"{"n": 2, "entries": [["0", "1/S"], ["1", "0"]]}"#, 30)?;
    let cv = cyclic_vector(&g, 30)?;
    println!("G =\n{g}");
    println!("cyclic vector {:?} -> {}", cv.vector.iter().map(|c| c.to_string()).collect::<Vec<_>>(), cv.operator);
    println!("spectrum: {}", spectrum_of_matrix(&g, 30)?);

    // e_1 is not cyclic for a diagonal matrix; another candidate is used
    let g = parse_matrix(r#"{"n": 2, "entries": [["1/2", "0"], ["0", "1/3"]]}"#, 30)?;
    let cv = cyclic_vector(&g, 30)?;
    println!("G =\n{g}");
    println!("after {} candidates: {}", cv.attempts, cv.operator);
    println!("spectrum: {}", spectrum_of_operator(&cv.operator)?);

    // a repeated eigenvalue needs a non-constant cyclic vector
    let g = parse_matrix(r#"{"n": 2, "entries": [["1/2", "0"], ["0", "1/2"]]}"#, 30)?;
    let cv = cyclic_vector(&g, 30)?;
    println!("diag(1/2, 1/2) after {} candidates: {}", cv.attempts, cv.operator);
    println!("spectrum: {}", spectrum_of_matrix(&g, 30)?);
    Ok(())
}
