//! Rank-one modules `D - f`: regular when `v(f) >= 0`, a single Gauss point
//! `x_{0, r^v(f)}` otherwise.

use diffmod::cli::parse::parse_series;
use diffmod::rat::rat;
use diffmod::spectrum::{numeric_radii, spectrum_of_operator, spectrum_rank1};
use diffmod::DiffOperator;

fn main() -> diffmod::Result<()> {
    for text in ["1/3 + S", "S^(-1)", "S^(-2) + 5", "S^(-1/2)", "7/2 + S^(1/2)"] {
        let f = parse_series(text, 20)?;
        let direct = spectrum_rank1(&f)?;
        let via_operator = spectrum_of_operator(&DiffOperator::monic(vec![-&f]))?;
        assert_eq!(direct, via_operator);
        let radii: Vec<String> = numeric_radii(&direct, &rat(1, 4))?
            .into_iter()
            .map(|r| r.display)
            .collect();
        println!("f = {text}: {direct}   radii at r = 1/4: {radii:?}");
    }
    Ok(())
}
