//! Newton polygons, slopes with multiplicities, and the slope-0 edge
//! polynomial.

use diffmod::cli::parse::parse_operator;
use diffmod::newton::{edge_polynomial_slope0, newton_polygon};

fn main() -> diffmod::Result<()> {
    for text in ["D^2 - 1/S", "(D - 1/S)*(D - 2)", "D^3 - S^(-2)*D", "D^2 + 1/2*D + S"] {
        let p = parse_operator(text, 20)?;
        let np = newton_polygon(&p)?;
        println!("{text}\n  canonical: {p}\n  polygon: {np}");
        print!("{}", np.ascii());
        for (slope, width) in np.slopes() {
            println!("  slope {slope} with multiplicity {width}");
        }
        if let Some(e) = edge_polynomial_slope0(&p)? {
            println!("  slope-0 edge polynomial: {}", e.poly);
        }
    }
    Ok(())
}
