//! The expression syntax and the canonical printer.

use diffmod::cli::parse::{parse, parse_operator, print};
use diffmod::Error;

fn main() -> diffmod::Result<()> {
    for text in ["D^2 - (1/S)", "(D - 1/S)*(D - 2)", "S^(1/2)*D", "D*S", "(S + 1)^2*D^2 - 3/4"] {
        let p = parse_operator(text, 20)?;
        let printed = print(&p);
        assert_eq!(parse_operator(&printed, 20)?, p);
        println!("{text:>24}  ->  {printed}");
    }
    println!("syntax tree of D^2 - 1/S: {:?}", parse("D^2 - 1/S")?);
    for bad in ["D^(1/2)", "D +* S", "(D - 1"] {
        match parse_operator(bad, 20) {
            Err(Error::Parse { pos, msg }) => println!("{bad:?}: error at {pos}: {msg}"),
            other => println!("{bad:?}: {other:?}"),
        }
    }
    Ok(())
}
