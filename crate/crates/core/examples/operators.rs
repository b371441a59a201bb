//! The ring of differential operators: products follow `D f = f D + delta(f)`.

use diffmod::cli::parse::{parse_operator, parse_series};
use diffmod::DiffOperator;

fn main() -> diffmod::Result<()> {
    let p = parse_operator("D - 1/S", 10)?;
    let q = parse_operator("D - 2", 10)?;
    let pq = p.op_mul(&q)?;
    let qp = q.op_mul(&p)?;
    println!("P = {p}\nQ = {q}");
    println!("PQ = {pq}\nQP = {qp}");
    println!("PQ - QP = {}", &pq - &qp);

    let f = parse_series("S^2 + S^(-1)", 10)?;
    println!("PQ(f) = {}", pq.apply(&f)?);
    println!("P(Q(f)) = {}", p.apply(&q.apply(&f)?)?);

    let d3 = DiffOperator::d_pow(3);
    println!("D^3 applied to S^2 + S^(-1): {}", d3.apply(&f)?);
    println!("companion matrix of PQ:\n{}", pq.companion()?);
    Ok(())
}
