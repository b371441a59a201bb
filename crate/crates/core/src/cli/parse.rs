//! Expression syntax for operators, series and polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] int | '^(' rational ')']
//! atom   := int | 'D' | 'S' | 'x' | '(' expr ')' | 'O(' expr ')'
//! ```
//!
//! Products are ordered and evaluated in the operator ring, so `D*S` is
//! `S*D + S`. Division is only by expressions free of `D`; a monomial
//! divisor inverts exactly, anything else is inverted to the working
//! precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rat::{self, Rat};
use crate::series::Puiseux;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Num(BigInt),
    D,
    S,
    X,
    Neg(Box<OperatorExpr>),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    /// Divisor position kept for error messages.
    Div(Box<OperatorExpr>, Box<OperatorExpr>, usize),
    Pow(Box<OperatorExpr>, Rat, usize),
    BigO(Box<OperatorExpr>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Num(digits.parse().unwrap())));
            }
            'D' | 'S' | 'x' | 'O' => {
                out.push((pos, Tok::Ident(c)));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((pos, Tok::Op(c)));
                i += 1;
            }
            _ => return Err(Error::parse(pos, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Op(o))) if *o == c)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek_op(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.eat_op(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = OperatorExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = OperatorExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = OperatorExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek_op('/') {
                self.at += 1;
                let pos = self.pos();
                lhs = OperatorExpr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<OperatorExpr> {
        if self.eat_op('-') {
            return Ok(OperatorExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.toks.get(self.at) {
            Some((_, Tok::Num(n))) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => Err(Error::parse(self.pos(), "expected an integer")),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat_op('-');
        let n = self.int()?;
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<OperatorExpr> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let exp = if self.eat_op('(') {
            let num = self.signed_int()?;
            let den = if self.eat_op('/') { self.int()? } else { BigInt::one() };
            if den.is_zero() {
                return Err(Error::parse(pos, "zero denominator in exponent"));
            }
            self.expect_op(')')?;
            Rat::new(num, den)
        } else {
            Rat::from_integer(self.signed_int()?)
        };
        Ok(OperatorExpr::Pow(Box::new(base), exp, pos))
    }

    fn atom(&mut self) -> Result<OperatorExpr> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Num(n))) => {
                self.at += 1;
                Ok(OperatorExpr::Num(n))
            }
            Some((_, Tok::Ident('O'))) => {
                self.at += 1;
                self.expect_op('(')?;
                let inner = self.expr()?;
                self.expect_op(')')?;
                Ok(OperatorExpr::BigO(Box::new(inner), pos))
            }
            Some((_, Tok::Ident(c))) => {
                self.at += 1;
                Ok(match c {
                    'D' => OperatorExpr::D,
                    'S' => OperatorExpr::S,
                    _ => OperatorExpr::X,
                })
            }
            Some((_, Tok::Op('('))) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Some(_) => Err(Error::parse(pos, "expected a number, D, S, x or '('")),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

/// Parses text into an expression tree.
pub fn parse(text: &str) -> Result<OperatorExpr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// `S^q` with coefficient one, as an exponent.
fn monomial_exponent(p: &DiffOperator) -> Option<Rat> {
    if p.degree() != 0 {
        return None;
    }
    let f = p.coeff(0);
    if !f.is_exact() || !f.is_monomial() {
        return None;
    }
    let (e, c) = f.leading_term()?;
    c.is_one().then_some(e)
}

fn series_of(p: &DiffOperator, pos: usize, what: &str) -> Result<Puiseux> {
    if p.degree() != 0 {
        return Err(Error::parse(pos, format!("{what} must not involve D")));
    }
    Ok(p.coeff(0))
}

fn power_of(base: &DiffOperator, n: u64) -> Result<DiffOperator> {
    let mut acc = DiffOperator::one();
    for _ in 0..n {
        acc = acc.op_mul(base)?;
    }
    Ok(acc)
}

/// Evaluates a tree in the operator ring.
pub fn eval_operator(e: &OperatorExpr, rel_steps: u32) -> Result<DiffOperator> {
    use OperatorExpr::*;
    Ok(match e {
        Num(n) => DiffOperator::from_series(Puiseux::constant(Rat::from_integer(n.clone()))),
        D => DiffOperator::d(),
        S => DiffOperator::from_series(Puiseux::s()),
        X => return Err(Error::parse(0, "the variable x only appears in polynomials")),
        Neg(a) => -&eval_operator(a, rel_steps)?,
        Add(a, b) => &eval_operator(a, rel_steps)? + &eval_operator(b, rel_steps)?,
        Sub(a, b) => &eval_operator(a, rel_steps)? - &eval_operator(b, rel_steps)?,
        Mul(a, b) => eval_operator(a, rel_steps)?.op_mul(&eval_operator(b, rel_steps)?)?,
        Div(a, b, pos) => {
            let den = series_of(&eval_operator(b, rel_steps)?, *pos, "a divisor")?;
            if den.is_zero() {
                return Err(Error::parse(*pos, "division by zero"));
            }
            let inv = den.invert(rel_steps)?;
            eval_operator(a, rel_steps)?.op_mul(&DiffOperator::from_series(inv))?
        }
        Pow(a, exp, pos) => {
            let base = eval_operator(a, rel_steps)?;
            if exp.is_integer() {
                let n = exp
                    .numer()
                    .abs()
                    .to_u64()
                    .filter(|n| *n <= 4096)
                    .ok_or_else(|| Error::parse(*pos, "exponent too large"))?;
                if exp.is_negative() {
                    let f = series_of(&base, *pos, "a base with negative exponent")?;
                    if f.is_zero() {
                        return Err(Error::parse(*pos, "zero to a negative power"));
                    }
                    power_of(&DiffOperator::from_series(f.invert(rel_steps)?), n)?
                } else {
                    power_of(&base, n)?
                }
            } else {
                if base.degree() > 0 {
                    return Err(Error::parse(*pos, "fractional power of D"));
                }
                let q = monomial_exponent(&base).ok_or_else(|| {
                    Error::parse(*pos, "fractional powers apply to powers of S only")
                })?;
                DiffOperator::from_series(Puiseux::monomial(Rat::one(), &(q * exp)))
            }
        }
        BigO(a, pos) => {
            let q = monomial_exponent(&eval_operator(a, rel_steps)?)
                .ok_or_else(|| Error::parse(*pos, "O(...) takes a power of S"))?;
            DiffOperator::from_series(Puiseux::big_o(&q))
        }
    })
}

/// Parses an operator such as `D^2 - (2 + 1/S)*D + 2/S`.
pub fn parse_operator(text: &str, rel_steps: u32) -> Result<DiffOperator> {
    eval_operator(&parse(text)?, rel_steps)
}

/// Parses a series: an expression free of `D`.
pub fn parse_series(text: &str, rel_steps: u32) -> Result<Puiseux> {
    let p = parse_operator(text, rel_steps)?;
    series_of(&p, 0, "a series")
}

/// Evaluates a tree as a polynomial in `x` with rational coefficients.
pub fn eval_polynomial(e: &OperatorExpr) -> Result<UniPoly> {
    use OperatorExpr::*;
    Ok(match e {
        Num(n) => UniPoly::constant(Rat::from_integer(n.clone())),
        X => UniPoly::x(),
        D | S => return Err(Error::parse(0, "polynomials are written in x")),
        BigO(_, pos) => return Err(Error::parse(*pos, "O(...) is not allowed in a polynomial")),
        Neg(a) => -&eval_polynomial(a)?,
        Add(a, b) => &eval_polynomial(a)? + &eval_polynomial(b)?,
        Sub(a, b) => &eval_polynomial(a)? - &eval_polynomial(b)?,
        Mul(a, b) => &eval_polynomial(a)? * &eval_polynomial(b)?,
        Div(a, b, pos) => {
            let d = eval_polynomial(b)?;
            if d.degree() != Some(0) {
                return Err(Error::parse(*pos, "polynomials divide by nonzero constants only"));
            }
            eval_polynomial(a)?.scale(&d.lead().recip())
        }
        Pow(a, exp, pos) => {
            let n = exp
                .to_integer()
                .to_u32()
                .filter(|_| exp.is_integer())
                .filter(|n| *n <= 4096)
                .ok_or_else(|| Error::parse(*pos, "polynomial exponents are small naturals"))?;
            let base = eval_polynomial(a)?;
            let mut acc = UniPoly::one();
            for _ in 0..n {
                acc = &acc * &base;
            }
            acc
        }
    })
}

pub fn parse_polynomial(text: &str) -> Result<UniPoly> {
    eval_polynomial(&parse(text)?)
}

/// Canonical text of an operator.
pub fn print(p: &DiffOperator) -> String {
    p.to_string()
}

/// Parses a rational such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rat> {
    rat::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn simple_operators() {
        let p = parse_operator("D^2 - (1/S)", 10).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeff(0), Puiseux::monomial(int(-1), &int(-1)));
        assert!(p.coeff(1).is_zero());
        let p = parse_operator("(D - 1/S)*(D - 2)", 10).unwrap();
        assert_eq!(print(&p), "2*S^(-1) + (-2 - S^(-1))*D + D^2");
        let p = parse_operator("S^(1/2)*D", 10).unwrap();
        assert_eq!(p.ram(), 2);
    }

    #[test]
    fn commutation_in_products() {
        assert_eq!(print(&parse_operator("D*S", 10).unwrap()), "S + S*D");
        assert_eq!(print(&parse_operator("-1/2*S^3*D", 10).unwrap()), "-1/2*S^3*D");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_operator("D^(1/2)", 10) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_operator("D + * S", 10), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_operator("1/D", 10), Err(Error::Parse { .. })));
        assert!(matches!(parse_operator("(D", 10), Err(Error::Parse { .. })));
        assert!(matches!(parse_operator("D $", 10), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn series_and_precision() {
        let f = parse_series("1 + O(S^3)", 10).unwrap();
        assert_eq!(f.precision(), Some(int(3)));
        let g = parse_series("1/(1 - S)", 4).unwrap();
        assert_eq!(g.to_string(), "S^3 + S^2 + S + 1 + O(S^4)");
        assert_eq!(parse_series("S^(-1/2)*S^(3/2)", 4).unwrap(), Puiseux::s());
    }

    #[test]
    fn polynomials() {
        let p = parse_polynomial("x^2 - 5/6*x + 1/6").unwrap();
        assert_eq!(p, UniPoly::new(vec![rat(1, 6), rat(-5, 6), int(1)]));
        assert_eq!(p.to_string().parse::<UniPoly>().unwrap(), p);
        assert!(parse_polynomial("x^(1/2)").is_err());
    }
}
