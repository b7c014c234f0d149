//! Text syntax for polynomials and differential polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ['-'] factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | ident "'"* | ident '^(' nat ')' | '(' expr ')'
//!         | 'D' ('^' nat)? '(' expr ')'
//! ```
//!
//! Whitespace between tokens is ignored. `x'` is `(x, 1)` and `x^(4)` is
//! `(x, 4)`. In polynomial mode primes, `^(n)` and `D` are rejected.

use std::fmt;

use thiserror::Error;

use crate::free_diff::{d_shift_n, DVar, DiffPoly};
use crate::polynomial::{Poly, VarName};
use crate::scalars::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Poly,
    DiffPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// `offset` is a 1-based byte offset.
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{construct} at byte {offset} is only allowed in differential-polynomial mode")]
    Mode { offset: usize, construct: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(DVar),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `D^k(e)`.
    D(u64, Box<Expr>),
}

impl Expr {
    pub fn to_diffpoly(&self) -> DiffPoly {
        match self {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(v) => Poly::var(v.clone()),
            Expr::Add(a, b) => &a.to_diffpoly() + &b.to_diffpoly(),
            Expr::Sub(a, b) => &a.to_diffpoly() - &b.to_diffpoly(),
            Expr::Neg(a) => -a.to_diffpoly(),
            Expr::Mul(a, b) => &a.to_diffpoly() * &b.to_diffpoly(),
            Expr::Pow(a, e) => a.to_diffpoly().pow(*e),
            Expr::D(k, a) => d_shift_n(&a.to_diffpoly(), *k),
        }
    }

    /// Meaningful for trees parsed in polynomial mode, where every variable
    /// has order 0.
    pub fn to_poly(&self) -> Poly<VarName> {
        self.to_diffpoly().map_vars(|v| v.base.clone())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(a, e) => write!(f, "{a}^{e}"),
            Expr::D(k, a) => write!(f, "D^{k}({a})"),
        }
    }
}

pub fn parse(input: &str, mode: Mode) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        mode,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

pub fn parse_poly(input: &str) -> Result<Poly<VarName>, ParseError> {
    parse(input, Mode::Poly).map(|e| e.to_poly())
}

pub fn parse_diffpoly(input: &str) -> Result<DiffPoly, ParseError> {
    parse(input, Mode::DiffPoly).map(|e| e.to_diffpoly())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        match std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => format!("'{c}'"),
            None if self.pos >= self.src.len() => "end of input".into(),
            None => "invalid UTF-8".into(),
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.pos + 1,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{}'", b as char)]))
        }
    }

    fn require_diff(&self, offset: usize, construct: &str) -> Result<(), ParseError> {
        match self.mode {
            Mode::DiffPoly => Ok(()),
            Mode::Poly => Err(ParseError::Mode {
                offset: offset + 1,
                construct: construct.to_string(),
            }),
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn nat<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        let start = self.pos;
        match self.digits() {
            Some(d) => {
                let d = d.to_string();
                d.parse().map_err(|_| ParseError::Syntax {
                    offset: start + 1,
                    expected: vec!["a smaller natural number".into()],
                    found: d,
                })
            }
            None => Err(self.error(&["natural number"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(if negate { Expr::Neg(Box::new(acc)) } else { acc })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            let e = self.nat()?;
            return Ok(Expr::Pow(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    /// After an identifier `D`: true when a D-application follows.
    fn d_application_ahead(&self) -> bool {
        let rest = &self.src[self.pos..];
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < rest.len() && rest[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        skip(&mut i);
        if rest.get(i) == Some(&b'(') {
            return true;
        }
        if rest.get(i) != Some(&b'^') {
            return false;
        }
        i += 1;
        skip(&mut i);
        let start = i;
        while i < rest.len() && rest[i].is_ascii_digit() {
            i += 1;
        }
        if i == start {
            return false;
        }
        skip(&mut i);
        rest.get(i) == Some(&b'(')
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit ahead").to_string();
                let lit = if self.eat(b'/') {
                    match self.digits() {
                        Some(den) => format!("{num}/{den}"),
                        None => return Err(self.error(&["denominator digits"])),
                    }
                } else {
                    num
                };
                lit.parse::<Rational>().map(Expr::Num).map_err(|_| ParseError::Syntax {
                    offset: start + 1,
                    expected: vec!["nonzero denominator".into()],
                    found: lit,
                })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident().to_string();
                if name == "D" && self.d_application_ahead() {
                    self.require_diff(start, "D-application")?;
                    let k = if self.eat(b'^') { self.nat()? } else { 1 };
                    self.expect(b'(')?;
                    let e = self.expr()?;
                    self.expect(b')')?;
                    return Ok(Expr::D(k, Box::new(e)));
                }
                let base = VarName::new(name).expect("identifier is a valid name");
                let mut order = 0u64;
                while self.peek() == Some(b'\'') {
                    self.require_diff(self.pos, "prime")?;
                    self.pos += 1;
                    order += 1;
                }
                if order == 0 && self.peek() == Some(b'^') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.require_diff(save, "derivative order '^(n)'")?;
                        self.pos += 1;
                        order = self.nat()?;
                        self.expect(b')')?;
                    } else {
                        self.pos = save;
                    }
                }
                Ok(Expr::Var(DVar::new(base, order)))
            }
            _ => Err(self.error(&["number", "variable", "'('", "'-'"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_diff::dvar;

    fn dp(s: &str) -> DiffPoly {
        parse_diffpoly(s).unwrap()
    }

    #[test]
    fn primes_and_orders() {
        let expected = &dvar("x", 1).pow(2) + &(&dvar("x", 0) * &dvar("x", 2)).scale(&Rational::from(2));
        assert_eq!(dp("x'^2 + 2*x*x''"), expected);
        assert_eq!(dp("x^(5)"), dvar("x", 5));
        assert_eq!(dp("x^(5)^2"), dvar("x", 5).pow(2));
        assert_eq!(dp("y''''"), dvar("y", 4));
    }

    #[test]
    fn d_application() {
        let expected = (&dvar("x", 0) * &dvar("x", 1)).scale(&Rational::from(2));
        assert_eq!(dp("D(x^2)"), expected);
        assert_eq!(dp("D^2(x)"), dvar("x", 2));
        assert_eq!(dp("D ^ 0 ( x )"), dvar("x", 0));
        assert_eq!(dp("D*D"), Poly::var(DVar::new(VarName::new("D").unwrap(), 0)).pow(2));
    }

    #[test]
    fn rationals_and_signs() {
        assert_eq!(dp("1/2 - 3/4"), Poly::constant(Rational::new(-1, 4)));
        assert_eq!(dp("-x + x"), Poly::zero());
        assert_eq!(dp("2 - -x"), &Poly::constant(Rational::from(2)) + &dvar("x", 0));
        assert!(parse_diffpoly("1/0").is_err());
    }

    #[test]
    fn poly_mode_rejects_derivatives() {
        for s in ["x'", "D(x)", "x^(2)", "y + D^2(x)"] {
            assert!(
                matches!(parse(s, Mode::Poly), Err(ParseError::Mode { .. })),
                "{s}"
            );
        }
        assert_eq!(
            parse_poly("x^2*y").unwrap().to_string(),
            "x^2*y"
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("x + * y", Mode::Poly) {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 5);
                assert!(expected.iter().any(|e| e == "variable"));
            }
            other => panic!("{other:?}"),
        }
        match parse("(x + 1", Mode::Poly) {
            Err(ParseError::Syntax { offset, found, .. }) => {
                assert_eq!(offset, 7);
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("x y", Mode::Poly).is_err());
        assert!(parse("x^", Mode::Poly).is_err());
        assert!(parse("", Mode::Poly).is_err());
        assert!(parse("x ^ 99999999999", Mode::Poly).is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["2*x'^2 + 2*x*x''", "-x^(7)*y + 1/3", "x^(4)^2 - y'''", "0"] {
            let p = dp(s);
            assert_eq!(dp(&p.to_string()), p);
        }
    }
}
