//! Expression syntax.
//!
//! ```text
//! expr   := ["-"] term { ("+" | "-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" natural ]
//! atom   := rational | var | "(" expr ")" | "[" expr "," expr "]"
//!         | "jord(" expr "," expr ")" | "S(" natural ")"
//! var    := ("x" | "y") natural
//! ```
//!
//! `x<N>` is generator `N`; `y<N>` is generator `M + N` where `M` is the
//! largest `x` index in the expression, so `y` letters never collide with `x`
//! letters.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freealg::{commutator, jordan, standard_poly, Gen, NcPoly, Word};
use crate::scalars::{rat_normalize, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rational),
    Var(VarKind, Gen),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Commutator(Box<ExprAst>, Box<ExprAst>),
    Jordan(Box<ExprAst>, Box<ExprAst>),
    Standard(usize),
}

impl ExprAst {
    /// Lowers with the default `y` offset (largest `x` index).
    pub fn lower(&self) -> Result<NcPoly> {
        self.lower_with_y_offset(self.max_x())
    }

    /// Lowers with `y<N>` mapped to generator `offset + N`.
    pub fn lower_with_y_offset(&self, offset: Gen) -> Result<NcPoly> {
        Ok(match self {
            ExprAst::Num(c) => NcPoly::constant(c.clone()),
            ExprAst::Var(VarKind::X, i) => NcPoly::x(*i),
            ExprAst::Var(VarKind::Y, i) => NcPoly::x(offset + i),
            ExprAst::Neg(a) => -a.lower_with_y_offset(offset)?,
            ExprAst::Add(a, b) => {
                &a.lower_with_y_offset(offset)? + &b.lower_with_y_offset(offset)?
            }
            ExprAst::Sub(a, b) => {
                &a.lower_with_y_offset(offset)? - &b.lower_with_y_offset(offset)?
            }
            ExprAst::Mul(a, b) => {
                &a.lower_with_y_offset(offset)? * &b.lower_with_y_offset(offset)?
            }
            ExprAst::Pow(a, e) => a.lower_with_y_offset(offset)?.pow(*e),
            ExprAst::Commutator(a, b) => commutator(
                &a.lower_with_y_offset(offset)?,
                &b.lower_with_y_offset(offset)?,
            ),
            ExprAst::Jordan(a, b) => jordan(
                &a.lower_with_y_offset(offset)?,
                &b.lower_with_y_offset(offset)?,
            ),
            ExprAst::Standard(n) => standard_poly(*n)?,
        })
    }

    /// Largest `x` index, or the largest generator used by `S(n)`.
    pub fn max_x(&self) -> Gen {
        match self {
            ExprAst::Num(_) | ExprAst::Var(VarKind::Y, _) => 0,
            ExprAst::Var(VarKind::X, i) => *i,
            ExprAst::Standard(n) => *n as Gen,
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.max_x(),
            ExprAst::Add(a, b)
            | ExprAst::Sub(a, b)
            | ExprAst::Mul(a, b)
            | ExprAst::Commutator(a, b)
            | ExprAst::Jordan(a, b) => a.max_x().max(b.max_x()),
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Num(c) => write!(f, "{c}"),
            ExprAst::Var(VarKind::X, i) => write!(f, "x{i}"),
            ExprAst::Var(VarKind::Y, i) => write!(f, "y{i}"),
            ExprAst::Neg(a) => write!(f, "-({a})"),
            ExprAst::Add(a, b) => write!(f, "({a} + {b})"),
            ExprAst::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprAst::Mul(a, b) => write!(f, "({a})*({b})"),
            ExprAst::Pow(a, e) => write!(f, "({a})^{e}"),
            ExprAst::Commutator(a, b) => write!(f, "[{a},{b}]"),
            ExprAst::Jordan(a, b) => write!(f, "jord({a},{b})"),
            ExprAst::Standard(n) => write!(f, "S({n})"),
        }
    }
}

/// Parses an expression; errors carry the byte offset of the problem.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and lowers an expression.
pub fn parse_poly(text: &str) -> Result<NcPoly> {
    parse_expr(text)?.lower()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut e = if self.eat(b'-') {
            ExprAst::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                e = ExprAst::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(b'-') {
                e = ExprAst::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut e = self.factor()?;
        while self.eat(b'*') {
            e = ExprAst::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.natural()?;
            if e.is_zero() {
                self.pos = at;
                return Err(self.error("exponent must be positive"));
            }
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(ExprAst::Commutator(Box::new(a), Box::new(b)))
            }
            Some(b'x') | Some(b'y') => {
                let kind = if self.src[self.pos] == b'x' {
                    VarKind::X
                } else {
                    VarKind::Y
                };
                self.pos += 1;
                let at = self.pos;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index"));
                }
                let i = self.natural()?;
                if i.is_zero() {
                    self.pos = at;
                    return Err(self.error("variable indices start at 1"));
                }
                let i = Gen::try_from(i).map_err(|_| self.error("variable index too large"))?;
                Ok(ExprAst::Var(kind, i))
            }
            Some(b'j') if self.src[self.pos..].starts_with(b"jord(") => {
                self.pos += 5;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(ExprAst::Jordan(Box::new(a), Box::new(b)))
            }
            Some(b'S') if self.src[self.pos..].starts_with(b"S(") => {
                self.pos += 2;
                self.skip_ws();
                let at = self.pos;
                let n = self.natural()?;
                if n.is_zero() {
                    self.pos = at;
                    return Err(self.error("S(n) needs n >= 1"));
                }
                let n = usize::try_from(n).map_err(|_| self.error("S(n) argument too large"))?;
                self.expect(b')')?;
                Ok(ExprAst::Standard(n))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<ExprAst> {
        let num = self.natural()?;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.natural()?;
            return rat_normalize(num, den)
                .map(ExprAst::Num)
                .map_err(|_| Error::Parse {
                    pos: at,
                    msg: "zero denominator".into(),
                });
        }
        Ok(ExprAst::Num(Rational::from_integer(num)))
    }
}

/// Canonical text of a polynomial: terms in word order, explicit rational
/// coefficients, `0` for the zero polynomial. Parses back to the same value.
pub fn format_expr(f: &NcPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in f.terms().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if w.degree() == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&w.to_string());
        } else {
            out.push_str(&format!("{mag}*{w}"));
        }
    }
    out
}

/// Parses a single monomial with coefficient one, or the empty word (`""` or `1`).
pub fn parse_word(text: &str, y_offset: Gen) -> Result<Word> {
    if text.trim().is_empty() {
        return Ok(Word::empty());
    }
    let p = parse_expr(text)?.lower_with_y_offset(y_offset)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if c.is_one() => Ok(w.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("{text:?} is not a monomial"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::central_square_generator;
    use crate::scalars::rat;

    #[test]
    fn generator_transcription() {
        assert_eq!(parse_poly("[x1^2,x2]").unwrap(), central_square_generator());
        assert_eq!(parse_poly("S(3)").unwrap().len(), 6);
        assert_eq!(parse_poly("S(3)").unwrap(), standard_poly(3).unwrap());
    }

    #[test]
    fn y_letters_follow_x_letters() {
        let f = parse_poly("x1*y1*x2 - x2*y1*x1").unwrap();
        assert_eq!(format_expr(&f), "x1*x3*x2 - x2*x3*x1");
        let f = parse_expr("y2").unwrap().lower_with_y_offset(5).unwrap();
        assert_eq!(f, NcPoly::x(7));
    }

    #[test]
    fn formatting() {
        let x1 = NcPoly::x(1);
        let x2 = NcPoly::x(2);
        assert_eq!(format_expr(&commutator(&x1, &x2)), "x1*x2 - x2*x1");
        assert_eq!(format_expr(&NcPoly::zero()), "0");
        let f = &NcPoly::constant(rat(-3, 4)) + &x1.scale(&rat(-1, 2));
        assert_eq!(format_expr(&f), "-3/4 - 1/2*x1");
        assert_eq!(parse_poly(&format_expr(&f)).unwrap(), f);
    }

    #[test]
    fn operators() {
        let f = parse_poly("2*jord(x1, x2) - 2*(x1*x2)").unwrap();
        assert_eq!(format_expr(&f), "-x1*x2 + x2*x1");
        assert_eq!(parse_poly("(x1+x2)^2").unwrap().len(), 4);
        assert_eq!(
            parse_poly(" 3/6 * x1 ").unwrap(),
            NcPoly::x(1).scale(&rat(1, 2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_expr(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s:?} parsed to {other:?}"),
        };
        assert_eq!(pos("x1^0"), 3);
        assert_eq!(pos("x1 + "), 5);
        assert_eq!(pos("x0"), 1);
        assert_eq!(pos("1/0"), 2);
        assert_eq!(pos("[x1 x2]"), 4);
        assert_eq!(pos("x1)"), 2);
        assert_eq!(pos("z"), 0);
        assert_eq!(pos("S(0)"), 2);
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("", 2).unwrap(), Word::empty());
        assert_eq!(parse_word("1", 2).unwrap(), Word::empty());
        assert_eq!(parse_word("x1*y1", 2).unwrap(), Word::new(vec![1, 3]));
        assert!(parse_word("x1+x2", 2).is_err());
        assert!(parse_word("2*x1", 2).is_err());
    }
}
