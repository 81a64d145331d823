use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::poly::{MPoly, VarUniverse};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { col, msg: msg.into() }
}

/// Splits into tokens with 1-based columns. Identifiers may carry bracketed
/// integer subscripts (`x[1][0]`) and trailing primes.
fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().map_err(|_| err(col, "bad number"))?), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '[' {
                let open = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i >= chars.len() || chars[i] != ']' || i == open + 1 {
                    return Err(err(open + 1, "malformed subscript"));
                }
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    ring: &'a R,
    vars: &'a Arc<VarUniverse>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<R>> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<R>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(err(col, "division only by nonzero constants"));
                }
                let c = d.constant_term();
                acc = match self.ring.unit_inverse(&c) {
                    Some(inv) => acc.scale(&inv),
                    None => acc
                        .divide_coeffs(&c)
                        .ok_or_else(|| err(col, "inexact division"))?,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly<R>> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::ExponentOverflow)?;
                    base.pow(e)
                }
                _ => Err(err(col, "expected exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly<R>> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(self.ring, self.vars, self.ring.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.index_of(&name) {
                    Ok(MPoly::var(self.ring, self.vars, i))
                } else if let Some(c) = self.ring.named_constant(&name) {
                    Ok(MPoly::constant(self.ring, self.vars, c))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.col(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Op(c)) => Err(err(col, format!("unexpected `{c}`"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial expression over `ring` in the variables of `vars`.
pub fn parse_poly<R: Ring>(ring: &R, vars: &Arc<VarUniverse>, s: &str) -> Result<MPoly<R>> {
    let toks = lex(s)?;
    let mut p = Parser { ring, vars, toks, pos: 0, end_col: s.chars().count() + 1 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(out)
}

/// Parses a list of polynomial strings.
pub fn parse_polys<R: Ring, S: AsRef<str>>(
    ring: &R,
    vars: &Arc<VarUniverse>,
    items: &[S],
) -> Result<Vec<MPoly<R>>> {
    items.iter().map(|s| parse_poly(ring, vars, s.as_ref())).collect()
}

/// Parses a coefficient-domain element written in the polynomial grammar.
pub fn parse_constant<R: Ring>(ring: &R, s: &str) -> Result<R::Elem> {
    let empty = VarUniverse::empty();
    let p = parse_poly(ring, &empty, s)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{PiRing, PrimeField, Rationals};

    #[test]
    fn round_trip() {
        let u = VarUniverse::grid(2, 1, &["pi"]).unwrap();
        let q = Rationals;
        for s in ["x[1][0]*x[2][1] - pi*x[2][0]*x[1][1]", "1/2*x[1][0]^3 + 7", "0"] {
            let f = parse_poly(&q, &u, s).unwrap();
            assert_eq!(parse_poly(&q, &u, &f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn pi_coefficients_in_product() {
        let k = PiRing::new(PrimeField::new(32003).unwrap());
        let u = VarUniverse::new(["x", "y"]).unwrap();
        let f = parse_poly(&k, &u, "(1 + pi)*x - pi^2*y").unwrap();
        assert_eq!(f.to_string(), "(1 + pi)*x - pi^2*y");
        assert_eq!(parse_poly(&k, &u, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn errors_carry_columns() {
        let u = VarUniverse::new(["x"]).unwrap();
        let q = Rationals;
        assert_eq!(
            parse_poly(&q, &u, "x + $"),
            Err(Error::Parse { col: 5, msg: "unexpected character `$`".into() })
        );
        assert_eq!(parse_poly(&q, &u, "z"), Err(Error::UnknownVariable("z".into())));
        assert!(matches!(parse_poly(&q, &u, "(x"), Err(Error::Parse { .. })));
    }
}
