//! Parser for integer polynomials in the coefficient variables, e.g.
//! `d11*c12 + a12*(d12 + c11 + a12)` or `d11^2 - 3*lam*a11`.

use super::{var_index, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as i64))
                    .ok_or_else(|| Error::Parse("integer literal overflows".into()))?;
                chars.next();
            }
            out.push(Token::Num(n));
        } else if c.is_ascii_alphabetic() {
            let mut id = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric()) {
                id.push(c);
                chars.next();
            }
            out.push(Token::Ident(id));
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            chars.next();
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Token::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("expected an exponent after '^'".into()));
            };
            self.pos += 1;
            if e > 8 {
                return Err(Error::Parse(format!("exponent {e} too large")));
            }
            return Ok((0..e).fold(MultiPoly::constant(1), |acc, _| &acc * &base));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(n))
            }
            Some(Token::Ident(id)) => {
                self.pos += 1;
                var_index(&id)
                    .map(MultiPoly::var)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{id}'")))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let p = parse_poly("(d12 + a12)*(d12 - a12 - c11)").unwrap();
        let q = parse_poly("d12^2 - a12^2 - d12*c11 - a12*c11").unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_poly("-(a11) + 2*a11").unwrap(), MultiPoly::var(0));
        assert_eq!(parse_poly("3 - 3").unwrap(), MultiPoly::zero());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a11 +", "x1", "(a11", "a11 a12", "a11^", "a11 % 2", "a11^99"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }
}
