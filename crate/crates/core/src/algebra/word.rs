//! A small expression language for elements of M_n: `2*e1 + r1*l1 - (1/3)*g2`.

use super::AlgElem;
use crate::error::{Error, Result};
use crate::scalars::{parse_rational, Param, Scalar};
use crate::tangles::{Generator, Tangle};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if "+-*()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(Error::parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
    param: &'a Param,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<AlgElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgElem> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.multiply(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AlgElem> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(Error::parse("missing ')'"));
            }
            return Ok(inner);
        }
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let c = Scalar::Rat(parse_rational(&s)?);
                Ok(AlgElem::scalar(self.param, self.n, c))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                self.atom(&s)
            }
            other => Err(Error::parse(format!("unexpected token {other:?}"))),
        }
    }

    fn atom(&self, s: &str) -> Result<AlgElem> {
        let (n, param) = (self.n, self.param);
        match s {
            "id" => return Ok(AlgElem::identity(param, n)),
            "D" => return Ok(AlgElem::scalar(param, n, param.loop_value().clone())),
            "d" => return Ok(AlgElem::scalar(param, n, param.d().clone())),
            _ => {}
        }
        let (head, idx) = s.split_at(1);
        let idx = idx.strip_prefix('_').unwrap_or(idx);
        let i: usize = idx.parse().map_err(|_| Error::parse(format!("unknown symbol {s:?}")))?;
        let kind = match head {
            "e" => Generator::E,
            "l" => Generator::L,
            "r" => Generator::R,
            "p" => Generator::P,
            "g" => {
                if i > n {
                    return Err(Error::IndexOutOfRange { index: i, range: format!("0..={n}") });
                }
                return Ok(crate::idempotents::jw(i, param)?.embed(n - i));
            }
            _ => return Err(Error::parse(format!("unknown symbol {s:?}"))),
        };
        Ok(AlgElem::from_tangle(param, Tangle::generator(kind, n, i)?))
    }
}

/// Parses a word in the generators id, e_i, l_i, r_i, p_i, g_k of M_n, with
/// rational scalars, `D`, `d`, `+`, `-`, `*` and parentheses.
pub fn parse_word(s: &str, n: usize, param: &Param) -> Result<AlgElem> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
        n,
        param,
    };
    let x = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(x)
}
