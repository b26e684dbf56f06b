//! Textual cotree expressions.
//!
//! ```text
//! expr := K(int) | I(int) | U(expr, ...) | J(expr, ...) | int*expr | C(expr)
//! ```
//!
//! `K(k)` is the complete graph, `I(k)` the edgeless graph, `U`/`J` disjoint
//! union and join, `C` complement. `k*expr` stands for `k` copies: inside an
//! argument list of `U` or `J` the copies are spliced in as separate arguments,
//! elsewhere they are combined by disjoint union. A `U` or `J` with a single
//! argument is that argument.

use crate::cotree::Cotree;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cotree expression error at byte {pos}: {msg}")]
pub struct DslError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Complete(usize),
    Edgeless(usize),
    Union(Vec<Expr>),
    Join(Vec<Expr>),
    Repeat(usize, Box<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    pub fn to_cotree(&self) -> Cotree {
        match self {
            Expr::Complete(k) => Cotree::complete(*k),
            Expr::Edgeless(k) => Cotree::edgeless(*k),
            Expr::Union(args) => Cotree::union(splice(args)),
            Expr::Join(args) => Cotree::join(splice(args)),
            Expr::Repeat(k, e) => e.to_cotree().repeat(*k),
            Expr::Complement(e) => e.to_cotree().complement(),
        }
    }
}

fn splice(args: &[Expr]) -> Vec<Cotree> {
    let mut out = Vec::new();
    for a in args {
        match a {
            Expr::Repeat(k, e) => {
                let t = e.to_cotree();
                out.extend(std::iter::repeat_n(t, *k));
            }
            e => out.push(e.to_cotree()),
        }
    }
    out
}

pub fn parse_expr(s: &str) -> Result<Expr, DslError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates an expression into a normalized cotree.
pub fn parse_cotree(s: &str) -> Result<Cotree, DslError> {
    parse_expr(s).map(|e| e.to_cotree())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> DslError {
        DslError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), DslError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize, DslError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DslError { pos: start, msg: "integer too large".into() })
    }

    fn positive(&mut self) -> Result<usize, DslError> {
        let start = self.pos;
        match self.int()? {
            0 => Err(DslError { pos: start, msg: "count must be at least 1".into() }),
            k => Ok(k),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let k = self.positive()?;
                self.expect(b'*')?;
                Ok(Expr::Repeat(k, Box::new(self.expr()?)))
            }
            Some(c @ (b'K' | b'I')) => {
                self.pos += 1;
                self.expect(b'(')?;
                let k = self.positive()?;
                self.expect(b')')?;
                Ok(if c == b'K' { Expr::Complete(k) } else { Expr::Edgeless(k) })
            }
            Some(c @ (b'U' | b'J')) => {
                self.pos += 1;
                self.expect(b'(')?;
                let mut args = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(b')')?;
                Ok(if c == b'U' { Expr::Union(args) } else { Expr::Join(args) })
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Complement(Box::new(e)))
            }
            Some(_) => Err(self.error("expected K, I, U, J, C or a repetition count")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
