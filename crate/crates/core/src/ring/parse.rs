//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-') factor | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Implicit multiplication (`2x`, `x y`) is rejected.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::context::Ctx;
use super::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'^' | b'(' | b')' => {
                let t = match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((t, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Ctx,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| Error::ExponentOverflow)?;
                base.try_pow(e)
            }
            Tok::Minus => Err(Error::NegativeExponent { pos }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("expected integer exponent, found {}", describe(&t)),
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (t, pos) = self.bump();
        match t {
            Tok::Int(n) => Ok(Polynomial::constant(self.ctx, n)),
            Tok::Ident(name) => match self.ctx.index_of(&name) {
                Some(i) => Ok(Polynomial::var_at(self.ctx, i)),
                None => Err(Error::UndeclaredVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let pos = self.pos();
                match self.bump().0 {
                    Tok::RParen => Ok(inner),
                    t => Err(Error::Syntax {
                        pos,
                        msg: format!("expected `)`, found {}", describe(&t)),
                    }),
                }
            }
            t => Err(Error::Syntax {
                pos,
                msg: format!("expected operand, found {}", describe(&t)),
            }),
        }
    }
}

/// Parses an expression against a declared variable context.
pub fn parse(ctx: &Ctx, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { ctx, toks, at: 0 };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        t @ (Tok::Ident(_) | Tok::Int(_) | Tok::LParen) => Err(Error::Syntax {
            pos: p.pos(),
            msg: format!(
                "unexpected {} (implicit multiplication is not allowed)",
                describe(t)
            ),
        }),
        t => Err(Error::Syntax {
            pos: p.pos(),
            msg: format!("unexpected {}", describe(t)),
        }),
    }
}

impl Polynomial {
    pub fn parse(ctx: &Ctx, text: &str) -> Result<Polynomial> {
        parse(ctx, text)
    }
}
