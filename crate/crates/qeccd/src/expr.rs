//! A small evaluator for the analytic cross-check expressions: linear
//! combinations of the channel coefficients written like
//! `"(A - 1 + Re(J) + Re(M) - Re(Q) - Re(T))/16"`.
//!
//! Real coefficients appear by letter (`A`..`H`), complex ones only inside
//! `Re(...)` or `Im(...)`. Unknown symbols (the undefined `X`, `Y` of some
//! source rows) surface as errors so the audit can flag those rows.

use crate::channel::Coefficients;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("undefined symbol {0:?}")]
    UndefinedSymbol(char),
    #[error("complex coefficient {0:?} used outside Re()/Im()")]
    ComplexOutsideReIm(char),
    #[error("parse error at {0}: {1}")]
    Parse(usize, String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    Sym(char),
    Re,
    Im,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<Tok>, ExprError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                toks.push(Tok::Open);
                i += 1;
            }
            ')' => {
                toks.push(Tok::Close);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|e| ExprError::Parse(start, e.to_string()))?;
                toks.push(Tok::Num(value));
            }
            'R' if bytes.get(i + 1) == Some(&'e') => {
                toks.push(Tok::Re);
                i += 2;
            }
            'I' if bytes.get(i + 1) == Some(&'m') => {
                toks.push(Tok::Im);
                i += 2;
            }
            'A'..='Z' => {
                toks.push(Tok::Sym(c));
                i += 1;
            }
            _ => return Err(ExprError::Parse(i, format!("unexpected character {c:?}"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ctx: &'a Coefficients,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            other => Err(ExprError::Parse(self.pos, format!("expected {want:?}, got {other:?}"))),
        }
    }

    fn real_symbol(&self, c: char) -> Result<f64, ExprError> {
        match c {
            'A' => Ok(self.ctx.a),
            'B' => Ok(self.ctx.b),
            'C' => Ok(self.ctx.c),
            'D' => Ok(self.ctx.d),
            'E' => Ok(self.ctx.e),
            'F' => Ok(self.ctx.f),
            'G' => Ok(self.ctx.g),
            'H' => Ok(self.ctx.h),
            'J' | 'L' | 'M' | 'P' | 'Q' | 'T' | 'U' | 'V' => {
                Err(ExprError::ComplexOutsideReIm(c))
            }
            _ => Err(ExprError::UndefinedSymbol(c)),
        }
    }

    fn complex_symbol(&self, c: char) -> Result<C64, ExprError> {
        match c {
            'J' => Ok(self.ctx.j),
            'L' => Ok(self.ctx.l),
            'M' => Ok(self.ctx.m),
            'P' => Ok(self.ctx.p),
            'Q' => Ok(self.ctx.q),
            'T' => Ok(self.ctx.t),
            'U' => Ok(self.ctx.u),
            'V' => Ok(self.ctx.v),
            // real coefficients may also appear inside Re()/Im()
            'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' | 'H' => {
                Ok(C64::new(self.real_symbol(c)?, 0.0))
            }
            _ => Err(ExprError::UndefinedSymbol(c)),
        }
    }

    fn factor(&mut self) -> Result<f64, ExprError> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::Minus) => Ok(-self.factor()?),
            Some(Tok::Plus) => self.factor(),
            Some(Tok::Sym(c)) => self.real_symbol(c),
            Some(Tok::Re) | Some(Tok::Im) => {
                let is_re = self.toks[self.pos - 1] == Tok::Re;
                self.expect(Tok::Open)?;
                let sym = match self.bump() {
                    Some(Tok::Sym(c)) => c,
                    other => {
                        return Err(ExprError::Parse(
                            self.pos,
                            format!("expected symbol inside Re/Im, got {other:?}"),
                        ))
                    }
                };
                self.expect(Tok::Close)?;
                let z = self.complex_symbol(sym)?;
                Ok(if is_re { z.re } else { z.im })
            }
            Some(Tok::Open) => {
                let v = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(v)
            }
            other => Err(ExprError::Parse(self.pos, format!("unexpected {other:?}"))),
        }
    }

    fn term(&mut self) -> Result<f64, ExprError> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                Tok::Star => {
                    self.bump();
                    acc *= self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    acc /= self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<f64, ExprError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Tok::Plus => {
                    self.bump();
                    acc += self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

/// Evaluate an expression against a set of channel coefficients.
pub fn evaluate(src: &str, ctx: &Coefficients) -> Result<f64, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Parse(p.pos, "trailing tokens".into()));
    }
    Ok(v)
}
