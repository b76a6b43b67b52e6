//! Polynomial / rational expression parser.
//!
//! Grammar: `+ - * / ^ ( )`, integer literals and identifiers; no implicit
//! multiplication. The Unicode minus sign is accepted as `-`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let lit: String = chars[i..j].iter().map(|x| x.1).collect();
            let v = lit.parse::<i64>().map_err(|_| Error::Parse { pos, msg: "integer too large".into() })?;
            out.push((Tok::Int(v), pos));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            out.push((Tok::Ident(chars[i..j].iter().map(|x| x.1).collect()), pos));
            i = j;
        } else if "+-*/^()".contains(c) || c == '−' {
            out.push((Tok::Op(if c == '−' { '-' } else { c }), pos));
            i += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.end)
    }
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.i += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(lhs.into(), rhs.into());
                }
                Some(Tok::Op('/')) => {
                    let pos = self.pos();
                    self.i += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(lhs.into(), rhs.into(), pos);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(lhs),
            }
        }
    }
    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.i += 1;
                Ok(Expr::Neg(self.unary()?.into()))
            }
            Some(Tok::Op('+')) => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.i += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) if (0..=u32::MAX as i64).contains(&n) => {
                    self.i += 1;
                    Ok(Expr::Pow(base.into(), n as u32))
                }
                Some(Tok::Op('(')) => {
                    // allow ^(n)
                    self.i += 1;
                    let n = match self.peek().cloned() {
                        Some(Tok::Int(n)) => n,
                        _ => return self.err("expected non-negative integer exponent"),
                    };
                    self.i += 1;
                    if self.peek() != Some(&Tok::Op(')')) {
                        return self.err("expected ')'");
                    }
                    self.i += 1;
                    Ok(Expr::Pow(base.into(), n as u32))
                }
                _ => self.err("expected non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }
    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Var(s, pos))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, i: 0, end: s.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// A ring (or field) an expression can be evaluated in.
pub trait EvalTarget {
    type V: Clone;
    fn int(&self, n: i64) -> Self::V;
    fn var(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V, pos: usize) -> Result<Self::V>;
    fn pow(&self, a: &Self::V, e: u32) -> Self::V {
        let mut acc = self.int(1);
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub fn eval<T: EvalTarget>(e: &Expr, t: &T) -> Result<T::V> {
    Ok(match e {
        Expr::Int(n) => t.int(*n),
        Expr::Var(s, pos) => t.var(s, *pos)?,
        Expr::Neg(a) => t.neg(&eval(a, t)?),
        Expr::Add(a, b) => t.add(&eval(a, t)?, &eval(b, t)?),
        Expr::Sub(a, b) => t.sub(&eval(a, t)?, &eval(b, t)?),
        Expr::Mul(a, b) => t.mul(&eval(a, t)?, &eval(b, t)?),
        Expr::Div(a, b, pos) => t.div(&eval(a, t)?, &eval(b, t)?, *pos)?,
        Expr::Pow(a, n) => t.pow(&eval(a, t)?, *n),
    })
}
