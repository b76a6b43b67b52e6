//! Polynomials over K in the variables S, T₁, …, T_m (exponent slot 0 is S).

use crate::basefield::parse::{self, EvalTarget};
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    k: KRef,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl KPoly {
    pub fn zero(k: &KRef, nvars: usize) -> Self {
        KPoly { k: k.clone(), nvars, terms: BTreeMap::new() }
    }
    pub fn constant(c: RatFunc, nvars: usize) -> Self {
        Self::term(c, vec![0; nvars])
    }
    pub fn term(c: RatFunc, exps: Vec<u32>) -> Self {
        let mut p = Self::zero(c.field(), exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }
    /// Variable `i` (0 = S).
    pub fn var(k: &KRef, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(RatFunc::one(k), e)
    }

    pub fn field(&self) -> &KRef {
        &self.k
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.terms.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }
    pub fn coeff(&self, exps: &[u32]) -> RatFunc {
        self.terms.get(exps).cloned().unwrap_or_else(|| RatFunc::zero(&self.k))
    }

    fn add_term(&mut self, e: Vec<u32>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
    pub fn neg(&self) -> Self {
        KPoly { k: self.k.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut r = Self::zero(&self.k, self.nvars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x.mul(c));
        }
        r
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(&self.k, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }
    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::constant(RatFunc::one(&self.k), self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Split by the exponent of variable `v`: coefficient polynomials of v^0, v^1, ….
    pub fn collect_in(&self, v: usize) -> Vec<KPoly> {
        let mut out = vec![Self::zero(&self.k, self.nvars); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] = 0;
            out[e[v] as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Same polynomial in a ring with more (trailing) variables.
    pub fn widen(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (e2, c.clone())
            })
            .collect();
        KPoly { k: self.k.clone(), nvars, terms }
    }

    /// Map coefficients into another field.
    pub fn map_coeffs(&self, k: &KRef, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut r = Self::zero(k, self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Parse with the given variable names (first one is S); other identifiers
    /// must be generators of K.
    pub fn parse(k: &KRef, names: &[&str], s: &str) -> Result<Self> {
        let ev = KPolyEval { k, names };
        parse::eval(&parse::parse_expr(s)?, &ev)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Shown { p: self, names }
    }
}

struct Shown<'a> {
    p: &'a KPoly,
    names: &'a [String],
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.p.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { self.names[i].clone() } else { format!("{}^{x}", self.names[i]) })
                .collect();
            let cs = c.to_string();
            let cs = if cs.contains(['+', ' ', '/']) { format!("({cs})") } else { cs };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{cs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

struct KPolyEval<'a> {
    k: &'a KRef,
    names: &'a [&'a str],
}

impl EvalTarget for KPolyEval<'_> {
    type V = KPoly;
    fn int(&self, n: i64) -> KPoly {
        KPoly::constant(RatFunc::from_int(self.k, n), self.names.len())
    }
    fn var(&self, name: &str, pos: usize) -> Result<KPoly> {
        let nv = self.names.len();
        if let Some(i) = self.names.iter().position(|&x| x == name) {
            return Ok(KPoly::var(self.k, nv, i));
        }
        crate::basefield::ratfunc::named_element(self.k, name)
            .map(|c| KPoly::constant(c, nv))
            .ok_or_else(|| Error::Parse { pos, msg: format!("unknown variable '{name}'") })
    }
    fn add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a.add(b)
    }
    fn sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a.sub(b)
    }
    fn mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a.mul(b)
    }
    fn neg(&self, a: &KPoly) -> KPoly {
        a.neg()
    }
    fn div(&self, a: &KPoly, b: &KPoly, pos: usize) -> Result<KPoly> {
        let zero = vec![0; self.names.len()];
        let c = match b.terms.len() {
            1 if b.terms.contains_key(&zero) => b.terms[&zero].clone(),
            _ => return Err(Error::Parse { pos, msg: "only division by elements of K is allowed".into() }),
        };
        Ok(a.scale(&c.inv().expect("nonzero")))
    }
    fn pow(&self, a: &KPoly, e: u32) -> KPoly {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    #[test]
    fn parse_and_collect() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let p = KPoly::parse(&k, &["S", "T"], "T^9 - t - S^2").unwrap();
        assert_eq!(p.degree_in(1), 9);
        let cs = p.collect_in(1);
        assert_eq!(cs.len(), 10);
        assert_eq!(cs[9], KPoly::constant(RatFunc::one(&k), 2));
        assert!(KPoly::parse(&k, &["S", "T"], "T/S").is_err());
        assert_eq!(KPoly::parse(&k, &["S", "T"], "(T - t)^3").unwrap(), KPoly::parse(&k, &["S", "T"], "T^3 - t^3").unwrap());
        let names: Vec<String> = vec!["S".into(), "T".into()];
        assert_eq!(p.display_with(&names).to_string(), "2*S^2 + T^9 + 2*t");
    }
}
