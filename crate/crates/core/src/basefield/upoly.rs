//! Dense univariate polynomials over K, low degree first.

use super::ratfunc::{KRef, RatFunc};

pub fn trim(a: &mut Vec<RatFunc>) {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
}

pub fn poly_divrem(k: &KRef, a: &[RatFunc], b: &[RatFunc]) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let ilc = b[db].inv().expect("nonzero leading coefficient");
    let mut q = vec![RatFunc::zero(k); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let d = r.len() - 1;
        let c = r[d].mul(&ilc);
        for (i, bi) in b.iter().enumerate() {
            r[d - db + i] = r[d - db + i].sub(&c.mul(bi));
        }
        q[d - db] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

pub fn poly_mul(k: &KRef, a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![RatFunc::zero(k); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

pub fn poly_sub(a: &[RatFunc], b: &[RatFunc], k: &KRef) -> Vec<RatFunc> {
    let n = a.len().max(b.len());
    let mut out: Vec<RatFunc> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| RatFunc::zero(k));
            let y = b.get(i).cloned().unwrap_or_else(|| RatFunc::zero(k));
            x.sub(&y)
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns (g, s) with g = gcd(a, m) and s·a ≡ g mod m.
pub fn ext_gcd(k: &KRef, a: &[RatFunc], m: &[RatFunc]) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<RatFunc> = vec![];
    let mut s1: Vec<RatFunc> = vec![RatFunc::one(k)];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(k, &r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(k, &q, &s1), k);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}
