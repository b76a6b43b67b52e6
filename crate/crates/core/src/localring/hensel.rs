//! Coprime factor lifting f = A·B in K[[S]][Y] with B monic.

use crate::basefield::upoly;
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries as TS;

/// Univariate polynomial in Y with K[[S]] coefficients, low degree first.
pub type SPoly = Vec<TS>;

fn trim(a: &mut SPoly) {
    while a.last().map(|c| c.is_zero_mod()).unwrap_or(false) {
        a.pop();
    }
}

fn add(a: &[TS], b: &[TS], k: &KRef, n: usize) -> SPoly {
    let len = a.len().max(b.len());
    let z = TS::zero(k, n);
    let mut out: SPoly = (0..len).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect();
    trim(&mut out);
    out
}

fn sub(a: &[TS], b: &[TS], k: &KRef, n: usize) -> SPoly {
    let nb: SPoly = b.iter().map(|c| c.neg()).collect();
    add(a, &nb, k, n)
}

fn mul(a: &[TS], b: &[TS], k: &KRef, n: usize) -> SPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![TS::zero(k, n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero_mod()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero_mod()) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Division by a monic polynomial.
fn divrem(a: &[TS], b: &[TS], k: &KRef, n: usize) -> (SPoly, SPoly) {
    let db = b.len() - 1;
    let mut r: SPoly = a.to_vec();
    trim(&mut r);
    let mut q = vec![TS::zero(k, n); r.len().saturating_sub(db)];
    while r.len() > db {
        let d = r.len() - 1;
        let c = r[d].clone();
        for (i, bi) in b.iter().enumerate().take(db) {
            r[d - db + i] = r[d - db + i].sub(&c.mul(bi));
        }
        q[d - db] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn constant_poly(a: &[RatFunc], n: usize) -> SPoly {
    a.iter().map(|c| TS::constant(c.clone(), n)).collect()
}

/// Data of a factorization f ≡ A₀·B₀ mod S with Bezout relation u₀A₀ + w₀B₀ = 1.
#[derive(Clone, Debug)]
pub struct HenselSeed {
    pub a0: Vec<RatFunc>,
    pub b0: Vec<RatFunc>,
    pub u0: Vec<RatFunc>,
    pub w0: Vec<RatFunc>,
}

impl HenselSeed {
    /// `f0` = f mod S, `b0` the chosen factor (made monic here).
    pub fn new(k: &KRef, f0: &[RatFunc], b0: &[RatFunc]) -> Result<Self> {
        let mut b0 = b0.to_vec();
        upoly::trim(&mut b0);
        let lc = b0.last().cloned().ok_or_else(|| Error::input("point factor is zero"))?;
        if b0.len() < 2 {
            return Err(Error::input("point factor must have positive degree"));
        }
        let ilc = lc.inv().ok_or_else(|| Error::input("cannot normalize leading coefficient"))?;
        let b0: Vec<RatFunc> = b0.iter().map(|c| c.mul(&ilc)).collect();
        let (a0, rem) = upoly::poly_divrem(k, f0, &b0);
        if !rem.is_empty() {
            return Err(Error::input("point factor does not divide the curve equation modulo S"));
        }
        let (g, s) = upoly::ext_gcd(k, &a0, &b0);
        if g.len() != 1 {
            return Err(Error::input("factors not coprime mod S"));
        }
        let gi = g[0].inv().expect("nonzero gcd");
        let s: Vec<RatFunc> = s.iter().map(|c| c.mul(&gi)).collect();
        let (_, u0) = upoly::poly_divrem(k, &s, &b0);
        // w₀ = (1 − u₀A₀)/B₀
        let one = vec![RatFunc::one(k)];
        let (w0, r) = upoly::poly_divrem(k, &upoly::poly_sub(&one, &upoly::poly_mul(k, &u0, &a0), k), &b0);
        debug_assert!(r.is_empty());
        Ok(HenselSeed { a0, b0, u0, w0 })
    }

    /// Lift to f = A·B mod S^n by quadratic Hensel steps; returns (A, B).
    pub fn lift(&self, k: &KRef, f: &[TS], n: usize) -> (SPoly, SPoly) {
        let mut a = constant_poly(&self.a0, n);
        let mut b = constant_poly(&self.b0, n);
        let mut u = constant_poly(&self.u0, n);
        let mut w = constant_poly(&self.w0, n);
        let one = vec![TS::one(k, n)];
        let mut done = 1;
        while done < n {
            done = (2 * done).min(n);
            // e = f − AB;  δB = (e·u) rem B,  δA = (e − A·δB) quo B
            let e = sub(f, &mul(&a, &b, k, n), k, n);
            let (_, db) = divrem(&mul(&e, &u, k, n), &b, k, n);
            let (da, _) = divrem(&sub(&e, &mul(&a, &db, k, n), k, n), &b, k, n);
            a = add(&a, &da, k, n);
            b = add(&b, &db, k, n);
            if done < n {
                // refresh the Bezout pair: u ← u(1−ε) rem B, w ← (1 − uA) quo B
                let eps = sub(&add(&mul(&u, &a, k, n), &mul(&w, &b, k, n), k, n), &one, k, n);
                let (_, u2) = divrem(&mul(&u, &sub(&one, &eps, k, n), k, n), &b, k, n);
                u = u2;
                w = divrem(&sub(&one, &mul(&u, &a, k, n), k, n), &b, k, n).0;
            }
        }
        (a, b)
    }
}

/// f − A·B as a polynomial in Y (for checking).
pub fn residual(k: &KRef, f: &[TS], a: &[TS], b: &[TS], n: usize) -> SPoly {
    sub(f, &mul(a, b, k, n), k, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    #[test]
    fn lifts_family_two() {
        // Y^{12} − tY^3 − (S^5 − S^3) over F_3(t), point Y^9 − t
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let n = 20;
        let mut f = vec![TS::zero(&k, n); 13];
        f[12] = TS::one(&k, n);
        f[3] = TS::constant(t.neg(), n);
        let mut c0 = TS::zero(&k, n);
        c0.set_coeff(5, RatFunc::from_int(&k, -1));
        c0.set_coeff(3, RatFunc::one(&k));
        f[0] = c0;
        let f0: Vec<RatFunc> = f.iter().map(|c| c.coeff(0).clone()).collect();
        let mut b0 = vec![RatFunc::zero(&k); 10];
        b0[9] = RatFunc::one(&k);
        b0[0] = t.neg();
        let seed = HenselSeed::new(&k, &f0, &b0).unwrap();
        assert_eq!(seed.a0.len(), 4);
        let (a, b) = seed.lift(&k, &f, n);
        assert!(residual(&k, &f, &a, &b, n).is_empty());
        assert_eq!(b.len(), 10);
        assert!(b[9].sub(&TS::one(&k, n)).is_zero_mod());
        // not coprime: Y^2 (Y − 1) with point Y
        let g0 = vec![RatFunc::zero(&k), RatFunc::zero(&k), RatFunc::from_int(&k, -1), RatFunc::one(&k)];
        let y = vec![RatFunc::zero(&k), RatFunc::one(&k)];
        assert!(HenselSeed::new(&k, &g0, &y).is_err());
    }
}
