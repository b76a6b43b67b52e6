//! Finite fields F_q, q = p^e, with table-driven arithmetic.
//!
//! Elements are `u32` in `0..q`; the integer encodes the coefficient vector of a
//! polynomial over F_p in base p (constant term in the lowest digit).

use crate::error::{Error, Result};

/// Largest supported field size (the addition table is q^2 entries for e > 1).
pub const MAX_Q: u32 = 1 << 10;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus over F_p, low degree first (length e+1).
    modulus: Vec<u32>,
    add_t: Vec<u32>,
    neg_t: Vec<u32>,
    exp_t: Vec<u32>,
    log_t: Vec<u32>,
    frob_inv_t: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// --- tiny dense polynomial helpers over F_p (low degree first) ---

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pmod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv_lc % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = k - dm + i;
            r[idx] = (r[idx] + p * p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn pmul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(&mut r);
    r
}

fn pgcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = pmod(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut bb = (b % p) as u64;
    let pp = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % pp;
        }
        bb = bb * bb % pp;
        e >>= 1;
    }
    b = r as u32;
    b
}

/// x^(p^k) mod m, computed by repeated p-th powering.
fn x_pow_pk(m: &[u32], p: u32, k: u32) -> Vec<u32> {
    let mut r = vec![0, 1];
    for _ in 0..k {
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = pmod(&pmul(&acc, &r, p), m, p);
        }
        r = acc;
    }
    pmod(&r, m, p)
}

/// Rabin's irreducibility test for a monic polynomial of degree e over F_p.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = (m.len() - 1) as u32;
    if e == 0 || m[e as usize] != 1 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let sub_x = |mut v: Vec<u32>| {
        v.resize(v.len().max(2), 0);
        v[1] = (v[1] + p - 1) % p;
        trim(&mut v);
        v
    };
    if !sub_x(x_pow_pk(m, p, e)).is_empty() {
        return false;
    }
    let primes: Vec<u32> = (2..=e).filter(|&r| e % r == 0 && is_prime(r)).collect();
    for r in primes {
        let h = sub_x(x_pow_pk(m, p, e / r));
        let g = pgcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// F_{p^e}; when `modulus` is absent the lexicographically first monic irreducible is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::input("extension degree must be positive"));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::input(format!("field size {p}^{e} too large")))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::input("modulus has wrong degree or coefficients"));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::input("modulus is not irreducible over F_p"));
                }
                m
            }
            None => (0..p.pow(e))
                .map(|code| {
                    let mut m: Vec<u32> = (0..e).map(|i| code / p.pow(i) % p).collect();
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        let digits = |a: u32| -> Vec<u32> { (0..e).map(|i| a / p.pow(i) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let mut add_t = vec![0u32; if e > 1 { (q * q) as usize } else { 0 }];
        let mut neg_t = vec![0u32; q as usize];
        for a in 0..q {
            let da = digits(a);
            neg_t[a as usize] = encode(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
            for b in (0..q).filter(|_| e > 1) {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add_t[(a * q + b) as usize] = encode(&s);
            }
        }
        let mulpoly = |a: u32, b: u32| -> u32 {
            let mut r = pmul(&digits(a), &digits(b), p);
            r = pmod(&r, &modulus, p);
            r.resize(e as usize, 0);
            encode(&r)
        };
        // primitive element search
        let mut exp_t = vec![0u32; q as usize];
        let mut log_t = vec![0u32; q as usize];
        'search: for g in 1..q {
            let mut x = 1u32;
            let mut seen = vec![false; q as usize];
            for i in 0..q - 1 {
                if seen[x as usize] {
                    continue 'search;
                }
                seen[x as usize] = true;
                exp_t[i as usize] = x;
                log_t[x as usize] = i;
                x = mulpoly(x, g);
            }
            if x == 1 {
                break;
            }
        }
        let mut f = FiniteField { p, e, q, modulus, add_t, neg_t, exp_t, log_t, frob_inv_t: vec![] };
        let pe1 = p.pow(e - 1);
        f.frob_inv_t = (0..q).map(|a| f.pow(a, pe1 as u64)).collect();
        Ok(f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn size(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            self.add_t[(a * self.q + b) as usize]
        }
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            self.neg_t[a as usize]
        }
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let l = (self.log_t[a as usize] + self.log_t[b as usize]) % (self.q - 1);
        self.exp_t[l as usize]
    }
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_q");
        let l = (self.q - 1 - self.log_t[a as usize]) % (self.q - 1);
        self.exp_t[l as usize]
    }
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log_t[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp_t[l as usize]
    }
    /// a ↦ a^p.
    pub fn frob(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }
    /// Inverse Frobenius a ↦ a^{p^{e-1}}.
    pub fn frob_inv(&self, a: u32) -> u32 {
        self.frob_inv_t[a as usize]
    }
    /// Inverse of the k-fold Frobenius.
    pub fn frob_inv_k(&self, mut a: u32, k: u32) -> u32 {
        for _ in 0..(k % self.e) {
            a = self.frob_inv(a);
        }
        a
    }
    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        // digit 0 of the encoding is the prime-field component
        n.rem_euclid(self.p as i64) as u32
    }
    /// Primitive element (generator of the multiplicative group).
    pub fn generator(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp_t[1]
        }
    }
    /// Some k-th root of a, if one exists in F_q.
    pub fn root(&self, a: u32, k: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        (1..self.q).find(|&b| self.pow(b, k as u64) == a)
    }
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.frob_inv(3), 3);
    }

    #[test]
    fn extension_field_is_a_field() {
        let f = FiniteField::new(3, 2, None).unwrap();
        assert_eq!(f.size(), 9);
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.frob(f.frob_inv(a)), a);
        }
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn rabin_rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(FiniteField::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FiniteField::new(2, 2, Some(vec![1, 1, 1])).is_ok());
        assert!(FiniteField::new(4, 1, None).is_err());
    }
}
