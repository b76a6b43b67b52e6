//! Sparse multivariate polynomials over F_q in at most [`MAXV`] variables.
//!
//! Terms are kept sorted in decreasing graded-lex order with nonzero coefficients,
//! so structural equality is polynomial equality.

use super::fq::FiniteField;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAXV: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u16; MAXV]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAXV]);

    pub fn var(i: usize, e: u16) -> Mono {
        let mut m = [0; MAXV];
        m[i] = e;
        Mono(m)
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Mono(m)
    }
    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }
    pub fn div(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        Mono(m)
    }
    pub fn gcd_mono(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(m)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}
impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Mono, u32)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: vec![] }
    }
    pub fn one() -> Self {
        Self::constant(1)
    }
    pub fn constant(c: u32) -> Self {
        Self::monomial(Mono::ONE, c)
    }
    pub fn monomial(m: Mono, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }
    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i, 1), 1)
    }
    /// Build from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms(f: &FiniteField, terms: impl IntoIterator<Item = (Mono, u32)>) -> Self {
        let mut acc: HashMap<Mono, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        let mut terms: Vec<(Mono, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }
    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (Mono::ONE, 1)
    }
    pub fn is_const(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
    pub fn const_value(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if *m == Mono::ONE => Some(*c),
            _ => None,
        }
    }
    pub fn lt(&self) -> Option<&(Mono, u32)> {
        self.terms.first()
    }
    pub fn lc(&self) -> u32 {
        self.terms.first().map(|t| t.1).unwrap_or(0)
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0 .0[v] as u32).max().unwrap_or(0)
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0 .0[v] > 0)
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, f: &FiniteField, o: &MPoly) -> MPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { terms: out }
    }
    pub fn neg(&self, f: &FiniteField) -> MPoly {
        MPoly { terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect() }
    }
    pub fn sub(&self, f: &FiniteField, o: &MPoly) -> MPoly {
        self.add(f, &o.neg(f))
    }
    pub fn scale(&self, f: &FiniteField, c: u32) -> MPoly {
        if c == 0 {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }
    pub fn mul_term(&self, f: &FiniteField, m: &Mono, c: u32) -> MPoly {
        if c == 0 {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|&(n, a)| (n.mul(m), f.mul(a, c))).collect() }
    }
    pub fn mul(&self, f: &FiniteField, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.const_value() {
            return o.scale(f, c);
        }
        if let Some(c) = o.const_value() {
            return self.scale(f, c);
        }
        if o.terms.len() == 1 {
            return self.mul_term(f, &o.terms[0].0, o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(f, &self.terms[0].0, self.terms[0].1);
        }
        let mut acc: HashMap<Mono, u32> = HashMap::with_capacity(self.len() * o.len());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &o.terms {
                let e = acc.entry(m1.mul(&m2)).or_insert(0);
                *e = f.add(*e, f.mul(c1, c2));
            }
        }
        let mut terms: Vec<(Mono, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }
    pub fn pow(&self, f: &FiniteField, mut e: u64) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// Normalize to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, f: &FiniteField) -> MPoly {
        match self.lc() {
            0 | 1 => self.clone(),
            c => self.scale(f, f.inv(c)),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, f: &FiniteField, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.const_value() {
            return Some(self.scale(f, f.inv(c)));
        }
        if d.is_monomial() {
            let (dm, dc) = d.terms[0];
            let ic = f.inv(dc);
            let mut out = Vec::with_capacity(self.len());
            for &(m, c) in &self.terms {
                if !dm.divides(&m) {
                    return None;
                }
                out.push((m.div(&dm), f.mul(c, ic)));
            }
            return Some(MPoly { terms: out });
        }
        let (dm, dc) = d.terms[0];
        let ic = f.inv(dc);
        let mut rem = self.clone();
        let mut quo: Vec<(Mono, u32)> = Vec::new();
        while let Some(&(m, c)) = rem.lt() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = m.div(&dm);
            let qc = f.mul(c, ic);
            quo.push((qm, qc));
            rem = rem.sub(f, &d.mul_term(f, &qm, qc));
        }
        Some(MPoly::from_terms(f, quo))
    }

    pub fn derivative(&self, f: &FiniteField, v: usize) -> MPoly {
        let terms = self.terms.iter().filter(|t| t.0 .0[v] > 0).map(|&(m, c)| {
            let e = m.0[v];
            let mut m2 = m;
            m2.0[v] -= 1;
            (m2, f.mul(c, f.from_int(e as i64)))
        });
        MPoly::from_terms(f, terms)
    }

    /// Substitute x_v ↦ x_v^k (a flat rename of a variable by a power of itself).
    pub fn inflate_var(&self, f: &FiniteField, v: usize, k: u16) -> MPoly {
        MPoly::from_terms(
            f,
            self.terms.iter().map(|&(m, c)| {
                let mut m2 = m;
                m2.0[v] = m2.0[v].checked_mul(k).expect("exponent overflow");
                (m2, c)
            }),
        )
    }

    /// Frobenius: the p^k-th power, computed termwise.
    pub fn frobenius(&self, f: &FiniteField, k: u32) -> MPoly {
        let pk = f.characteristic().pow(k) as u16;
        let mut terms: Vec<(Mono, u32)> = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut m2 = m;
                for e in m2.0.iter_mut() {
                    *e = e.checked_mul(pk).expect("exponent overflow");
                }
                (m2, f.pow(c, pk as u64))
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    /// The p^k-th root if every exponent is divisible by p^k.
    pub fn frobenius_root(&self, f: &FiniteField, k: u32) -> Option<MPoly> {
        let pk = f.characteristic().pow(k) as u16;
        let mut terms = Vec::with_capacity(self.len());
        for &(m, c) in &self.terms {
            let mut m2 = m;
            for e in m2.0.iter_mut() {
                if *e % pk != 0 {
                    return None;
                }
                *e /= pk;
            }
            terms.push((m2, f.frob_inv_k(c, k)));
        }
        Some(MPoly::from_terms(f, terms))
    }

    /// g with g^l = self, for l prime to the characteristic.
    ///
    /// Terms of g are peeled off in decreasing order: if g' agrees with g in its
    /// leading terms, the leading term of self − g'^l is l·lt(g)^{l−1}·(next term).
    pub fn nth_root(&self, f: &FiniteField, l: u32) -> Option<MPoly> {
        assert!(l % f.characteristic() != 0, "use frobenius_root for p-th roots");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (m, c) = self.terms[0];
        if m.0.iter().any(|&e| e as u32 % l != 0) {
            return None;
        }
        let mut rm = m;
        for e in rm.0.iter_mut() {
            *e /= l as u16;
        }
        let rc = f.root(c, l)?;
        let mut g = MPoly::monomial(rm, rc);
        let lead_pow = MPoly::monomial(rm, rc).pow(f, l as u64 - 1).scale(f, f.from_int(l as i64));
        let (dm, dc) = lead_pow.terms[0];
        loop {
            let r = self.sub(f, &g.pow(f, l as u64));
            let Some(&(rm2, rc2)) = r.lt() else { return Some(g) };
            if !dm.divides(&rm2) {
                return None;
            }
            let hm = rm2.div(&dm);
            if hm >= *g.terms.last().map(|t| &t.0).unwrap() {
                return None;
            }
            g = g.add(f, &MPoly::monomial(hm, f.div(rc2, dc)));
        }
    }

    /// Evaluate with every variable replaced by an F_q value.
    pub fn eval(&self, f: &FiniteField, pt: &[u32]) -> u32 {
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let v = m.0.iter().enumerate().fold(c, |a, (i, &e)| {
                if e == 0 {
                    a
                } else {
                    f.mul(a, f.pow(pt[i], e as u64))
                }
            });
            f.add(acc, v)
        })
    }

    /// Dense coefficient vector of a polynomial in x_v alone.
    pub fn to_dense(&self, v: usize) -> Vec<u32> {
        let mut out = vec![0; self.degree_in(v) as usize + 1];
        for &(m, c) in &self.terms {
            out[m.0[v] as usize] = c;
        }
        out
    }
    pub fn from_dense(v: usize, cs: &[u32]) -> MPoly {
        let mut terms: Vec<(Mono, u32)> =
            cs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (Mono::var(v, e as u16), c)).collect();
        terms.reverse();
        MPoly { terms }
    }

    /// Coefficients of powers of x_v (each free of x_v).
    pub fn to_uni(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out: Vec<Vec<(Mono, u32)>> = vec![vec![]; d + 1];
        for &(m, c) in &self.terms {
            let k = m.0[v] as usize;
            let mut m2 = m;
            m2.0[v] = 0;
            out[k].push((m2, c));
        }
        out.into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: t }
            })
            .collect()
    }
    pub fn from_uni(f: &FiniteField, v: usize, cs: &[MPoly]) -> MPoly {
        let terms = cs.iter().enumerate().flat_map(|(k, c)| {
            c.terms.iter().map(move |&(m, a)| {
                let mut m2 = m;
                m2.0[v] = k as u16;
                (m2, a)
            })
        });
        MPoly::from_terms(f, terms)
    }

    fn mono_gcd(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = it.next().map(|t| t.0).unwrap_or(Mono::ONE);
        it.fold(first, |g, t| g.gcd_mono(&t.0))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &FiniteField, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.monic(f);
        }
        if o.is_zero() {
            return self.monic(f);
        }
        if self.is_const() || o.is_const() {
            return MPoly::one();
        }
        if self == o {
            return self.monic(f);
        }
        if self.is_monomial() || o.is_monomial() {
            let g = self.mono_gcd().gcd_mono(&o.mono_gcd());
            return MPoly::monomial(g, 1);
        }
        // strip common monomial content first: cheap and common
        let ma = self.mono_gcd();
        let mb = o.mono_gcd();
        let mg = ma.gcd_mono(&mb);
        let a = self.div_exact(f, &MPoly::monomial(ma, 1)).unwrap();
        let b = o.div_exact(f, &MPoly::monomial(mb, 1)).unwrap();
        let g = gcd_rec(f, &a, &b);
        g.mul_term(f, &mg, 1).monic(f)
    }
}

/// The variable of smallest positive degree, to keep remainder sequences short.
fn main_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..MAXV)
        .filter(|&v| a.uses_var(v) || b.uses_var(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
}

/// Sufficient test that a and b (as polynomials in x_v) have no common factor of
/// positive x_v-degree: some specialization of the other variables keeps both
/// leading coefficients nonzero and leaves coprime univariate images.  Points
/// are taken in a larger extension of the prime field when q = p.
fn coprime_in(f: &FiniteField, v: usize, ua: &[MPoly], ub: &[MPoly]) -> bool {
    let (Some(da), Some(db)) = (uni_deg(ua), uni_deg(ub)) else { return false };
    let big = eval_field(f);
    let g: &FiniteField = big.as_deref().unwrap_or(f);
    let others: Vec<usize> = (0..MAXV).filter(|&w| w != v).collect();
    let q = g.size() as u64;
    let mut pt = [0u32; MAXV];
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..12 {
        for &w in &others {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pt[w] = ((state >> 33) % q) as u32;
        }
        let ea: Vec<u32> = ua.iter().map(|c| c.eval(g, &pt)).collect();
        let eb: Vec<u32> = ub.iter().map(|c| c.eval(g, &pt)).collect();
        if ea[da] == 0 || eb[db] == 0 {
            continue;
        }
        return dense_gcd(g, &ea, &eb).len() == 1;
    }
    false
}

/// The largest F_{p^k} of table size, for prime fields (whose codes embed verbatim).
fn eval_field(f: &FiniteField) -> Option<Arc<FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FiniteField>>>> = OnceLock::new();
    if f.degree() != 1 {
        return None;
    }
    let p = f.characteristic();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    let entry = cache.entry(p).or_insert_with(|| {
        let mut k = 1;
        while p.pow(k + 1) <= super::fq::MAX_Q {
            k += 1;
        }
        Arc::new(FiniteField::new(p, k, None).expect("extension field"))
    });
    Some(entry.clone())
}

fn dense_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd of dense univariate polynomials over F_q (low degree first).
pub fn dense_gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    dense_trim(&mut a);
    dense_trim(&mut b);
    while !b.is_empty() {
        // a ← a mod b
        let db = b.len() - 1;
        let ilc = f.inv(b[db]);
        while a.len() > db {
            let da = a.len() - 1;
            let c = f.mul(a[da], ilc);
            for (i, &bc) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = f.sub(a[idx], f.mul(c, bc));
            }
            dense_trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let i = f.inv(lc);
        for c in a.iter_mut() {
            *c = f.mul(*c, i);
        }
    }
    a
}

fn content(f: &FiniteField, cs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(f, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uni_deg(a: &[MPoly]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(f: &FiniteField, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = uni_deg(b).expect("prem by zero");
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    while let Some(dr) = uni_deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(f, lb);
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + i;
            r[idx] = r[idx].sub(f, &bc.mul(f, &lr));
        }
        r.truncate(dr);
    }
    r.truncate(uni_deg(&r).map(|d| d + 1).unwrap_or(0));
    r
}

fn primitive(f: &FiniteField, a: &[MPoly]) -> Vec<MPoly> {
    let c = content(f, a);
    if c.is_one() || c.is_zero() {
        return a.to_vec();
    }
    a.iter().map(|x| x.div_exact(f, &c).expect("content divides")).collect()
}

fn gcd_rec(f: &FiniteField, a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_const() || b.is_const() {
        return if a.is_zero() {
            b.monic(f)
        } else if b.is_zero() {
            a.monic(f)
        } else {
            MPoly::one()
        };
    }
    let v = main_var(a, b).unwrap();
    if (0..MAXV).all(|w| w == v || (!a.uses_var(w) && !b.uses_var(w))) {
        return MPoly::from_dense(v, &dense_gcd(f, &a.to_dense(v), &b.to_dense(v)));
    }
    if !a.uses_var(v) {
        return a.gcd(f, &content(f, &b.to_uni(v)));
    }
    if !b.uses_var(v) {
        return b.gcd(f, &content(f, &a.to_uni(v)));
    }
    let ua = a.to_uni(v);
    let ub = b.to_uni(v);
    let ca = content(f, &ua);
    let cb = content(f, &ub);
    let gc = ca.gcd(f, &cb);
    if coprime_in(f, v, &ua, &ub) {
        return gc;
    }
    let mut pa = primitive(f, &ua);
    let mut pb = primitive(f, &ub);
    if uni_deg(&pa) < uni_deg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    while uni_deg(&pb).is_some() {
        let r = prem(f, &pa, &pb);
        pa = pb;
        pb = if r.is_empty() { r } else { primitive(f, &r) };
    }
    let g = MPoly::from_uni(f, v, &primitive(f, &pa));
    g.mul(f, &gc).monic(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::prime(3).unwrap()
    }

    fn poly(f: &FiniteField, t: &[([u16; 2], i64)]) -> MPoly {
        MPoly::from_terms(f, t.iter().map(|&(e, c)| (Mono([e[0], e[1], 0, 0]), f.from_int(c))))
    }

    #[test]
    fn gcd_of_products() {
        let f = f3();
        let a = poly(&f, &[([1, 0], 1), ([0, 1], 1)]); // t1 + t2
        let b = poly(&f, &[([2, 0], 1), ([0, 0], 1)]); // t1^2 + 1
        let c = poly(&f, &[([1, 1], 1), ([0, 0], 2)]); // t1 t2 + 2
        let x = a.mul(&f, &b);
        let y = a.mul(&f, &c);
        assert_eq!(x.gcd(&f, &y), a.monic(&f));
        assert_eq!(b.gcd(&f, &c), MPoly::one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let f = f3();
        let a = poly(&f, &[([3, 1], 1), ([1, 0], 2), ([0, 0], 1)]);
        let b = poly(&f, &[([1, 2], 2), ([0, 1], 1)]);
        let ab = a.mul(&f, &b);
        assert_eq!(ab.div_exact(&f, &b), Some(a.clone()));
        assert_eq!(a.div_exact(&f, &b), None);
    }

    #[test]
    fn nth_roots() {
        let f = f3();
        let a = poly(&f, &[([1, 1], 2), ([0, 2], 1), ([0, 0], 1)]);
        assert_eq!(a.pow(&f, 2).nth_root(&f, 2).map(|g| g.pow(&f, 2)), Some(a.pow(&f, 2)));
        assert_eq!(a.nth_root(&f, 2), None);
        assert_eq!(poly(&f, &[([2, 0], 2)]).nth_root(&f, 2), None);
    }

    #[test]
    fn frobenius_root_inverts_frobenius() {
        let f = f3();
        let a = poly(&f, &[([1, 1], 2), ([0, 2], 1)]);
        let ap = a.frobenius(&f, 1);
        assert_eq!(ap, a.pow(&f, 3));
        assert_eq!(ap.frobenius_root(&f, 1), Some(a));
    }
}
