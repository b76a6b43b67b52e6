//! The rational function field K = F_q(t₁,…,t_c) and its elements.

use super::fq::FiniteField;
use super::mpoly::{MPoly, Mono, MAXV};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// K = F_q(t₁,…,t_c); the variables form a p-basis of K over K^p.
#[derive(Debug, PartialEq, Eq)]
pub struct RationalField {
    fq: FiniteField,
    names: Vec<String>,
}

pub type KRef = Arc<RationalField>;

impl RationalField {
    pub fn new(fq: FiniteField, names: Vec<String>) -> Result<KRef> {
        if names.len() > MAXV {
            return Err(Error::input(format!("at most {MAXV} transcendentals supported")));
        }
        Ok(Arc::new(RationalField { fq, names }))
    }
    /// F_p(t₁..t_c) with the given variable names.
    pub fn with_names(p: u32, names: &[&str]) -> Result<KRef> {
        Self::new(FiniteField::prime(p)?, names.iter().map(|s| s.to_string()).collect())
    }
    pub fn fq(&self) -> &FiniteField {
        &self.fq
    }
    pub fn p(&self) -> u32 {
        self.fq.characteristic()
    }
    /// Transcendence degree c.
    pub fn c(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A generator t_i, or an F_q constant spelled `a<code>` as [`fmt_coeff`] prints it.
pub fn named_element(k: &KRef, name: &str) -> Option<RatFunc> {
    if let Some(i) = k.var_index(name) {
        return Some(RatFunc::var(k, i));
    }
    let code: u32 = name.strip_prefix('a')?.parse().ok()?;
    (k.fq().degree() > 1 && code < k.fq().size()).then(|| RatFunc::constant(k, code))
}

/// Element n/d of K, reduced with monic denominator.
#[derive(Clone)]
pub struct RatFunc {
    k: KRef,
    num: MPoly,
    den: MPoly,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}
impl Eq for RatFunc {}

impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl RatFunc {
    pub fn zero(k: &KRef) -> Self {
        RatFunc { k: k.clone(), num: MPoly::zero(), den: MPoly::one() }
    }
    pub fn one(k: &KRef) -> Self {
        Self::constant(k, 1)
    }
    pub fn constant(k: &KRef, c: u32) -> Self {
        RatFunc { k: k.clone(), num: MPoly::constant(c), den: MPoly::one() }
    }
    pub fn from_int(k: &KRef, n: i64) -> Self {
        Self::constant(k, k.fq.from_int(n))
    }
    pub fn var(k: &KRef, i: usize) -> Self {
        assert!(i < k.c(), "variable index out of range");
        RatFunc { k: k.clone(), num: MPoly::var(i), den: MPoly::one() }
    }
    pub fn from_poly(k: &KRef, num: MPoly) -> Self {
        RatFunc { k: k.clone(), num, den: MPoly::one() }
    }
    /// n/d reduced; panics on d = 0.
    pub fn from_parts(k: &KRef, num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { k: k.clone(), num, den };
        r.normalize();
        r
    }
    fn normalize(&mut self) {
        let f = &self.k.fq;
        if self.num.is_zero() {
            self.den = MPoly::one();
            return;
        }
        if !self.den.is_const() {
            let g = self.num.gcd(f, &self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(f, &g).expect("gcd divides numerator");
                self.den = self.den.div_exact(f, &g).expect("gcd divides denominator");
            }
        }
        let lc = self.den.lc();
        if lc != 1 {
            let i = f.inv(lc);
            self.num = self.num.scale(f, i);
            self.den = self.den.scale(f, i);
        }
    }

    pub fn field(&self) -> &KRef {
        &self.k
    }
    pub fn num(&self) -> &MPoly {
        &self.num
    }
    pub fn den(&self) -> &MPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    /// The F_q value if this is a constant.
    pub fn const_value(&self) -> Option<u32> {
        if self.den.is_one() {
            self.num.const_value()
        } else {
            None
        }
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    /// A rough size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len() - 1
            + (self.num.total_degree() + self.den.total_degree()) as usize
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.k.fq;
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(f, &o.num);
            if self.den.is_one() {
                return RatFunc { k: self.k.clone(), num, den: MPoly::one() };
            }
            return RatFunc::from_parts(&self.k, num, self.den.clone());
        }
        // reduce via gcd of denominators: a/(gb) + c/(gd) = (ad + cb)/(gbd)
        let g = self.den.gcd(f, &o.den);
        let b = self.den.div_exact(f, &g).unwrap();
        let d = o.den.div_exact(f, &g).unwrap();
        let num = self.num.mul(f, &d).add(f, &o.num.mul(f, &b));
        let den = self.den.mul(f, &d);
        RatFunc::from_parts(&self.k, num, den)
    }
    pub fn neg(&self) -> Self {
        RatFunc { k: self.k.clone(), num: self.num.neg(&self.k.fq), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.k.fq;
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(&self.k);
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { k: self.k.clone(), num: self.num.mul(f, &o.num), den: MPoly::one() };
        }
        if let Some(c) = self.const_value() {
            return o.scale(c);
        }
        if let Some(c) = o.const_value() {
            return self.scale(c);
        }
        let g1 = self.num.gcd(f, &o.den);
        let g2 = o.num.gcd(f, &self.den);
        let n1 = self.num.div_exact(f, &g1).unwrap();
        let d2 = o.den.div_exact(f, &g1).unwrap();
        let n2 = o.num.div_exact(f, &g2).unwrap();
        let d1 = self.den.div_exact(f, &g2).unwrap();
        let mut r = RatFunc { k: self.k.clone(), num: n1.mul(f, &n2), den: d1.mul(f, &d2) };
        let lc = r.den.lc();
        if lc != 1 {
            let i = f.inv(lc);
            r.num = r.num.scale(f, i);
            r.den = r.den.scale(f, i);
        }
        r
    }
    pub fn scale(&self, c: u32) -> Self {
        if c == 0 {
            return RatFunc::zero(&self.k);
        }
        RatFunc { k: self.k.clone(), num: self.num.scale(&self.k.fq, c), den: self.den.clone() }
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut r = RatFunc { k: self.k.clone(), num: self.den.clone(), den: self.num.clone() };
        let f = &self.k.fq;
        let lc = r.den.lc();
        if lc != 1 {
            let i = f.inv(lc);
            r.num = r.num.scale(f, i);
            r.den = r.den.scale(f, i);
        }
        Some(r)
    }
    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }
    pub fn pow(&self, e: u64) -> Self {
        let f = &self.k.fq;
        RatFunc { k: self.k.clone(), num: self.num.pow(f, e), den: self.den.pow(f, e) }
    }
    /// Integer power (negative allowed for nonzero elements).
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow((-e) as u64))
        }
    }
    /// a ↦ a^{p^k}.
    pub fn frobenius(&self, k: u32) -> Self {
        let f = &self.k.fq;
        RatFunc { k: self.k.clone(), num: self.num.frobenius(f, k), den: self.den.frobenius(f, k) }
    }

    /// Formal partial derivative ∂/∂t_i by the quotient rule.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let f = &self.k.fq;
        let dn = self.num.derivative(f, i);
        if self.den.is_const() {
            return RatFunc::from_parts(&self.k, dn, self.den.clone());
        }
        let dd = self.den.derivative(f, i);
        let num = dn.mul(f, &self.den).sub(f, &self.num.mul(f, &dd));
        RatFunc::from_parts(&self.k, num, self.den.mul(f, &self.den))
    }

    /// b with b^{p^k} = self when self ∈ K^{p^k}.
    ///
    /// Membership is decided by the vanishing of all partial derivatives (for k = 1);
    /// the root itself comes from dividing exponents and inverting Frobenius on F_q.
    pub fn pth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return Some(self.clone());
        }
        if k == 1 && (0..self.k.c()).any(|i| !self.partial_derivative(i).is_zero()) {
            return None;
        }
        let f = &self.k.fq;
        let n = self.num.frobenius_root(f, k)?;
        let d = self.den.frobenius_root(f, k)?;
        Some(RatFunc { k: self.k.clone(), num: n, den: d })
    }
    /// An l-th root for a prime l, if one exists (l = p is the p-th root).
    pub fn prime_root(&self, l: u32) -> Option<Self> {
        if l == self.k.p() {
            return self.pth_root(1);
        }
        let f = &self.k.fq;
        // den is monic, so its root (if any) is monic too
        let n = self.num.nth_root(f, l)?;
        let d = self.den.nth_root(f, l)?;
        Some(RatFunc::from_parts(&self.k, n, d))
    }
    pub fn is_pth_power(&self) -> bool {
        self.pth_root(1).is_some()
    }

    /// Components in the p^k-basis: self = Σ_e t^e · m_e^{p^k}, 0 ≤ e_i < p^k.
    ///
    /// Returned densely, indexed by the mixed-radix value of e (t₁ fastest).
    pub fn pbasis_components(&self, k: u32) -> Vec<RatFunc> {
        let c = self.k.c();
        let pk = self.k.p().pow(k) as usize;
        let size = pk.pow(c as u32);
        let f = &self.k.fq;
        let mut out = vec![RatFunc::zero(&self.k); size];
        if self.is_zero() {
            return out;
        }
        // self = num·den^{pk-1} / den^{pk}
        let big = if self.den.is_one() {
            self.num.clone()
        } else {
            self.num.mul(f, &self.den.pow(f, pk as u64 - 1))
        };
        let mut buckets: Vec<Vec<(Mono, u32)>> = vec![vec![]; size];
        for &(m, coef) in big.terms() {
            let mut idx = 0;
            let mut stride = 1;
            let mut root = Mono::ONE;
            for i in 0..c {
                let e = m.0[i] as usize;
                idx += (e % pk) * stride;
                stride *= pk;
                root.0[i] = (e / pk) as u16;
            }
            buckets[idx].push((root, f.frob_inv_k(coef, k)));
        }
        for (slot, terms) in out.iter_mut().zip(buckets) {
            if !terms.is_empty() {
                *slot = RatFunc::from_parts(&self.k, MPoly::from_terms(f, terms), self.den.clone());
            }
        }
        out
    }

    /// Substitute t_v ↦ t_v^k (used for flat towers t = s^p).
    pub fn inflate_var(&self, target: &KRef, v: usize, k: u16) -> Self {
        let f = &self.k.fq;
        RatFunc::from_parts(target, self.num.inflate_var(f, v, k), self.den.inflate_var(f, v, k))
    }
    /// Reinterpret in another field with identical variables layout.
    pub fn recast(&self, target: &KRef) -> Self {
        RatFunc { k: target.clone(), num: self.num.clone(), den: self.den.clone() }
    }

    /// Evaluate at a point of F_q^c; `None` if the denominator vanishes.
    pub fn eval(&self, pt: &[u32]) -> Option<u32> {
        let f = &self.k.fq;
        let d = self.den.eval(f, pt);
        if d == 0 {
            return None;
        }
        Some(f.div(self.num.eval(f, pt), d))
    }
}

fn fmt_poly(p: &MPoly, k: &RationalField, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(out, "0");
    }
    let f = &k.fq;
    for (idx, &(m, c)) in p.terms().iter().enumerate() {
        if idx > 0 {
            write!(out, " + ")?;
        }
        let mut parts: Vec<String> = Vec::new();
        if c != 1 || m == Mono::ONE {
            parts.push(fmt_coeff(f, c));
        }
        for (i, name) in k.names.iter().enumerate() {
            match m.0[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        write!(out, "{}", parts.join("*"))?;
    }
    Ok(())
}

/// F_q constants print as integers for prime fields and as `a<code>` for extensions.
pub fn fmt_coeff(f: &FiniteField, c: u32) -> String {
    if f.degree() == 1 {
        c.to_string()
    } else {
        format!("a{c}")
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = |p: &MPoly| p.len() > 1;
        if self.den.is_one() {
            return fmt_poly(&self.num, &self.k, out);
        }
        if multi(&self.num) {
            write!(out, "(")?;
            fmt_poly(&self.num, &self.k, out)?;
            write!(out, ")")?;
        } else {
            fmt_poly(&self.num, &self.k, out)?;
        }
        write!(out, "/(")?;
        fmt_poly(&self.den, &self.k, out)?;
        write!(out, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> KRef {
        RationalField::with_names(3, &["t1", "t2"]).unwrap()
    }

    #[test]
    fn pth_root_examples() {
        let k = k3();
        let t1 = RatFunc::var(&k, 0);
        let t2 = RatFunc::var(&k, 1);
        assert_eq!(t1.pow(3).pth_root(1), Some(t1.clone()));
        assert_eq!(t1.pth_root(1), None);
        // (t1^3 + t2^3)/t1^6 -> (t1 + t2)/t1^2
        let a = t1.pow(3).add(&t2.pow(3)).div(&t1.pow(6)).unwrap();
        let b = t1.add(&t2).div(&t1.pow(2)).unwrap();
        assert_eq!(a.pth_root(1), Some(b));
    }

    #[test]
    fn derivative_examples() {
        let k = RationalField::with_names(3, &["t1"]).unwrap();
        let t = RatFunc::var(&k, 0);
        assert_eq!(t.pow(2).partial_derivative(0), t.scale(2));
        assert!(t.pow(3).partial_derivative(0).is_zero());
        let inv = t.inv().unwrap();
        assert_eq!(inv.partial_derivative(0), t.pow(2).inv().unwrap().neg());
    }

    #[test]
    fn pbasis_components_reassemble() {
        let k = k3();
        let t1 = RatFunc::var(&k, 0);
        let t2 = RatFunc::var(&k, 1);
        let a = t1.pow(4).add(&t2.mul(&t1)).div(&t2.add(&RatFunc::one(&k))).unwrap();
        let comps = a.pbasis_components(1);
        let mut acc = RatFunc::zero(&k);
        for (idx, m) in comps.iter().enumerate() {
            let (e1, e2) = (idx % 3, idx / 3);
            let basis = t1.pow(e1 as u64).mul(&t2.pow(e2 as u64));
            acc = acc.add(&basis.mul(&m.frobenius(1)));
        }
        assert_eq!(acc, a);
    }
}
