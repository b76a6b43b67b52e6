//! Simple purely inseparable extensions K′ = K[ξ]/(ξ^p − x) and flat towers.

use super::ratfunc::{KRef, RatFunc, RationalField};
use super::upoly::ext_gcd;
use crate::error::{Error, Result};

/// K[ξ]/(ξ^p − x) for x ∉ K^p; elements are coefficient vectors of length p.
#[derive(Clone, Debug)]
pub struct SimpleInseparableExt {
    base: KRef,
    x: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    pub coeffs: Vec<RatFunc>,
}

/// Given K and a variable index i, the flat field K′ = F_q(…, s_i, …) with s_i^p = t_i.
pub fn flat_root_field(k: &KRef, i: usize) -> Result<KRef> {
    if i >= k.c() {
        return Err(Error::input("variable index out of range"));
    }
    let mut names: Vec<String> = k.names().to_vec();
    names[i] = root_name(&names[i]);
    RationalField::new(k.fq().clone(), names)
}

/// Name of the p-th root of a variable: `t` → `t_1`, `t_1` → `t_2`.
pub fn root_name(name: &str) -> String {
    if let Some((stem, lvl)) = name.rsplit_once('_') {
        if let Ok(n) = lvl.parse::<u32>() {
            return format!("{stem}_{}", n + 1);
        }
    }
    format!("{name}_1")
}

/// The embedding K → K′ of a flat tower step: t_i ↦ s_i^p.
pub fn embed_flat(a: &RatFunc, target: &KRef, i: usize) -> RatFunc {
    a.inflate_var(target, i, a.field().p() as u16)
}

impl SimpleInseparableExt {
    /// adjoin_pth_root: rejects x ∈ K^p.
    pub fn new(base: &KRef, x: RatFunc) -> Result<Self> {
        if x.is_pth_power() {
            return Err(Error::input(format!("{x} is a p-th power in K")));
        }
        Ok(SimpleInseparableExt { base: base.clone(), x })
    }
    pub fn base(&self) -> &KRef {
        &self.base
    }
    pub fn x(&self) -> &RatFunc {
        &self.x
    }
    pub fn degree(&self) -> usize {
        self.base.p() as usize
    }
    pub fn zero(&self) -> ExtElem {
        ExtElem { coeffs: vec![RatFunc::zero(&self.base); self.degree()] }
    }
    pub fn one(&self) -> ExtElem {
        self.from_base(RatFunc::one(&self.base))
    }
    pub fn xi(&self) -> ExtElem {
        let mut e = self.zero();
        e.coeffs[1 % self.degree()] = RatFunc::one(&self.base);
        e
    }
    pub fn from_base(&self, a: RatFunc) -> ExtElem {
        let mut e = self.zero();
        e.coeffs[0] = a;
        e
    }
    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect() }
    }
    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }
    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.degree();
        let mut out = self.zero();
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut t = ai.mul(bj);
                let mut k = i + j;
                if k >= p {
                    k -= p;
                    t = t.mul(&self.x);
                }
                out.coeffs[k] = out.coeffs[k].add(&t);
            }
        }
        out
    }
    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }

    /// Inverse via the norm: a^p = Σ a_i^p x^i lies in K, so a⁻¹ = a^{p−1}/a^p.
    pub fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let norm = self.frobenius_norm(a);
        let ninv = norm.inv()?;
        let mut acc = self.one();
        for _ in 1..self.degree() {
            acc = self.mul(&acc, a);
        }
        Some(ExtElem { coeffs: acc.coeffs.iter().map(|c| c.mul(&ninv)).collect() })
    }

    /// a^p ∈ K.
    pub fn frobenius_norm(&self, a: &ExtElem) -> RatFunc {
        let mut acc = RatFunc::zero(&self.base);
        let mut xi = RatFunc::one(&self.base);
        for c in &a.coeffs {
            acc = acc.add(&c.frobenius(1).mul(&xi));
            xi = xi.mul(&self.x);
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm in K[ξ] modulo ξ^p − x.
    pub fn inv_euclid(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let k = &self.base;
        let p = self.degree();
        let mut modulus = vec![RatFunc::zero(k); p + 1];
        modulus[0] = self.x.neg();
        modulus[p] = RatFunc::one(k);
        let (g, s) = ext_gcd(k, &a.coeffs, &modulus);
        // g is a nonzero constant because ξ^p − x is irreducible
        assert!(g.len() == 1, "ξ^p − x must be irreducible");
        let ginv = g[0].inv()?;
        let mut coeffs: Vec<RatFunc> = s.iter().map(|c| c.mul(&ginv)).collect();
        coeffs.resize(p, RatFunc::zero(k));
        Some(ExtElem { coeffs })
    }

    /// Index i when x = t_i, in which case K′ is isomorphic to a flat field.
    pub fn flat_index(&self) -> Option<usize> {
        (0..self.base.c()).find(|&i| self.x == RatFunc::var(&self.base, i))
    }

    /// Image of an element under K′ ≅ F_q(…, s_i, …), available when x = t_i.
    pub fn to_flat(&self, a: &ExtElem, flat: &KRef) -> Result<RatFunc> {
        let i = self.flat_index().ok_or_else(|| Error::unsupported("x is not a p-basis variable"))?;
        let s = RatFunc::var(flat, i);
        let mut acc = RatFunc::zero(flat);
        for (j, c) in a.coeffs.iter().enumerate() {
            acc = acc.add(&embed_flat(c, flat, i).mul(&s.pow(j as u64)));
        }
        Ok(acc)
    }

    /// Inverse of [`Self::to_flat`].
    pub fn from_flat(&self, a: &RatFunc, flat: &KRef) -> Result<ExtElem> {
        let i = self.flat_index().ok_or_else(|| Error::unsupported("x is not a p-basis variable"))?;
        from_flat_coords(a, &self.base, flat, i).map(|coeffs| ExtElem { coeffs })
    }
}

/// Write a ∈ K′ = F_q(…, s_i, …) as Σ_{j<p} a_j s_i^j with a_j ∈ K (t_i = s_i^p).
pub fn from_flat_coords(a: &RatFunc, base: &KRef, flat: &KRef, i: usize) -> Result<Vec<RatFunc>> {
    let f = flat.fq();
    let p = flat.p() as u64;
    // a = num·den^{p-1} / den^p and den^p ∈ K
    let den_p = a.den().frobenius(f, 1);
    let num = a.num().mul(f, &a.den().pow(f, p - 1));
    let deflate = |m: &super::mpoly::Mono, j_div: bool| {
        let mut m2 = *m;
        if j_div {
            m2.0[i] /= p as u16;
        }
        m2
    };
    let den_k = super::mpoly::MPoly::from_terms(f, den_p.terms().iter().map(|(m, c)| (deflate(m, true), *c)));
    let mut buckets: Vec<Vec<(super::mpoly::Mono, u32)>> = vec![vec![]; p as usize];
    for (m, c) in num.terms() {
        let j = (m.0[i] as u64 % p) as usize;
        let mut m2 = *m;
        m2.0[i] = (m2.0[i] as u64 / p) as u16;
        buckets[j].push((m2, *c));
    }
    Ok(buckets
        .into_iter()
        .map(|t| {
            RatFunc::from_parts(base, super::mpoly::MPoly::from_terms(f, t), den_k.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoin_examples() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let t = RatFunc::var(&k, 0);
        assert!(SimpleInseparableExt::new(&k, t.clone()).is_ok());
        assert!(SimpleInseparableExt::new(&k, t.pow(2)).is_ok());
        assert!(SimpleInseparableExt::new(&k, t.pow(3)).is_err());
    }

    #[test]
    fn inverse_and_flat_roundtrip() {
        let k = RationalField::with_names(3, &["t", "u"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let u = RatFunc::var(&k, 1);
        let e = SimpleInseparableExt::new(&k, t.clone()).unwrap();
        let a = ExtElem { coeffs: vec![u.clone(), t.add(&RatFunc::one(&k)), u.mul(&t)] };
        let ai = e.inv(&a).unwrap();
        assert_eq!(e.mul(&a, &ai), e.one());
        assert_eq!(e.inv_euclid(&a), Some(ai.clone()));
        let flat = flat_root_field(&k, 0).unwrap();
        assert_eq!(flat.names()[0], "t_1");
        let fa = e.to_flat(&a, &flat).unwrap();
        assert_eq!(e.from_flat(&fa, &flat).unwrap(), a);
        let fai = e.to_flat(&ai, &flat).unwrap();
        assert!(fa.mul(&fai).is_one());
    }
}
