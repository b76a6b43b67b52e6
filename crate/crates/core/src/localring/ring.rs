//! R = K[[S]][T₁,…,T_m]/(P₁,…,P_m) realized at a fixed S-adic precision N, as
//! the free K[[S]]-module on the monomials T^b, 0 ≤ b_i < d_i.
//!
//! Coordinates are indexed in mixed radix with T₁ fastest, so the part of an
//! element that lives in levels ≤ l is a contiguous block of d₁⋯d_l coordinates.

use super::kpoly::KPoly;
use crate::basefield::linalg::Echelon;
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries as TS, Val};
use std::collections::HashMap;
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    c: Vec<TS>,
}

impl Elem {
    pub fn coords(&self) -> &[TS] {
        &self.c
    }
    pub fn coord(&self, b: usize) -> &TS {
        &self.c[b]
    }
    pub fn into_coords(self) -> Vec<TS> {
        self.c
    }
    pub fn precision(&self) -> usize {
        self.c.iter().map(|s| s.precision()).min().unwrap_or(0)
    }
    /// Zero modulo S^N in every coordinate.
    pub fn is_zero_mod(&self) -> bool {
        self.c.iter().all(|s| s.is_zero_mod())
    }
    /// Constant terms of the coordinates (the residue in L, as a K-vector).
    pub fn residue_vector(&self) -> Vec<RatFunc> {
        self.c.iter().map(|s| s.coeff(0).clone()).collect()
    }
}

#[derive(Debug)]
pub struct Ring {
    k: KRef,
    degrees: Vec<usize>,
    sizes: Vec<usize>,
    prec: usize,
    /// tails[i]: T_{i+1}^{d_{i+1}} = Σ_j tails[i][j]·(j-th monomial of levels ≤ i+1).
    tails: Vec<Vec<TS>>,
    frob: OnceLock<Vec<Elem>>,
}

impl Clone for Ring {
    fn clone(&self) -> Self {
        Ring {
            k: self.k.clone(),
            degrees: self.degrees.clone(),
            sizes: self.sizes.clone(),
            prec: self.prec,
            tails: self.tails.clone(),
            frob: OnceLock::new(),
        }
    }
}

fn block_is_zero(x: &[TS]) -> bool {
    x.iter().all(|s| s.is_zero_mod())
}

fn add_into(acc: &mut [TS], x: &[TS]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero_mod() {
            *a = a.add(b);
        }
    }
}

impl Ring {
    pub fn new(k: &KRef, degrees: Vec<usize>, tails: Vec<Vec<TS>>, prec: usize) -> Result<Self> {
        if degrees.len() != tails.len() {
            return Err(Error::presentation("one relation per generator is required"));
        }
        let mut sizes = vec![1usize];
        for &d in &degrees {
            if d == 0 {
                return Err(Error::presentation("relation of degree 0"));
            }
            sizes.push(sizes.last().unwrap() * d);
        }
        let mut tt = Vec::with_capacity(tails.len());
        for (i, t) in tails.into_iter().enumerate() {
            if t.len() != sizes[i + 1] {
                return Err(Error::presentation(format!("relation {} has the wrong number of coefficients", i + 1)));
            }
            if t.iter().any(|s| s.precision() < prec) {
                return Err(Error::precision(prec, "relation known to lower precision"));
            }
            tt.push(t.into_iter().map(|s| s.truncate(prec)).collect());
        }
        Ok(Ring { k: k.clone(), degrees, sizes, prec, tails: tt, frob: OnceLock::new() })
    }

    pub fn field(&self) -> &KRef {
        &self.k
    }
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
    pub fn m(&self) -> usize {
        self.degrees.len()
    }
    /// D = d₁⋯d_m = [L:K].
    pub fn rank(&self) -> usize {
        *self.sizes.last().unwrap()
    }
    pub fn precision(&self) -> usize {
        self.prec
    }
    pub fn tails(&self) -> &[Vec<TS>] {
        &self.tails
    }
    /// Coefficients of the relation of T_{i+1} as an element of the ring of levels ≤ i+1.
    pub fn tail_block(&self, i: usize, j: usize) -> &[TS] {
        let b = self.sizes[i];
        &self.tails[i][j * b..(j + 1) * b]
    }

    /// The same presentation at a lower precision.
    pub fn truncated(&self, n: usize) -> Ring {
        assert!(n <= self.prec);
        Ring {
            k: self.k.clone(),
            degrees: self.degrees.clone(),
            sizes: self.sizes.clone(),
            prec: n,
            tails: self.tails.iter().map(|t| t.iter().map(|s| s.truncate(n)).collect()).collect(),
            frob: OnceLock::new(),
        }
    }
    /// The ring generated by the first `l` variables.
    pub fn sub_ring(&self, l: usize) -> Ring {
        Ring {
            k: self.k.clone(),
            degrees: self.degrees[..l].to_vec(),
            sizes: self.sizes[..=l].to_vec(),
            prec: self.prec,
            tails: self.tails[..l].to_vec(),
            frob: OnceLock::new(),
        }
    }
    /// R/(S) = L, represented as the ring at precision 1.
    pub fn residue_ring(&self) -> Ring {
        self.truncated(1)
    }

    pub fn index(&self, b: &[usize]) -> usize {
        let mut idx = 0;
        for i in (0..self.m()).rev() {
            idx = idx * self.degrees[i] + b[i];
        }
        idx
    }
    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|&d| {
                let e = idx % d;
                idx /= d;
                e
            })
            .collect()
    }

    pub fn zero(&self) -> Elem {
        Elem { c: vec![TS::zero(&self.k, self.prec); self.rank()] }
    }
    pub fn one(&self) -> Elem {
        self.constant(RatFunc::one(&self.k))
    }
    pub fn constant(&self, c: RatFunc) -> Elem {
        self.from_series(TS::constant(c, self.prec))
    }
    pub fn from_series(&self, s: TS) -> Elem {
        let mut e = self.zero();
        e.c[0] = s.truncate(self.prec);
        e
    }
    /// The basis monomial with index `b`.
    pub fn monomial(&self, b: usize) -> Elem {
        let mut e = self.zero();
        e.c[b] = TS::one(&self.k, self.prec);
        e
    }
    /// T_{i+1}.
    pub fn var(&self, i: usize) -> Elem {
        let mut b = vec![0; self.m()];
        if self.degrees[i] == 1 {
            // T_{i+1} equals its tail
            return Elem { c: self.embed_block(i + 1, self.tail_block(i, 0)) };
        }
        b[i] = 1;
        self.monomial(self.index(&b))
    }
    pub fn s_power(&self, j: usize) -> Elem {
        self.from_series(TS::monomial(RatFunc::one(&self.k), j, self.prec))
    }
    /// The element as a polynomial in (S, T₁, …, T_m), truncated at the ring's precision.
    pub fn to_poly(&self, e: &Elem) -> KPoly {
        let mut out = KPoly::zero(&self.k, self.m() + 1);
        for (j, s) in e.coords().iter().enumerate() {
            let b = self.exponents(j);
            for (a, c) in s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut ex = vec![a as u32];
                ex.extend(b.iter().map(|&x| x as u32));
                out = out.add(&KPoly::term(c.clone(), ex));
            }
        }
        out
    }
    pub fn from_coords(&self, c: Vec<TS>) -> Elem {
        assert_eq!(c.len(), self.rank());
        Elem { c }
    }
    /// An element of L = K-vector of residues, lifted with zero higher coefficients.
    pub fn lift(&self, l: &Elem) -> Elem {
        self.lift_vector(&l.residue_vector())
    }
    pub fn lift_vector(&self, v: &[RatFunc]) -> Elem {
        Elem { c: v.iter().map(|x| TS::constant(x.clone(), self.prec)).collect() }
    }

    fn embed_block(&self, l: usize, x: &[TS]) -> Vec<TS> {
        let mut c = vec![TS::zero(&self.k, self.prec); self.rank()];
        c[..self.sizes[l]].clone_from_slice(&x[..self.sizes[l]]);
        c
    }
    /// An element of the ring of the first `l` variables, viewed in R.
    pub fn embed_from(&self, l: usize, e: &Elem) -> Elem {
        Elem { c: self.embed_block(l, &e.c) }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem { c: a.c.iter().zip(&b.c).map(|(x, y)| x.add(y)).collect() }
    }
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem { c: a.c.iter().zip(&b.c).map(|(x, y)| x.sub(y)).collect() }
    }
    pub fn neg(&self, a: &Elem) -> Elem {
        Elem { c: a.c.iter().map(|x| x.neg()).collect() }
    }
    pub fn scale(&self, a: &Elem, c: &RatFunc) -> Elem {
        Elem { c: a.c.iter().map(|x| x.scale(c)).collect() }
    }
    pub fn mul_series(&self, a: &Elem, s: &TS) -> Elem {
        Elem { c: a.c.iter().map(|x| if x.is_zero_mod() { x.truncate(s.precision()) } else { x.mul(s) }).collect() }
    }
    /// Multiply by S^j, keeping precision N.
    pub fn mul_s(&self, a: &Elem, j: usize) -> Elem {
        Elem { c: a.c.iter().map(|x| x.shift_up(j).truncate(self.prec.max(x.precision()))).collect() }
    }
    /// Divide by S^j (exact division; precision drops by j).
    pub fn div_s(&self, a: &Elem, j: usize) -> Result<Elem> {
        Ok(Elem { c: a.c.iter().map(|x| x.shift_down(j)).collect::<Result<_>>()? })
    }
    /// Restore an element of lower precision to length N, padding with zeros.
    /// Only meaningful when the caller knows the padded coefficients.
    pub fn pad(&self, a: &Elem) -> Elem {
        Elem { c: a.c.iter().map(|x| TS::from_coeffs(&self.k, x.coeffs().to_vec(), self.prec)).collect() }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem { c: self.mul_lvl(self.m(), &a.c, &b.c) }
    }

    fn mul_lvl(&self, l: usize, a: &[TS], b: &[TS]) -> Vec<TS> {
        if l == 0 {
            return vec![a[0].mul(&b[0])];
        }
        let bs = self.sizes[l - 1];
        let d = self.degrees[l - 1];
        let n = a[0].precision().min(b[0].precision());
        let zero_block = || vec![TS::zero(&self.k, n); bs];
        let mut prod: Vec<Vec<TS>> = (0..2 * d - 1).map(|_| zero_block()).collect();
        for i in 0..d {
            let ai = &a[i * bs..(i + 1) * bs];
            if block_is_zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * bs..(j + 1) * bs];
                if block_is_zero(bj) {
                    continue;
                }
                let x = self.mul_lvl(l - 1, ai, bj);
                add_into(&mut prod[i + j], &x);
            }
        }
        for e in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[e], zero_block());
            if block_is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let t = self.tail_block(l - 1, j);
                if block_is_zero(t) {
                    continue;
                }
                let x = self.mul_lvl(l - 1, &c, t);
                add_into(&mut prod[e - d + j], &x);
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
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

    fn frob_table(&self) -> &[Elem] {
        self.frob.get_or_init(|| {
            let p = self.k.p() as u64;
            (0..self.rank()).map(|b| self.pow(&self.monomial(b), p)).collect()
        })
    }

    /// a^p = Σ_b c_b(S)^p·(T^b)^p, using a table of reduced (T^b)^p.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        let table = self.frob_table();
        let mut acc = self.zero();
        for (c, fb) in a.c.iter().zip(table) {
            if c.is_zero_mod() {
                continue;
            }
            let cp = c.frobenius(1).truncate(self.prec);
            acc = self.add(&acc, &self.mul_series(fb, &cp));
        }
        acc
    }
    /// a^{p^k}.
    pub fn frobenius_pow(&self, a: &Elem, k: u32) -> Elem {
        (0..k).fold(a.clone(), |x, _| self.frobenius(&x))
    }

    pub fn valuation(&self, a: &Elem) -> Val {
        a.c.iter().map(|s| s.valuation()).fold(Val::AtLeast(a.precision()), Val::min)
    }
    /// Valuation v and the residue of a/S^v in L.
    pub fn lead(&self, a: &Elem) -> Result<(usize, Elem)> {
        let v = self.valuation(a).exact("element")?;
        let c = a.c.iter().map(|s| TS::constant(s.coeff(v).clone(), 1)).collect();
        Ok((v, Elem { c }))
    }
    /// Image in L (an element at precision 1).
    pub fn residue(&self, a: &Elem) -> Elem {
        Elem { c: a.c.iter().map(|s| s.truncate(1)).collect() }
    }

    /// K[[S]]-matrix of multiplication by a: column b holds the coordinates of a·T^b.
    pub fn mul_matrix(&self, a: &Elem) -> Vec<Vec<TS>> {
        let d = self.rank();
        let cols: Vec<Elem> = (0..d).map(|b| self.mul(a, &self.monomial(b))).collect();
        (0..d).map(|i| cols.iter().map(|col| col.c[i].clone()).collect()).collect()
    }

    /// Inverse in L; `self` should be a residue ring (precision 1).
    pub fn residue_inverse(&self, a: &Elem) -> Option<Elem> {
        let l = self.residue_ring();
        let a = l.residue(a);
        let cols: Vec<Vec<RatFunc>> = (0..l.rank()).map(|b| l.mul(&a, &l.monomial(b)).residue_vector()).collect();
        let d = l.rank();
        let rows: Vec<Vec<RatFunc>> = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let mut rhs = vec![RatFunc::zero(&self.k); d];
        rhs[0] = RatFunc::one(&self.k);
        let x = crate::basefield::linalg::solve_dense(&rows, &rhs, &RatFunc::zero(&self.k))?;
        Some(l.lift_vector(&x))
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        a.c.iter().any(|s| s.precision() > 0 && !s.coeff(0).is_zero())
    }

    /// Inverse of a unit of R by Newton iteration from the residue inverse.
    pub fn unit_inverse(&self, a: &Elem) -> Result<Elem> {
        let r0 = self.residue_inverse(a).ok_or_else(|| Error::input("element is not a unit"))?;
        let two = self.constant(RatFunc::from_int(&self.k, 2));
        let mut w = self.lift(&r0);
        let mut correct = 1;
        while correct < self.prec {
            correct *= 2;
            w = self.mul(&w, &self.sub(&two, &self.mul(a, &w)));
        }
        Ok(w)
    }

    /// Reduce a polynomial in S, T₁, …, T_m to normal form.
    pub fn reduce(&self, f: &KPoly) -> Elem {
        assert_eq!(f.nvars(), self.m() + 1, "variable count mismatch");
        let mut powers: Vec<HashMap<u32, Elem>> = vec![HashMap::new(); self.m()];
        let mut acc = self.zero();
        for (e, c) in f.terms() {
            let mut t = self.from_series(TS::monomial(c.clone(), e[0] as usize, self.prec));
            for i in 0..self.m() {
                if e[i + 1] == 0 {
                    continue;
                }
                let pw = powers[i].entry(e[i + 1]).or_insert_with(|| self.pow(&self.var(i), e[i + 1] as u64)).clone();
                t = self.mul(&t, &pw);
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    /// A root b with b^{p^k} = c in L, if one exists.
    ///
    /// Writing b = Σ β_b T^b, b^{p^k} = Σ β_b^{p^k} M_b with M_b = (T^b)^{p^k} in L.
    /// Expanding each coordinate of M_b and c in the p^k-basis of K over K^{p^k}
    /// turns this into a linear system for the β_b over K.
    pub fn residue_is_pth_power(&self, c: &Elem, k: u32) -> Option<Elem> {
        let l = self.residue_ring();
        let d = l.rank();
        let pk = (self.k.p() as u64).pow(k);
        let cv = l.residue(c).residue_vector();
        if k == 0 {
            return Some(l.lift_vector(&cv));
        }
        let ms: Vec<Vec<RatFunc>> = (0..d).map(|b| l.pow(&l.monomial(b), pk).residue_vector()).collect();
        let comps: Vec<Vec<Vec<RatFunc>>> =
            ms.iter().map(|m| m.iter().map(|x| x.pbasis_components(k)).collect()).collect();
        let ccomps: Vec<Vec<RatFunc>> = cv.iter().map(|x| x.pbasis_components(k)).collect();
        let nb = ccomps.first().map(|v| v.len()).unwrap_or(1);
        let mut ech = Echelon::new();
        for row in 0..d {
            for e in 0..nb {
                let entries = (0..d).map(|b| (b, comps[b][row][e].clone())).chain(std::iter::once((d, ccomps[row][e].clone())));
                ech.insert(entries);
            }
        }
        let beta = ech.solve(d, d, &RatFunc::zero(&self.k))?;
        Some(l.lift_vector(&beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    /// T^9 = t + S² over F_3(t).
    fn fam1() -> Ring {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let n = 8;
        let mut tail = vec![TS::zero(&k, n); 9];
        tail[0] = TS::from_coeffs(&k, vec![RatFunc::var(&k, 0), RatFunc::zero(&k), RatFunc::one(&k)], n);
        Ring::new(&k, vec![9], vec![tail], n).unwrap()
    }

    #[test]
    fn relation_and_square() {
        let r = fam1();
        let k = r.field().clone();
        let t9 = r.pow(&r.var(0), 9);
        let t = RatFunc::var(&k, 0);
        assert_eq!(t9, r.from_series(TS::from_coeffs(&k, vec![t.clone(), RatFunc::zero(&k), RatFunc::one(&k)], 8)));
        let t18 = r.pow(&r.var(0), 18);
        let two = RatFunc::from_int(&k, 2);
        let expect = TS::from_coeffs(
            &k,
            vec![t.mul(&t), RatFunc::zero(&k), two.mul(&t), RatFunc::zero(&k), RatFunc::one(&k)],
            8,
        );
        assert_eq!(t18, r.from_series(expect));
        // v(T^9 − t) = 2
        assert_eq!(r.valuation(&r.sub(&t9, &r.constant(t))), Val::Finite(2));
    }

    #[test]
    fn frobenius_matches_power() {
        let r = fam1();
        let a = r.add(&r.var(0), &r.mul(&r.s_power(1), &r.pow(&r.var(0), 5)));
        assert_eq!(r.frobenius(&a), r.pow(&a, 3));
    }

    #[test]
    fn residue_roots() {
        let r = fam1();
        let k = r.field().clone();
        let l = r.residue_ring();
        let t = l.constant(RatFunc::var(&k, 0));
        // t = (T^3)^3 in L
        assert_eq!(l.residue_is_pth_power(&t, 1), Some(l.pow(&l.var(0), 3)));
        assert_eq!(l.residue_is_pth_power(&t, 2), Some(l.var(0)));
        assert!(l.residue_is_pth_power(&l.var(0), 1).is_none());
        assert_eq!(l.residue_is_pth_power(&l.one(), 1), Some(l.one()));
        let u = r.add(&r.var(0), &r.s_power(1));
        let ui = r.unit_inverse(&u).unwrap();
        assert_eq!(r.mul(&u, &ui), r.one());
    }
}
