//! R(1_x) as a presentation over K′ = K(x^{1/p}), together with the map
//! ψ: R → R(1_x) on generators.
//!
//! Three routes.  When x^{1/p} ∉ L, R ⊗ K′ is already a DVR and the relations are
//! just base-changed.  When p | q(x) and [L:K] = p, θ = r − x^{1/p} (r the climb's
//! maximizing lift) generates R ⊗ K′ over K′[[S]], θ^p = r^p − x has valuation q,
//! and U = θ/S^{q/p} generates R(1); its characteristic polynomial has
//! coefficients c_k/S^{(p−k)q/p}, where θ^p = Σ c_kθ^k.  Otherwise a presentation
//! supplied by the caller is validated and used.

use crate::basefield::ext::{embed_flat, flat_root_field};
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::invariants::{q_at, q_invariant};
use crate::localring::{Elem, KPoly, LocalRingPresentation, RelationSource, Ring};
use crate::series::{Budget, TruncatedSeries as TS};
use serde::Serialize;
use std::sync::Arc;

/// How R(1) was presented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// x^{1/p} ∉ L: the base change is already normal.
    BaseChange,
    /// U = (r − x^{1/p})/S^{q/p} adjoined.
    Computed,
    /// A supplied presentation, validated through ψ.
    Supplied,
}

/// A presentation of R(1) over K′ and the images ψ(S) = S′^k, ψ(T_j) given as
/// polynomials in the new variables (S′, T′₁, …).
#[derive(Clone, Debug)]
pub struct SuppliedNormalization {
    pub pres: LocalRingPresentation,
    pub psi_s_power: usize,
    pub psi_t: Vec<KPoly>,
}

#[derive(Clone, Debug)]
enum Psi {
    Identity,
    Adjoined(Arc<AdjoinedRoot>),
    Polys(Vec<KPoly>),
}

/// R(1_x) with ψ: R → R(1_x).
#[derive(Clone, Debug)]
pub struct Normalized {
    pub x: RatFunc,
    /// Index i with x = t_i; K′ = flat_root_field(K, i) with s_i^p = t_i.
    pub var: usize,
    pub field: KRef,
    pub pres: LocalRingPresentation,
    pub method: Method,
    /// ψ(S) = S′^k.
    pub psi_s_power: usize,
    psi: Psi,
}

fn embed_series(s: &TS, kp: &KRef, i: usize) -> TS {
    s.map(kp, |c| embed_flat(c, kp, i))
}

fn embed_tails(tails: Vec<Vec<TS>>, kp: &KRef, i: usize) -> Vec<Vec<TS>> {
    tails.into_iter().map(|t| t.iter().map(|s| embed_series(s, kp, i)).collect()).collect()
}

/// Solve A·X = B over K[[S]] when A is invertible, pivoting on units.
pub(crate) fn solve_unit(a: &[Vec<TS>], b: &[Vec<TS>]) -> Result<Vec<Vec<TS>>> {
    let n = a.len();
    let mut a: Vec<Vec<TS>> = a.to_vec();
    let mut b: Vec<Vec<TS>> = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col].precision() > 0 && !a[r][col].coeff(0).is_zero())
            .ok_or_else(|| Error::CheckFailed("matrix is not invertible over K[[S]]".into()))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].unit_inverse()?;
        a[col] = a[col].iter().map(|x| x.mul(&inv)).collect();
        b[col] = b[col].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero_mod() {
                continue;
            }
            let f = a[r][col].clone();
            let (ar, ac) = (a[r].clone(), &a[col]);
            a[r] = ar.iter().zip(ac).map(|(x, y)| x.sub(&y.mul(&f))).collect();
            let br = b[r].clone();
            b[r] = br.iter().zip(&b[col]).map(|(x, y)| x.sub(&y.mul(&f))).collect();
        }
    }
    Ok(b)
}

/// Relations of R ⊗ K′ (x^{1/p} ∉ L).
#[derive(Debug)]
struct BaseChangeSource {
    parent: LocalRingPresentation,
    field: KRef,
    var: usize,
}

impl RelationSource for BaseChangeSource {
    fn field(&self) -> &KRef {
        &self.field
    }
    fn degrees(&self) -> Vec<usize> {
        self.parent.degrees()
    }
    fn tails(&self, n: usize) -> Result<Vec<Vec<TS>>> {
        Ok(embed_tails(self.parent.source().tails(n)?, &self.field, self.var))
    }
    fn names(&self) -> Vec<String> {
        self.parent.names()
    }
    fn describe(&self) -> String {
        format!("({}) ⊗ {}", self.parent.describe(), self.field.names().join(","))
    }
}

/// K′[[S]][U]/(U^p − Σ d_k U^k) with U = (r − x^{1/p})/S^{q/p}.
#[derive(Debug)]
struct AdjoinedRoot {
    parent: LocalRingPresentation,
    x: RatFunc,
    field: KRef,
    var: usize,
    q: usize,
}

impl AdjoinedRoot {
    /// (d_k) and the coordinates of ψ(T_j) modulo S^n.
    fn compute(&self, n: usize) -> Result<(Vec<TS>, Vec<Vec<TS>>)> {
        let k = self.parent.field();
        let p = k.p() as usize;
        let qp = self.q / p;
        let big = n + self.q;
        let ring = self.parent.at(big)?;
        let w = q_at(&ring, &self.x)?;
        if w.q != self.q {
            return Err(Error::precision(big, "q(x) differs from the value at higher precision"));
        }
        let r = w.r.expect("q > 0 has a lift");
        let kp = &self.field;
        let rp = Ring::new(kp, ring.degrees().to_vec(), embed_tails(ring.tails().to_vec(), kp, self.var), big)?;
        let emb = |e: &Elem| rp.from_coords(e.coords().iter().map(|s| embed_series(s, kp, self.var)).collect());
        let theta = rp.sub(&emb(&r), &rp.constant(RatFunc::var(kp, self.var)));
        let mut pows = vec![rp.one()];
        for _ in 0..p {
            pows.push(rp.mul(pows.last().unwrap(), &theta));
        }
        let a: Vec<Vec<TS>> = (0..p).map(|l| (0..p).map(|j| pows[j].coord(l).clone()).collect()).collect();
        let gens: Vec<Elem> = (0..ring.m()).map(|j| rp.var(j)).collect();
        let b: Vec<Vec<TS>> =
            (0..p).map(|l| std::iter::once(pows[p].coord(l).clone()).chain(gens.iter().map(|g| g.coord(l).clone())).collect()).collect();
        let sol = solve_unit(&a, &b)?;
        let mut d = Vec::with_capacity(p);
        for (kk, row) in sol.iter().enumerate() {
            d.push(row[0].shift_down((p - kk) * qp)?.truncate(n));
        }
        let images = (0..ring.m())
            .map(|j| (0..p).map(|kk| sol[kk][j + 1].shift_up(kk * qp).truncate(n)).collect())
            .collect();
        Ok((d, images))
    }
}

impl RelationSource for AdjoinedRoot {
    fn field(&self) -> &KRef {
        &self.field
    }
    fn degrees(&self) -> Vec<usize> {
        vec![self.field.p() as usize]
    }
    fn tails(&self, n: usize) -> Result<Vec<Vec<TS>>> {
        Ok(vec![self.compute(n)?.0])
    }
    fn names(&self) -> Vec<String> {
        vec![self.parent.names()[0].clone(), "U".into()]
    }
    fn describe(&self) -> String {
        format!(
            "{}[[S]][U]/(U^{} − …), U = (r − {}^(1/{}))/S^{}",
            crate::localring::presentation::field_name(&self.field),
            self.field.p(),
            self.x,
            self.field.p(),
            self.q / self.field.p() as usize
        )
    }
}

fn var_index(k: &KRef, x: &RatFunc) -> Result<usize> {
    (0..k.c())
        .find(|&i| *x == RatFunc::var(k, i))
        .ok_or_else(|| Error::unsupported("re-presentation needs x to be a p-basis variable t_i"))
}

impl Normalized {
    /// The images ψ(T_j) in R(1) modulo S′^n.
    pub fn psi_images(&self, ring: &Ring) -> Result<Vec<Elem>> {
        match &self.psi {
            Psi::Identity => Ok((0..ring.m()).map(|j| ring.var(j)).collect()),
            Psi::Adjoined(src) => {
                let (_, im) = src.compute(ring.precision())?;
                Ok(im.into_iter().map(|c| ring.from_coords(c)).collect())
            }
            Psi::Polys(ps) => Ok(ps.iter().map(|f| ring.reduce(f)).collect()),
        }
    }

    /// ψ(T_j) as polynomials in (S′, T′₁, …): exact (flag true) unless ψ was
    /// computed, in which case it is truncated modulo S′^n.
    pub fn psi_polys(&self, n: usize) -> Result<(Vec<KPoly>, bool)> {
        match &self.psi {
            Psi::Polys(ps) => Ok((ps.clone(), true)),
            _ => {
                let ring = self.pres.at(n)?;
                let exact = matches!(self.psi, Psi::Identity);
                Ok((self.psi_images(&ring)?.iter().map(|e| ring.to_poly(e)).collect(), exact))
            }
        }
    }

    /// ψ of the basis monomials of the parent, given ψ(T_j).
    pub fn monomial_images(&self, parent_degrees: &[usize], ring: &Ring, images: &[Elem]) -> Vec<Elem> {
        let rank: usize = parent_degrees.iter().product();
        let mut out = Vec::with_capacity(rank);
        for idx in 0..rank {
            let mut rest = idx;
            let mut acc = ring.one();
            for (j, &d) in parent_degrees.iter().enumerate() {
                let e = rest % d;
                rest /= d;
                if e > 0 {
                    acc = ring.mul(&acc, &ring.pow(&images[j], e as u64));
                }
            }
            out.push(acc);
        }
        out
    }

    /// ψ(a) for a ∈ R given by coordinates, in the ring R(1) mod S′^n.
    pub fn apply(&self, coords: &[TS], ring: &Ring, mono_images: &[Elem]) -> Elem {
        let mut acc = ring.zero();
        for (c, m) in coords.iter().zip(mono_images) {
            if c.is_zero_mod() {
                continue;
            }
            let s = embed_series(c, &self.field, self.var).inflate(self.psi_s_power);
            let s = TS::from_coeffs(&self.field, s.coeffs().iter().take(ring.precision()).cloned().collect(), ring.precision());
            acc = ring.add(&acc, &ring.mul_series(m, &s));
        }
        acc
    }

    /// Checks ψ(P_i) ≡ 0 mod S′^n for every relation of the parent.
    pub fn validate(&self, parent: &LocalRingPresentation, n: usize) -> Result<()> {
        let ring = self.pres.at(n)?;
        let pring = parent.at(n)?;
        let images = self.psi_images(&ring)?;
        let degs = pring.degrees().to_vec();
        let monos = self.monomial_images(&degs, &ring, &images);
        for i in 0..pring.m() {
            let tail = &pring.tails()[i];
            let lhs = ring.pow(&images[i], degs[i] as u64);
            let rhs = self.apply(tail, &ring, &monos[..tail.len()]);
            if !ring.sub(&lhs, &rhs).is_zero_mod() {
                return Err(Error::CheckFailed(format!("ψ does not respect relation {} modulo S^{n}", i + 1)));
            }
        }
        Ok(())
    }
}

/// R(1_x) taken from a supplied presentation, whichever route would apply.
pub fn from_supplied(pres: &LocalRingPresentation, x: &RatFunc, budget: Budget, sup: &SuppliedNormalization) -> Result<Normalized> {
    let k = pres.field();
    let var = var_index(k, x)?;
    let field = flat_root_field(k, var)?;
    let f = sup.pres.field();
    if f.names() != field.names() || f.p() != k.p() {
        return Err(Error::input(format!("supplied normalization lives over {:?}, expected {:?}", f.names(), field.names())));
    }
    let out = Normalized {
        x: x.clone(),
        var,
        field: field.clone(),
        pres: LocalRingPresentation::from_source(sup.pres.source().clone()),
        method: Method::Supplied,
        psi_s_power: sup.psi_s_power,
        psi: Psi::Polys(sup.psi_t.iter().map(|f| f.map_coeffs(&field, |c| c.recast(&field))).collect()),
    };
    out.validate(pres, budget.n0)?;
    Ok(out)
}

/// R(1_x) over K′ with ψ, validated modulo S′^n for n = budget.n0.
pub fn represent_normalization(
    pres: &LocalRingPresentation,
    x: &RatFunc,
    budget: Budget,
    supplied: Option<&SuppliedNormalization>,
) -> Result<Normalized> {
    let k = pres.field();
    let p = k.p() as usize;
    let var = var_index(k, x)?;
    let field = flat_root_field(k, var)?;
    let w = q_invariant(pres, x, budget)?;
    let out = if w.q == 0 {
        let src = BaseChangeSource { parent: pres.clone(), field: field.clone(), var };
        Normalized {
            x: x.clone(),
            var,
            field: field.clone(),
            pres: LocalRingPresentation::from_source(Arc::new(src)),
            method: Method::BaseChange,
            psi_s_power: 1,
            psi: Psi::Identity,
        }
    } else if w.q % p == 0 && pres.rank() == p {
        let src = Arc::new(AdjoinedRoot { parent: pres.clone(), x: x.clone(), field: field.clone(), var, q: w.q });
        Normalized {
            x: x.clone(),
            var,
            field: field.clone(),
            pres: LocalRingPresentation::from_source(src.clone()),
            method: Method::Computed,
            psi_s_power: 1,
            psi: Psi::Adjoined(src),
        }
    } else if let Some(sup) = supplied {
        return from_supplied(pres, x, budget, sup);
    } else {
        return Err(Error::unsupported(if w.q % p != 0 {
            "ramified re-presentation (e = p) needs a supplied normalization"
        } else {
            "unramified re-presentation is implemented for [L:K] = p only"
        }));
    };
    out.validate(pres, budget.n0)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;
    use crate::invariants::q_invariant;

    #[test]
    fn family_three_adjoins_root() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let nz = represent_normalization(&pr, &RatFunc::var(&k, 0), Budget::default(), None).unwrap();
        assert_eq!(nz.method, Method::Computed);
        assert_eq!(nz.pres.degrees(), vec![3]);
        // residue relation U³ = 1/ξ
        let l = nz.pres.residue_ring().unwrap();
        let xi = RatFunc::var(&nz.field, 0);
        assert_eq!(l.tails()[0][0].coeff(0), &xi.inv().unwrap());
        assert!(l.tails()[0][1..].iter().all(|c| c.is_zero_mod()));
        let w2 = q_invariant(&nz.pres, &xi, Budget::default()).unwrap();
        assert_eq!(w2.q, 3);
        nz.validate(&pr, 40).unwrap();
    }

    #[test]
    fn base_change_when_root_missing() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^3 - t - S^2"]).unwrap();
        let nz = represent_normalization(&pr, &RatFunc::var(&k, 0), Budget::default(), None).unwrap();
        assert_eq!(nz.method, Method::BaseChange);
        assert_eq!(nz.field.names()[0], "s_1");
    }

    #[test]
    fn ramified_needs_supplied() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "Y"], &["Y^9 - t - S^2"]).unwrap();
        let t = RatFunc::var(&k, 0);
        assert!(matches!(represent_normalization(&pr, &t, Budget::default(), None), Err(Error::Unsupported(_))));
        let kp = flat_root_field(&k, 0).unwrap();
        let sup = SuppliedNormalization {
            pres: LocalRingPresentation::parse_relations(&kp, &["Z", "Y"], &["Y^3 - t_1 - Z^2"]).unwrap(),
            psi_s_power: 3,
            psi_t: vec![KPoly::parse(&kp, &["Z", "Y"], "Y").unwrap()],
        };
        let nz = represent_normalization(&pr, &t, Budget::default(), Some(&sup)).unwrap();
        assert_eq!(nz.method, Method::Supplied);
        let bad = SuppliedNormalization { psi_s_power: 2, ..sup };
        assert!(represent_normalization(&pr, &t, Budget::default(), Some(&bad)).is_err());
    }
}
