//! Presentations R ≅ K[[S]][T₁,…,T_m]/(P₁,…,P_m) and their sources.
//!
//! A presentation is a recipe producing the relation coefficients at any
//! requested S-adic precision; [`LocalRingPresentation::at`] realizes it as a
//! [`Ring`].

use super::hensel::HenselSeed;
use super::kpoly::KPoly;
use super::ring::{Elem, Ring};
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries as TS;
use std::fmt;
use std::sync::Arc;

/// Produces the relation tails (see [`Ring`]) at a requested precision.
pub trait RelationSource: Send + Sync + fmt::Debug {
    fn field(&self) -> &KRef;
    fn degrees(&self) -> Vec<usize>;
    fn tails(&self, n: usize) -> Result<Vec<Vec<TS>>>;
    /// Display names of S, T₁, …, T_m.
    fn names(&self) -> Vec<String>;
    /// Exact polynomial relations, when the presentation has them.
    fn polynomial_relations(&self) -> Option<Vec<KPoly>> {
        None
    }
    fn describe(&self) -> String;
}

/// Per-generator data of the normal form P_i = T_i^{p^{n_i}} − f_i − ũ_iS^{q_i} + w̃_i^pS^{q′_i},
/// where T_i stands for the chosen lift r′_i of y_i.  ũ_i, w̃_i and r′_i are
/// elements of R in the coordinates of the input presentation.
#[derive(Clone, Debug)]
pub struct NormalFormLevel {
    pub n: u32,
    /// f_i as coordinates in L_{i−1} = K[T₁..T_{i−1}]/(…).
    pub f: Vec<RatFunc>,
    pub q: usize,
    pub q_prime: usize,
    pub r_prime: Elem,
    pub u_tilde: Elem,
    /// Absent when q_i = q′_i (the S^{q′} term is dropped).
    pub w_tilde: Option<Elem>,
    /// q′_i came from the p^{n_i}-th power climb (n_i > 1), a derived procedure.
    pub q_prime_derived: bool,
    /// Precision at which ũ_i, w̃_i were computed.
    pub precision: usize,
}

#[derive(Clone, Debug)]
pub struct LocalRingPresentation {
    source: Arc<dyn RelationSource>,
    pub normal_form: Option<Vec<NormalFormLevel>>,
}

impl LocalRingPresentation {
    pub fn from_source(source: Arc<dyn RelationSource>) -> Self {
        LocalRingPresentation { source, normal_form: None }
    }
    /// Relations given as polynomials in the variables `names` = (S, T₁, …, T_m).
    pub fn from_relations(k: &KRef, names: Vec<String>, rels: Vec<KPoly>) -> Result<Self> {
        Ok(Self::from_source(Arc::new(PolynomialSource::new(k, names, rels)?)))
    }
    pub fn parse_relations(k: &KRef, names: &[&str], rels: &[&str]) -> Result<Self> {
        let polys = rels.iter().map(|r| KPoly::parse(k, names, r)).collect::<Result<Vec<_>>>()?;
        Self::from_relations(k, names.iter().map(|s| s.to_string()).collect(), polys)
    }
    /// Local ring of the plane curve f(S, Y) = 0 at the point cut out by `point` ∈ K[Y].
    pub fn from_hypersurface(k: &KRef, names: Vec<String>, f: KPoly, point: &KPoly) -> Result<Self> {
        Ok(Self::from_source(Arc::new(HenselSource::new(k, names, f, point)?)))
    }
    pub fn parse_hypersurface(k: &KRef, names: &[&str], f: &str, point: &str) -> Result<Self> {
        let fp = KPoly::parse(k, names, f)?;
        let bp = KPoly::parse(k, names, point)?;
        Self::from_hypersurface(k, names.iter().map(|s| s.to_string()).collect(), fp, &bp)
    }

    pub fn source(&self) -> &Arc<dyn RelationSource> {
        &self.source
    }
    pub fn field(&self) -> &KRef {
        self.source.field()
    }
    pub fn degrees(&self) -> Vec<usize> {
        self.source.degrees()
    }
    pub fn m(&self) -> usize {
        self.degrees().len()
    }
    pub fn rank(&self) -> usize {
        self.degrees().iter().product()
    }
    pub fn names(&self) -> Vec<String> {
        self.source.names()
    }
    pub fn describe(&self) -> String {
        self.source.describe()
    }
    /// The ring modulo S^n.
    pub fn at(&self, n: usize) -> Result<Ring> {
        Ring::new(self.field(), self.degrees(), self.source.tails(n)?, n)
    }
    /// The relations as polynomials in (S, T₁, …, T_m): the source's own when it has
    /// them (flag true), otherwise T_i^{d_i} minus the tail truncated modulo S^n.
    pub fn relation_polys(&self, n: usize) -> Result<(Vec<KPoly>, bool)> {
        if let Some(r) = self.source.polynomial_relations() {
            return Ok((r, true));
        }
        let ring = self.at(n)?;
        let (k, m) = (self.field(), self.m());
        let mut out = Vec::with_capacity(m);
        for (i, tail) in ring.tails().iter().enumerate() {
            let mut e = vec![0u32; m + 1];
            e[i + 1] = ring.degrees()[i] as u32;
            let mut coords = tail.clone();
            coords.resize(ring.rank(), TS::zero(k, n));
            out.push(KPoly::term(RatFunc::one(k), e).sub(&ring.to_poly(&ring.from_coords(coords))));
        }
        Ok((out, false))
    }
    /// L = R/(S).
    pub fn residue_ring(&self) -> Result<Ring> {
        self.at(1)
    }
}

/// Relations that are polynomials in S and the T_i.
#[derive(Debug)]
pub struct PolynomialSource {
    k: KRef,
    names: Vec<String>,
    rels: Vec<KPoly>,
    degrees: Vec<usize>,
}

impl PolynomialSource {
    pub fn new(k: &KRef, names: Vec<String>, rels: Vec<KPoly>) -> Result<Self> {
        let m = rels.len();
        if names.len() != m + 1 {
            return Err(Error::input(format!("{} variable names for {m} relations", names.len())));
        }
        let mut degrees = Vec::with_capacity(m);
        let mut monic = Vec::with_capacity(m);
        for (i, p) in rels.iter().enumerate() {
            if p.nvars() != m + 1 {
                return Err(Error::input("relation has the wrong number of variables"));
            }
            if (i + 2..=m).any(|v| p.uses_var(v)) {
                return Err(Error::presentation(format!("not triangular: relation {} involves a later variable", i + 1)));
            }
            let d = p.degree_in(i + 1) as usize;
            if d == 0 {
                return Err(Error::presentation(format!("not monic: relation {} does not involve {}", i + 1, names[i + 1])));
            }
            let lead = &p.collect_in(i + 1)[d];
            let mut e0 = vec![0; m + 1];
            e0[i + 1] = 0;
            let c = lead.coeff(&e0);
            if lead.terms().count() != 1 || c.is_zero() {
                return Err(Error::presentation(format!("not monic: leading coefficient of relation {} is not a constant", i + 1)));
            }
            monic.push(p.scale(&c.inv().unwrap()));
            degrees.push(d);
        }
        Ok(PolynomialSource { k: k.clone(), names, rels: monic, degrees })
    }
}

impl RelationSource for PolynomialSource {
    fn field(&self) -> &KRef {
        &self.k
    }
    fn degrees(&self) -> Vec<usize> {
        self.degrees.clone()
    }
    fn names(&self) -> Vec<String> {
        self.names.clone()
    }
    fn polynomial_relations(&self) -> Option<Vec<KPoly>> {
        Some(self.rels.clone())
    }
    fn tails(&self, n: usize) -> Result<Vec<Vec<TS>>> {
        let m = self.rels.len();
        let mut tails: Vec<Vec<TS>> = Vec::with_capacity(m);
        for (i, p) in self.rels.iter().enumerate() {
            let sub = Ring::new(&self.k, self.degrees[..i].to_vec(), tails.clone(), n)?;
            let d = self.degrees[i];
            let parts = p.collect_in(i + 1);
            let mut tail = Vec::with_capacity(d * sub.rank());
            for part in parts.iter().take(d) {
                // drop the trailing variables for the sub-ring
                let mut q = KPoly::zero(&self.k, i + 1);
                for (e, c) in part.terms() {
                    q = q.add(&KPoly::term(c.clone(), e[..=i].to_vec()));
                }
                let red = sub.reduce(&q);
                tail.extend(red.into_coords().into_iter().map(|s| s.neg()));
            }
            tails.push(tail);
        }
        Ok(tails)
    }
    fn describe(&self) -> String {
        let rels: Vec<String> = self.rels.iter().map(|r| r.display_with(&self.names).to_string()).collect();
        format!("{}[[{}]][{}]/({})", field_name(&self.k), self.names[0], self.names[1..].join(","), rels.join(", "))
    }
}

pub(crate) fn field_name(k: &KRef) -> String {
    format!("F_{}({})", k.fq().size(), k.names().join(","))
}

/// The local ring at a point of a plane curve f(S, Y) = 0, through lifting
/// f ≡ A₀·B₀ (mod S) to f = A·B and presenting R = K[[S]][Y]/(B).
#[derive(Debug)]
pub struct HenselSource {
    k: KRef,
    names: Vec<String>,
    f: KPoly,
    seed: HenselSeed,
}

impl HenselSource {
    pub fn new(k: &KRef, names: Vec<String>, f: KPoly, point: &KPoly) -> Result<Self> {
        if names.len() != 2 || f.nvars() != 2 || point.nvars() != 2 {
            return Err(Error::input("a hypersurface has exactly the variables (S, Y)"));
        }
        if point.uses_var(0) {
            return Err(Error::input("the point factor must be a polynomial in Y over K"));
        }
        let f0: Vec<RatFunc> = f.collect_in(1).iter().map(|c| c.coeff(&[0, 0])).collect();
        let b0: Vec<RatFunc> = point.collect_in(1).iter().map(|c| c.coeff(&[0, 0])).collect();
        let seed = HenselSeed::new(k, &f0, &b0)?;
        Ok(HenselSource { k: k.clone(), names, f, seed })
    }
    pub fn seed(&self) -> &HenselSeed {
        &self.seed
    }
    /// f as a polynomial in Y with series coefficients.
    pub fn f_series(&self, n: usize) -> Vec<TS> {
        self.f
            .collect_in(1)
            .iter()
            .map(|c| {
                let mut s = TS::zero(&self.k, n);
                for (e, x) in c.terms() {
                    if (e[0] as usize) < n {
                        s.set_coeff(e[0] as usize, s.coeff(e[0] as usize).add(x));
                    }
                }
                s
            })
            .collect()
    }
    /// The lifted factors (A, B) modulo S^n.
    pub fn factors(&self, n: usize) -> (Vec<TS>, Vec<TS>) {
        self.seed.lift(&self.k, &self.f_series(n), n)
    }
}

impl RelationSource for HenselSource {
    fn field(&self) -> &KRef {
        &self.k
    }
    fn degrees(&self) -> Vec<usize> {
        vec![self.seed.b0.len() - 1]
    }
    fn names(&self) -> Vec<String> {
        self.names.clone()
    }
    fn tails(&self, n: usize) -> Result<Vec<Vec<TS>>> {
        let (_, b) = self.factors(n);
        let d = self.seed.b0.len() - 1;
        let mut tail: Vec<TS> = b.into_iter().take(d).map(|c| c.neg()).collect();
        tail.resize(d, TS::zero(&self.k, n));
        Ok(vec![tail])
    }
    fn describe(&self) -> String {
        let b0 = self.seed.b0.iter().enumerate().rev().filter(|(_, c)| !c.is_zero());
        let b0: Vec<String> = b0
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("({c})*{}", self.names[1]),
                _ => format!("({c})*{}^{j}", self.names[1]),
            })
            .collect();
        format!(
            "local ring of {} = 0 at {} over {}",
            self.f.display_with(&self.names),
            b0.join(" + "),
            field_name(&self.k)
        )
    }
}

/// How the residue relation of each generator was certified irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueShape {
    /// d_i = 1.
    Linear,
    /// T^{p^n} − f with f ∉ L_{i−1}^p.
    PurelyInseparable { n: u32 },
    /// T^d − a over K with a ∉ K^ℓ for primes ℓ | d (and a ∉ −4K⁴ when 4 | d).
    Binomial { d: usize },
}

#[derive(Clone, Debug)]
pub struct PresentationDiagnostic {
    pub degrees: Vec<usize>,
    pub rank: usize,
    pub shapes: Vec<ResidueShape>,
}

fn prime_factors(mut d: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut q = 2;
    while q * q <= d {
        if d % q == 0 {
            out.push(q);
            while d % q == 0 {
                d /= q;
            }
        }
        q += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

fn p_power_exponent(d: usize, p: usize) -> Option<u32> {
    let mut n = 0;
    let mut x = d;
    while x % p == 0 {
        x /= p;
        n += 1;
    }
    (x == 1).then_some(n)
}

/// Verifies that R/(S) is a field by certifying irreducibility of each residue
/// relation over the previously built field.  Triangularity and monicity are
/// enforced when presentations are built.
pub fn check_presentation(pres: &LocalRingPresentation) -> Result<PresentationDiagnostic> {
    let l = pres.residue_ring()?;
    let p = l.field().p() as usize;
    let mut shapes = vec![];
    for i in 0..l.m() {
        let d = l.degrees()[i];
        if d == 1 {
            shapes.push(ResidueShape::Linear);
            continue;
        }
        let sub = l.sub_ring(i);
        let coeffs: Vec<Elem> = (0..d).map(|j| sub.from_coords(l.tail_block(i, j).to_vec())).collect();
        let pure = coeffs[1..].iter().all(|c| c.is_zero_mod());
        let f = &coeffs[0];
        if !pure {
            return Err(Error::unsupported(format!(
                "cannot certify the residue relation of generator {} (only binomial residue relations are supported)",
                i + 1
            )));
        }
        if f.is_zero_mod() {
            return Err(Error::presentation("not a field at S=0: residue relation has the root 0"));
        }
        if let Some(n) = p_power_exponent(d, p) {
            if sub.residue_is_pth_power(f, 1).is_some() {
                return Err(Error::presentation(format!(
                    "not a field at S=0: residue relation of generator {} is a p-th power",
                    i + 1
                )));
            }
            shapes.push(ResidueShape::PurelyInseparable { n });
            continue;
        }
        if i > 0 {
            return Err(Error::unsupported("binomial residue relations of degree prime to p only at the first level"));
        }
        let a = &f.residue_vector()[0];
        for ell in prime_factors(d) {
            if a.prime_root(ell as u32).is_some() {
                return Err(Error::presentation(format!("not a field at S=0: T^{d} − ({a}) has a factor (constant is an {ell}-th power)")));
            }
        }
        if d % 4 == 0 && p != 2 {
            let m4 = a.neg().mul(&RatFunc::from_int(l.field(), 4).inv().unwrap());
            if m4.prime_root(2).and_then(|r| r.prime_root(2)).is_some() {
                return Err(Error::presentation("not a field at S=0: binomial in −4K⁴"));
            }
        }
        shapes.push(ResidueShape::Binomial { d });
    }
    Ok(PresentationDiagnostic { degrees: l.degrees().to_vec(), rank: l.rank(), shapes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;
    use crate::series::Val;

    fn k3() -> KRef {
        RationalField::with_names(3, &["t"]).unwrap()
    }

    #[test]
    fn check_examples() {
        let k = k3();
        let p = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^2"]).unwrap();
        let d = check_presentation(&p).unwrap();
        assert_eq!(d.rank, 9);
        assert_eq!(d.shapes, vec![ResidueShape::PurelyInseparable { n: 2 }]);
        let bad = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^2 - t^2"]).unwrap();
        assert!(matches!(check_presentation(&bad), Err(Error::Presentation(_))));
        let ok2 = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^2 - t"]).unwrap();
        assert_eq!(check_presentation(&ok2).unwrap().shapes, vec![ResidueShape::Binomial { d: 2 }]);
        assert!(LocalRingPresentation::parse_relations(&k, &["S", "T", "U"], &["T^3 - t", "U^3 - T^2 + S*T*U^4"]).is_err());
        assert!(LocalRingPresentation::parse_relations(&k, &["S", "T", "U"], &["T^3 - t - U", "U^3 - T"]).is_err());
        assert!(LocalRingPresentation::parse_relations(&k, &["S", "T"], &["S*T^3 - t"]).is_err());
    }

    #[test]
    fn family_three_via_hensel() {
        // Y^4 − tY − S^9 at Y^3 − t over F_3(t)
        let k = k3();
        let p = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        assert_eq!(p.degrees(), vec![3]);
        check_presentation(&p).unwrap();
        let r = p.at(20).unwrap();
        let y = r.var(0);
        let e = r.sub(&r.pow(&y, 3), &r.constant(RatFunc::var(&k, 0)));
        assert_eq!(r.valuation(&e), Val::Finite(9));
        // the curve equation vanishes on the lifted factor
        let f = KPoly::parse(&k, &["S", "Y"], "Y^4 - t*Y - S^9").unwrap();
        assert!(r.reduce(&f).is_zero_mod());
    }

    #[test]
    fn two_level_tower() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let p = LocalRingPresentation::parse_relations(&k, &["S", "T", "U"], &["T^3 - t - S", "U^3 - s - T*S^2"]).unwrap();
        let d = check_presentation(&p).unwrap();
        assert_eq!(d.rank, 9);
        let r = p.at(10).unwrap();
        let u = r.var(1);
        let lhs = r.pow(&u, 3);
        let rel = KPoly::parse(&k, &["S", "T", "U"], "s + T*S^2").unwrap();
        assert_eq!(lhs, r.reduce(&rel));
        // U^3 − s depends on T: not a p-th power residue only if s ∉ L^3
        let bad = LocalRingPresentation::parse_relations(&k, &["S", "T", "U"], &["T^3 - t - S", "U^3 - t - S"]).unwrap();
        assert!(check_presentation(&bad).is_err());
    }
}
