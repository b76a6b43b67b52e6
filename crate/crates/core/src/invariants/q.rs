//! q(x) = sup_r v(r^p − x) by hill climbing, and a linear-algebra oracle.

use crate::basefield::linalg::Echelon;
use crate::basefield::RatFunc;
use crate::error::{Error, Result};
use crate::localring::{Elem, LocalRingPresentation, Ring};
use crate::series::Budget;

/// One improvement r ← r − S^{q_r/p^k}·lift(c^{1/p^k}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStep {
    pub q_r: usize,
    /// Leading coefficient of r^{p^k} − z, as coordinates in L.
    pub lead: Vec<RatFunc>,
    /// Its p^k-th root in L.
    pub root: Vec<RatFunc>,
}

/// Why the climb stopped at its final value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// x has no p-th root in L, so q = 0.
    NoResidueRoot,
    /// p^k does not divide the valuation reached.
    NotDivisible,
    /// The leading coefficient (coordinates in L) has no p^k-th root in L.
    LeadNotPower(Vec<RatFunc>),
}

#[derive(Clone, Debug)]
pub struct QWitness {
    pub x: RatFunc,
    pub q: usize,
    /// The maximizing lift (absent when q = 0).
    pub r: Option<Elem>,
    pub trace: Vec<QStep>,
    pub certificate: Certificate,
    pub precision: usize,
}

impl PartialEq for QWitness {
    /// Runs at different precisions agree when they find the same value along the same path.
    fn eq(&self, o: &Self) -> bool {
        self.q == o.q
            && self.certificate == o.certificate
            && self.trace.iter().map(|s| s.q_r).eq(o.trace.iter().map(|s| s.q_r))
    }
}

pub(crate) struct Climb {
    pub q: usize,
    pub r: Elem,
    pub trace: Vec<QStep>,
    pub certificate: Certificate,
}

/// Maximize v(r^{p^k} − z) starting from r0 (a lift of a p^k-th root of z mod S).
///
/// Adding y to r changes r^{p^k} by y^{p^k}, whose valuation is a multiple of
/// p^k with leading coefficient in L^{p^k}; so the value can only be raised when
/// both hold for the current leading term, and then it always can.
pub(crate) fn climb(ring: &Ring, r0: Elem, z: &Elem, k: u32) -> Result<Climb> {
    let pk = (ring.field().p() as usize).pow(k);
    let mut r = r0;
    let mut trace = vec![];
    loop {
        let diff = ring.sub(&ring.frobenius_pow(&r, k), z);
        let (q_r, c) = ring.lead(&diff)?;
        if q_r % pk != 0 {
            return Ok(Climb { q: q_r, r, trace, certificate: Certificate::NotDivisible });
        }
        let lead = c.residue_vector();
        let Some(root) = ring.residue_is_pth_power(&c, k) else {
            return Ok(Climb { q: q_r, r, trace, certificate: Certificate::LeadNotPower(lead) });
        };
        let step = ring.mul_s(&ring.lift(&root), q_r / pk);
        r = ring.sub(&r, &step);
        trace.push(QStep { q_r, lead, root: root.residue_vector() });
    }
}

fn check_x(x: &RatFunc) -> Result<()> {
    if x.is_zero() || x.is_pth_power() {
        return Err(Error::input(format!("x = {x} is a p-th power in K")));
    }
    Ok(())
}

/// Hill climbing at a fixed precision.
pub fn q_at(ring: &Ring, x: &RatFunc) -> Result<QWitness> {
    check_x(x)?;
    let xe = ring.constant(x.clone());
    let Some(rho) = ring.residue_is_pth_power(&xe, 1) else {
        return Ok(QWitness {
            x: x.clone(),
            q: 0,
            r: None,
            trace: vec![],
            certificate: Certificate::NoResidueRoot,
            precision: ring.precision(),
        });
    };
    let c = climb(ring, ring.lift(&rho), &xe, 1)?;
    Ok(QWitness { x: x.clone(), q: c.q, r: Some(c.r), trace: c.trace, certificate: c.certificate, precision: ring.precision() })
}

/// q(x) with precision escalation.
pub fn q_invariant(pres: &LocalRingPresentation, x: &RatFunc, budget: Budget) -> Result<QWitness> {
    check_x(x)?;
    Ok(budget.run(|n| q_at(&pres.at(n)?, x))?.value)
}

/// Independent oracle: the largest v such that some r = Σ_{j ≤ degree_bound} S^j·ρ_j
/// (ρ_j ∈ K-span of the basis monomials) has v(r^p − x) ≥ v.
///
/// Since r^p = Σ_{j,b} β_{jb}^p S^{pj}(T^b)^p, each S-coefficient of each coordinate
/// of r^p − x is K^p-linear in the β^p; splitting into the p-basis of K over K^p
/// gives linear equations over K in the β.  Levels are added one at a time until
/// the system becomes inconsistent.
pub fn brute_force_q(pres: &LocalRingPresentation, x: &RatFunc, degree_bound: usize, valuation_bound: usize) -> Result<usize> {
    check_x(x)?;
    let ring = pres.at(valuation_bound + 1)?;
    let d = ring.rank();
    let k = ring.field();
    let p = k.p() as usize;
    let nvars = (degree_bound + 1) * d;
    let rhs = nvars;
    let m: Vec<Elem> = (0..d).map(|b| ring.frobenius(&ring.monomial(b))).collect();
    let xcomp = x.pbasis_components(1);
    let nb = xcomp.len();
    let mut ech = Echelon::new();
    for level in 0..valuation_bound {
        for l in 0..d {
            // components of Σ_{j,b} β_{jb}^p [M_b]_{l, level − pj}
            let mut rows: Vec<Vec<(usize, RatFunc)>> = vec![vec![]; nb];
            for j in 0..=degree_bound.min(level / p) {
                for (b, mb) in m.iter().enumerate() {
                    let c = mb.coord(l).coeff(level - p * j);
                    if c.is_zero() {
                        continue;
                    }
                    for (e, ce) in c.pbasis_components(1).into_iter().enumerate() {
                        if !ce.is_zero() {
                            rows[e].push((j * d + b, ce));
                        }
                    }
                }
            }
            if level == 0 && l == 0 {
                for (e, xe) in xcomp.iter().enumerate() {
                    if !xe.is_zero() {
                        rows[e].push((rhs, xe.clone()));
                    }
                }
            }
            for row in rows {
                ech.insert(row);
            }
        }
        if ech.has_pivot(rhs) {
            return Ok(level);
        }
    }
    Err(Error::BoundExceeded(format!("v(r^p − x) ≥ {valuation_bound} is reachable with S-degree ≤ {degree_bound}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    fn pres(p: u32, rel: &str) -> LocalRingPresentation {
        let k = RationalField::with_names(p, &["t"]).unwrap();
        LocalRingPresentation::parse_relations(&k, &["S", "T"], &[rel]).unwrap()
    }

    #[test]
    fn ramified_single_step() {
        let pr = pres(3, "T^9 - t - S^2");
        let t = RatFunc::var(pr.field(), 0);
        let w = q_invariant(&pr, &t, Budget::default()).unwrap();
        assert_eq!(w.q, 2);
        assert!(w.trace.is_empty());
        assert_eq!(w.certificate, Certificate::NotDivisible);
        assert_eq!(brute_force_q(&pr, &t, 3, 12).unwrap(), 2);
    }

    #[test]
    fn improvement_needed() {
        // start T: v(T³ − t) = 6 with lead 2 = 2³; then (T + S²)³ − t = S⁹T and T ∉ L³
        let pr = pres(3, "T^3 - t - 2*S^6 - S^9*T");
        let t = RatFunc::var(pr.field(), 0);
        let w = q_invariant(&pr, &t, Budget::default()).unwrap();
        assert_eq!(w.trace.len(), 1);
        assert_eq!(w.trace[0].q_r, 6);
        assert_eq!(w.q, 9);
        assert_eq!(w.q, brute_force_q(&pr, &t, 6, 20).unwrap());
    }

    #[test]
    fn residue_certificate() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let t = RatFunc::var(&k, 0);
        let w = q_invariant(&pr, &t, Budget::default()).unwrap();
        assert_eq!(w.q, 9);
        assert!(matches!(w.certificate, Certificate::LeadNotPower(_)));
        assert_eq!(brute_force_q(&pr, &t, 4, 14).unwrap(), 9);
    }

    #[test]
    fn no_root_and_bounds() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^3 - t - S"]).unwrap();
        let s = RatFunc::var(&k, 0);
        let w = q_invariant(&pr, &s, Budget::default()).unwrap();
        assert_eq!((w.q, w.certificate), (0, Certificate::NoResidueRoot));
        assert_eq!(brute_force_q(&pr, &s, 2, 5).unwrap(), 0);
        let t = RatFunc::var(&k, 1);
        assert_eq!(q_invariant(&pr, &t, Budget::default()).unwrap().q, 1);
        let deep = pres(3, "T^9 - t - S^5");
        let t1 = RatFunc::var(deep.field(), 0);
        assert!(matches!(brute_force_q(&deep, &t1, 1, 3), Err(Error::BoundExceeded(_))));
        assert!(q_invariant(&pr, &s.pow(3), Budget::default()).is_err());
    }
}
