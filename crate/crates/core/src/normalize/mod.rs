//! The normalization R(1) of R ⊗ K(x^{1/p}): base change with the extended
//! valuation, the lattice and δ oracles, re-presentation in normal form, and
//! the two-step and chain analyses.

pub mod lattice;
pub mod represent;
pub mod steps;

pub use lattice::{normalization_lattice, verify_generator, LatticeGenerator, NormalizationLattice};
pub use represent::{from_supplied, represent_normalization, Method, Normalized, SuppliedNormalization};
pub use steps::{check_step_inequalities, full_genus_change, two_step_analysis, ChainReport, ChainStep, TwoStepReport, Verdict};

use crate::basefield::RatFunc;
use crate::error::{Error, Result};
use crate::invariants::{q_invariant, semigroup_gaps, InvariantReport, OracleConfirmation};
use crate::localring::{Elem, LocalRingPresentation, Ring};
use crate::series::{Budget, Val};

/// R ⊗_K K(ξ), ξ^p = x, at a fixed precision, with v₁ normalized so that
/// v₁ is the valuation of R(1).
#[derive(Clone, Debug)]
pub struct BaseChangedRing {
    pub ring: Ring,
    pub x: RatFunc,
    /// v₁(S).
    pub e: usize,
}

/// Σ_{i<p} a_i ξ^i.
#[derive(Clone, Debug)]
pub struct BcElem {
    pub parts: Vec<Elem>,
}

impl BaseChangedRing {
    fn p(&self) -> usize {
        self.ring.field().p() as usize
    }
    pub fn from_base(&self, a: &Elem) -> BcElem {
        let mut parts = vec![self.ring.zero(); self.p()];
        parts[0] = a.clone();
        BcElem { parts }
    }
    pub fn xi(&self) -> BcElem {
        let mut parts = vec![self.ring.zero(); self.p()];
        parts[1 % self.p()] = self.ring.one();
        BcElem { parts }
    }
    pub fn add(&self, a: &BcElem, b: &BcElem) -> BcElem {
        BcElem { parts: a.parts.iter().zip(&b.parts).map(|(x, y)| self.ring.add(x, y)).collect() }
    }
    pub fn sub(&self, a: &BcElem, b: &BcElem) -> BcElem {
        BcElem { parts: a.parts.iter().zip(&b.parts).map(|(x, y)| self.ring.sub(x, y)).collect() }
    }
    pub fn mul(&self, a: &BcElem, b: &BcElem) -> BcElem {
        let p = self.p();
        let r = &self.ring;
        let mut parts = vec![r.zero(); p];
        for (i, ai) in a.parts.iter().enumerate() {
            for (j, bj) in b.parts.iter().enumerate() {
                let mut t = r.mul(ai, bj);
                let mut k = i + j;
                if k >= p {
                    k -= p;
                    t = r.scale(&t, &self.x);
                }
                parts[k] = r.add(&parts[k], &t);
            }
        }
        BcElem { parts }
    }
    /// w^p = Σ a_i^p x^i ∈ R.
    pub fn frobenius(&self, a: &BcElem) -> Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (i, ai) in a.parts.iter().enumerate() {
            acc = r.add(&acc, &r.scale(&r.frobenius(ai), &self.x.pow(i as u64)));
        }
        acc
    }
    /// v₁(w) = e·v(w^p)/p.
    pub fn v1(&self, a: &BcElem) -> Val {
        let p = self.p();
        match self.ring.valuation(&self.frobenius(a)) {
            Val::Finite(v) => Val::Finite(self.e * v / p),
            Val::AtLeast(v) => Val::AtLeast(self.e * v / p),
        }
    }
}

/// R ⊗ K(x^{1/p}) at precision n, with e determined by q(x).
pub fn base_change(pres: &LocalRingPresentation, x: &RatFunc, n: usize, budget: Budget) -> Result<BaseChangedRing> {
    let w = q_invariant(pres, x, budget)?;
    let p = pres.field().p() as usize;
    let e = if w.q > 0 && w.q % p != 0 { p } else { 1 };
    Ok(BaseChangedRing { ring: pres.at(n)?, x: x.clone(), e })
}

/// δ by counting: gaps of ⟨p, q⟩ when e = p, Σ_{i<p} (q/p)·i when f = p.
pub fn combinatorial_delta(p: usize, q: usize) -> Result<usize> {
    if q == 0 {
        Ok(0)
    } else if q % p != 0 {
        Ok(semigroup_gaps(p, q)?.len())
    } else {
        Ok((1..p).map(|i| (q / p) * i).sum())
    }
}

/// Confirms δ and g₁₀ of a report by the combinatorial count and by the lattice.
pub fn delta_oracle(pres: &LocalRingPresentation, rep: &InvariantReport, budget: Budget) -> Result<OracleConfirmation> {
    let combinatorial = combinatorial_delta(rep.p, rep.q)?;
    let c0 = rep.conductor_exponent.div_ceil(rep.e).max(1);
    let lat = normalization_lattice(pres, &rep.x, c0, budget.cap, false)?;
    let lattice_genus = lat.g10;
    let lattice = if rep.residue_index == 0 {
        lattice_genus
    } else {
        if lattice_genus % rep.residue_index != 0 {
            return Err(Error::OracleMismatch(format!(
                "lattice dimension {lattice_genus} not divisible by [L:K(x^1/p)] = {}",
                rep.residue_index
            )));
        }
        lattice_genus / rep.residue_index
    };
    if combinatorial != rep.delta || lattice != rep.delta || lattice_genus != rep.genus_step {
        return Err(Error::OracleMismatch(format!(
            "δ = {} by formula, {combinatorial} by counting, {lattice} by lattice (g₁₀ {} vs {lattice_genus})",
            rep.delta, rep.genus_step
        )));
    }
    Ok(OracleConfirmation { combinatorial, lattice, lattice_genus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;
    use crate::invariants::delta_conductor;

    #[test]
    fn extended_valuation() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let fam1 = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^2"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let bc = base_change(&fam1, &t, 12, Budget::default()).unwrap();
        assert_eq!(bc.e, 3);
        let r = &bc.ring;
        let u = bc.sub(&bc.from_base(&r.pow(&r.var(0), 3)), &bc.xi());
        assert_eq!(bc.v1(&u), Val::Finite(2));
        assert_eq!(bc.v1(&bc.from_base(&r.s_power(1))), Val::Finite(3));
        // v₁ is multiplicative
        assert_eq!(bc.v1(&bc.mul(&u, &u)), Val::Finite(4));

        let fam3 = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let bc = base_change(&fam3, &t, 12, Budget::default()).unwrap();
        assert_eq!(bc.e, 1);
        let u = bc.sub(&bc.from_base(&bc.ring.var(0)), &bc.xi());
        assert_eq!(bc.v1(&u), Val::Finite(3));
    }

    #[test]
    fn counting() {
        assert_eq!(combinatorial_delta(3, 2).unwrap(), 1);
        assert_eq!(combinatorial_delta(3, 9).unwrap(), 9);
        assert_eq!(combinatorial_delta(5, 3).unwrap(), 4);
        assert_eq!(combinatorial_delta(5, 0).unwrap(), 0);
    }

    #[test]
    fn oracle_confirms_formulas() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let t = RatFunc::var(&k, 0);
        for (rel, hyp) in [("T^9 - t - S^2", None), ("Y^4 - t*Y - S^9", Some("Y^3 - t")), ("T^3 - t - S", None)] {
            let pr = match hyp {
                None => LocalRingPresentation::parse_relations(&k, &["S", "T"], &[rel]).unwrap(),
                Some(pt) => LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], rel, pt).unwrap(),
            };
            let rep = delta_conductor(&pr, &t, Budget::default(), true).unwrap();
            let o = rep.oracle.unwrap();
            assert_eq!((o.combinatorial, o.lattice, o.lattice_genus), (rep.delta, rep.delta, rep.genus_step));
        }
    }
}
