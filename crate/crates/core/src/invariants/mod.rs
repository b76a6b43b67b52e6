//! q(x), ramification, δ and conductor of R ⊗ K(x^{1/p}), the coin-problem
//! dimension and the normal-form data of a presentation.

pub mod coin;
pub mod normal_form;
pub mod q;

pub use coin::{coin_dim, semigroup_gaps, CoinDim};
pub use normal_form::extract_normal_form;
pub use q::{brute_force_q, q_at, q_invariant, Certificate, QStep, QWitness};

use crate::basefield::RatFunc;
use crate::error::Result;
use crate::localring::LocalRingPresentation;
use crate::normalize;
use crate::series::Budget;
use serde::Serialize;

/// Values of δ found independently of the closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfirmation {
    /// Gap count of ⟨p, q⟩ (e = p) or the staircase sum (f = p).
    pub combinatorial: usize,
    /// dim_{K′} R(1)/(R ⊗ K′) divided by [L : K′], from the p-th-power lattice.
    pub lattice: usize,
    /// dim_{K′} R(1)/(R ⊗ K′).
    pub lattice_genus: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub x: RatFunc,
    pub p: usize,
    pub q: usize,
    /// v₁(S), the ramification index of R(1)/R.
    pub e: usize,
    /// [L(1) : L].
    pub f: usize,
    pub delta: usize,
    /// Valuation in R(1) of the conductor.
    pub conductor_exponent: usize,
    /// [L : K(x^{1/p})] (0 when x^{1/p} ∉ L).
    pub residue_index: usize,
    /// g₁₀ = δ·[L : K(x^{1/p})].
    pub genus_step: usize,
    #[serde(skip)]
    pub witness: QWitness,
    pub trace: Vec<usize>,
    pub oracle: Option<OracleConfirmation>,
}

impl InvariantReport {
    /// Closed forms in terms of q, p and D = [L:K].
    pub fn from_witness(witness: QWitness, p: usize, rank: usize) -> Self {
        let q = witness.q;
        let (e, f, delta, conductor_exponent, residue_index) = if q == 0 {
            (1, p, 0, 0, 0)
        } else if q % p != 0 {
            (p, 1, (p - 1) * (q - 1) / 2, (p - 1) * (q - 1), rank / p)
        } else {
            (1, p, (p - 1) * q / 2, (p - 1) * q / p, rank / p)
        };
        InvariantReport {
            x: witness.x.clone(),
            p,
            q,
            e,
            f,
            delta,
            conductor_exponent,
            residue_index,
            genus_step: delta * residue_index,
            trace: witness.trace.iter().map(|s| s.q_r).collect(),
            witness,
            oracle: None,
        }
    }

    /// conductor·[L(1):L] = 2δ.
    pub fn conductor_identity_holds(&self) -> bool {
        self.conductor_exponent * self.f == 2 * self.delta
    }
}

/// q(x) and the invariants it determines; with `oracle`, δ is also computed by
/// the combinatorial count and the normalization lattice, and any disagreement
/// is an error.
pub fn delta_conductor(pres: &LocalRingPresentation, x: &RatFunc, budget: Budget, oracle: bool) -> Result<InvariantReport> {
    let w = q_invariant(pres, x, budget)?;
    let p = pres.field().p() as usize;
    let mut rep = InvariantReport::from_witness(w, p, pres.rank());
    if oracle {
        rep.oracle = Some(normalize::delta_oracle(pres, &rep, budget)?);
    }
    Ok(rep)
}

/// x^{1/p} ∉ L or q(x) = 1.
pub fn is_x_normal(pres: &LocalRingPresentation, x: &RatFunc, budget: Budget) -> Result<bool> {
    let q = q_invariant(pres, x, budget)?.q;
    Ok(q <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    #[test]
    fn closed_forms() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let fam1 = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^2"]).unwrap();
        let r = delta_conductor(&fam1, &t, Budget::default(), false).unwrap();
        assert_eq!((r.q, r.e, r.f, r.delta, r.conductor_exponent, r.genus_step), (2, 3, 1, 1, 2, 3));
        assert!(r.conductor_identity_holds());
        let fam3 = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let r = delta_conductor(&fam3, &t, Budget::default(), false).unwrap();
        assert_eq!((r.q, r.e, r.f, r.delta, r.conductor_exponent, r.genus_step), (9, 1, 3, 9, 6, 9));
        assert!(r.conductor_identity_holds());
        let smooth = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^3 - t - S"]).unwrap();
        let r = delta_conductor(&smooth, &t, Budget::default(), false).unwrap();
        assert_eq!((r.q, r.delta, r.conductor_exponent), (1, 0, 0));
        assert!(is_x_normal(&smooth, &t, Budget::default()).unwrap());
        assert!(!is_x_normal(&fam1, &t, Budget::default()).unwrap());
    }

    #[test]
    fn field_without_generators_is_normal() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::from_relations(&k, vec!["S".into()], vec![]).unwrap();
        assert_eq!(pr.rank(), 1);
        assert!(is_x_normal(&pr, &RatFunc::var(&k, 0), Budget::default()).unwrap());
    }
}
