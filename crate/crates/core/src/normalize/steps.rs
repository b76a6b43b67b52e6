//! Consecutive normalizations: the two-step case analysis for one x, chains
//! along a p-basis, and the step inequalities between them.

use super::represent::{represent_normalization, Method, Normalized, SuppliedNormalization};
use crate::basefield::RatFunc;
use crate::error::{Error, Result};
use crate::invariants::{delta_conductor, Certificate, InvariantReport};
use crate::localring::LocalRingPresentation;
use crate::series::Budget;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub law: String,
    pub holds: bool,
}

fn verdict(law: impl Into<String>, holds: bool) -> Verdict {
    Verdict { law: law.into(), holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoStepReport {
    pub p: usize,
    /// 1: (e₁,e₂) = (p,p); 2: (p,1); 3: (1,1); 4: (1,p).  None when x^{1/p²} ∉ L(1).
    pub case: Option<u8>,
    pub q1: usize,
    pub q2: usize,
    pub e1: usize,
    pub e2: usize,
    pub delta10: usize,
    pub delta21: usize,
    pub g10: usize,
    pub g21: usize,
    /// Whether L(2) is simple over L, decided from the residue data (case 3 only).
    pub simple: Option<bool>,
    pub method: Option<Method>,
    pub step1: InvariantReport,
    pub step2: Option<InvariantReport>,
    pub verdicts: Vec<Verdict>,
}

impl TwoStepReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// L(2) = L(1)(c^{1/p}) with c the final leading coefficient of the second climb;
/// it is simple over L iff c ∉ L.  Needs L(1) = L[U] with ψ(L) = K′, i.e. the
/// images of the old generators reduce to constants.
fn simple_over_l(nz: &Normalized, step2: &InvariantReport) -> Result<Option<bool>> {
    let Certificate::LeadNotPower(c) = &step2.witness.certificate else { return Ok(None) };
    let l1 = nz.pres.residue_ring()?;
    if l1.m() != 1 {
        return Ok(None);
    }
    let images = nz.psi_images(&l1)?;
    if images.iter().any(|e| e.residue_vector()[1..].iter().any(|x| !x.is_zero())) {
        return Ok(None);
    }
    Ok(Some(c[1..].iter().any(|x| !x.is_zero())))
}

/// The invariants of R → R(1_x) → R(2_x) and the case laws relating them.
pub fn two_step_analysis(
    pres: &LocalRingPresentation,
    x: &RatFunc,
    budget: Budget,
    supplied: Option<&SuppliedNormalization>,
    oracle: bool,
) -> Result<TwoStepReport> {
    let p = pres.field().p() as usize;
    let step1 = delta_conductor(pres, x, budget, oracle)?;
    let mut rep = TwoStepReport {
        p,
        case: None,
        q1: step1.q,
        q2: 0,
        e1: step1.e,
        e2: 1,
        delta10: step1.delta,
        delta21: 0,
        g10: step1.genus_step,
        g21: 0,
        simple: None,
        method: None,
        step1,
        step2: None,
        verdicts: vec![],
    };
    if rep.q1 == 0 {
        return Ok(rep);
    }
    let nz = represent_normalization(pres, x, budget, supplied)?;
    rep.method = Some(nz.method);
    let x2 = RatFunc::var(&nz.field, nz.var);
    let step2 = delta_conductor(&nz.pres, &x2, budget, oracle)?;
    (rep.q2, rep.e2, rep.delta21, rep.g21) = (step2.q, step2.e, step2.delta, step2.genus_step);
    if rep.q2 == 0 {
        rep.step2 = Some(step2);
        return Ok(rep);
    }
    let (q1, q2, d10, d21, g10, g21) = (rep.q1, rep.q2, rep.delta10, rep.delta21, rep.g10, rep.g21);
    let c = p * (p - 1) / 2;
    let v = &mut rep.verdicts;
    rep.case = Some(match (rep.e1 == p, rep.e2 == p) {
        (true, true) => {
            v.push(verdict("q(x^1/p) = q(x)", q2 == q1));
            v.push(verdict("δ21 = δ10", d21 == d10));
            v.push(verdict("p·g21 = g10", p * g21 == g10));
            1
        }
        (true, false) => {
            v.push(verdict("q(x^1/p) < q(x)", q2 < q1));
            v.push(verdict("δ21 ≤ δ10", d21 <= d10));
            v.push(verdict("p·g21 ≤ g10", p * g21 <= g10));
            2
        }
        (false, false) => {
            let simple = simple_over_l(&nz, &step2)?;
            rep.simple = simple;
            v.push(verdict("p·q(x^1/p) ≤ q(x)", p * q2 <= q1));
            v.push(verdict("p·δ21 ≤ δ10", p * d21 <= d10));
            v.push(verdict("p·q(x^1/p) = q(x) ⟺ p·δ21 = δ10", (p * q2 == q1) == (p * d21 == d10)));
            v.push(verdict("p·g21 ≤ g10", p * g21 <= g10));
            if let Some(s) = simple {
                v.push(verdict("L(2) simple over L ⟺ p·q(x^1/p) = q(x)", s == (p * q2 == q1)));
                if s {
                    v.push(verdict("p·g21 = g10 (L(2) simple)", p * g21 == g10));
                }
            }
            3
        }
        (false, true) => {
            v.push(verdict("p·q(x^1/p) ≤ q(x)", p * q2 <= q1));
            v.push(verdict("p·δ21 + p(p−1)/2 ≤ δ10", p * d21 + c <= d10));
            v.push(verdict("p·q(x^1/p) = q(x) ⟺ p·δ21 + p(p−1)/2 = δ10", (p * q2 == q1) == (p * d21 + c == d10)));
            v.push(verdict("p·g21 + p(p−1)/2 ≤ g10", p * g21 + c <= g10));
            4
        }
    });
    rep.step2 = Some(step2);
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    /// Index of the p-basis variable adjoined at this step.
    pub var: usize,
    pub name: String,
    pub report: InvariantReport,
    /// How the ring after this step was presented (None if it was not needed or failed).
    pub method: Option<Method>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub p: usize,
    pub order: Vec<usize>,
    pub steps: Vec<ChainStep>,
    /// Σ g_i over the steps computed.
    pub total: usize,
    pub complete: bool,
    /// Step index and message of the first failure.
    pub failure: Option<(usize, String)>,
    /// R_1, R_2, … as presented (the last one only if its re-presentation succeeded).
    #[serde(skip)]
    pub rings: Vec<Normalized>,
}

impl ChainReport {
    /// (p−1)/2 divides every step's g (p odd).
    pub fn tate_holds(&self) -> bool {
        self.p == 2 || self.steps.iter().all(|s| s.report.genus_step % ((self.p - 1) / 2) == 0)
    }
}

/// g₁₀ of R ⊗ K(t_{i₁}^{1/p}, …) as the sum of single steps along `order`
/// (default t₁, …, t_c).  `supplied[j]` is offered to step j's re-presentation.
pub fn full_genus_change(
    pres: &LocalRingPresentation,
    order: Option<&[usize]>,
    budget: Budget,
    supplied: &[Option<SuppliedNormalization>],
) -> Result<ChainReport> {
    let c = pres.field().c();
    let order: Vec<usize> = order.map(|o| o.to_vec()).unwrap_or_else(|| (0..c).collect());
    if order.iter().any(|&i| i >= c) {
        return Err(Error::input("chain order refers to a missing variable"));
    }
    let p = pres.field().p() as usize;
    let mut out = ChainReport { p, order: order.clone(), steps: vec![], total: 0, complete: false, failure: None, rings: vec![] };
    let mut cur = pres.clone();
    for (pos, &i) in order.iter().enumerate() {
        let k = cur.field().clone();
        let x = RatFunc::var(&k, i);
        let report = match delta_conductor(&cur, &x, budget, false) {
            Ok(r) => r,
            Err(e) => {
                out.failure = Some((pos, e.to_string()));
                return Ok(out);
            }
        };
        out.total += report.genus_step;
        out.steps.push(ChainStep { var: i, name: k.names()[i].clone(), report, method: None });
        match represent_normalization(&cur, &x, budget, supplied.get(pos).and_then(|s| s.as_ref())) {
            Ok(nz) => {
                out.steps[pos].method = Some(nz.method);
                cur = nz.pres.clone();
                out.rings.push(nz);
            }
            Err(e) if pos + 1 == order.len() => {
                // the last ring is only needed by callers that continue the tower
                let _ = e;
            }
            Err(e) => {
                out.failure = Some((pos, e.to_string()));
                return Ok(out);
            }
        }
    }
    out.complete = true;
    Ok(out)
}

/// p·g′₂₁ ≤ g′₁₀ for the full p-basis, plus the single-x laws of each two-step run.
pub fn check_step_inequalities(p: usize, g10_full: usize, g21_full: usize, two_steps: &[TwoStepReport]) -> Vec<Verdict> {
    let mut out = vec![verdict(format!("p·g′21 ≤ g′10 ({} ≤ {g10_full})", p * g21_full), p * g21_full <= g10_full)];
    for (i, r) in two_steps.iter().enumerate() {
        out.push(verdict(format!("step {i}: p·g21 ≤ g10 ({} ≤ {})", p * r.g21, r.g10), p * r.g21 <= r.g10));
        out.extend(r.verdicts.iter().map(|v| verdict(format!("step {i}: {}", v.law), v.holds)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    #[test]
    fn family_three_equality_branch() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let r = two_step_analysis(&pr, &RatFunc::var(&k, 0), Budget::default(), None, true).unwrap();
        assert_eq!(r.case, Some(3));
        assert_eq!((r.q1, r.q2), (9, 3));
        assert_eq!(r.simple, Some(true));
        assert_eq!((r.g10, r.g21), (9, 3));
        assert!(r.holds(), "{:?}", r.verdicts);
    }

    #[test]
    fn family_four_equality_branch() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^6", "Y^3 - t").unwrap();
        let r = two_step_analysis(&pr, &RatFunc::var(&k, 0), Budget::default(), None, true).unwrap();
        assert_eq!(r.case, Some(4));
        assert_eq!((r.q1, r.q2, r.delta10, r.g10, r.g21), (6, 2, 6, 6, 1));
        assert!(r.holds(), "{:?}", r.verdicts);
    }

    #[test]
    fn chain_over_two_variables() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "Y"], &["Y^3 - S^27*Y + s^3*S^9 - t"]).unwrap();
        let a = full_genus_change(&pr, None, Budget::default(), &[]).unwrap();
        let b = full_genus_change(&pr, Some(&[1, 0]), Budget::default(), &[]).unwrap();
        assert!(a.complete && b.complete);
        assert_eq!(a.total, 27);
        assert_eq!(a.total, b.total);
        assert!(a.tate_holds());
        let ts = two_step_analysis(&pr, &RatFunc::var(&k, 1), Budget::default(), None, false).unwrap();
        assert_eq!((ts.case, ts.q1, ts.q2), (Some(3), 27, 3));
        assert_eq!(ts.simple, Some(false));
        assert!(ts.holds(), "{:?}", ts.verdicts);
    }
}
