//! Whole-pipeline checks: each instance is pushed through q, δ, the lattice
//! oracle, the two-step analysis, the p-basis chain, jac and the kernel chain,
//! and every identity relating them is recorded as an exact pass/fail outcome.

pub mod fixtures;
pub mod random;

pub use fixtures::{corpus, fixture, Expected, Family, Fixture};
pub use random::{random_normal_form, RandomPresentation, Shape};

use crate::basefield::RatFunc;
use crate::error::{Error, Result};
use crate::invariants::{brute_force_q, delta_conductor, InvariantReport};
use crate::jacobian::{jac_number, kernel_dims_along_chain};
use crate::localring::LocalRingPresentation;
use crate::normalize::{check_step_inequalities, from_supplied, full_genus_change, represent_normalization, two_step_analysis, ChainReport, Method, SuppliedNormalization};
use crate::series::Budget;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// What an outcome checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// q(x) from the climb equals the linear-algebra search (and the designed value).
    QOracle,
    /// δ by formula = by counting = by lattice.
    DeltaDual,
    /// conductor·[L(1):L] = 2δ.
    ConductorDelta,
    /// The case of the two-step analysis and its laws.
    CaseLaw,
    /// p·g₂₁ ≤ g₁₀ and the full p-basis version.
    StepInequality,
    /// Smith, Fitting and torsion routes to jac; m elementary divisors.
    JacRoutes,
    /// 2p·g₁₀ = (p−1)·jac.
    Headline,
    /// (p−1)/2 | g.
    Tate,
    /// Kernel dimensions along the chain: closed forms and Σ = jac.
    KernelChain,
    /// Computed and supplied presentations of R(1) agree.
    Normalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub check: Check,
    pub law: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Values {
    pub q1: Option<usize>,
    pub q2: Option<usize>,
    pub delta10: Option<usize>,
    pub delta21: Option<usize>,
    pub conductor: Option<usize>,
    pub g10: Option<usize>,
    pub g21: Option<usize>,
    pub case: Option<u8>,
    pub method: Option<Method>,
    pub chain_total: Option<usize>,
    pub jac: Option<usize>,
    pub kernels: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub label: String,
    pub p: usize,
    pub values: Values,
    pub outcomes: Vec<Outcome>,
    /// The first hard error, if the pipeline stopped early.
    pub error: Option<String>,
    pub millis: u128,
}

impl InstanceResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.outcomes.iter().all(|o| o.holds)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerdictSet {
    pub instances: Vec<InstanceResult>,
}

impl VerdictSet {
    pub fn all_pass(&self) -> bool {
        self.instances.iter().all(|i| i.passed())
    }
    /// (passed, total) outcomes of one kind, counting a stopped instance as a failure of every kind.
    pub fn tally(&self, check: Check) -> (usize, usize) {
        let mut out = (0, 0);
        for inst in &self.instances {
            for o in inst.outcomes.iter().filter(|o| o.check == check) {
                out.1 += 1;
                out.0 += o.holds as usize;
            }
            if inst.error.is_some() {
                out.1 += 1;
            }
        }
        out
    }
    pub fn failures(&self) -> Vec<String> {
        let mut v = vec![];
        for i in &self.instances {
            if let Some(e) = &i.error {
                v.push(format!("{}: error: {e}", i.label));
            }
            v.extend(i.outcomes.iter().filter(|o| !o.holds).map(|o| format!("{}: {:?}: {}", i.label, o.check, o.law)));
        }
        v
    }
    pub fn merge(mut self, o: VerdictSet) -> VerdictSet {
        self.instances.extend(o.instances);
        self
    }
    pub fn table(&self) -> String {
        let mut s = format!("{:<28} {:>5} {:>4} {:>4} {:>6} {:>6} {:>6} {:>7} {:>6}\n", "instance", "q1", "q2", "case", "g10", "g21", "jac", "checks", "ms");
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for i in &self.instances {
            let v = &i.values;
            let ok = i.outcomes.iter().filter(|o| o.holds).count();
            let status = if i.passed() { format!("{ok}/{}", i.outcomes.len()) } else { format!("FAIL {ok}/{}", i.outcomes.len()) };
            s += &format!(
                "{:<28} {:>5} {:>4} {:>4} {:>6} {:>6} {:>6} {:>7} {:>6}\n",
                i.label,
                show(v.q1),
                show(v.q2),
                v.case.map_or("-".into(), |c| c.to_string()),
                show(v.g10),
                show(v.g21),
                show(v.jac),
                status,
                i.millis
            );
        }
        s
    }
}

/// 2p·g₁₀ = (p−1)·jac for the genus change over the whole p-basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenJacob {
    pub p: usize,
    pub g10: usize,
    pub jac: usize,
    pub holds: bool,
}

pub fn check_genjacob(pres: &LocalRingPresentation, budget: Budget, supplied: &[Option<SuppliedNormalization>]) -> Result<GenJacob> {
    let chain = full_genus_change(pres, None, budget, supplied)?;
    if let Some((i, e)) = &chain.failure {
        return Err(Error::unsupported(format!("genus change stopped at step {i}: {e}")));
    }
    let jac = jac_number(pres, budget)?.jac;
    Ok(genjacob_from(chain.p, chain.total, jac))
}

fn genjacob_from(p: usize, g10: usize, jac: usize) -> GenJacob {
    GenJacob { p, g10, jac, holds: 2 * p * g10 == (p - 1) * jac }
}

/// (p−1)/2 | g; vacuous for p = 2.
pub fn check_tate(g: usize, p: usize) -> bool {
    p == 2 || g % ((p - 1) / 2) == 0
}

/// q(x) by the independent search, with bounds sufficient to confirm `q`.
pub fn q_oracle(pres: &LocalRingPresentation, x: &RatFunc, q: usize) -> Result<usize> {
    let p = pres.field().p() as usize;
    brute_force_q(pres, x, q.div_ceil(p) + 1, q + 2)
}

struct Run {
    outcomes: Vec<Outcome>,
    values: Values,
}

impl Run {
    fn push(&mut self, check: Check, law: impl Into<String>, holds: bool) {
        self.outcomes.push(Outcome { check, law: law.into(), holds });
    }

    /// q, δ by three routes, and the conductor identity for one step.
    fn single_step(&mut self, pres: &LocalRingPresentation, rep: &InvariantReport, tag: &str) -> Result<()> {
        let bf = q_oracle(pres, &rep.x, rep.q)?;
        self.push(Check::QOracle, format!("{tag}: q = {} (search {bf})", rep.q), bf == rep.q);
        match &rep.oracle {
            Some(o) => self.push(
                Check::DeltaDual,
                format!("{tag}: δ = {} = {} (counting) = {} (lattice), g = {} = {}", rep.delta, o.combinatorial, o.lattice, rep.genus_step, o.lattice_genus),
                o.combinatorial == rep.delta && o.lattice == rep.delta && o.lattice_genus == rep.genus_step,
            ),
            None => self.push(Check::DeltaDual, format!("{tag}: no oracle run"), false),
        }
        self.push(
            Check::ConductorDelta,
            format!("{tag}: {}·{} = 2·{}", rep.conductor_exponent, rep.f, rep.delta),
            rep.conductor_identity_holds(),
        );
        self.push(Check::Tate, format!("{tag}: (p−1)/2 | g = {}", rep.genus_step), check_tate(rep.genus_step, rep.p));
        Ok(())
    }

    /// jac by three routes, the headline identity and the kernel chain.
    fn jacobian(&mut self, pres: &LocalRingPresentation, chain: &ChainReport, budget: Budget) -> Result<()> {
        let p = chain.p;
        let jr = jac_number(pres, budget)?;
        self.values.jac = Some(jr.jac);
        self.push(Check::JacRoutes, format!("Smith {} = Fitting {} = torsion {}", jr.jac, jr.fitting, jr.torsion_dim), jr.jac == jr.fitting && jr.jac == jr.torsion_dim);
        self.push(Check::JacRoutes, format!("{} elementary divisors for m = {}", jr.exponents.len(), pres.m()), jr.exponents.len() == pres.m());
        for st in &chain.steps {
            self.push(Check::Tate, format!("chain step {}: (p−1)/2 | {}", st.name, st.report.genus_step), check_tate(st.report.genus_step, p));
        }
        if chain.failure.is_none() {
            self.values.chain_total = Some(chain.total);
            let gj = genjacob_from(p, chain.total, jr.jac);
            self.push(Check::Headline, format!("2·{p}·{} = {}·{}", gj.g10, p - 1, gj.jac), gj.holds);
        }
        if chain.failure.is_none() && chain.rings.len() == chain.steps.len() {
            let kr = kernel_dims_along_chain(pres, chain, budget)?;
            self.values.kernels = Some(kr.steps.iter().map(|s| s.dim).collect());
            for s in &kr.steps {
                self.push(Check::KernelChain, format!("kernel at {}: {} (closed form {})", s.name, s.dim, s.closed_form), s.dim == s.closed_form);
            }
            self.push(Check::KernelChain, format!("Σ kernels {} = jac {}", kr.total, kr.jac), kr.additive());
        }
        Ok(())
    }
}

fn finish(label: String, p: usize, run: Run, res: Result<()>, t0: Instant) -> InstanceResult {
    InstanceResult { label, p, values: run.values, outcomes: run.outcomes, error: res.err().map(|e| e.to_string()), millis: t0.elapsed().as_millis() }
}

fn fixture_body(fx: &Fixture, budget: Budget, run: &mut Run) -> Result<()> {
    let p = fx.p as usize;
    let ex = &fx.expected;
    let x = RatFunc::var(fx.pres.field(), fx.x);
    let two = two_step_analysis(&fx.pres, &x, budget, Some(&fx.supplied), true)?;
    let v = &mut run.values;
    (v.q1, v.q2, v.delta10, v.delta21, v.g10, v.g21, v.case, v.method) =
        (Some(two.q1), Some(two.q2), Some(two.delta10), Some(two.delta21), Some(two.g10), Some(two.g21), two.case, two.method);
    v.conductor = Some(two.step1.conductor_exponent);

    run.single_step(&fx.pres, &two.step1, "step 1")?;
    run.push(Check::QOracle, format!("q(x) = {} (designed {})", two.q1, ex.q1), two.q1 == ex.q1);
    let nz = represent_normalization(&fx.pres, &x, budget, Some(&fx.supplied))?;
    let step2 = two.step2.as_ref().ok_or_else(|| Error::CheckFailed("no second step".into()))?;
    run.single_step(&nz.pres, step2, "step 2")?;
    run.push(Check::QOracle, format!("q(x^1/p) = {} (designed {})", two.q2, ex.q2), two.q2 == ex.q2);

    run.push(Check::CaseLaw, format!("case {:?} (designed {})", two.case, ex.case), two.case == Some(ex.case));
    if let Some(eq) = ex.equality {
        run.push(Check::CaseLaw, format!("p·q2 = q1 is {} (designed {eq})", p * two.q2 == two.q1), (p * two.q2 == two.q1) == eq);
    }
    for vd in &two.verdicts {
        let check = if vd.law.starts_with("p·g21 ≤") { Check::StepInequality } else { Check::CaseLaw };
        run.push(check, vd.law.clone(), vd.holds);
    }

    let supplied: Vec<Option<SuppliedNormalization>> = if fx.pres.field().c() == 1 { vec![Some(fx.supplied.clone())] } else { vec![] };
    let chain = full_genus_change(&fx.pres, None, budget, &supplied)?;
    if let Some((i, e)) = &chain.failure {
        return Err(Error::CheckFailed(format!("chain stopped at step {i}: {e}")));
    }
    // p·g′₂₁ ≤ g′₁₀ over the whole p-basis
    let g21_full = if fx.pres.field().c() == 1 {
        two.g21
    } else {
        let top = chain.rings.last().ok_or_else(|| Error::CheckFailed("chain ring missing".into()))?;
        let up = full_genus_change(&top.pres, None, budget, &[])?;
        if let Some((i, e)) = up.failure {
            return Err(Error::CheckFailed(format!("second chain stopped at step {i}: {e}")));
        }
        up.total
    };
    for vd in check_step_inequalities(p, chain.total, g21_full, &[]) {
        run.push(Check::StepInequality, vd.law, vd.holds);
    }
    run.jacobian(&fx.pres, &chain, budget)?;

    if nz.method == Method::Computed {
        let sup = from_supplied(&fx.pres, &x, budget, &fx.supplied)?;
        let x2 = RatFunc::var(&nz.field, nz.var);
        let (a, b) = (delta_conductor(&nz.pres, &x2, budget, false)?, delta_conductor(&sup.pres, &x2, budget, false)?);
        run.push(Check::Normalization, format!("q(x^1/p): computed {} = supplied {}", a.q, b.q), a.q == b.q);
        let (ja, jb) = (jac_number(&nz.pres, budget)?.jac, jac_number(&sup.pres, budget)?.jac);
        run.push(Check::Normalization, format!("jac R(1): computed {ja} = supplied {jb}"), ja == jb);
    }
    Ok(())
}

pub fn run_fixture(fx: &Fixture, budget: Budget) -> InstanceResult {
    let t0 = Instant::now();
    let mut run = Run { outcomes: vec![], values: Values::default() };
    let res = fixture_body(fx, budget, &mut run);
    finish(fx.label(), fx.p as usize, run, res, t0)
}

/// Every single step of the p-basis, then (given x) the two-step laws, then jac.
/// `supplied` presents R(1_x); the chain uses it when x is the first variable.
fn presentation_body(pres: &LocalRingPresentation, x: Option<usize>, supplied: Option<&SuppliedNormalization>, budget: Budget, run: &mut Run) -> Result<()> {
    let k = pres.field().clone();
    for i in 0..k.c() {
        let xi = RatFunc::var(&k, i);
        let rep = delta_conductor(pres, &xi, budget, true)?;
        if i == x.unwrap_or(0) {
            (run.values.q1, run.values.delta10, run.values.g10, run.values.conductor) = (Some(rep.q), Some(rep.delta), Some(rep.genus_step), Some(rep.conductor_exponent));
        }
        run.single_step(pres, &rep, &format!("x = {}", k.names()[i]))?;
    }
    if let Some(xi) = x {
        let xr = RatFunc::var(&k, xi);
        let two = two_step_analysis(pres, &xr, budget, supplied, true)?;
        let v = &mut run.values;
        (v.q2, v.delta21, v.g21, v.case, v.method) = (Some(two.q2), Some(two.delta21), Some(two.g21), two.case, two.method);
        if let Some(step2) = &two.step2 {
            let nz = represent_normalization(pres, &xr, budget, supplied)?;
            run.single_step(&nz.pres, step2, "step 2")?;
        }
        for vd in &two.verdicts {
            let check = if vd.law.starts_with("p·g21 ≤") { Check::StepInequality } else { Check::CaseLaw };
            run.push(check, vd.law.clone(), vd.holds);
        }
    }
    let sup: Vec<Option<SuppliedNormalization>> = match (x, supplied) {
        (Some(0), Some(s)) => vec![Some(s.clone())],
        _ => vec![],
    };
    let chain = full_genus_change(pres, None, budget, &sup)?;
    run.jacobian(pres, &chain, budget)
}

/// The checks that apply to an arbitrary presentation; see [`run_fixture`] for the designed families.
pub fn run_presentation(label: &str, pres: &LocalRingPresentation, x: Option<usize>, supplied: Option<&SuppliedNormalization>, budget: Budget) -> InstanceResult {
    let t0 = Instant::now();
    let mut run = Run { outcomes: vec![], values: Values::default() };
    let res = presentation_body(pres, x, supplied, budget, &mut run);
    finish(label.to_string(), pres.field().p() as usize, run, res, t0)
}

pub fn run_random(rp: &RandomPresentation, budget: Budget) -> InstanceResult {
    let label = format!("random {:?} p={} #{}", rp.shape, rp.pres.field().p(), rp.seed);
    run_presentation(&label, &rp.pres, None, None, budget)
}

/// Every fixture of [`corpus`], in parallel.
pub fn run_corpus(budget: Budget) -> Result<VerdictSet> {
    let fx = corpus()?;
    Ok(VerdictSet { instances: fx.par_iter().map(|f| run_fixture(f, budget)).collect() })
}

/// `per_p` random presentations for each p ∈ {2, 3, 5}, cycling through the shapes.
pub fn random_corpus(per_p: usize, seed: u64) -> Result<Vec<RandomPresentation>> {
    let shapes = [Shape::Single, Shape::TwoVariables, Shape::Tower];
    let mut out = vec![];
    for p in [2u32, 3, 5] {
        for j in 0..per_p {
            let shape = shapes[j % shapes.len()];
            out.push(random_normal_form(p, shape, seed + j as u64)?);
        }
    }
    Ok(out)
}

pub fn run_random_corpus(per_p: usize, seed: u64, budget: Budget) -> Result<VerdictSet> {
    let rs = random_corpus(per_p, seed)?;
    Ok(VerdictSet { instances: rs.par_iter().map(|r| run_random(r, budget)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tate_negative_control() {
        assert!(check_tate(20, 5));
        assert!(check_tate(7, 3));
        assert!(!check_tate(3, 5));
        assert!(check_tate(3, 2));
    }

    #[test]
    fn genjacob_on_fam1() {
        let fx = fixture(Family::Fam1, 3, 2, None).unwrap();
        let gj = check_genjacob(&fx.pres, Budget::default(), &[Some(fx.supplied.clone())]).unwrap();
        assert_eq!((gj.g10, gj.jac, gj.holds), (3, 9, true));
        assert!(!genjacob_from(3, 3, 10).holds);
    }

    #[test]
    fn fixture_run_fam4() {
        let fx = fixture(Family::Fam4, 3, 2, None).unwrap();
        let r = run_fixture(&fx, Budget::default());
        assert!(r.passed(), "{:?}\n{:#?}", r.error, r.outcomes);
        assert_eq!(r.values.jac, Some(18));
    }
}
