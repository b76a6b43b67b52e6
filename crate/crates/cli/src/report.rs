//! Text renderings of the reports; `--json` prints the same structures serialized.

use crate::doc::{emit_presentation, emit_psi, InputDocument};
use anyhow::Result;
use qdelta::invariants::InvariantReport;
use qdelta::jacobian::{JacobianReport, KernelChainReport};
use qdelta::normalize::{Method, Normalized, TwoStepReport};
use qdelta::verify::VerdictSet;
use serde::Serialize;
use std::fmt::Write;

pub fn invariants(r: &InvariantReport) -> String {
    let mut s = String::new();
    writeln!(s, "x = {}   p = {}", r.x, r.p).unwrap();
    writeln!(s, "q = {}   e = {}   f = {}", r.q, r.e, r.f).unwrap();
    writeln!(s, "δ = {}   conductor exponent = {}   [L : K(x^1/p)] = {}", r.delta, r.conductor_exponent, r.residue_index).unwrap();
    writeln!(s, "genus change g = {}", r.genus_step).unwrap();
    if let Some(o) = &r.oracle {
        writeln!(s, "δ by counting = {}, by lattice = {} (lattice genus {})", o.combinatorial, o.lattice, o.lattice_genus).unwrap();
    }
    writeln!(s, "conductor·f = 2δ: {}", r.conductor_identity_holds()).unwrap();
    s
}

#[derive(Serialize)]
pub struct NormalizeOut {
    pub analysis: TwoStepReport,
    pub method: Method,
    /// R(1_x) over K(x^{1/p}) as a loadable document.
    pub normalization: InputDocument,
    pub psi_s_power: usize,
    pub psi_t: Vec<String>,
    /// False when ψ was computed and is shown modulo S′^n.
    pub psi_exact: bool,
}

impl NormalizeOut {
    pub fn new(two: &TwoStepReport, nz: &Normalized, n: usize) -> Result<Self> {
        let (psi_t, psi_exact) = emit_psi(nz, n)?;
        Ok(NormalizeOut { analysis: two.clone(), method: nz.method, normalization: emit_presentation(&nz.pres, n)?, psi_s_power: nz.psi_s_power, psi_t, psi_exact })
    }
}

pub fn normalize(o: &NormalizeOut) -> String {
    let a = &o.analysis;
    let mut s = String::new();
    writeln!(s, "q1 = {}   q2 = {}   e1 = {}   e2 = {}", a.q1, a.q2, a.e1, a.e2).unwrap();
    writeln!(s, "δ10 = {}   δ21 = {}   g10 = {}   g21 = {}", a.delta10, a.delta21, a.g10, a.g21).unwrap();
    match a.case {
        Some(c) => writeln!(s, "case {c}").unwrap(),
        None => writeln!(s, "no case (x^1/p² ∉ L(1))").unwrap(),
    }
    for v in &a.verdicts {
        writeln!(s, "  [{}] {}", if v.holds { "ok" } else { "FAIL" }, v.law).unwrap();
    }
    let r = &o.normalization.ring;
    writeln!(s, "R(1) over F_{}({}) via {:?}:", o.normalization.field.as_ref().map_or(o.normalization.p, |f| f.q), o.normalization.vars.join(","), o.method).unwrap();
    for rel in r.relations.iter().flatten() {
        writeln!(s, "  {rel} = 0").unwrap();
    }
    if let Some(n) = r.truncated_at {
        writeln!(s, "  (relations modulo {}^{n})", r.names[0]).unwrap();
    }
    writeln!(s, "ψ(S) = {}^{}", r.names[0], o.psi_s_power).unwrap();
    for (j, f) in o.psi_t.iter().enumerate() {
        writeln!(s, "ψ(T{}) = {f}{}", j + 1, if o.psi_exact { "" } else { " + …" }).unwrap();
    }
    s
}

#[derive(Serialize)]
pub struct JacobianOut {
    pub p: usize,
    pub jacobian: JacobianReport,
    /// g₁₀ of the full p-basis, when the chain could be carried out.
    pub genus_change: Option<usize>,
    pub chain_failure: Option<(usize, String)>,
    /// 2p·g = (p−1)·jac.
    pub headline: Option<bool>,
    pub kernels: Option<KernelChainReport>,
}

impl JacobianOut {
    pub fn holds(&self) -> bool {
        let j = &self.jacobian;
        j.jac == j.fitting && j.jac == j.torsion_dim && self.headline != Some(false) && self.kernels.as_ref().map_or(true, |k| k.check().is_ok())
    }
}

pub fn jacobian(o: &JacobianOut) -> String {
    let j = &o.jacobian;
    let mut s = String::new();
    writeln!(s, "elementary divisors S^{:?}   [L:K] = {}", j.exponents, j.rank).unwrap();
    writeln!(s, "jac = {} (Smith)   {} (Fitting)   {} (torsion)   precision {}", j.jac, j.fitting, j.torsion_dim, j.precision).unwrap();
    match (&o.genus_change, &o.chain_failure) {
        (Some(g), _) => writeln!(s, "genus change over the p-basis g = {g}   2p·g = (p−1)·jac: {}", o.headline == Some(true)).unwrap(),
        (None, Some((i, e))) => writeln!(s, "p-basis chain stopped at step {i}: {e}").unwrap(),
        _ => {}
    }
    if let Some(k) = &o.kernels {
        for st in &k.steps {
            writeln!(s, "  kernel at {}: {} (closed form {})", st.name, st.dim, st.closed_form).unwrap();
        }
        writeln!(s, "Σ kernels = {}   jac = {}", k.total, k.jac).unwrap();
    }
    s
}

pub fn verdicts(v: &VerdictSet) -> String {
    let mut s = v.table();
    let f = v.failures();
    if f.is_empty() {
        writeln!(s, "all {} instances pass", v.instances.len()).unwrap();
    } else {
        for line in f {
            writeln!(s, "FAIL {line}").unwrap();
        }
    }
    s
}
