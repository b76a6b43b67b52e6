//! The input document: one JSON object describing K, a presentation of R and
//! what to compute.  `schema/input.schema.json` is the published schema.

use anyhow::{anyhow, bail, Result};
use qdelta::basefield::ext::flat_root_field;
use qdelta::basefield::{FiniteField, KRef, RatFunc, RationalField};
use qdelta::localring::{KPoly, LocalRingPresentation};
use qdelta::normalize::{Normalized, SuppliedNormalization};
use qdelta::series::Budget;
use qdelta::verify::Check;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    /// Characteristic.
    pub p: u32,
    /// F_q with q = p^e; F_p when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    /// The transcendentals t₁, …, t_c of K = F_q(t₁, …, t_c).
    pub vars: Vec<String>,
    pub ring: RingSpec,
    /// The p-basis variable x for invariants and normalize.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    /// Checks counted by `verify` (all when empty).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub analyses: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<PrecisionSpec>,
    /// A presentation of R(1_x) over K(x^{1/p}), whose variable x is renamed x_1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step2: Option<Step2Spec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub q: u32,
    /// Monic irreducible modulus over F_p, constant term first; the first one in
    /// lexicographic order when absent.  Elements of F_q are written a<code>.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// Either relations P₁(S,T₁), …, P_m(S,T₁..T_m), or a plane curve f(S, Y) with a
/// point factor b(Y) of f(0, Y).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    /// S, T₁, …, T_m.
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypersurface: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    /// Set on emitted presentations whose relations are series truncated modulo S^n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step2Spec {
    pub ring: RingSpec,
    /// ψ(S) = S′^k.
    pub psi_s_power: usize,
    /// ψ(T_j) as polynomials in the names of `ring`.
    pub psi_t: Vec<String>,
}

/// The document with K, R and the supplied R(1) built.
pub struct Loaded {
    pub doc: InputDocument,
    pub k: KRef,
    pub pres: LocalRingPresentation,
    pub x: Option<usize>,
    pub supplied: Option<SuppliedNormalization>,
}

impl Loaded {
    pub fn x_elem(&self) -> Result<RatFunc> {
        let i = self.x.ok_or_else(|| anyhow!(qdelta::Error::input("no x given (set \"x\" in the document or pass --x)")))?;
        Ok(RatFunc::var(&self.k, i))
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text).map_err(|e| anyhow!(qdelta::Error::input(format!("document: {e}"))))
}

pub fn build_field(doc: &InputDocument) -> Result<KRef> {
    let fq = match &doc.field {
        None => FiniteField::prime(doc.p)?,
        Some(f) => {
            let e = (1..=16).find(|&e| doc.p.checked_pow(e) == Some(f.q)).ok_or_else(|| qdelta::Error::input(format!("field.q = {} is not a power of p = {}", f.q, doc.p)))?;
            FiniteField::new(doc.p, e, f.modulus.clone())?
        }
    };
    Ok(RationalField::new(fq, doc.vars.clone())?)
}

/// A parse error shown against the offending string.
fn located(what: &str, src: &str, e: qdelta::Error) -> anyhow::Error {
    match &e {
        qdelta::Error::Parse { pos, .. } => {
            let col = src.char_indices().take_while(|(i, _)| i < pos).count();
            anyhow!(e).context(format!("{what}:\n  {src}\n  {}^", " ".repeat(col)))
        }
        _ => anyhow!(e).context(what.to_string()),
    }
}

pub fn build_ring(k: &KRef, spec: &RingSpec, what: &str) -> Result<LocalRingPresentation> {
    let names: Vec<&str> = spec.names.iter().map(|s| s.as_str()).collect();
    if names.len() < 2 {
        bail!(qdelta::Error::input(format!("{what}.names needs S and at least one generator")));
    }
    match (&spec.relations, &spec.hypersurface, &spec.point) {
        (Some(rels), None, None) => {
            let mut polys = Vec::with_capacity(rels.len());
            for (i, r) in rels.iter().enumerate() {
                polys.push(KPoly::parse(k, &names, r).map_err(|e| located(&format!("{what}.relations[{i}]"), r, e))?);
            }
            LocalRingPresentation::from_relations(k, spec.names.clone(), polys).map_err(|e| anyhow!(e).context(what.to_string()))
        }
        (None, Some(f), Some(pt)) => {
            if names.len() != 2 {
                bail!(qdelta::Error::input(format!("{what}: a hypersurface has exactly two names (S, Y)")));
            }
            let fp = KPoly::parse(k, &names, f).map_err(|e| located(&format!("{what}.hypersurface"), f, e))?;
            let bp = KPoly::parse(k, &names, pt).map_err(|e| located(&format!("{what}.point"), pt, e))?;
            LocalRingPresentation::from_hypersurface(k, spec.names.clone(), fp, &bp).map_err(|e| anyhow!(e).context(what.to_string()))
        }
        _ => bail!(qdelta::Error::input(format!("{what}: give either \"relations\" or both \"hypersurface\" and \"point\""))),
    }
}

pub fn load(text: &str, x_override: Option<&str>) -> Result<Loaded> {
    let mut doc = parse_document(text)?;
    if let Some(x) = x_override {
        doc.x = Some(x.to_string());
    }
    let k = build_field(&doc)?;
    let pres = build_ring(&k, &doc.ring, "ring")?;
    let x = match &doc.x {
        None => None,
        Some(name) => Some(k.var_index(name).ok_or_else(|| qdelta::Error::input(format!("x = '{name}' is not one of vars {:?}", doc.vars)))?),
    };
    let supplied = match &doc.step2 {
        None => None,
        Some(s2) => {
            let xi = x.ok_or_else(|| qdelta::Error::input("step2 needs x"))?;
            let kp = flat_root_field(&k, xi)?;
            let pres2 = build_ring(&kp, &s2.ring, "step2.ring")?;
            let names: Vec<&str> = s2.ring.names.iter().map(|s| s.as_str()).collect();
            let mut psi_t = vec![];
            for (i, f) in s2.psi_t.iter().enumerate() {
                psi_t.push(KPoly::parse(&kp, &names, f).map_err(|e| located(&format!("step2.psi_t[{i}]"), f, e))?);
            }
            Some(SuppliedNormalization { pres: pres2, psi_s_power: s2.psi_s_power, psi_t })
        }
    };
    Ok(Loaded { doc, k, pres, x, supplied })
}

pub fn budget(doc: &InputDocument, start: Option<usize>, cap: Option<usize>) -> Budget {
    let d = Budget::default();
    let ps = doc.precision.unwrap_or(PrecisionSpec { start: None, cap: None });
    Budget { n0: start.or(ps.start).unwrap_or(d.n0), cap: cap.or(ps.cap).unwrap_or(d.cap) }
}

fn field_spec(k: &KRef) -> Option<FieldSpec> {
    let f = k.fq();
    (f.degree() > 1).then(|| FieldSpec { q: f.size(), modulus: Some(f.modulus().to_vec()) })
}

/// A presentation as a ring spec, with its relations written out (exactly when
/// the presentation has polynomial relations, otherwise modulo S^n).
pub fn ring_spec(pres: &LocalRingPresentation, n: usize) -> Result<RingSpec> {
    let names = pres.names();
    let (polys, exact) = pres.relation_polys(n)?;
    Ok(RingSpec {
        relations: Some(polys.iter().map(|r| r.display_with(&names).to_string()).collect()),
        names,
        hypersurface: None,
        point: None,
        truncated_at: (!exact).then_some(n),
    })
}

/// A document for the presentation alone; it loads back to an equal presentation.
pub fn emit_presentation(pres: &LocalRingPresentation, n: usize) -> Result<InputDocument> {
    let k = pres.field();
    Ok(InputDocument {
        p: k.p(),
        field: field_spec(k),
        vars: k.names().to_vec(),
        ring: ring_spec(pres, n)?,
        x: None,
        analyses: vec![],
        precision: None,
        step2: None,
    })
}

/// The ψ images of a normalization, written in its variables.
pub fn emit_psi(nz: &Normalized, n: usize) -> Result<(Vec<String>, bool)> {
    let names = nz.pres.names();
    let (polys, exact) = nz.psi_polys(n)?;
    Ok((polys.iter().map(|f| f.display_with(&names).to_string()).collect(), exact))
}
