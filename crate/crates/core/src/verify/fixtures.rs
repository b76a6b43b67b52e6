//! The six example families realizing the four two-step cases, each with an
//! explicit presentation of its first normalization.

use crate::basefield::ext::flat_root_field;
use crate::basefield::{KRef, RationalField};
use crate::error::{Error, Result};
use crate::localring::{KPoly, LocalRingPresentation};
use crate::normalize::SuppliedNormalization;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fam1,
    Fam2,
    Fam3,
    Fam3Prime,
    Fam4,
    Fam4Prime,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Fam1, Family::Fam2, Family::Fam3, Family::Fam3Prime, Family::Fam4, Family::Fam4Prime];

    pub fn id(self) -> &'static str {
        match self {
            Family::Fam1 => "fam1",
            Family::Fam2 => "fam2",
            Family::Fam3 => "fam3",
            Family::Fam3Prime => "fam3prime",
            Family::Fam4 => "fam4",
            Family::Fam4Prime => "fam4prime",
        }
    }

    pub fn from_id(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.id() == s)
    }

    /// Families whose shape does not depend on n.
    pub fn uses_n(self) -> bool {
        !matches!(self, Family::Fam3 | Family::Fam3Prime)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Values the family is built to exhibit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub case: u8,
    pub q1: usize,
    pub q2: usize,
    /// p·q₂ = q₁ (cases 3 and 4).
    pub equality: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub family: Family,
    pub p: u32,
    pub n: usize,
    /// The exponent m of (4)′.
    pub m: Option<usize>,
    pub pres: LocalRingPresentation,
    /// Index of x among the field variables.
    pub x: usize,
    /// R(1_x) over K(x^{1/p}) with ψ.
    pub supplied: SuppliedNormalization,
    pub expected: Expected,
}

impl Fixture {
    pub fn label(&self) -> String {
        match (self.family.uses_n(), self.m) {
            (_, Some(m)) => format!("{} p={} n={} m={m}", self.family, self.p, self.n),
            (true, None) => format!("{} p={} n={}", self.family, self.p, self.n),
            (false, None) => format!("{} p={}", self.family, self.p),
        }
    }
}

fn supplied(kp: &KRef, names: &[&str], relation: Option<&str>, hyp: Option<(&str, &str)>, psi_s_power: usize, psi_t: &str) -> Result<SuppliedNormalization> {
    let pres = match (relation, hyp) {
        (Some(r), _) => LocalRingPresentation::parse_relations(kp, names, &[r])?,
        (None, Some((f, pt))) => LocalRingPresentation::parse_hypersurface(kp, names, f, pt)?,
        _ => return Err(Error::input("supplied normalization needs a relation or a hypersurface")),
    };
    Ok(SuppliedNormalization { pres, psi_s_power, psi_t: vec![KPoly::parse(kp, names, psi_t)?] })
}

/// One member of a family.  n must be prime to p (and m > n for (4)′).
pub fn fixture(family: Family, p: u32, n: usize, m: Option<usize>) -> Result<Fixture> {
    let pu = p as usize;
    if family.uses_n() && (n == 0 || n % pu == 0) {
        return Err(Error::input(format!("{family}: n = {n} must be prime to p = {p}")));
    }
    let (p2, p3) = (pu * pu, pu * pu * pu);
    let (k, x) = if family == Family::Fam3Prime { (RationalField::with_names(p, &["s", "t"])?, 1) } else { (RationalField::with_names(p, &["t"])?, 0) };
    let kp = flat_root_field(&k, x)?;
    let w = kp.names()[x].clone();
    let (pres, sup, expected) = match family {
        Family::Fam1 => (
            LocalRingPresentation::parse_relations(&k, &["S", "Y"], &[&format!("Y^{p2} - t - S^{n}")])?,
            supplied(&kp, &["Z", "Y"], Some(&format!("Y^{p} - {w} - Z^{n}")), None, pu, "Y")?,
            Expected { case: 1, q1: n, q2: n, equality: None },
        ),
        Family::Fam2 => (
            LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], &format!("Y^{} - t*Y^{p} - S^{} + S^{p}", p2 + pu, pu + n), &format!("Y^{p2} - t"))?,
            supplied(&kp, &["Z", "Y"], None, Some((&format!("Z^{} - Z^{p} - Y*(Y^{p} - {w})", pu + n), &format!("Y^{p} - {w}"))), pu, "Y")?,
            Expected { case: 2, q1: pu + n, q2: pu, equality: None },
        ),
        Family::Fam3 => (
            LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], &format!("Y^{} - t*Y - S^{p2}", pu + 1), &format!("Y^{p} - t"))?,
            supplied(&kp, &["X", "Z"], None, Some((&format!("X^{p} - Z*(Z^{p} - {w})"), &format!("Z^{p} - {w}"))), 1, &format!("Z^{p}"))?,
            Expected { case: 3, q1: p2, q2: pu, equality: Some(true) },
        ),
        Family::Fam3Prime => (
            LocalRingPresentation::parse_relations(&k, &["S", "Y"], &[&format!("Y^{p} - S^{p3}*Y + s^{p}*S^{p2} - t")])?,
            supplied(&kp, &["X", "Z"], Some(&format!("Z^{p} - X^{p2}*Z + s*X^{p} - {w}")), None, 1, &format!("Z^{p}"))?,
            Expected { case: 3, q1: p3, q2: pu, equality: Some(false) },
        ),
        Family::Fam4 => (
            LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], &format!("Y^{} - t*Y - S^{}", pu + 1, n * pu), &format!("Y^{p} - t"))?,
            supplied(&kp, &["X", "Z"], None, Some((&format!("X^{n} - Z*(Z^{p} - {w})"), &format!("Z^{p} - {w}"))), 1, &format!("Z^{p}"))?,
            Expected { case: 4, q1: n * pu, q2: n, equality: Some(true) },
        ),
        Family::Fam4Prime => {
            let m = m.ok_or_else(|| Error::input("fam4prime needs m"))?;
            if m <= n {
                return Err(Error::input(format!("fam4prime needs m > n (m = {m}, n = {n})")));
            }
            (
                LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], &format!("-Y^{} + t*Y - S^{}*Y + S^{}", pu + 1, n * pu, m * pu), &format!("Y^{p} - t"))?,
                supplied(&kp, &["X", "Z"], None, Some((&format!("X^{m} - Z*X^{n} - Z*(Z^{p} - {w})"), &format!("Z^{p} - {w}"))), 1, &format!("Z^{p}"))?,
                Expected { case: 4, q1: m * pu, q2: n, equality: Some(false) },
            )
        }
    };
    Ok(Fixture { family, p, n, m: (family == Family::Fam4Prime).then_some(m).flatten(), pres, x, supplied: sup, expected })
}

/// The n used for p: every n ≤ 4 prime to p except n = 1.
pub fn exponents_for(p: u32) -> Vec<usize> {
    (2..=4).filter(|n| n % p as usize != 0).collect()
}

/// Every family for p ∈ {2, 3, 5} and the n of [`exponents_for`]; m = n + 2 in (4)′.
pub fn corpus() -> Result<Vec<Fixture>> {
    let mut out = vec![];
    for p in [2u32, 3, 5] {
        for fam in Family::ALL {
            if fam.uses_n() {
                for n in exponents_for(p) {
                    out.push(fixture(fam, p, n, Some(n + 2))?);
                }
            } else {
                out.push(fixture(fam, p, 1, None)?);
            }
        }
    }
    Ok(out)
}
