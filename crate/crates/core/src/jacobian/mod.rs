//! Continuous differentials of R over K, the Jacobian number and the kernels of
//! Ω_{R_{i−1}} ⊗ R_i → Ω_{R_i} along a p-basis chain.
//!
//! Ω is the cokernel of R^m → R^{m+1} given by the Jacobian matrix J of the
//! relations.  jac(R) is computed three ways: the Smith form of J over the DVR R
//! (D·Σe_k), the length of R/Fitt₁ from the m×m minors, and the torsion of the
//! K[[S]]-module obtained by expanding J along the monomial basis.

pub mod omat;

use crate::error::{Error, Result};
use crate::localring::{Elem, LocalRingPresentation, Ring};
use crate::normalize::{ChainReport, Normalized};
use crate::series::{Budget, TruncatedSeries as TS, Val};
use omat::OMat;
use serde::Serialize;

pub use omat::SmithForm;

/// J over R modulo S^N: rows (∂P_i/∂S, ∂P_i/∂T₁, …, ∂P_i/∂T_m).
#[derive(Clone, Debug)]
pub struct OmegaPresentation {
    pub ring: Ring,
    pub j: Vec<Vec<Elem>>,
}

fn derivative(s: &TS) -> TS {
    let k = s.field();
    let c = s.coeffs().iter().enumerate().skip(1).map(|(j, c)| c.mul(&crate::basefield::RatFunc::from_int(k, j as i64))).collect();
    TS::from_coeffs(k, c, s.precision().saturating_sub(1))
}

fn trunc(ring: &Ring, e: &Elem) -> Elem {
    ring.from_coords(e.coords().iter().map(|s| s.truncate(ring.precision())).collect())
}

/// J modulo S^n; the presentation is read at precision n + 1 since ∂/∂S loses one digit.
pub fn omega_matrix(pres: &LocalRingPresentation, n: usize) -> Result<OmegaPresentation> {
    let hi = pres.at(n + 1)?;
    let ring = hi.truncated(n);
    let k = ring.field().clone();
    let (m, d) = (ring.m(), ring.rank());
    let zero = || vec![TS::zero(&k, n + 1); d];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let tail = &hi.tails()[i];
        let mut row = vec![zero(); m + 1];
        for (j, c) in tail.iter().enumerate() {
            if c.is_zero_mod() {
                continue;
            }
            row[0][j] = row[0][j].sub(&derivative(c));
            let b = ring.exponents(j);
            for (l, &bl) in b.iter().enumerate() {
                if bl == 0 {
                    continue;
                }
                let mut b2 = b.clone();
                b2[l] -= 1;
                let idx = ring.index(&b2);
                row[l + 1][idx] = row[l + 1][idx].sub(&c.scale(&crate::basefield::RatFunc::from_int(&k, bl as i64)));
            }
        }
        let di = ring.degrees()[i];
        let mut b = vec![0; m];
        b[i] = di - 1;
        let idx = ring.index(&b);
        row[i + 1][idx] = row[i + 1][idx].add(&TS::constant(crate::basefield::RatFunc::from_int(&k, di as i64), n + 1));
        rows.push(row.into_iter().map(|c| trunc(&ring, &ring.from_coords(c.into_iter().map(|s| s.truncate(n)).collect()))).collect());
    }
    Ok(OmegaPresentation { ring, j: rows })
}

fn val(ring: &Ring, e: &Elem) -> Option<usize> {
    match ring.valuation(e) {
        Val::Finite(v) => Some(v),
        Val::AtLeast(_) => None,
    }
}

/// Smallest total T-degree among the monomials carrying the lowest S-power.
fn t_degree(ring: &Ring, e: &Elem, v: usize) -> usize {
    e.coords()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.valuation() == Val::Finite(v))
        .map(|(b, _)| ring.exponents(b).iter().sum())
        .min()
        .unwrap_or(usize::MAX)
}

fn div_sv(ring: &Ring, e: &Elem, v: usize) -> Result<Elem> {
    Ok(ring.pad(&ring.div_s(e, v)?))
}

/// Smith form of a matrix over R/S^N (R a DVR with uniformizer S): exponents of
/// the nonzero diagonal entries, sorted.
pub fn smith_over_ring(ring: &Ring, a: &[Vec<Elem>]) -> Result<Vec<usize>> {
    let mut a: Vec<Vec<Elem>> = a.to_vec();
    let r = a.len();
    let c = a.first().map_or(0, |x| x.len());
    let mut exps = vec![];
    for t in 0..r.min(c) {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = val(ring, x) {
                    let td = t_degree(ring, x, v);
                    if best.map_or(true, |b| (v, td) < (b.2, b.3)) {
                        best = Some((i, j, v, td));
                    }
                }
            }
        }
        let Some((bi, bj, v, _)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let uinv = ring.unit_inverse(&div_sv(ring, &a[t][t], v)?)?;
        a[t] = a[t].iter().map(|x| ring.mul(x, &uinv)).collect();
        for i in t + 1..r {
            if a[i][t].is_zero_mod() {
                continue;
            }
            let f = div_sv(ring, &a[i][t], v)?;
            let prow = a[t].clone();
            for (x, y) in a[i].iter_mut().zip(&prow) {
                if !y.is_zero_mod() {
                    *x = ring.sub(x, &ring.mul(&f, y));
                }
            }
        }
        for j in t + 1..c {
            if a[t][j].is_zero_mod() {
                continue;
            }
            let g = div_sv(ring, &a[t][j], v)?;
            for row in a.iter_mut().skip(t) {
                let y = row[t].clone();
                if !y.is_zero_mod() {
                    row[j] = ring.sub(&row[j], &ring.mul(&g, &y));
                }
            }
        }
        exps.push(v);
    }
    exps.sort();
    Ok(exps)
}

/// Elementary divisor exponents of J.  Modulo S^n, m nonzero divisors are already
/// the true ones, so precision is only doubled while fewer than m appear; that
/// persisting up to the cap means Ω has rank > 1.
pub fn smith_over_dvr(pres: &LocalRingPresentation, budget: Budget) -> Result<(Vec<usize>, usize)> {
    let m = pres.m();
    let st = budget
        .first(|n| {
            let om = omega_matrix(pres, n)?;
            let e = smith_over_ring(&om.ring, &om.j)?;
            if e.len() < m {
                return Err(Error::precision(n, "fewer than m elementary divisors"));
            }
            Ok(e)
        })
        .map_err(rank_message)?;
    Ok((st.value, st.precision))
}

fn rank_message(e: Error) -> Error {
    match e {
        Error::PrecisionExhausted { cap, what } if what.contains("elementary divisors") || what.contains("rank") => {
            Error::presentation(format!("rank deficiency beyond 1 (no full-rank Jacobian up to S^{cap})"))
        }
        e => e,
    }
}

/// Rows v ↦ (coordinates of T^b·v) for every basis monomial b: the K[[S]]-matrix of
/// the R-submodule of R^L generated by the rows.
pub fn expand(ring: &Ring, rows: &[Vec<Elem>]) -> Result<OMat> {
    let (d, n) = (ring.rank(), ring.precision());
    let l = rows.first().map_or(0, |r| r.len());
    let monos: Vec<Elem> = (0..d).map(|b| ring.monomial(b)).collect();
    let mut out = Vec::with_capacity(rows.len() * d);
    for row in rows {
        for mono in &monos {
            let mut r = Vec::with_capacity(l * d);
            for e in row {
                r.extend(ring.mul(mono, e).into_coords());
            }
            out.push(r);
        }
    }
    OMat::from_rows(ring.field(), n, l * d, out)
}

fn det(ring: &Ring, a: &[Vec<Elem>]) -> Elem {
    match a.len() {
        0 => ring.one(),
        1 => a[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                let minor: Vec<Vec<Elem>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = ring.mul(&a[0][j], &det(ring, &minor));
                acc = if j % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
            }
            acc
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianReport {
    /// e₁ ≤ … ≤ e_m with Ω_tor ≅ ⊕ R/S^{e_k}.
    pub exponents: Vec<usize>,
    /// [L:K]·Σe_k.
    pub jac: usize,
    /// dim_K R/Fitt₁Ω.
    pub fitting: usize,
    /// dim_K Ω_tor from the expanded K[[S]]-presentation.
    pub torsion_dim: usize,
    pub rank: usize,
    pub precision: usize,
}

/// dim_K R/Fitt₁Ω from the m×m minors, modulo S^n.
fn fitting_at(pres: &LocalRingPresentation, n: usize) -> Result<SmithForm> {
    let om = omega_matrix(pres, n)?;
    let (ring, m) = (&om.ring, pres.m());
    let minors: Vec<Vec<Elem>> = (0..=m)
        .map(|skip| {
            let sub: Vec<Vec<Elem>> = om.j.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != skip).map(|(_, x)| x.clone()).collect()).collect();
            vec![det(ring, &sub)]
        })
        .collect();
    Ok(expand(ring, &minors)?.smith(false, false))
}

/// Smith form of J expanded to a K[[S]]-matrix, modulo S^n.
fn torsion_at(pres: &LocalRingPresentation, n: usize) -> Result<SmithForm> {
    let om = omega_matrix(pres, n)?;
    Ok(expand(&om.ring, &om.j)?.smith(false, false))
}

/// jac(R) by the Smith, Fitting and torsion routes; they must agree.
///
/// A Smith form computed modulo S^N with full rank is exact, so once the Smith route
/// has found one, the other two routes run once, at one more than the largest
/// exponent they can have if jac is right; a wrong jac shows up there as a rank
/// defect or a different sum.
pub fn jac_number(pres: &LocalRingPresentation, budget: Budget) -> Result<JacobianReport> {
    let (exponents, precision) = smith_over_dvr(pres, budget)?;
    let (m, rank) = (pres.m(), pres.rank());
    let sum: usize = exponents.iter().sum();
    let jac = rank * sum;
    let fit = fitting_at(pres, sum + 1)?;
    if fit.rank() < rank {
        return Err(Error::OracleMismatch(format!("Fitting ideal is not S^{sum}·R (Smith route gives jac = {jac})")));
    }
    let tor = torsion_at(pres, exponents.last().copied().unwrap_or(0) + 1)?;
    if tor.rank() < m * rank {
        return Err(Error::OracleMismatch(format!("Ω has torsion exponents beyond the Smith route's (jac = {jac})")));
    }
    let (fitting, torsion_dim) = (fit.sum(), tor.sum());
    if jac != fitting || jac != torsion_dim {
        return Err(Error::OracleMismatch(format!("jac: Smith {jac}, Fitting {fitting}, torsion {torsion_dim}")));
    }
    Ok(JacobianReport { exponents, jac, fitting, torsion_dim, rank, precision })
}

/// da as the vector (∂a/∂S, ∂a/∂T₁, …) of coefficients of dS, dT_j in Ω.
fn differential(ring: &Ring, a: &Elem) -> Vec<Elem> {
    let (m, d, n) = (ring.m(), ring.rank(), ring.precision());
    let k = ring.field();
    let mut out = vec![vec![TS::zero(k, n); d]; m + 1];
    for (b, c) in a.coords().iter().enumerate() {
        if c.is_zero_mod() {
            continue;
        }
        out[0][b] = out[0][b].add(&derivative(c).truncate(n));
        let ex = ring.exponents(b);
        for (j, &bj) in ex.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let mut e2 = ex.clone();
            e2[j] -= 1;
            let idx = ring.index(&e2);
            out[j + 1][idx] = out[j + 1][idx].add(&c.truncate(n).scale(&crate::basefield::RatFunc::from_int(k, bj as i64)));
        }
    }
    out.into_iter().map(|c| ring.from_coords(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelStep {
    pub var: usize,
    pub name: String,
    pub q: usize,
    /// [L_{i−1}:K_{i−1}].
    pub parent_rank: usize,
    /// dim_{K_i} Ker(Ω_{R_{i−1}} ⊗ R_i → Ω_{R_i}) by Smith comparison.
    pub dim: usize,
    /// [L_{i−1}:K_i]·p·q, [L_{i−1}:K_i]·p·(q−1) or 0.
    pub closed_form: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelChainReport {
    pub steps: Vec<KernelStep>,
    pub total: usize,
    pub jac: usize,
}

impl KernelChainReport {
    pub fn closed_forms_hold(&self) -> bool {
        self.steps.iter().all(|s| s.dim == s.closed_form)
    }
    pub fn additive(&self) -> bool {
        self.total == self.jac
    }
    pub fn check(&self) -> Result<()> {
        if let Some(s) = self.steps.iter().find(|s| s.dim != s.closed_form) {
            return Err(Error::CheckFailed(format!("kernel at {}: {} by Smith comparison, {} in closed form", s.name, s.dim, s.closed_form)));
        }
        if !self.additive() {
            return Err(Error::CheckFailed(format!("Σ kernel dims = {} but jac = {}", self.total, self.jac)));
        }
        Ok(())
    }
}

/// dim Ker φ for φ: Ω_{R′} ⊗ R → Ω_R, R′ = `parent`, R = nz.pres, modulo S′^n.
///
/// Over O = K′[[S′]], with F the free module on dX_ℓ·U^b, A ⊂ F the relations
/// ψ(J′), and Ω_R ≅ ⊕O/S^β ⊕ O^free after the Smith transform Q of J:
/// the left kernel Z of the free columns of Φ·Q is saturated and contains A with
/// Z/A = M_tor, so dim Ker φ = len(M_tor) − len(image of Z in ⊕O/S^β).
fn kernel_dim_at(parent: &LocalRingPresentation, nz: &Normalized, n: usize) -> Result<usize> {
    let k = nz.psi_s_power;
    let om_new = omega_matrix(&nz.pres, n)?;
    let ring = &om_new.ring;
    let (d, m_new, m_old) = (ring.rank(), ring.m(), parent.m());
    let om_old = omega_matrix(parent, n.div_ceil(k) + 1)?;
    let monos = nz.monomial_images(om_old.ring.degrees(), ring, &nz.psi_images(ring)?);
    let a_rows: Vec<Vec<Elem>> = om_old.j.iter().map(|r| r.iter().map(|e| nz.apply(e.coords(), ring, &monos)).collect()).collect();
    // dψ(S) = k S′^{k−1} dS′ and dψ(T_j), from images known one digit further
    let hi = nz.pres.at(n + 1)?;
    let hi_images = nz.psi_images(&hi)?;
    let mut phi_rows = Vec::with_capacity(m_old + 1);
    let mut ds = vec![ring.zero(); m_new + 1];
    ds[0] = ring.scale(&ring.s_power(k - 1), &crate::basefield::RatFunc::from_int(ring.field(), k as i64));
    phi_rows.push(ds);
    for im in &hi_images {
        phi_rows.push(differential(ring, im));
    }
    let a = expand(ring, &a_rows)?;
    let b = expand(ring, &om_new.j)?;
    let phi = expand(ring, &phi_rows)?;

    let sa = a.smith(false, false);
    if sa.rank() < m_old * d {
        return Err(Error::precision(n, "ψ(J′) not of full rank"));
    }
    let sb = b.smith(false, true);
    let rb = sb.rank();
    if rb < m_new * d {
        return Err(Error::precision(n, "J not of full rank"));
    }
    let c = phi.mul(sb.q.as_ref().unwrap());
    let free = c.columns(rb..c.ncols);
    let sf = free.smith(true, false);
    if sf.rank() != d {
        return Err(Error::precision(n, "image of Ω′ has the wrong rank"));
    }
    let z = sf.p.as_ref().unwrap().select_rows(sf.rank()..free.nrows());
    let w = z.mul(&c.columns(0..rb));
    let mut diag = OMat::zeros(ring.field(), n, rb, rb);
    for (t, &beta) in sb.exponents.iter().enumerate() {
        diag.rows[t][t] = TS::monomial(crate::basefield::RatFunc::one(ring.field()), beta, n);
    }
    let image_colen = w.stack(&diag).smith(false, false).sum();
    let beta: usize = sb.sum();
    (sa.sum() + image_colen)
        .checked_sub(beta)
        .ok_or_else(|| Error::CheckFailed("negative kernel dimension".into()))
}

/// Kernel dimensions for each step of a chain whose rings were all presented.
pub fn kernel_dims_along_chain(pres: &LocalRingPresentation, chain: &ChainReport, budget: Budget) -> Result<KernelChainReport> {
    if !chain.complete || chain.rings.len() < chain.steps.len() {
        return Err(Error::unsupported("every ring of the chain must be presented to compare differentials"));
    }
    let p = chain.p;
    let mut steps = vec![];
    let mut parent = pres.clone();
    for (st, nz) in chain.steps.iter().zip(&chain.rings) {
        let dim = budget.run(|n| kernel_dim_at(&parent, nz, n))?.value;
        let q = st.report.q;
        let rank = parent.rank();
        let closed_form = if q == 0 {
            0
        } else if q % p == 0 {
            rank / p * p * q
        } else {
            rank / p * p * (q - 1)
        };
        steps.push(KernelStep { var: st.var, name: st.name.clone(), q, parent_rank: rank, dim, closed_form });
        parent = nz.pres.clone();
    }
    let total = steps.iter().map(|s| s.dim).sum();
    let jac = jac_number(pres, budget)?.jac;
    Ok(KernelChainReport { steps, total, jac })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;
    use crate::normalize::full_genus_change;

    fn fam1(p: u32, n: usize) -> LocalRingPresentation {
        let k = RationalField::with_names(p, &["t"]).unwrap();
        LocalRingPresentation::parse_relations(&k, &["S", "T"], &[&format!("T^{} - t - S^{n}", p * p)]).unwrap()
    }

    #[test]
    fn jacobian_matrix_entries() {
        let om = omega_matrix(&fam1(3, 2), 6).unwrap();
        let r = &om.ring;
        assert_eq!(r.valuation(&om.j[0][0]), Val::Finite(1));
        assert!(om.j[0][1].is_zero_mod());
        let om = omega_matrix(&fam1(5, 3), 6).unwrap();
        let two_s2 = om.ring.scale(&om.ring.s_power(2), &crate::basefield::RatFunc::from_int(om.ring.field(), 2));
        assert_eq!(om.j[0][0].coords(), two_s2.coords());
    }

    #[test]
    fn jacobian_numbers() {
        let b = Budget::default();
        assert_eq!(jac_number(&fam1(3, 2), b).unwrap().jac, 9);
        let r = jac_number(&fam1(5, 3), b).unwrap();
        assert_eq!((r.exponents.clone(), r.jac, r.fitting, r.torsion_dim), (vec![2], 50, 50, 50));
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let smooth = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^3 - t - S"]).unwrap();
        assert_eq!(jac_number(&smooth, b).unwrap().jac, 0);
        let fam3 = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        assert_eq!(jac_number(&fam3, b).unwrap().jac, 27);
    }

    #[test]
    fn two_generators() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "Y", "Z"], &["Y^3 - s - S", "Z^3 - t - Y*S^2"]).unwrap();
        let r = jac_number(&pr, Budget::default()).unwrap();
        assert_eq!(r.exponents.len(), 2);
        assert_eq!(r.jac, r.fitting);
    }

    #[test]
    fn kernels_sum_to_jac() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let fam3 = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let ch = full_genus_change(&fam3, None, Budget::default(), &[]).unwrap();
        let kr = kernel_dims_along_chain(&fam3, &ch, Budget::default()).unwrap();
        assert_eq!(kr.steps[0].dim, 27);
        kr.check().unwrap();

        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "Y"], &["Y^3 - S^27*Y + s^3*S^9 - t"]).unwrap();
        let ch = full_genus_change(&pr, None, Budget::default(), &[]).unwrap();
        let kr = kernel_dims_along_chain(&pr, &ch, Budget::default()).unwrap();
        assert_eq!(kr.steps.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![0, 81]);
        kr.check().unwrap();
    }
}
