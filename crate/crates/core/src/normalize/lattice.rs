//! R(1) = {z ∈ Frac(R ⊗ K′) : z^p ∈ R ⊗ K′} computed as a lattice between
//! R ⊗ K′ and S^{−c}(R ⊗ K′).
//!
//! For w ∈ R ⊗ K′, w^p lies in R, so w/S^c ∈ R(1) iff w^p ≡ 0 mod S^{pc}.  The
//! map w ↦ w^p is additive and p-semilinear; splitting each K-coefficient of w^p
//! in a basis of K over (K′)^p turns the condition into linear equations over K′.
//! Two coefficient fields are used: K′ = F_q(…, s_i, …) when x = t_i, where the
//! unknowns are the K′-coordinates of w; otherwise K with unknowns the
//! K-coordinates of Σ_{i<p} ξ^i a_i.

use crate::basefield::ext::{embed_flat, flat_root_field, from_flat_coords};
use crate::basefield::linalg::Echelon;
use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::localring::{Elem, LocalRingPresentation, Ring};
use crate::series::TruncatedSeries as TS;

/// An element z = w/S^k of R(1), w = Σ_i ξ^i Σ_b w[i][b]·T^b with coefficients in
/// [`NormalizationLattice::field`] (one part when that field already contains ξ).
#[derive(Clone, Debug)]
pub struct LatticeGenerator {
    pub k: usize,
    pub w: Vec<Vec<TS>>,
}

#[derive(Clone, Debug)]
pub struct NormalizationLattice {
    pub x: RatFunc,
    /// Field of the lattice coordinates: K(x^{1/p}) as a flat field, or K.
    pub field: KRef,
    /// Whether `field` is K′ (x a p-basis variable).
    pub flat: bool,
    /// Least examined denominator exponent with S^c·R(1) ⊆ R ⊗ K′.
    pub c: usize,
    /// dim_{K′} R(1)/(R ⊗ K′).
    pub g10: usize,
    /// dim_{K′} of (R(1) ∩ S^{−k}(R⊗K′))/(R⊗K′) for each k examined.
    pub dims: Vec<(usize, usize)>,
    /// A basis of R(1)/(R ⊗ K′) over `field` (only when requested).
    pub generators: Vec<LatticeGenerator>,
}

struct Layout {
    field: KRef,
    flat: Option<usize>,
    /// Number of ξ-parts of each unknown block (1 or p).
    parts: usize,
}

impl Layout {
    fn new(k: &KRef, x: &RatFunc) -> Result<Self> {
        let p = k.p() as usize;
        match (0..k.c()).find(|&i| *x == RatFunc::var(k, i)) {
            Some(i) => Ok(Layout { field: flat_root_field(k, i)?, flat: Some(i), parts: 1 }),
            None => Ok(Layout { field: k.clone(), flat: None, parts: p }),
        }
    }

    /// Components of c ∈ K in a basis of K over (coefficient field)^p, as
    /// elements of the coefficient field.
    fn components(&self, c: &RatFunc) -> Vec<RatFunc> {
        let full = c.pbasis_components(1);
        let Some(i) = self.flat else { return full };
        let k = c.field();
        let p = k.p() as usize;
        let stride = p.pow(i as u32);
        let s = RatFunc::var(&self.field, i);
        let n = full.len() / p;
        let mut out = vec![RatFunc::zero(&self.field); n];
        for (idx, m) in full.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let digit = (idx / stride) % p;
            let compact = idx % stride + (idx / (stride * p)) * stride;
            out[compact] = out[compact].add(&embed_flat(m, &self.field, i).mul(&s.pow(digit as u64)));
        }
        out
    }

    /// a^p for a in the coefficient field, as an element of K.
    fn pth_power_in_k(&self, a: &RatFunc, k: &KRef) -> Result<RatFunc> {
        match self.flat {
            Some(i) => Ok(from_flat_coords(&a.frobenius(1), k, &self.field, i)?.swap_remove(0)),
            None => Ok(a.frobenius(1)),
        }
    }
}

struct Solved {
    dim: usize,
    dim_below: usize,
    generators: Vec<LatticeGenerator>,
}

/// Kernel of w ↦ w^p mod S^{pc} on (R ⊗ K′)/S^c, and of its restriction to S·(R ⊗ K′).
fn kernel(ring: &Ring, x: &RatFunc, lay: &Layout, c: usize, want_generators: bool) -> Result<Solved> {
    let k = ring.field();
    let p = k.p() as usize;
    let d = ring.rank();
    let np = lay.parts;
    let levels = p * c;
    let col = |j: usize, b: usize, i: usize| (j * d + b) * np + i;
    let nvars = c * d * np;
    let mb: Vec<Elem> = (0..d).map(|b| ring.frobenius(&ring.monomial(b))).collect();
    let xpow: Vec<RatFunc> = (0..np).map(|i| x.pow(i as u64)).collect();
    // table[(b, l, kk, i)] = components of x^i·[M_b]_{l, kk}
    let mut table: Vec<Option<Vec<RatFunc>>> = vec![None; d * d * levels * np];
    let tidx = |b: usize, l: usize, kk: usize, i: usize| ((b * d + l) * levels + kk) * np + i;
    for (b, m) in mb.iter().enumerate() {
        for l in 0..d {
            for kk in 0..levels {
                let v = m.coord(l).coeff(kk);
                if v.is_zero() {
                    continue;
                }
                for (i, xp) in xpow.iter().enumerate() {
                    table[tidx(b, l, kk, i)] = Some(lay.components(&v.mul(xp)));
                }
            }
        }
    }
    let nb = table.iter().flatten().next().map(|v| v.len()).unwrap_or(1);
    let mut ech = Echelon::new();
    for level in 0..levels {
        for l in 0..d {
            let mut rows: Vec<Vec<(usize, RatFunc)>> = vec![vec![]; nb];
            for j in 0..=(level / p).min(c - 1) {
                let kk = level - p * j;
                for b in 0..d {
                    for i in 0..np {
                        if let Some(comps) = &table[tidx(b, l, kk, i)] {
                            for (e, v) in comps.iter().enumerate() {
                                if !v.is_zero() {
                                    rows[e].push((col(j, b, i), v.clone()));
                                }
                            }
                        }
                    }
                }
            }
            for row in rows {
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    // over K the kernel is a K′-space counted with multiplicity p
    let dim = (nvars - ech.rank()) / np;
    let zero = RatFunc::zero(&lay.field);
    let mut generators = vec![];
    if want_generators {
        let pivots: std::collections::HashSet<usize> = ech.pivots().collect();
        for free in (0..nvars).filter(|v| !pivots.contains(v)) {
            let sol = ech.null_vector(free, nvars, &zero);
            let w = (0..np)
                .map(|i| {
                    (0..d)
                        .map(|b| TS::from_coeffs(&lay.field, (0..c).map(|j| sol[col(j, b, i)].clone()).collect(), c))
                        .collect()
                })
                .collect();
            generators.push(LatticeGenerator { k: c, w });
        }
    }
    for b in 0..d {
        for i in 0..np {
            ech.insert([(col(0, b, i), RatFunc::one(&lay.field))]);
        }
    }
    let dim_below = (nvars - ech.rank()) / np;
    Ok(Solved { dim, dim_below, generators })
}

/// The lattice R(1) for x, searching denominators from `c_start` upwards until
/// R(1) ∩ S^{−c}(R⊗K′) = R(1) ∩ S^{−c−1}(R⊗K′), which forces equality for all
/// larger denominators.  `c_start` normally comes from the conductor formula.
pub fn normalization_lattice(
    pres: &LocalRingPresentation,
    x: &RatFunc,
    c_start: usize,
    max_precision: usize,
    want_generators: bool,
) -> Result<NormalizationLattice> {
    let k = pres.field();
    if x.is_zero() || x.is_pth_power() {
        return Err(Error::input(format!("x = {x} is a p-th power in K")));
    }
    let p = k.p() as usize;
    let lay = Layout::new(k, x)?;
    let mut dims = vec![];
    let mut c = c_start.max(1) + 1;
    loop {
        if p * c > max_precision {
            return Err(Error::BoundExceeded(format!("lattice did not stabilize below S^-{c}")));
        }
        let ring = pres.at(p * c)?;
        let s = kernel(&ring, x, &lay, c, want_generators)?;
        if dims.last().map(|&(cc, _)| cc) != Some(c - 1) {
            dims.push((c - 1, s.dim_below));
        }
        dims.push((c, s.dim));
        if s.dim == s.dim_below {
            // every kernel vector is divisible by S; present generators with denominator S^{c−1}
            let generators = s
                .generators
                .into_iter()
                .map(|g| {
                    let w = g.w.iter().map(|part| part.iter().map(|t| t.shift_down(1)).collect::<Result<Vec<_>>>());
                    Ok(LatticeGenerator { k: c - 1, w: w.collect::<Result<_>>()? })
                })
                .collect::<Result<_>>()?;
            // find the least c with the full dimension
            let c_min = dims.iter().filter(|&&(_, dd)| dd == s.dim).map(|&(cc, _)| cc).min().unwrap_or(c - 1);
            let c_min = if s.dim == 0 { 0 } else { c_min };
            return Ok(NormalizationLattice { x: x.clone(), field: lay.field, flat: lay.flat.is_some(), c: c_min, g10: s.dim, dims, generators });
        }
        c += 1;
    }
}

/// Checks w^p ≡ 0 mod S^{pk} for a generator, computing in R.
pub fn verify_generator(pres: &LocalRingPresentation, lat: &NormalizationLattice, g: &LatticeGenerator) -> Result<bool> {
    let k = pres.field();
    let p = k.p() as usize;
    let ring = pres.at(p * g.k.max(1))?;
    let lay = Layout::new(k, &lat.x)?;
    let mut acc = ring.zero();
    for (i, part) in g.w.iter().enumerate() {
        let mut a = ring.zero();
        for (b, s) in part.iter().enumerate() {
            let coeffs = s.coeffs().iter().map(|c| lay.pth_power_in_k(c, k)).collect::<Result<Vec<_>>>()?;
            // Σ_j c_j^p S^{pj}
            let mut ser = TS::zero(k, ring.precision());
            for (j, cp) in coeffs.into_iter().enumerate() {
                if p * j < ring.precision() {
                    ser.set_coeff(p * j, cp);
                }
            }
            a = ring.add(&a, &ring.mul_series(&ring.frobenius(&ring.monomial(b)), &ser));
        }
        acc = ring.add(&acc, &ring.scale(&a, &lat.x.pow(i as u64)));
    }
    Ok(acc.is_zero_mod())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;

    #[test]
    fn ramified_family_one() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^2"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let lat = normalization_lattice(&pr, &t, 1, 1024, true).unwrap();
        assert_eq!(lat.g10, 3);
        assert!(lat.flat);
        assert_eq!(lat.generators.len(), 3);
        for g in &lat.generators {
            assert!(verify_generator(&pr, &lat, g).unwrap());
        }
        // the same count over K with ξ-coordinates, using x = 2t
        let lat2 = normalization_lattice(&pr, &t.scale(2), 1, 1024, false).unwrap();
        assert!(!lat2.flat);
        assert_eq!(lat2.g10, 3);
    }

    #[test]
    fn unramified_family_three() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let lat = normalization_lattice(&pr, &RatFunc::var(&k, 0), 6, 1024, false).unwrap();
        assert_eq!(lat.g10, 9);
        assert_eq!(lat.c, 6);
    }

    #[test]
    fn normal_input_is_empty() {
        let k = RationalField::with_names(3, &["s", "t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^3 - t - S"]).unwrap();
        for i in 0..2 {
            let lat = normalization_lattice(&pr, &RatFunc::var(&k, i), 1, 1024, true).unwrap();
            assert_eq!(lat.g10, 0);
            assert!(lat.generators.is_empty());
        }
    }
}
