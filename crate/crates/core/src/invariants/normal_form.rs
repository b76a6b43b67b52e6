//! The data (n_i, f_i, q_i, q′_i, ũ_i, w̃_i) putting a presentation with purely
//! inseparable residue field into the normal form
//! T_i^{p^{n_i}} − f_i(T_{<i}) − ũ_iS^{q_i} + w̃_i^pS^{q′_i}.

use super::q::climb;
use crate::error::{Error, Result};
use crate::localring::{check_presentation, Elem, LocalRingPresentation, NormalFormLevel, ResidueShape, Ring};
use crate::series::Budget;

struct Run(Vec<NormalFormLevel>);

impl PartialEq for Run {
    fn eq(&self, o: &Self) -> bool {
        let key = |l: &NormalFormLevel| (l.n, l.q, l.q_prime, l.w_tilde.is_some());
        self.0.iter().map(key).eq(o.0.iter().map(key))
    }
}

fn monomial_in(ring: &Ring, lifts: &[Elem], b: usize) -> Elem {
    let ex = ring.exponents(b);
    let mut acc = ring.one();
    for (r, &e) in lifts.iter().zip(&ex) {
        if e > 0 {
            acc = ring.mul(&acc, &ring.pow(r, e as u64));
        }
    }
    acc
}

fn at_precision(ring: &Ring, ns: &[u32]) -> Result<Vec<NormalFormLevel>> {
    let p = ring.field().p() as u64;
    let l = ring.residue_ring();
    let mut lifts: Vec<Elem> = vec![];
    let mut out = vec![];
    for (i, &n) in ns.iter().enumerate() {
        let below = l.sub_ring(i).rank();
        let f: Vec<_> = l.tail_block(i, 0).iter().map(|s| s.coeff(0).clone()).collect();
        // z = f_i(r′₁, …, r′_{i−1})
        let mut z = ring.zero();
        for (b, c) in f.iter().enumerate().take(below) {
            if !c.is_zero() {
                z = ring.add(&z, &ring.scale(&monomial_in(ring, &lifts, b), c));
            }
        }
        let qp = climb(ring, ring.var(i), &z, n)?;
        let r_prime = qp.r;
        let base = ring.pow(&r_prime, p.pow(n - 1));
        let qc = climb(ring, base.clone(), &z, 1)?;
        if qc.q < qp.q {
            return Err(Error::CheckFailed(format!("level {}: q = {} below q′ = {}", i + 1, qc.q, qp.q)));
        }
        let (r_i, q_i) = if qc.q == qp.q { (base.clone(), qp.q) } else { (qc.r, qc.q) };
        let u = ring.div_s(&ring.sub(&ring.frobenius(&r_i), &z), q_i)?;
        let w = if q_i == qp.q {
            None
        } else {
            // w^p·S^{q′} = r_i^p − r′^{p^n}, so w = (r_i − r′^{p^{n−1}})/S^{q′/p}
            Some(ring.div_s(&ring.sub(&r_i, &base), qp.q / p as usize)?)
        };
        let mut rel = ring.sub(&ring.sub(&ring.frobenius_pow(&r_prime, n), &z), &ring.mul_s(&u, q_i));
        if let Some(w) = &w {
            rel = ring.add(&rel, &ring.mul_s(&ring.frobenius(w), qp.q));
        }
        if !rel.is_zero_mod() {
            return Err(Error::CheckFailed(format!("normal form relation {} does not vanish", i + 1)));
        }
        out.push(NormalFormLevel {
            n,
            f,
            q: q_i,
            q_prime: qp.q,
            r_prime: r_prime.clone(),
            u_tilde: u,
            w_tilde: w,
            q_prime_derived: n > 1,
            precision: ring.precision(),
        });
        lifts.push(r_prime);
    }
    Ok(out)
}

/// Normal-form data with precision escalation.  Every generator must satisfy a
/// residue relation T_i^{p^{n_i}} = f_i over the previous residue field.
pub fn extract_normal_form(pres: &LocalRingPresentation, budget: Budget) -> Result<Vec<NormalFormLevel>> {
    let diag = check_presentation(pres)?;
    let ns = diag
        .shapes
        .iter()
        .map(|s| match s {
            ResidueShape::PurelyInseparable { n } => Ok(*n),
            _ => Err(Error::unsupported("residue field not purely inseparable over K")),
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(budget.run(|n| Ok(Run(at_precision(&pres.at(n)?, &ns)?)))?.value.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{RatFunc, RationalField};

    #[test]
    fn already_normal() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^2"]).unwrap();
        let nf = extract_normal_form(&pr, Budget::default()).unwrap();
        assert_eq!(nf.len(), 1);
        let l = &nf[0];
        assert_eq!((l.n, l.q, l.q_prime), (2, 2, 2));
        assert_eq!(l.f[0], RatFunc::var(&k, 0));
        assert!(l.w_tilde.is_none());
        assert!(l.u_tilde.coords()[0].sub(&crate::series::TruncatedSeries::one(&k, 1)).truncate(1).is_zero_mod());
        assert!(l.u_tilde.coords()[1..].iter().all(|c| c.is_zero_mod()));
    }

    #[test]
    fn family_three() {
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_hypersurface(&k, &["S", "Y"], "Y^4 - t*Y - S^9", "Y^3 - t").unwrap();
        let nf = extract_normal_form(&pr, Budget::default()).unwrap();
        assert_eq!((nf[0].n, nf[0].q, nf[0].q_prime), (1, 9, 9));
        let r = pr.at(4).unwrap();
        assert!(r.is_unit(&nf[0].u_tilde));
    }

    #[test]
    fn q_above_q_prime() {
        // T⁹ = t + S³T³ + S⁴: every lift r of y has v(r⁹ − t) = 3, while (T³ − S·T)³ − t = S⁴
        let k = RationalField::with_names(3, &["t"]).unwrap();
        let pr = LocalRingPresentation::parse_relations(&k, &["S", "T"], &["T^9 - t - S^3*T^3 - S^4"]).unwrap();
        let nf = extract_normal_form(&pr, Budget::default()).unwrap();
        let l = &nf[0];
        assert_eq!((l.n, l.q_prime), (2, 3));
        assert!(l.q > l.q_prime);
        assert!(l.w_tilde.is_some());
        assert!(l.q_prime_derived);
        assert!(extract_normal_form(&LocalRingPresentation::from_relations(&k, vec!["S".into()], vec![]).unwrap(), Budget::default()).unwrap().is_empty());
    }
}
