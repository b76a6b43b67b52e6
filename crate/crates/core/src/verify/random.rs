//! Random presentations in normal form T_i^{p^a} − f_i − u_i·S^{q_i} + w_i^p·S^{q′_i}.

use crate::basefield::RationalField;
use crate::error::Result;
use crate::localring::LocalRingPresentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shapes of random presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// One generator over F_p(t).
    Single,
    /// T₁ over s, T₂ over t: K = F_p(s, t), L = K(s^{1/p}, t^{1/p}).
    TwoVariables,
    /// T₁^p = t + …, T₂^p = T₁ + …: L = K(t^{1/p²}).
    Tower,
}

#[derive(Clone, Debug)]
pub struct RandomPresentation {
    pub shape: Shape,
    pub seed: u64,
    pub relations: Vec<String>,
    pub pres: LocalRingPresentation,
}

fn nonzero(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    rng.gen_range(1..p)
}

/// u·S^q − w^p·S^{q′} with u = a + b·T a unit (b ≠ 0 keeps x^{1/p} out of R) and w = c·T^j, jp below the degree.
fn perturbation(rng: &mut ChaCha8Rng, p: u32, var: &str, deg: usize, q: usize) -> String {
    let a = nonzero(rng, p);
    let b = nonzero(rng, p);
    let q2 = q + rng.gen_range(1..=6);
    let c = rng.gen_range(0..p);
    let j = rng.gen_range(0..deg / p as usize) * p as usize;
    format!("{a}*S^{q} + {b}*{var}*S^{q} - {c}*{var}^{j}*S^{q2}")
}

/// A random presentation with q_i ≤ 12.
pub fn random_normal_form(p: u32, shape: Shape, seed: u64) -> Result<RandomPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32));
    let mut q = || rng.gen_range(1..=12usize);
    let (q1, q2) = (q(), q());
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9) ^ p as u64);
    let (k, names, relations) = match shape {
        Shape::Single => {
            let a = rng.gen_range(1..=2u32);
            let deg = (p as usize).pow(a);
            let rel = format!("T^{deg} - t - ({})", perturbation(&mut rng, p, "T", deg, q1));
            (RationalField::with_names(p, &["t"])?, vec!["S", "T"], vec![rel])
        }
        Shape::TwoVariables => {
            let r1 = format!("T^{p} - s - ({})", perturbation(&mut rng, p, "T", p as usize, q1));
            let c = nonzero(&mut rng, p);
            let r2 = format!("U^{p} - t - ({}) - {c}*T*S^{}", perturbation(&mut rng, p, "U", p as usize, q2), q2 + 1);
            (RationalField::with_names(p, &["s", "t"])?, vec!["S", "T", "U"], vec![r1, r2])
        }
        Shape::Tower => {
            let r1 = format!("T^{p} - t - ({})", perturbation(&mut rng, p, "T", p as usize, q1));
            let r2 = format!("U^{p} - T - ({})", perturbation(&mut rng, p, "U", p as usize, q2));
            (RationalField::with_names(p, &["t"])?, vec!["S", "T", "U"], vec![r1, r2])
        }
    };
    let rels: Vec<&str> = relations.iter().map(|s| s.as_str()).collect();
    let pres = LocalRingPresentation::parse_relations(&k, &names, &rels)?;
    Ok(RandomPresentation { shape, seed, relations, pres })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for p in [2, 3, 5] {
            for shape in [Shape::Single, Shape::TwoVariables, Shape::Tower] {
                let a = random_normal_form(p, shape, 7).unwrap();
                let b = random_normal_form(p, shape, 7).unwrap();
                assert_eq!(a.relations, b.relations);
                assert!(a.pres.at(8).is_ok(), "{:?}", a.relations);
            }
        }
    }
}
