//! Codimension of M[[T^mγ, T^nδ]] in M[[T]] for coprime m, n and units γ, δ.

use crate::basefield::FiniteField;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinDim {
    /// (m−1)(n−1)/2.
    pub dimension: usize,
    /// (m−1)(n−1).
    pub conductor_exponent: usize,
    /// Codimension of the span of the products x^i y^j modulo T^N.
    pub rowred_dimension: usize,
    /// One past the largest exponent that is not a leading exponent of the span.
    pub rowred_conductor: usize,
    /// The exponents missed by the span (the valuations not attained).
    pub rowred_gaps: Vec<usize>,
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Naturals not in the numerical semigroup ⟨m, n⟩.
pub fn semigroup_gaps(m: usize, n: usize) -> Result<Vec<usize>> {
    if m == 0 || n == 0 || gcd(m, n) != 1 {
        return Err(Error::input(format!("⟨{m}, {n}⟩ has infinitely many gaps (not coprime)")));
    }
    if m == 1 || n == 1 {
        return Ok(vec![]);
    }
    let frob = m * n - m - n;
    let mut inside = vec![false; frob + 1];
    for i in 0..=frob / m {
        for j in 0..=(frob - i * m) / n {
            inside[i * m + j * n] = true;
        }
    }
    Ok((0..=frob).filter(|&g| !inside[g]).collect())
}

fn mul_trunc(f: &FiniteField, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate().take(n).filter(|(_, &x)| x != 0) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    out
}

/// Dense echelon over F_q keyed by the lowest nonzero exponent.
struct LeadEchelon<'a> {
    f: &'a FiniteField,
    rows: Vec<Option<Vec<u32>>>,
}

impl LeadEchelon<'_> {
    fn insert(&mut self, mut row: Vec<u32>) {
        let f = self.f;
        while let Some(l) = row.iter().position(|&c| c != 0) {
            match &self.rows[l] {
                None => {
                    let inv = f.inv(row[l]);
                    row.iter_mut().for_each(|c| *c = f.mul(*c, inv));
                    self.rows[l] = Some(row);
                    return;
                }
                Some(piv) => {
                    let c = row[l];
                    for (x, &y) in row.iter_mut().zip(piv).skip(l) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(c, y));
                        }
                    }
                }
            }
        }
    }
}

/// The closed form together with a row-reduction check over M = F_q.
///
/// `gamma`, `delta` are unit power series (coefficient lists, constant term first).
/// Products x^i y^j with x = T^mγ, y = T^nδ and mi + nj < N span the image of the
/// subring modulo T^N; for N beyond the conductor its codimension is the gap count.
pub fn coin_dim(m: usize, n: usize, gamma: &[u32], delta: &[u32], field: &FiniteField, trunc: Option<usize>) -> Result<CoinDim> {
    if m == 0 || n == 0 || gcd(m, n) != 1 {
        return Err(Error::input(format!("not coprime: ({m}, {n})")));
    }
    if gamma.first().copied().unwrap_or(0) == 0 || delta.first().copied().unwrap_or(0) == 0 {
        return Err(Error::input("γ and δ must be units"));
    }
    let dimension = (m - 1) * (n - 1) / 2;
    let conductor_exponent = (m - 1) * (n - 1);
    let big_n = trunc.unwrap_or(conductor_exponent + m + n + 1).max(conductor_exponent + 1);
    let shift = |s: &[u32], k: usize| -> Vec<u32> {
        let mut v = vec![0; big_n];
        for (i, &c) in s.iter().enumerate() {
            if k + i < big_n {
                v[k + i] = c;
            }
        }
        v
    };
    let x = shift(gamma, m);
    let y = shift(delta, n);
    let mut ech = LeadEchelon { f: field, rows: vec![None; big_n] };
    let mut xi = shift(&[1], 0);
    let mut i = 0;
    while i * m < big_n {
        let mut prod = xi.clone();
        let mut j = 0;
        while i * m + j * n < big_n {
            ech.insert(prod.clone());
            prod = mul_trunc(field, &prod, &y, big_n);
            j += 1;
        }
        xi = mul_trunc(field, &xi, &x, big_n);
        i += 1;
    }
    let rowred_gaps: Vec<usize> = (0..big_n).filter(|&e| ech.rows[e].is_none()).collect();
    let rowred_conductor = rowred_gaps.last().map(|g| g + 1).unwrap_or(0);
    let out = CoinDim { dimension, conductor_exponent, rowred_dimension: rowred_gaps.len(), rowred_conductor, rowred_gaps };
    if out.rowred_dimension != dimension || rowred_conductor != conductor_exponent {
        return Err(Error::OracleMismatch(format!(
            "coin ({m},{n}): closed form ({dimension}, {conductor_exponent}) vs row reduction ({}, {rowred_conductor})",
            out.rowred_dimension
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_examples() {
        assert_eq!(semigroup_gaps(2, 3).unwrap(), vec![1]);
        assert_eq!(semigroup_gaps(3, 5).unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(semigroup_gaps(2, 5).unwrap(), vec![1, 3]);
        assert_eq!(semigroup_gaps(1, 7).unwrap(), Vec::<usize>::new());
        assert!(semigroup_gaps(4, 6).is_err());
    }

    #[test]
    fn coin_examples() {
        let f3 = FiniteField::prime(3).unwrap();
        let c = coin_dim(2, 3, &[1], &[1], &f3, None).unwrap();
        assert_eq!((c.dimension, c.conductor_exponent), (1, 2));
        assert_eq!(c.rowred_gaps, vec![1]);
        // γ = 1 + T, δ = 1 − T²
        let c = coin_dim(3, 5, &[1, 1], &[1, 0, 2], &f3, None).unwrap();
        assert_eq!((c.dimension, c.conductor_exponent), (4, 8));
        assert_eq!(c.rowred_gaps, semigroup_gaps(3, 5).unwrap());
        let c = coin_dim(1, 4, &[2, 1], &[1], &f3, None).unwrap();
        assert_eq!((c.dimension, c.conductor_exponent), (0, 0));
        assert!(coin_dim(2, 4, &[1], &[1], &f3, None).is_err());
        assert!(coin_dim(2, 3, &[0, 1], &[1], &f3, None).is_err());
    }
}
