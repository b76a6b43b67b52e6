//! Sparse incremental row echelon forms over K.

use super::ratfunc::RatFunc;
use std::collections::{BTreeMap, HashMap};

pub type SparseRow = Vec<(usize, RatFunc)>;

/// Rows in echelon form, each normalized to 1 at its pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The row was independent and now pivots on this column.
    Pivot(usize),
    /// The row reduced to zero.
    Dependent,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }
    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Reduce a row against the current pivots (leading-term reduction).
    pub fn reduce(&self, row: impl IntoIterator<Item = (usize, RatFunc)>) -> BTreeMap<usize, RatFunc> {
        let mut w: BTreeMap<usize, RatFunc> = BTreeMap::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            match w.get_mut(&c) {
                Some(x) => *x = x.add(&v),
                None => {
                    w.insert(c, v);
                }
            }
        }
        w.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = w.range(cursor..).find(|(c, _)| self.pivot_of.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, factor)) = next else { break };
            let prow = &self.rows[self.pivot_of[&c]];
            for (pc, pv) in prow {
                let delta = factor.mul(pv);
                match w.get_mut(pc) {
                    Some(x) => {
                        *x = x.sub(&delta);
                        if x.is_zero() {
                            w.remove(pc);
                        }
                    }
                    None => {
                        w.insert(*pc, delta.neg());
                    }
                }
            }
            cursor = c + 1;
        }
        w
    }

    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, RatFunc)>) -> Insert {
        let w = self.reduce(row);
        let Some((&pc, pv)) = w.iter().next() else { return Insert::Dependent };
        let inv = pv.inv().expect("nonzero pivot");
        let normalized: SparseRow = w.iter().map(|(c, v)| (*c, if *c == pc { RatFunc::one(v.field()) } else { v.mul(&inv) })).collect();
        self.pivot_of.insert(pc, self.rows.len());
        self.rows.push(normalized);
        Insert::Pivot(pc)
    }

    /// Back-substitute a solution of the system whose right-hand side lives in
    /// column `rhs` (free variables set to zero).  `None` if inconsistent.
    pub fn solve(&self, rhs: usize, nvars: usize, zero: &RatFunc) -> Option<Vec<RatFunc>> {
        if self.pivot_of.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![zero.clone(); nvars];
        let mut order: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for (pc, ri) in order {
            if pc >= nvars {
                continue;
            }
            let mut val = zero.clone();
            for (c, v) in &self.rows[ri] {
                if *c == rhs {
                    val = val.add(v);
                } else if *c != pc && *c < nvars {
                    val = val.sub(&v.mul(&x[*c]));
                }
            }
            x[pc] = val;
        }
        Some(x)
    }
}

impl Echelon {
    /// The solution of the homogeneous system with the non-pivot column `free` set
    /// to 1 and every other non-pivot column set to 0.
    pub fn null_vector(&self, free: usize, nvars: usize, zero: &RatFunc) -> Vec<RatFunc> {
        let mut x = vec![zero.clone(); nvars];
        x[free] = RatFunc::one(zero.field());
        let mut order: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, r)| (*c, *r)).filter(|(c, _)| *c < nvars).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for (pc, ri) in order {
            let mut val = zero.clone();
            for (c, v) in &self.rows[ri] {
                if *c != pc && *c < nvars && !x[*c].is_zero() {
                    val = val.sub(&v.mul(&x[*c]));
                }
            }
            x[pc] = val;
        }
        x
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solve the dense system A·x = b (A given by rows); `None` if inconsistent.
pub fn solve_dense(a: &[Vec<RatFunc>], b: &[RatFunc], zero: &RatFunc) -> Option<Vec<RatFunc>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut e = Echelon::new();
    for (row, bi) in a.iter().zip(b) {
        let sparse = row.iter().cloned().enumerate().chain(std::iter::once((n, bi.clone())));
        e.insert(sparse);
    }
    e.solve(n, n, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::ratfunc::RationalField;

    #[test]
    fn solve_small_system() {
        let k = RationalField::with_names(5, &["t"]).unwrap();
        let t = RatFunc::var(&k, 0);
        let one = RatFunc::one(&k);
        let zero = RatFunc::zero(&k);
        // [t 1; 1 1] x = [1; 0]
        let a = vec![vec![t.clone(), one.clone()], vec![one.clone(), one.clone()]];
        let b = vec![one.clone(), zero.clone()];
        let x = solve_dense(&a, &b, &zero).unwrap();
        assert_eq!(t.mul(&x[0]).add(&x[1]), one);
        assert_eq!(x[0].add(&x[1]), zero);
        // inconsistent
        let a2 = vec![vec![one.clone()], vec![one.clone()]];
        assert!(solve_dense(&a2, &[one.clone(), zero.clone()], &zero).is_none());
    }
}
