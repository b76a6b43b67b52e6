//! Matrices over O/S^N, O = K[[S]], with Smith normal form and transforms.
//!
//! Entries are treated as exact elements of the quotient ring O/S^N: a product
//! is the product mod S^N and b/S^v (v ≤ v(b)) is any representative of the
//! quotient, taken with zero high coefficients.  The Smith form of the reduction
//! is the reduction of the Smith form, so exponents below N are exact and
//! exponents ≥ N show up as zero diagonal entries.

use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries as TS, Val};

#[derive(Clone, Debug)]
pub struct OMat {
    pub k: KRef,
    pub n: usize,
    pub rows: Vec<Vec<TS>>,
    pub ncols: usize,
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Exponents of the nonzero diagonal entries, in pivot order.
    pub exponents: Vec<usize>,
    /// P with P·A·Q = diag (rows of P beyond the rank span the left kernel mod S^N).
    pub p: Option<OMat>,
    pub q: Option<OMat>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
    pub fn sum(&self) -> usize {
        self.exponents.iter().sum()
    }
}

fn div_sv(x: &TS, v: usize, n: usize) -> TS {
    let c: Vec<RatFunc> = x.coeffs().iter().skip(v).cloned().collect();
    TS::from_coeffs(x.field(), c, n)
}

fn val(x: &TS) -> Option<usize> {
    match x.valuation() {
        Val::Finite(v) => Some(v),
        Val::AtLeast(_) => None,
    }
}

impl OMat {
    pub fn zeros(k: &KRef, n: usize, r: usize, c: usize) -> Self {
        OMat { k: k.clone(), n, rows: vec![vec![TS::zero(k, n); c]; r], ncols: c }
    }
    pub fn identity(k: &KRef, n: usize, r: usize) -> Self {
        let mut m = Self::zeros(k, n, r, r);
        for i in 0..r {
            m.rows[i][i] = TS::one(k, n);
        }
        m
    }
    /// Rows given as series of any precision ≥ n.
    pub fn from_rows(k: &KRef, n: usize, ncols: usize, rows: Vec<Vec<TS>>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != ncols {
                return Err(Error::input("ragged matrix"));
            }
            if r.iter().any(|x| x.precision() < n) {
                return Err(Error::precision(n, "matrix entry known to lower precision"));
            }
            out.push(r.iter().map(|x| x.truncate(n)).collect());
        }
        Ok(OMat { k: k.clone(), n, rows: out, ncols })
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn mul(&self, o: &OMat) -> OMat {
        let mut out = OMat::zeros(&self.k, self.n, self.nrows(), o.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (l, a) in row.iter().enumerate() {
                if a.is_zero_mod() {
                    continue;
                }
                for j in 0..o.ncols {
                    let b = &o.rows[l][j];
                    if !b.is_zero_mod() {
                        out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }
    pub fn columns(&self, cols: std::ops::Range<usize>) -> OMat {
        let ncols = cols.len();
        OMat { k: self.k.clone(), n: self.n, rows: self.rows.iter().map(|r| r[cols.clone()].to_vec()).collect(), ncols }
    }
    pub fn select_rows(&self, idx: impl Iterator<Item = usize>) -> OMat {
        OMat { k: self.k.clone(), n: self.n, rows: idx.map(|i| self.rows[i].clone()).collect(), ncols: self.ncols }
    }
    pub fn stack(&self, o: &OMat) -> OMat {
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        OMat { k: self.k.clone(), n: self.n, rows, ncols: self.ncols }
    }

    /// Smith form by minimal-valuation pivoting; transforms are tracked on request.
    pub fn smith(&self, with_p: bool, with_q: bool) -> SmithForm {
        let (r, c, n) = (self.nrows(), self.ncols, self.n);
        let mut a = self.rows.clone();
        let mut p = with_p.then(|| OMat::identity(&self.k, n, r));
        let mut q = with_q.then(|| OMat::identity(&self.k, n, c));
        let mut exps = vec![];
        for t in 0..r.min(c) {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if let Some(v) = val(x) {
                        if best.map_or(true, |b| v < b.2) {
                            best = Some((i, j, v));
                        }
                    }
                }
                if best.is_some_and(|b| b.2 == 0) {
                    break;
                }
            }
            let Some((bi, bj, v)) = best else { break };
            a.swap(t, bi);
            if let Some(p) = &mut p {
                p.rows.swap(t, bi);
            }
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            if let Some(q) = &mut q {
                for row in q.rows.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let uinv = div_sv(&a[t][t], v, n).unit_inverse().expect("pivot unit part");
            a[t] = a[t].iter().map(|x| x.mul(&uinv)).collect();
            if let Some(p) = &mut p {
                p.rows[t] = p.rows[t].iter().map(|x| x.mul(&uinv)).collect();
            }
            for i in t + 1..r {
                if a[i][t].is_zero_mod() {
                    continue;
                }
                let f = div_sv(&a[i][t], v, n);
                let pivot_row = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero_mod() {
                        *x = x.sub(&f.mul(y));
                    }
                }
                if let Some(p) = &mut p {
                    let prow = p.rows[t].clone();
                    for (x, y) in p.rows[i].iter_mut().zip(&prow) {
                        if !y.is_zero_mod() {
                            *x = x.sub(&f.mul(y));
                        }
                    }
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero_mod() {
                    continue;
                }
                let g = div_sv(&a[t][j], v, n);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    if !y.is_zero_mod() {
                        row[j] = row[j].sub(&g.mul(&y));
                    }
                }
                if let Some(q) = &mut q {
                    for row in q.rows.iter_mut() {
                        let y = row[t].clone();
                        if !y.is_zero_mod() {
                            row[j] = row[j].sub(&g.mul(&y));
                        }
                    }
                }
            }
            exps.push(v);
        }
        SmithForm { exponents: exps, p, q }
    }
}
