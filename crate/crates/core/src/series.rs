//! Truncated power series in K[[S]] with explicit precision, and the
//! precision-escalation loop used by every truncated computation.

use crate::basefield::{KRef, RatFunc};
use crate::error::{Error, Result};
use std::fmt;

/// A valuation that is either known exactly or only bounded below by the precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(usize),
    AtLeast(usize),
}

impl Val {
    pub fn finite(self) -> Option<usize> {
        match self {
            Val::Finite(v) => Some(v),
            Val::AtLeast(_) => None,
        }
    }
    /// The exact value, or a precision error carrying `what`.
    pub fn exact(self, what: &str) -> Result<usize> {
        match self {
            Val::Finite(v) => Ok(v),
            Val::AtLeast(n) => Err(Error::precision(n, format!("{what} vanishes modulo S^{n}"))),
        }
    }
    /// Lower bound that is valid in both cases.
    pub fn bound(self) -> usize {
        match self {
            Val::Finite(v) | Val::AtLeast(v) => v,
        }
    }
    pub fn min(self, o: Val) -> Val {
        match (self, o) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a.min(b)),
            (Val::Finite(a), Val::AtLeast(b)) | (Val::AtLeast(b), Val::Finite(a)) => {
                if a < b {
                    Val::Finite(a)
                } else {
                    Val::AtLeast(b)
                }
            }
            (Val::AtLeast(a), Val::AtLeast(b)) => Val::AtLeast(a.min(b)),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

/// c_0 + c_1 S + … known modulo S^N.  Stored densely with exactly N coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    k: KRef,
    coeffs: Vec<RatFunc>,
}

impl TruncatedSeries {
    pub fn zero(k: &KRef, prec: usize) -> Self {
        TruncatedSeries { k: k.clone(), coeffs: vec![RatFunc::zero(k); prec] }
    }
    pub fn one(k: &KRef, prec: usize) -> Self {
        Self::constant(RatFunc::one(k), prec)
    }
    pub fn constant(c: RatFunc, prec: usize) -> Self {
        let mut s = Self::zero(c.field(), prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }
    /// c·S^j.
    pub fn monomial(c: RatFunc, j: usize, prec: usize) -> Self {
        let mut s = Self::zero(c.field(), prec);
        if j < prec {
            s.coeffs[j] = c;
        }
        s
    }
    /// Coefficients beyond `prec` are dropped; missing ones are zero.
    pub fn from_coeffs(k: &KRef, mut coeffs: Vec<RatFunc>, prec: usize) -> Self {
        coeffs.resize(prec, RatFunc::zero(k));
        TruncatedSeries { k: k.clone(), coeffs }
    }

    pub fn field(&self) -> &KRef {
        &self.k
    }
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }
    pub fn coeff(&self, j: usize) -> &RatFunc {
        &self.coeffs[j]
    }
    pub fn set_coeff(&mut self, j: usize, c: RatFunc) {
        self.coeffs[j] = c;
    }

    pub fn valuation(&self) -> Val {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Val::Finite(v),
            None => Val::AtLeast(self.precision()),
        }
    }
    /// Zero modulo S^N; this says nothing about the exact element.
    pub fn is_zero_mod(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(prec);
        TruncatedSeries { k: self.k.clone(), coeffs: c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let coeffs = self.coeffs[..n].iter().zip(&o.coeffs[..n]).map(|(a, b)| a.add(b)).collect();
        TruncatedSeries { k: self.k.clone(), coeffs }
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let coeffs = self.coeffs[..n].iter().zip(&o.coeffs[..n]).map(|(a, b)| a.sub(b)).collect();
        TruncatedSeries { k: self.k.clone(), coeffs }
    }
    pub fn neg(&self) -> Self {
        TruncatedSeries { k: self.k.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(&self.k, self.precision());
        }
        TruncatedSeries { k: self.k.clone(), coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let mut out = vec![RatFunc::zero(&self.k); n];
        for (i, a) in self.coeffs[..n].iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs[..n - i].iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { k: self.k.clone(), coeffs: out }
    }
    /// Multiply by S^j; the precision grows by j.
    pub fn shift_up(&self, j: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(&self.k); j];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { k: self.k.clone(), coeffs }
    }
    /// Divide by S^j, assuming the first j coefficients vanish; the precision drops by j.
    pub fn shift_down(&self, j: usize) -> Result<Self> {
        if j > self.precision() {
            return Err(Error::precision(self.precision(), format!("division by S^{j}")));
        }
        if let Some(i) = self.coeffs[..j].iter().position(|c| !c.is_zero()) {
            return Err(Error::input(format!("series has a nonzero coefficient at S^{i}, cannot divide by S^{j}")));
        }
        Ok(TruncatedSeries { k: self.k.clone(), coeffs: self.coeffs[j..].to_vec() })
    }

    /// a(S)^{[p^k]} := Σ c_j^{p^k} S^{p^k j}; equals a^{p^k} and has precision p^k·N.
    pub fn frobenius(&self, k: u32) -> Self {
        let pk = (self.k.p() as usize).pow(k);
        let mut out = vec![RatFunc::zero(&self.k); pk * self.precision()];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[pk * j] = c.frobenius(k);
        }
        TruncatedSeries { k: self.k.clone(), coeffs: out }
    }

    /// Inverse of a unit by Newton iteration w ← w(2 − uw).
    pub fn unit_inverse(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0inv = self.coeffs[0].inv().ok_or_else(|| Error::input("series is not a unit (constant term 0)"))?;
        let two = Self::constant(RatFunc::from_int(&self.k, 2), n);
        let mut w = Self::constant(c0inv, 1);
        let mut correct = 1;
        while correct < n {
            correct = (2 * correct).min(n);
            let u = self.truncate(correct);
            let wn = Self::from_coeffs(&self.k, w.coeffs.clone(), correct);
            w = wn.mul(&two.truncate(correct).sub(&u.mul(&wn)));
        }
        Ok(w)
    }

    /// Apply a coefficient map, e.g. an embedding K → K′.
    pub fn map(&self, k: &KRef, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        TruncatedSeries { k: k.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Composition with S ↦ S^e (precision becomes e(N−1)+1, all of it exact).
    pub fn inflate(&self, e: usize) -> Self {
        let n = self.precision();
        if n == 0 {
            return self.clone();
        }
        let mut out = vec![RatFunc::zero(&self.k); e * (n - 1) + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[e * j] = c.clone();
        }
        TruncatedSeries { k: self.k.clone(), coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains(['+', ' ']) { format!("({cs})") } else { cs };
            match j {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*S")?,
                _ => write!(f, "{cs}*S^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(S^{})", self.precision())
    }
}

/// Result of a precision-escalated computation, with the precision at which it settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stable<T> {
    pub value: T,
    pub precision: usize,
}

/// Starting precision and cap for [`stable_compute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub n0: usize,
    pub cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { n0: 16, cap: 1024 }
    }
}

impl Budget {
    pub fn run<T: PartialEq>(&self, f: impl FnMut(usize) -> Result<T>) -> Result<Stable<T>> {
        stable_compute(self.n0, self.cap, f)
    }

    /// Doubling without the agreement check, for computations that certify their own
    /// result and report insufficient precision otherwise.
    pub fn first<T>(&self, mut f: impl FnMut(usize) -> Result<T>) -> Result<Stable<T>> {
        let mut n = self.n0.max(1).min(self.cap);
        loop {
            match f(n) {
                Ok(value) => return Ok(Stable { value, precision: n }),
                Err(e) if e.is_precision() && n < self.cap => n = (2 * n).min(self.cap),
                Err(e) if e.is_precision() => return Err(Error::PrecisionExhausted { cap: self.cap, what: e.to_string() }),
                Err(e) => return Err(e),
            }
        }
    }
}

/// Run `f` at N0, 2N0, 4N0, … (capped) until two consecutive runs agree.
/// A run that reports insufficient precision resets the agreement streak.
pub fn stable_compute<T: PartialEq>(n0: usize, cap: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<Stable<T>> {
    let n0 = n0.max(1);
    let mut prev: Option<T> = None;
    let mut n = n0.min(cap);
    let mut last_err = String::from("no agreement");
    loop {
        match f(n) {
            Ok(v) => {
                if prev.as_ref() == Some(&v) {
                    return Ok(Stable { value: v, precision: n });
                }
                prev = Some(v);
            }
            Err(e) if e.is_precision() => {
                last_err = e.to_string();
                prev = None;
            }
            Err(e) => return Err(e),
        }
        if n >= cap {
            return Err(Error::PrecisionExhausted { cap, what: last_err });
        }
        n = (2 * n).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::RationalField;
    use proptest::prelude::*;

    fn k3() -> KRef {
        RationalField::with_names(3, &["t"]).unwrap()
    }

    fn ser(k: &KRef, cs: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(k, cs.iter().map(|&c| RatFunc::from_int(k, c)).collect(), n)
    }

    #[test]
    fn inverse_examples() {
        let k = k3();
        assert_eq!(ser(&k, &[1], 4).unit_inverse().unwrap(), ser(&k, &[1], 4));
        assert_eq!(ser(&k, &[1, -1], 4).unit_inverse().unwrap(), ser(&k, &[1, 1, 1, 1], 4));
        let u = ser(&k, &[2, 1], 3);
        let w = u.unit_inverse().unwrap();
        assert_eq!(u.mul(&w), ser(&k, &[1], 3));
        // 2 = −1 in F_3, and (−1 + S)^{-1} = −(1 + S + S²)
        assert_eq!(w, ser(&k, &[2, 2, 2], 3));
        assert!(ser(&k, &[0, 1], 3).unit_inverse().is_err());
    }

    #[test]
    fn stable_compute_examples() {
        let k = k3();
        let s = stable_compute(4, 1024, |n| ser(&k, &[0, 0, 1, 0, 0, 1], n).valuation().exact("x")).unwrap();
        assert_eq!(s.value, 2);
        let z = stable_compute(16, 1024, |n| TruncatedSeries::zero(&k, n).valuation().exact("zero"));
        assert!(matches!(z, Err(Error::PrecisionExhausted { cap: 1024, .. })));
    }

    #[test]
    fn valuation_and_shifts() {
        let k = k3();
        let a = ser(&k, &[0, 0, 5, 1], 6);
        assert_eq!(a.valuation(), Val::Finite(2));
        assert_eq!(a.shift_down(2).unwrap().precision(), 4);
        assert!(a.shift_down(3).is_err());
        assert_eq!(TruncatedSeries::zero(&k, 5).valuation(), Val::AtLeast(5));
        assert_eq!(a.frobenius(1).precision(), 18);
        assert_eq!(a.frobenius(1).truncate(6), a.mul(&a).mul(&a));
    }

    fn arb_series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-4i64..5, n).prop_map(move |cs| {
            let k = RationalField::with_names(5, &["t"]).unwrap();
            let t = RatFunc::var(&k, 0);
            let coeffs = cs.iter().enumerate().map(|(i, &c)| RatFunc::from_int(&k, c).add(&t.pow(i as u64 % 3))).collect();
            TruncatedSeries::from_coeffs(&k, coeffs, n)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn unit_inverse_is_inverse(u in arb_series(9)) {
            prop_assume!(!u.coeff(0).is_zero());
            let w = u.unit_inverse().unwrap();
            let one = TruncatedSeries::one(u.field(), 9);
            prop_assert!(matches!(u.mul(&w).sub(&one).valuation(), Val::AtLeast(9)));
            prop_assert_eq!(w.precision(), 9);
        }

        #[test]
        fn ring_axioms_mod_s_n(a in arb_series(7), b in arb_series(7), c in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // precision is the minimum of the operands
            prop_assert_eq!(a.mul(&c).precision(), 5);
            prop_assert_eq!(a.add(&c).precision(), 5);
        }
    }
}
