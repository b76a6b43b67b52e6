//! Exact arithmetic in F_q and K = F_q(t₁,…,t_c): Frobenius, p-th roots,
//! p-basis decompositions and simple purely inseparable extensions.

pub mod ext;
pub mod fq;
pub mod linalg;
pub mod mpoly;
pub mod parse;
pub mod ratfunc;
pub mod upoly;

pub use ext::{ExtElem, SimpleInseparableExt};
pub use fq::FiniteField;
pub use mpoly::{MPoly, Mono};
pub use ratfunc::{KRef, RatFunc, RationalField};

use crate::error::{Error, Result};
use parse::EvalTarget;

/// b with b^p = a when a ∈ K^p.
pub fn is_pth_power(a: &RatFunc) -> Option<RatFunc> {
    a.pth_root(1)
}

/// ∂a/∂t_i, with 1-based index as in the usual notation.
pub fn partial_derivative(a: &RatFunc, i: usize) -> Result<RatFunc> {
    if i == 0 || i > a.field().c() {
        return Err(Error::input(format!("derivative index {i} out of range")));
    }
    Ok(a.partial_derivative(i - 1))
}

pub fn adjoin_pth_root(k: &KRef, x: &RatFunc) -> Result<SimpleInseparableExt> {
    SimpleInseparableExt::new(k, x.clone())
}

/// Evaluates parsed expressions as elements of K.
pub struct KEval<'a>(pub &'a KRef);

impl EvalTarget for KEval<'_> {
    type V = RatFunc;
    fn int(&self, n: i64) -> RatFunc {
        RatFunc::from_int(self.0, n)
    }
    fn var(&self, name: &str, pos: usize) -> Result<RatFunc> {
        ratfunc::named_element(self.0, name).ok_or_else(|| Error::Parse { pos, msg: format!("unknown variable '{name}'") })
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn div(&self, a: &RatFunc, b: &RatFunc, pos: usize) -> Result<RatFunc> {
        a.div(b).ok_or(Error::Parse { pos, msg: "division by zero".into() })
    }
}

/// Parse an element of K such as `(t1^2 + 2*t2)/(t1 - 1)`.
pub fn parse_k(k: &KRef, s: &str) -> Result<RatFunc> {
    parse::eval(&parse::parse_expr(s)?, &KEval(k))
}
