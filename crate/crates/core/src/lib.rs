//! Exact singularity invariants of discrete valuation rings over imperfect fields.
//!
//! Rings are given as complete presentations K[[S]][T₁,…,T_m]/(P₁,…,P_m) with
//! triangular monic relations over K = F_q(t₁,…,t_c).  From such a presentation the
//! crate computes the invariant q(x), the δ-invariant and conductor of the
//! normalization of R ⊗ K(x^{1/p}), genus changes along p-basis chains and the
//! Jacobian number, each with an independent brute-force cross-check.

pub mod basefield;
pub mod error;
pub mod invariants;
pub mod jacobian;
pub mod localring;
pub mod normalize;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
