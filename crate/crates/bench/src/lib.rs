//! Inputs shared by the benchmarks in `benches/`.

use qdelta::basefield::{FiniteField, KRef, RatFunc, RationalField};
use qdelta::localring::LocalRingPresentation;
use qdelta::series::TruncatedSeries;

pub fn field(p: u32) -> KRef {
    RationalField::with_names(p, &["t"]).unwrap()
}

/// 1 + tS + t²S² + … to precision n, a unit with nonconstant coefficients.
pub fn unit_series(k: &KRef, n: usize) -> TruncatedSeries {
    let t = RatFunc::var(k, 0);
    TruncatedSeries::from_coeffs(k, (0..n).map(|i| t.pow(i as u64)).collect(), n)
}

/// R = K[[S]][Y]/(Y^{p²} − t − S^n).
pub fn fam1(p: u32, n: usize) -> LocalRingPresentation {
    let k = field(p);
    LocalRingPresentation::parse_relations(&k, &["S", "Y"], &[&format!("Y^{} - t - S^{n}", p * p)]).unwrap()
}

/// (γ, δ) = (1 + T + T², 1 − T) over F_q.
pub fn coin_units(f: &FiniteField) -> (Vec<u32>, Vec<u32>) {
    (vec![1, 1, 1], vec![1, f.neg(1)])
}
