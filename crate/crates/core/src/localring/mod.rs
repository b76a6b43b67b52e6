//! Complete local rings K[[S]][T₁,…,T_m]/(P₁,…,P_m) with triangular monic
//! relations: reduction, valuation, residue field and plane-curve ingestion.

pub mod hensel;
pub mod kpoly;
pub mod presentation;
pub mod ring;

pub use kpoly::KPoly;
pub use presentation::{
    check_presentation, HenselSource, LocalRingPresentation, NormalFormLevel, PolynomialSource, PresentationDiagnostic,
    RelationSource, ResidueShape,
};
pub use ring::{Elem, Ring};
