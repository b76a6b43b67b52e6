use proptest::prelude::*;
use qdelta::localring::LocalRingPresentation;
use qdelta::normalize::represent_normalization;
use qdelta::basefield::RatFunc;
use qdelta::series::Budget;
use qdelta::verify::corpus;
use qdelta_cli::doc::{build_field, build_ring, emit_presentation, parse_document, InputDocument};

/// Emit, serialize, reload and emit again; the relations must come back identical
/// and the rings must agree to the emitted precision.
fn round_trip(pres: &LocalRingPresentation, n: usize) -> InputDocument {
    let d1 = emit_presentation(pres, n).unwrap();
    let text = serde_json::to_string(&d1).unwrap();
    let back = parse_document(&text).unwrap();
    assert_eq!(back, d1);
    let k = build_field(&back).unwrap();
    let pres2 = build_ring(&k, &back.ring, "ring").unwrap();
    let d2 = emit_presentation(&pres2, n).unwrap();
    assert_eq!((&d2.ring.names, &d2.ring.relations, &d2.vars, &d2.field), (&d1.ring.names, &d1.ring.relations, &d1.vars, &d1.field));
    let (a, b) = (pres.at(n).unwrap(), pres2.at(n).unwrap());
    assert_eq!(a.tails(), b.tails());
    d1
}

#[test]
fn fixtures_round_trip() {
    for fx in corpus().unwrap() {
        let d = round_trip(&fx.pres, 12);
        // hypersurface fixtures come out as truncated series relations
        assert_eq!(d.ring.truncated_at.is_some(), fx.pres.source().polynomial_relations().is_none(), "{}", fx.label());
        round_trip(&fx.supplied.pres, 12);
    }
}

#[test]
fn computed_normalization_round_trips() {
    let fx = qdelta::verify::fixture(qdelta::verify::Family::Fam4, 3, 2, None).unwrap();
    let x = RatFunc::var(fx.pres.field(), 0);
    let nz = represent_normalization(&fx.pres, &x, Budget::default(), None).unwrap();
    round_trip(&nz.pres, 10);
}

#[test]
fn extension_field_constants_round_trip() {
    let doc = parse_document(r#"{"p": 2, "field": {"q": 4}, "vars": ["t"], "ring": {"names": ["S", "Y"], "relations": ["Y^2 - a2*t - a3*S^3 - Y*S^3"]}}"#).unwrap();
    let k = build_field(&doc).unwrap();
    let pres = build_ring(&k, &doc.ring, "ring").unwrap();
    let d = round_trip(&pres, 8);
    assert!(d.ring.relations.unwrap()[0].contains("a2"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn random_relations_round_trip(p in prop::sample::select(vec![2u32, 3, 5]), a in 1u32..5, b in 0u32..5, q in 1u32..9, dq in 1u32..5, j in 0u32..2) {
        let rel = format!("Y^{p} - t - {a}*S^{q} - {b}*Y^{j}*S^{}", q + dq);
        let doc = parse_document(&format!(r#"{{"p": {p}, "vars": ["t"], "ring": {{"names": ["S", "Y"], "relations": ["{rel}"]}}}}"#)).unwrap();
        let k = build_field(&doc).unwrap();
        let pres = build_ring(&k, &doc.ring, "ring").unwrap();
        round_trip(&pres, 12);
    }
}
