use qdelta::basefield::RatFunc;
use qdelta::jacobian::jac_number;
use qdelta::localring::LocalRingPresentation;
use qdelta::normalize::{full_genus_change, two_step_analysis};
use qdelta::series::Budget;
use qdelta::verify::{fixture, run_presentation, Check, Family};

#[test]
fn two_step_values_of_fam2() {
    let fx = fixture(Family::Fam2, 3, 2, None).unwrap();
    let x = RatFunc::var(fx.pres.field(), 0);
    let r = two_step_analysis(&fx.pres, &x, Budget::default(), Some(&fx.supplied), true).unwrap();
    assert_eq!((r.q1, r.q2, r.case), (5, 3, Some(2)));
    // e = p then f = p: δ10 = (p−1)(q1−1)/2, δ21 = (p−1)q2/2
    assert_eq!((r.delta10, r.delta21), (4, 3));
    assert!(r.holds());
}

#[test]
fn generic_run_agrees_with_fixture_run() {
    let fx = fixture(Family::Fam1, 5, 3, None).unwrap();
    let r = run_presentation("fam1", &fx.pres, Some(0), Some(&fx.supplied), Budget::default());
    assert!(r.passed(), "{:?}", r.outcomes);
    assert_eq!((r.values.g10, r.values.jac), (Some(20), Some(50)));
    assert!(r.outcomes.iter().any(|o| o.check == Check::KernelChain));
}

#[test]
fn hypersurface_relations_reproduce_the_ring() {
    let fx = fixture(Family::Fam4, 3, 2, None).unwrap();
    let (rels, exact) = fx.pres.relation_polys(10).unwrap();
    assert!(!exact);
    let names: Vec<String> = fx.pres.names();
    let again = LocalRingPresentation::from_relations(fx.pres.field(), names, rels).unwrap();
    assert_eq!(again.at(10).unwrap().tails(), fx.pres.at(10).unwrap().tails());
}

#[test]
fn unramified_first_step_completes_the_chain() {
    // over F_2(s, t): q(s) = 4 is even, so R(1_s) is computed and t finishes the chain
    let k = qdelta::basefield::RationalField::with_names(2, &["s", "t"]).unwrap();
    let pres = LocalRingPresentation::parse_relations(&k, &["S", "Y"], &["Y^2 - s - S^4*Y - t*S^6"]).unwrap();
    let chain = full_genus_change(&pres, None, Budget::default(), &[]).unwrap();
    let jr = jac_number(&pres, Budget::default()).unwrap();
    assert!(chain.failure.is_none());
    let steps: Vec<_> = chain.steps.iter().map(|s| (s.report.q, s.report.e, s.report.genus_step)).collect();
    assert_eq!(steps, vec![(4, 1, 2), (0, 1, 0)]);
    assert_eq!((chain.total, jr.jac, jr.fitting, jr.torsion_dim), (2, 8, 8, 8));
    assert_eq!(jr.exponents, vec![4]);
}

#[test]
fn ramified_first_step_stops_the_chain_but_not_jac() {
    // q(s) = 3 is odd: R(1_s) needs a supplied normalization
    let k = qdelta::basefield::RationalField::with_names(2, &["s", "t"]).unwrap();
    let pres = LocalRingPresentation::parse_relations(&k, &["S", "Y"], &["Y^2 - s - S^3*Y - t*S^4"]).unwrap();
    let chain = full_genus_change(&pres, None, Budget::default(), &[]).unwrap();
    let jr = jac_number(&pres, Budget::default()).unwrap();
    assert_eq!(chain.failure.as_ref().map(|f| f.0), Some(0));
    let r = &chain.steps[0].report;
    assert_eq!((r.q, r.e, r.genus_step), (3, 2, 1));
    assert_eq!((jr.jac, jr.fitting, jr.torsion_dim), (4, 4, 4));
    assert_eq!(jr.exponents, vec![2]);
}
