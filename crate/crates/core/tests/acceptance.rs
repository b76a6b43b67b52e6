//! The ten acceptance criteria as exact integer checks, one report line each.

use qdelta::basefield::FiniteField;
use qdelta::invariants::{coin_dim, semigroup_gaps};
use qdelta::series::Budget;
use qdelta::verify::{corpus, run_fixture, run_random_corpus, Check, Family, Fixture, InstanceResult, VerdictSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Instant;

struct Report {
    lines: Vec<(usize, bool, String)>,
}

impl Report {
    fn record(&mut self, n: usize, ok: bool, what: &str, detail: String) {
        println!("criterion {n:>2} {:<4} {what}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((n, ok, what.to_string()));
    }

    fn tally(&mut self, n: usize, what: &str, v: &VerdictSet, check: Check) {
        let (ok, total) = v.tally(check);
        let fails: Vec<String> = v.failures().into_iter().filter(|f| f.contains(&format!("{check:?}")) || f.contains("error:")).take(3).collect();
        self.record(n, total > 0 && ok == total, what, format!("{ok}/{total} outcomes hold{}", if fails.is_empty() { String::new() } else { format!("; e.g. {fails:?}") }));
    }
}

fn random_unit(rng: &mut ChaCha8Rng, f: &FiniteField, len: usize) -> Vec<u32> {
    let q = f.size();
    let mut u: Vec<u32> = (0..len).map(|_| rng.gen_range(0..q)).collect();
    u[0] = rng.gen_range(1..q);
    u
}

/// Every coprime (m, n) in [2, 30]² with five random unit pairs, each over one of
/// F_2, F_3, F_4, F_5, F_9; returns (cases, mismatches).
fn coin_suite() -> (usize, Vec<String>) {
    let fields: Vec<FiniteField> = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)].iter().map(|&(p, e)| FiniteField::new(p, e, None).unwrap()).collect();
    let pairs: Vec<(usize, usize)> = (2..=30).flat_map(|m| (2..=30).map(move |n| (m, n))).filter(|&(m, n)| gcd(m, n) == 1).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let mut rng = ChaCha8Rng::seed_from_u64((m * 31 + n) as u64);
            let gaps = semigroup_gaps(m, n).unwrap();
            let mut bad = vec![];
            for f in &fields {
                let (g, d) = (random_unit(&mut rng, f, 12), random_unit(&mut rng, f, 12));
                match coin_dim(m, n, &g, &d, f, None) {
                    Ok(c) => {
                        let closed = ((m - 1) * (n - 1) / 2, (m - 1) * (n - 1));
                        if (c.dimension, c.conductor_exponent) != closed || c.rowred_dimension != gaps.len() || c.rowred_gaps != gaps || c.rowred_conductor != closed.1 {
                            bad.push(format!("({m},{n}) over F_{}", f.size()));
                        }
                    }
                    Err(e) => bad.push(format!("({m},{n}) over F_{}: {e}", f.size())),
                }
            }
            bad
        })
        .collect();
    (pairs.len() * fields.len(), bad)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn find<'a>(fx: &'a [(Fixture, InstanceResult)], fam: Family, p: u32, n: usize) -> Option<&'a InstanceResult> {
    fx.iter().find(|(f, _)| f.family == fam && f.p == p && (!fam.uses_n() || f.n == n)).map(|(_, r)| r)
}

#[test]
fn acceptance() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let mut rep = Report { lines: vec![] };

    let (cases, bad) = coin_suite();
    rep.record(1, bad.is_empty(), "Frobenius-coin suite", format!("{} of {cases} cases agree{}", cases - bad.len(), if bad.is_empty() { String::new() } else { format!("; {:?}", &bad[..bad.len().min(3)]) }));

    let fixtures = corpus().unwrap();
    let fx: Vec<(Fixture, InstanceResult)> = fixtures.into_par_iter().map(|f| {
        let r = run_fixture(&f, budget);
        (f, r)
    }).collect();
    let fixture_set = VerdictSet { instances: fx.iter().map(|(_, r)| r.clone()).collect() };
    let random_set = run_random_corpus(20, 1, budget).unwrap();
    let all = fixture_set.clone().merge(random_set.clone());

    // the designed q-values: (p³, p), (np, n), (mp, n)
    let mut designed = vec![];
    for (f, r) in &fx {
        let want = match f.family {
            Family::Fam3Prime => Some((f.p.pow(3) as usize, f.p as usize)),
            Family::Fam4 => Some((f.n * f.p as usize, f.n)),
            Family::Fam4Prime => f.m.map(|m| (m * f.p as usize, f.n)),
            _ => None,
        };
        if let Some(w) = want {
            if (r.values.q1, r.values.q2) != (Some(w.0), Some(w.1)) {
                designed.push(format!("{}: {:?} vs {w:?}", r.label, (r.values.q1, r.values.q2)));
            }
        }
    }
    let (ok, total) = all.tally(Check::QOracle);
    rep.record(
        2,
        total > 0 && ok == total && designed.is_empty(),
        "q-oracle agreement",
        format!("{ok}/{total} outcomes hold over {} fixtures + {} random; designed values {}", fx.len(), random_set.instances.len(), if designed.is_empty() { "reproduced".to_string() } else { format!("differ: {designed:?}") }),
    );

    rep.tally(3, "δ/conductor dual computation", &all, Check::DeltaDual);
    rep.tally(4, "conductor–δ identity", &all, Check::ConductorDelta);

    let realized: BTreeSet<u8> = fx.iter().filter_map(|(_, r)| r.values.case).collect();
    let branch = |fam: Family, eq: bool| {
        fx.iter().filter(|(f, _)| f.family == fam).all(|(f, r)| match (r.values.q1, r.values.q2) {
            (Some(a), Some(b)) => (a == f.p as usize * b) == eq,
            _ => false,
        })
    };
    let branches = branch(Family::Fam3, true) && branch(Family::Fam3Prime, false) && branch(Family::Fam4, true) && branch(Family::Fam4Prime, false);
    let (ok, total) = fixture_set.tally(Check::CaseLaw);
    rep.record(
        5,
        total > 0 && ok == total && realized == BTreeSet::from([1, 2, 3, 4]) && branches,
        "two-step case laws",
        format!("{ok}/{total} laws hold; cases realized {realized:?}; equality/strict branches {}", if branches { "as designed" } else { "wrong" }),
    );

    rep.tally(6, "step inequalities", &fixture_set, Check::StepInequality);
    rep.tally(7, "Jacobian route agreement", &all, Check::JacRoutes);

    let concrete = [(3, 2, (3, 9)), (5, 3, (20, 50))]
        .iter()
        .all(|&(p, n, want)| find(&fx, Family::Fam1, p, n).is_some_and(|r| (r.values.g10, r.values.jac) == (Some(want.0), Some(want.1))));
    let (ok, total) = fixture_set.tally(Check::Headline);
    let every_fixture = fx.iter().all(|(_, r)| r.outcomes.iter().any(|o| o.check == Check::Headline));
    rep.record(
        8,
        total > 0 && ok == total && concrete && every_fixture,
        "headline identity 2p·g = (p−1)·jac",
        format!("{ok}/{total} fixtures; fam1 (3,2) → (3, 9) and (5,3) → (20, 50) {}", if concrete { "reproduced" } else { "NOT reproduced" }),
    );

    rep.tally(9, "Tate divisibility", &all, Check::Tate);
    rep.tally(10, "kernel-chain additivity", &all, Check::KernelChain);

    println!("acceptance suite finished in {:.1?}", t0.elapsed());
    let failed: Vec<usize> = rep.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
