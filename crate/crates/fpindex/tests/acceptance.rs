//! One line per acceptance criterion, then a single assertion over all of them.

mod common;

use common::{
    adapted_germ, form_preserving_family, germ, poly_strategy, random_torus_data, shear_word, summary,
    type_ii_germ, type_one_adapted_germ, unit_poly,
};
use fpindex::form::{adapted_expansion, curve_type_via_minkl, is_preserved, FormGerm};
use fpindex::germ::{
    decompose, delta, delta_resultant, invert, iterate, local_index, local_index_with, AnalysisConfig, BranchType,
};
use fpindex::io::{fixture, Scenario};
use fpindex::oracle::{curve_point_multiplicity, fixed_multiplicity, torus_lefschetz_oracle};
use fpindex::poly::Poly2;
use fpindex::surd::QuadSurd;
use fpindex::surface::{
    check_curve_witnesses, count_isolated_periodic, growth_bounds, lefschetz_number, saito_residual,
    validate_periodic_inventory, xi_k, CohomologyAction, CohomologyMode, FixedCurveRecord, SurfaceModel, Violation,
};
use fpindex::{rat, Error};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::time::Instant;

/// Random suites need this many accepted samples.
const SAMPLES: usize = 100;
/// Draw budget per suite; inputs outside the supported scope are skipped.
const DRAWS: usize = 400;
const TORUS_SAMPLES: usize = 24;

/// Frozen from the integer recurrence a(n+1) = 18 a(n) - a(n-1), a(0) = 2, a(1) = 18, minus 2.
const CUBIC_COUNTS: [i64; 6] = [16, 320, 5776, 103680, 1860496, 33385280];
/// Frozen from elimination: index of f^2 at (0, -2) for the remark43 map.
const REMARK43_SQUARE_INDEX: u32 = 2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cfg() -> AnalysisConfig {
    AnalysisConfig::default()
}

fn draw<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).expect("strategy produces values").current()
}

/// Run `body` on fresh samples until `SAMPLES` of them are accepted (`Ok(true)`).
fn suite<S, F>(name: &str, s: S, mut body: F) -> Outcome
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: FnMut(&S::Value) -> Result<bool, String>,
{
    let mut runner = TestRunner::deterministic();
    let mut accepted = 0;
    let mut skipped = 0;
    for _ in 0..DRAWS {
        let v = draw(&s, &mut runner);
        match body(&v) {
            Ok(true) => accepted += 1,
            Ok(false) => skipped += 1,
            Err(e) => return Err(format!("{name}: {e} on {v:?}")),
        }
        if accepted == SAMPLES {
            return Ok(format!("{accepted} samples, {skipped} skipped"));
        }
    }
    Err(format!("{name}: only {accepted} samples accepted in {DRAWS} draws"))
}

fn germ_of(s: &Scenario, label: &str) -> Result<fpindex::germ::MapGerm, String> {
    s.germs.get(label).map(|e| e.germ.clone()).ok_or_else(|| format!("no germ {label}"))
}

fn remark42() -> Outcome {
    let s = fixture("remark42").map_err(err)?;
    let g = germ_of(&s, "origin")?;
    let map = s.maps.values().next().ok_or("no map")?;
    let o = rat(0);
    let mut seen = Vec::new();
    for (n, expected) in [(1, 1), (2, 3)] {
        let nu = local_index(&iterate(&g, n).map_err(err)?, &s.config()).map_err(err)?.nu_a;
        let m = fixed_multiplicity(map, (&o, &o), n).map_err(err)?;
        check(nu == expected && m == expected, || format!("n = {n}: index {nu}, elimination {m}, expected {expected}"))?;
        seen.push(nu);
    }
    Ok(format!("index {} then {} at the origin, elimination agrees", seen[0], seen[1]))
}

fn remark43() -> Outcome {
    let s = fixture("remark43").map_err(err)?;
    let r = local_index(&germ_of(&s, "origin")?, &s.config()).map_err(err)?;
    let line = r.branch(&Poly2::z1()).ok_or("no branch z1")?;
    check(line.branch_type == Some(BranchType::TypeI) && line.nu_p == 1, || {
        format!("branch z1: {:?} with nu {}", line.branch_type, line.nu_p)
    })?;
    let special = germ_of(&s, "special")?;
    let one = local_index(&special, &s.config()).map_err(err)?.nu_a;
    let two = local_index(&iterate(&special, 2).map_err(err)?, &s.config()).map_err(err)?.nu_a;
    let map = s.maps.values().next().ok_or("no map")?;
    let oracle = curve_point_multiplicity(map, (&rat(0), &rat(-2)), 2, &[Poly2::z1()]).map_err(err)?;
    check(one == 0 && two >= 1 && two == REMARK43_SQUARE_INDEX && oracle == two, || {
        format!("(0, -2): {one} then {two}, elimination {oracle}")
    })?;
    Ok(format!("z1 = 0 of type I with nu 1; index at (0, -2) is {one} then {two}"))
}

fn cubic_indices() -> Outcome {
    let s = fixture("cubic-d4").map_err(err)?;
    for label in ["u1", "u2", "u3"] {
        let entry = s.germs.get(label).ok_or("missing germ")?;
        let r = local_index_with(&entry.germ, &s.config(), &entry.overrides).map_err(err)?;
        let e0 = r.branch(&Poly2::z1()).ok_or("no branch z1")?;
        let ei = r.branch(&Poly2::z2()).ok_or("no branch z2")?;
        let got = (r.delta, e0.nu_p, ei.nu_p, e0.mu_p, ei.mu_p, e0.branch_type, ei.branch_type, r.nu_a);
        let want = (1, 2, 1, Some(1), Some(1), Some(BranchType::TypeII), Some(BranchType::TypeII), 4);
        check(got == want, || format!("{label}: {got:?}"))?;
    }
    let model = s.model().map_err(err)?;
    for (label, nu) in [("E0", 2), ("E1", 1), ("E2", 1), ("E3", 1)] {
        let c = model.curve(label).ok_or("missing curve")?;
        check(c.nu_c == nu && c.curve_type == BranchType::TypeII, || format!("{label}: nu {}", c.nu_c))?;
    }
    let witnesses = check_curve_witnesses(model).map_err(err)?;
    check(witnesses.iter().all(|w| w.agrees), || "a curve witness disagrees".into())?;
    let xi = xi_k(model, 1).map_err(err)?;
    check(xi == 8, || format!("xi_1 = {xi}"))?;
    Ok("delta 1, nu 2 and 1, mu 1, index 4 at u1..u3, xi_1 = 8".into())
}

fn cubic_counts() -> Outcome {
    let s = fixture("cubic-d4").map_err(err)?;
    let model = s.model().map_err(err)?;
    let (mut a0, mut a1) = (2i64, 18i64);
    for (i, &frozen) in CUBIC_COUNTS.iter().enumerate() {
        let n = i as u32 + 1;
        check(a1 - 2 == frozen, || format!("recurrence gives {} at n = {n}", a1 - 2))?;
        let r = count_isolated_periodic(model, n).map_err(err)?;
        check(r.count_isolated == QuadSurd::int(frozen), || format!("n = {n}: {}", r.count_isolated))?;
        (a0, a1) = (a1, 18 * a1 - a0);
    }
    let residual = saito_residual(model, 1, s.declared_isolated[&1]).map_err(err)?;
    check(residual.is_zero(), || format!("residual {residual}"))?;
    Ok(format!("{CUBIC_COUNTS:?}, residual 0 at n = 1"))
}

fn stability_under_iteration() -> Outcome {
    suite("stability", type_ii_germ(), |(_, p1, p2)| {
        let s = germ(p1.clone(), p2.clone());
        let base = match local_index(&s, &cfg()) {
            Ok(r) => r,
            Err(Error::UnsupportedSingularBranch(_)) => return Ok(false),
            Err(e) => return Err(err(e)),
        };
        if !base.branches.iter().any(|b| b.branch_type == Some(BranchType::TypeII)) {
            return Err("no type II branch".into());
        }
        for n in 2..=4 {
            let r = local_index(&iterate(&s, n).map_err(err)?, &cfg()).map_err(err)?;
            check(summary(&r) == summary(&base), || format!("n = {n} changes the index data"))?;
        }
        Ok(true)
    })
}

fn inverse_invariance() -> Outcome {
    suite("inverse", shear_word(), |(p1, p2)| {
        if *p1 == Poly2::z1() && *p2 == Poly2::z2() {
            return Ok(false);
        }
        let s = germ(p1.clone(), p2.clone());
        let inv = invert(&s).map_err(err)?;
        match (local_index(&s, &cfg()), local_index(&inv, &cfg())) {
            (Ok(a), Ok(b)) => check(summary(&a) == summary(&b), || "index data differ".into()).map(|_| true),
            (Err(a), Err(b)) if a.kind() == b.kind() => Ok(false),
            (a, b) => Err(format!("{:?} vs {:?}", a.map(|r| summary(&r)), b.map(|r| summary(&r)))),
        }
    })
}

fn min_kl() -> Outcome {
    suite("min(k, l)", adapted_germ(), |(_, _, p1, p2)| {
        let s = germ(p1.clone(), p2.clone());
        let pred = curve_type_via_minkl(&adapted_expansion(&s, &cfg()).map_err(err)?);
        let r = match local_index(&s, &cfg()) {
            Ok(r) => r,
            Err(Error::UnsupportedSingularBranch(_)) => return Ok(false),
            Err(e) => return Err(err(e)),
        };
        let c = r.branch(&Poly2::z1()).ok_or("no branch z1")?;
        check(c.nu_p == pred.nu_c && (c.branch_type == Some(BranchType::TypeII)) == pred.is_type_ii, || {
            format!("classified {:?} nu {}, predicted {:?}", c.branch_type, c.nu_p, pred)
        })?;
        Ok(true)
    })
}

fn volume_forms() -> Outcome {
    let a = suite("type I", (type_one_adapted_germ(), unit_poly()), |((p1, p2), u)| {
        let s = germ(p1.clone(), p2.clone());
        let form = FormGerm::from_poly(0, u, cfg().precision).map_err(err)?;
        match is_preserved(&s, &form) {
            Ok(v) => check(!v.preserved, || "a holomorphic volume form is preserved".into()).map(|_| true),
            Err(Error::NotDivisible(_)) => Ok(true),
            Err(e) => Err(err(e)),
        }
    })?;
    let b = suite("form preserving", form_preserving_family(), |(p1, p2)| {
        let s = germ(p1.clone(), p2.clone());
        let r = match local_index(&s, &cfg()) {
            Ok(r) => r,
            Err(Error::UnsupportedSingularBranch(_)) => return Ok(false),
            Err(e) => return Err(err(e)),
        };
        check(!r.branches.is_empty(), || "no fixed curve".into())?;
        check(r.branches.iter().all(|b| b.branch_type == Some(BranchType::TypeII)), || "type I branch".into())?;
        let v = is_preserved(&s, &FormGerm::standard(cfg().precision)).map_err(err)?;
        check(v.preserved, || "dz1 ^ dz2 not preserved".into())?;
        Ok(true)
    })?;
    Ok(format!("never preserved: {a}; all type II: {b}"))
}

fn delta_cross_check() -> Outcome {
    suite("delta", (poly_strategy(1, 3, 4), poly_strategy(1, 3, 4)), |(h1, h2)| {
        if h1.is_zero() && h2.is_zero() {
            return Ok(false);
        }
        let dec = decompose(&germ(Poly2::z1().add(h1), Poly2::z2().add(h2))).map_err(err)?;
        let (a, b) = (delta(&dec, &cfg()).map_err(err)?, delta_resultant(&dec).map_err(err)?);
        check(a == b, || format!("delta {a}, resultant {b}"))?;
        Ok(true)
    })
}

fn torus() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..TORUS_SAMPLES {
        let (delta, epsilon) = random_torus_data(&mut rng);
        let action =
            CohomologyAction::new(CohomologyMode::Torus { delta: delta.clone(), epsilon: epsilon.clone() }, 2, true, true)
                .map_err(err)?;
        for n in 1..=6 {
            let l = lefschetz_number(&action, n).map_err(err)?;
            let o = torus_lefschetz_oracle(&delta, &epsilon.div(&delta), n).map_err(err)?;
            check(l == o, || format!("delta {delta}, epsilon {epsilon}, n = {n}: {l} vs {o}"))?;
            let v = growth_bounds(&action, n, &l).map_err(err)?;
            check(v.within, || format!("delta {delta}, epsilon {epsilon}, n = {n}: deviation {}", v.deviation))?;
        }
    }
    Ok(format!("{TORUS_SAMPLES} samples, n <= 6, bound holds"))
}

fn periodic_curve(label: &str, period: u32) -> FixedCurveRecord {
    FixedCurveRecord {
        label: label.into(),
        prime_period: period,
        curve_type: BranchType::TypeII,
        nu_c: 1,
        tau: -2,
        chi: None,
        fiber_component: false,
        germ_witnesses: vec![],
    }
}

fn validator() -> Outcome {
    let s = fixture("cubic-d4").map_err(err)?;
    let v = validate_periodic_inventory(s.model().map_err(err)?, &s.intersections);
    check(v.is_empty() && s.intersections.len() == 3, || format!("cubic: {v:?}"))?;

    // lambda = (3 + sqrt 5) / 2 > 1 on a rank 2 lattice
    let action = CohomologyAction::new(
        CohomologyMode::H1Trivial { matrix: vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]] },
        2,
        true,
        false,
    )
    .map_err(err)?;
    let m = SurfaceModel::new(vec![], vec![periodic_curve("A", 2), periodic_curve("B", 3)], action.clone(), "")
        .map_err(err)?;
    let v = validate_periodic_inventory(&m, &[("A".into(), "B".into())]);
    let want = vec![Violation::UnequalTypeIIPeriods { first: "A".into(), second: "B".into() }];
    check(v == want, || format!("periods 2 and 3: {v:?}"))?;

    let curves = [1, 2, 3, 5].iter().map(|&k| periodic_curve(&format!("C{k}"), k)).collect();
    let m = SurfaceModel::new(vec![], curves, action, "").map_err(err)?;
    let v = validate_periodic_inventory(&m, &[]);
    check(v == vec![Violation::TooManyTypeIIPeriods { count: 4, bound: 3 }], || format!("four periods: {v:?}"))?;
    Ok("no violations; unequal periods; too many periods".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("remark42 index and elimination", remark42),
        ("remark43 type I line and (0, -2)", remark43),
        ("cubic-d4 local indices", cubic_indices),
        ("cubic-d4 periodic point counts", cubic_counts),
        ("index data stable under iteration", stability_under_iteration),
        ("index data of a germ and its inverse", inverse_invariance),
        ("curve type from min(k, l)", min_kl),
        ("preserved volume forms and curve type", volume_forms),
        ("delta against resultant", delta_cross_check),
        ("torus Lefschetz numbers and growth", torus),
        ("periodic curve inventory", validator),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
