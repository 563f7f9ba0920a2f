mod common;

use common::random_torus_data;
use fpindex::io::fixture;
use fpindex::oracle::torus_lefschetz_oracle;
use fpindex::surd::QuadSurd;
use fpindex::surface::{
    count_isolated_periodic, growth_bounds, lefschetz_number, saito_residual, xi_k, xi_k_at, CohomologyAction,
    CohomologyMode, GrowthBound, SurfaceModel,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn torus(delta: &QuadSurd, epsilon: &QuadSurd) -> CohomologyAction {
    CohomologyAction::new(CohomologyMode::Torus { delta: delta.clone(), epsilon: epsilon.clone() }, 2, true, true).unwrap()
}

fn cubic() -> SurfaceModel {
    fixture("cubic-d4").unwrap().model().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn torus_alternating_sum_matches_determinant(seed in any::<u64>(), n in 1u32..=6) {
        let (delta, epsilon) = random_torus_data(&mut StdRng::seed_from_u64(seed));
        let action = torus(&delta, &epsilon);
        let l = lefschetz_number(&action, n).unwrap();
        let oracle = torus_lefschetz_oracle(&delta, &epsilon.div(&delta), n).unwrap();
        prop_assert_eq!(&l, &oracle, "delta = {}, epsilon = {}", delta, epsilon);
        prop_assert!(l.is_real());
    }

    #[test]
    fn torus_counts_obey_the_growth_estimate(seed in any::<u64>(), n in 1u32..=6) {
        let (delta, epsilon) = random_torus_data(&mut StdRng::seed_from_u64(seed));
        let action = torus(&delta, &epsilon);
        let l = lefschetz_number(&action, n).unwrap();
        let v = growth_bounds(&action, n, &l).unwrap();
        prop_assert_eq!(v.bound, GrowthBound::Torus);
        prop_assert!(v.within, "delta = {}, epsilon = {}, n = {}, deviation = {}", delta, epsilon, n, v.deviation);
    }
}

#[test]
fn counts_complete_the_lefschetz_number() {
    let model = cubic();
    for n in 1..=6 {
        let r = count_isolated_periodic(&model, n).unwrap();
        let xi: i64 = r.xi.values().sum();
        assert_eq!(r.count_isolated.add(&QuadSurd::int(xi)), r.lefschetz, "n = {n}");
    }
    // the scenario declares 16 isolated fixed points
    let declared = fixture("cubic-d4").unwrap().declared_isolated[&1];
    assert_eq!(count_isolated_periodic(&model, 1).unwrap().count_isolated, QuadSurd::int(declared));
    assert!(saito_residual(&model, 1, declared).unwrap().is_zero());
}

#[test]
fn counts_increase_strictly() {
    let model = cubic();
    let counts: Vec<QuadSurd> = (1..=6).map(|n| count_isolated_periodic(&model, n).unwrap().count_isolated).collect();
    for w in counts.windows(2) {
        assert_eq!(w[0].cmp_real(&w[1]), std::cmp::Ordering::Less, "{} then {}", w[0], w[1]);
    }
}

#[test]
fn xi_is_stable_under_iteration_at_germ_witnesses() {
    let mut model = cubic();
    // only the u points carry germs; v indices are declared for f alone
    model.points.retain(|p| p.germ.is_some());
    let base = xi_k(&model, 1).unwrap();
    for n in 2..=3 {
        assert_eq!(xi_k_at(&model, 1, n).unwrap(), base, "n = {n}");
    }
}
