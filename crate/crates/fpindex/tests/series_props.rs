mod common;

use common::{local_series_strategy, series_strategy, small_rational};
use fpindex::series::{SeriesPair, TruncatedSeries2};
use proptest::prelude::*;

const N: u32 = 8;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in series_strategy(N), b in series_strategy(N), c in series_strategy(N)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), TruncatedSeries2::zero(N));
        prop_assert_eq!(a.mul(&TruncatedSeries2::one(N)), a.clone());
    }

    #[test]
    fn composition_is_associative(
        s in series_strategy(N),
        f1 in local_series_strategy(N), f2 in local_series_strategy(N),
        g1 in local_series_strategy(N), g2 in local_series_strategy(N),
    ) {
        let f = SeriesPair::new(f1, f2);
        let g = SeriesPair::new(g1, g2);
        let lhs = s.compose(&f).unwrap().compose(&g).unwrap();
        let rhs = s.compose(&f.compose(&g).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn unit_inverse(c in small_rational().prop_filter("unit", |c| *c != fpindex::rat(0)), s in local_series_strategy(N)) {
        let u = s.add(&TruncatedSeries2::constant(c, N));
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(u.mul(&inv), TruncatedSeries2::one(N));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in series_strategy(N), b in series_strategy(N)) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).exact_divide(&b).unwrap();
        prop_assert!(q.agrees_with(&a), "{} vs {}", q, a);
    }

    #[test]
    fn non_units_are_rejected(s in local_series_strategy(N)) {
        prop_assert!(s.invert_unit().is_err());
    }
}
