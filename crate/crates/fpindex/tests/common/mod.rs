//! Random inputs shared by the property suites and the acceptance run.
#![allow(dead_code)]

use fpindex::germ::{BranchType, IndexReport, MapGerm};
use fpindex::poly::Poly2;
use fpindex::series::TruncatedSeries2;
use fpindex::surd::{unit_from_parameter, QuadSurd};
use fpindex::{rat, ratio, Rational};
use proptest::prelude::*;
use rand::Rng;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, prop_oneof![Just(1i64), Just(1), Just(2), Just(3)]).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=4, any::<bool>(), prop_oneof![Just(1i64), Just(2)]).prop_map(|(n, neg, d)| ratio(if neg { -n } else { n }, d))
}

/// Sparse polynomial with terms of total degree in `lo..=hi`.
pub fn poly_strategy(lo: u32, hi: u32, max_terms: usize) -> impl Strategy<Value = Poly2> {
    prop::collection::vec(((0u32..=hi), (0u32..=hi), nonzero_rational()), 0..=max_terms).prop_map(move |ts| {
        Poly2::from_terms(ts.into_iter().filter(|(a, b, _)| a + b >= lo && a + b <= hi).map(|(a, b, c)| ((a, b), c)))
    })
}

/// Polynomial in one variable `var` with terms of degree in `lo..=hi`.
pub fn univariate_strategy(var: usize, lo: u32, hi: u32) -> impl Strategy<Value = Poly2> {
    prop::collection::vec(nonzero_rational(), (hi - lo + 1) as usize).prop_flat_map(move |cs| {
        prop::collection::vec(any::<bool>(), cs.len()).prop_map(move |keep| {
            let mut p = Poly2::zero();
            for (i, (c, k)) in cs.iter().zip(keep).enumerate() {
                if k || i == 0 {
                    let e = lo + i as u32;
                    let m = if var == 0 { Poly2::monomial(c.clone(), e, 0) } else { Poly2::monomial(c.clone(), 0, e) };
                    p = p.add(&m);
                }
            }
            p
        })
    })
}

pub fn series_strategy(precision: u32) -> impl Strategy<Value = TruncatedSeries2> {
    prop::collection::vec(((0u32..=precision), (0u32..=precision), small_rational()), 0..12)
        .prop_map(move |ts| TruncatedSeries2::from_terms(ts.into_iter().map(|(a, b, c)| ((a, b), c)), precision))
}

/// Series with zero constant term, usable as a substitution image.
pub fn local_series_strategy(precision: u32) -> impl Strategy<Value = TruncatedSeries2> {
    series_strategy(precision).prop_map(|s| s.sub(&TruncatedSeries2::constant(s.constant_term(), s.precision())))
}

pub fn germ(p1: Poly2, p2: Poly2) -> MapGerm {
    MapGerm::from_polynomials(p1, p2).expect("fixes the origin")
}

/// Elementary shear `(z1 + p(z2), z2)` when `horizontal`, else `(z1, z2 + p(z1))`.
pub fn shear(horizontal: bool, p: &Poly2) -> (Poly2, Poly2) {
    if horizontal {
        (Poly2::z1().add(p), Poly2::z2())
    } else {
        (Poly2::z1(), Poly2::z2().add(p))
    }
}

/// `outer ∘ inner` for polynomial maps.
pub fn compose(outer: &(Poly2, Poly2), inner: &(Poly2, Poly2)) -> (Poly2, Poly2) {
    (outer.0.substitute(&inner.0, &inner.1), outer.1.substitute(&inner.0, &inner.1))
}

/// Composition of one to three alternating shears fixing the origin, of total degree at most 9.
pub fn shear_word() -> impl Strategy<Value = (Poly2, Poly2)> {
    (
        any::<bool>(),
        prop::collection::vec((1u32..=3, nonzero_rational(), prop::option::of(nonzero_rational())), 1..=3),
    )
        .prop_filter("degree at most 9", |(_, parts)| parts.iter().map(|p| p.0).product::<u32>() <= 9)
        .prop_map(|(start, parts)| {
            let mut map = (Poly2::z1(), Poly2::z2());
            for (i, (e, c, c2)) in parts.into_iter().enumerate() {
                let horizontal = start ^ (i % 2 == 1);
                let var = if horizontal { 1 } else { 0 };
                let mut p = Poly2::var(var).pow(e).scale(&c);
                if let (Some(c2), true) = (c2, e > 1) {
                    p = p.add(&Poly2::var(var).pow(e - 1).scale(&c2));
                }
                map = compose(&shear(horizontal, &p), &map);
            }
            map
        })
}

/// `z + z1^nu (z1 r1, h2)`: the line `z1 = 0` is a fixed curve of type II.
pub fn type_ii_germ() -> impl Strategy<Value = (u32, Poly2, Poly2)> {
    let h2 = poly_strategy(0, 2, 3).prop_filter("z1 divides h2", |h| h.adic_order(0) == Some(0));
    (1u32..=2, poly_strategy(0, 1, 3), h2).prop_map(|(nu, r1, h2)| {
        let g = Poly2::z1().pow(nu);
        let p1 = Poly2::z1().add(&g.mul(&Poly2::z1()).mul(&r1.add(&Poly2::one())));
        let p2 = Poly2::z2().add(&g.mul(&h2));
        (nu, p1, p2)
    })
}

/// Exponent or infinity (`None`) of an adapted expansion.
pub fn exponent() -> impl Strategy<Value = Option<u32>> {
    prop_oneof![4 => (1u32..=4).prop_map(Some), 1 => Just(None)]
}

/// A polynomial in `z1, z2` whose restriction to `z1 = 0` is not identically zero.
pub fn nonvanishing_on_line() -> impl Strategy<Value = Poly2> {
    (univariate_strategy(1, 0, 2), poly_strategy(1, 2, 2)).prop_map(|(a, b)| a.add(&b.mul(&Poly2::z1())))
}

/// `(z1 + z1^k f1, z2 + z1^l f2)` with `f_i(0, z2)` nonzero; at most one exponent infinite.
pub fn adapted_germ() -> impl Strategy<Value = (Option<u32>, Option<u32>, Poly2, Poly2)> {
    (exponent(), exponent(), nonvanishing_on_line(), nonvanishing_on_line())
        .prop_filter("one finite exponent", |(k, l, _, _)| k.is_some() || l.is_some())
        .prop_map(|(k, l, f1, f2)| {
            let p1 = match k {
                Some(k) => Poly2::z1().add(&Poly2::z1().pow(k).mul(&f1)),
                None => Poly2::z1(),
            };
            let p2 = match l {
                Some(l) => Poly2::z2().add(&Poly2::z1().pow(l).mul(&f2)),
                None => Poly2::z2(),
            };
            (k, l, p1, p2)
        })
}

/// Adapted germ with `k <= l` (or only `k` finite): `z1 = 0` is a type I curve.
pub fn type_one_adapted_germ() -> impl Strategy<Value = (Poly2, Poly2)> {
    adapted_germ()
        .prop_filter("k <= l", |(k, l, _, _)| match (k, l) {
            (Some(k), Some(l)) => k <= l,
            (Some(_), None) => true,
            _ => false,
        })
        .prop_map(|(_, _, p1, p2)| (p1, p2))
}

/// Polynomial with nonzero constant term.
pub fn unit_poly() -> impl Strategy<Value = Poly2> {
    (nonzero_rational(), poly_strategy(1, 2, 3)).prop_map(|(c, p)| p.add(&Poly2::constant(c)))
}

/// `(z1, z2 + z1^l u(z1))` with `u(0) != 0`, conjugated by up to two shears fixing the origin.
///
/// Every member preserves `dz1 ^ dz2` and fixes a smooth curve pointwise.
pub fn form_preserving_family() -> impl Strategy<Value = (Poly2, Poly2)> {
    let word = prop::collection::vec(
        any::<bool>().prop_flat_map(|h| (Just(h), univariate_strategy(if h { 1 } else { 0 }, 1, 2))),
        1..=2,
    );
    (1u32..=3, univariate_strategy(0, 0, 2), word).prop_map(|(l, u, word)| {
        let base = (Poly2::z1(), Poly2::z2().add(&Poly2::z1().pow(l).mul(&u)));
        let mut psi = (Poly2::z1(), Poly2::z2());
        let mut psi_inv = (Poly2::z1(), Poly2::z2());
        for (horizontal, p) in &word {
            psi = compose(&shear(*horizontal, p), &psi);
            psi_inv = compose(&psi_inv, &shear(*horizontal, &p.neg()));
        }
        compose(&psi, &compose(&base, &psi_inv))
    })
}

/// `(delta, nu_A, [(branch, nu_p, type, mu_p)])`.
pub type Summary = (u32, u32, Vec<(String, u32, Option<BranchType>, Option<u32>)>);

/// Branch summary used to compare two reports field by field.
pub fn summary(r: &IndexReport) -> Summary {
    let mut b: Vec<_> = r
        .branches
        .iter()
        .map(|b| (b.defining_polynomial.to_string(), b.nu_p, b.branch_type, b.mu_p))
        .collect();
    b.sort();
    (r.delta, r.nu_a, b)
}

/// Torus eigen-data `(delta, epsilon)` with `|epsilon| = 1` and `|delta| > 1`.
pub fn random_torus_data<R: Rng>(rng: &mut R) -> (QuadSurd, QuadSurd) {
    if rng.gen_bool(0.5) {
        // real field: delta = a + b sqrt(d) > 1, epsilon = +-1
        let d = [2i64, 3, 5, 6, 7][rng.gen_range(0..5)];
        let b = rng.gen_range(1i64..=3);
        let a = rng.gen_range(1i64..=4);
        let delta = QuadSurd::new(rat(a), rat(b), d);
        let eps = if rng.gen_bool(0.5) { QuadSurd::one() } else { QuadSurd::int(-1) };
        (delta, eps)
    } else {
        let d = [-1i64, -2, -3, -7][rng.gen_range(0..4)];
        let t = ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
        let s = ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
        let r = ratio(rng.gen_range(3i64..=7), 2);
        let delta = unit_from_parameter(&t, d).scale(&r);
        (delta, unit_from_parameter(&s, d))
    }
}
