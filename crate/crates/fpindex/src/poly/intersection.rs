//! Resultants in `z1` and local intersection multiplicity at the origin by elimination.

use super::{Poly1, Poly2};
use crate::{rat, Rational};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error("the two polynomials share a component through the origin")]
    NotCoprime,
    #[error("no shear in the deterministic sequence made the system regular")]
    ShearExhausted,
}

/// `Res_{z1}(a, b)` as a polynomial in `z2`.
///
/// The leading `z1`-coefficient of `a` must be a nonzero constant, which keeps
/// evaluation at `z2 = b` compatible with specialization.
pub fn resultant_z1(a: &Poly2, b: &Poly2) -> Poly1 {
    let lc = a.lc_z1();
    assert!(lc.is_constant() && !lc.is_zero(), "first argument must be z1-monic up to scale");
    if b.is_zero() {
        return Poly1::zero();
    }
    let nb = b.degree_in(0).unwrap_or(0) as usize;
    let bound = (a.total_degree().unwrap_or(0) * b.total_degree().unwrap_or(0)) as i64;
    let values: Vec<Rational> = (0..=bound)
        .map(|y| {
            let y = rat(y);
            a.restrict_z2(&y).resultant_formal(&b.restrict_z2(&y), nb)
        })
        .collect();
    Poly1::interpolate_at_naturals(&values)
}

/// Deterministic shear parameters 0, 1, -1, 2, -2, ...
pub(crate) fn shear_sequence(count: i64) -> impl Iterator<Item = i64> {
    (0..count).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

const SHEAR_TRIES: i64 = 41;

/// Local intersection multiplicity of `p = q = 0` at the origin.
///
/// Common factors not vanishing at the origin are discarded first. After a
/// shear `z2 -> z2 + c*z1` that makes one polynomial `z1`-regular and leaves the
/// origin as the only common zero on `z2 = 0`, the answer is the order at 0 of
/// the `z1`-resultant.
pub fn intersection_multiplicity(p: &Poly2, q: &Poly2) -> Result<u32, IntersectionError> {
    // a unit generates the whole local ring, even against zero
    if (!p.is_zero() && !p.vanishes_at_origin()) || (!q.is_zero() && !q.vanishes_at_origin()) {
        return Ok(0);
    }
    if p.is_zero() || q.is_zero() {
        return Err(IntersectionError::NotCoprime);
    }
    let c = p.gcd(q);
    let (p, q) = if c.is_constant() {
        (p.clone(), q.clone())
    } else {
        if c.vanishes_at_origin() {
            return Err(IntersectionError::NotCoprime);
        }
        (p.exact_div(&c).unwrap(), q.exact_div(&c).unwrap())
    };
    for s in shear_sequence(SHEAR_TRIES) {
        let sh = Poly2::z2().add(&Poly2::z1().scale(&rat(s)));
        let ps = p.substitute(&Poly2::z1(), &sh);
        let qs = q.substitute(&Poly2::z1(), &sh);
        let (a, b) = if is_z1_regular(&ps) {
            (ps, qs)
        } else if is_z1_regular(&qs) {
            (qs, ps)
        } else {
            continue;
        };
        let g = a.restrict_z2(&Rational::zero()).gcd(&b.restrict_z2(&Rational::zero()));
        // origin must be the only common root on the line z2 = 0
        if g.coeffs().iter().filter(|c| !c.is_zero()).count() != 1 {
            continue;
        }
        let r = resultant_z1(&a, &b);
        return match r.order() {
            Some(k) => Ok(k as u32),
            None => Err(IntersectionError::NotCoprime),
        };
    }
    Err(IntersectionError::ShearExhausted)
}

fn is_z1_regular(p: &Poly2) -> bool {
    let lc = p.lc_z1();
    lc.is_constant() && !lc.is_zero() && p.degree_in(0).unwrap_or(0) > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, u32, u32)]) -> Poly2 {
        Poly2::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), rat(c))))
    }

    #[test]
    fn simple_multiplicities() {
        assert_eq!(intersection_multiplicity(&Poly2::z1(), &Poly2::z2()), Ok(1));
        assert_eq!(intersection_multiplicity(&Poly2::z1().pow(2), &Poly2::z2()), Ok(2));
        assert_eq!(intersection_multiplicity(&p(&[(1, 2, 0), (1, 0, 1)]), &Poly2::z1()), Ok(1));
        // cusp against its tangent line: I(z2^2 - z1^3, z2) = 3
        assert_eq!(intersection_multiplicity(&p(&[(1, 0, 2), (-1, 3, 0)]), &Poly2::z2()), Ok(3));
        assert_eq!(
            intersection_multiplicity(&p(&[(1, 1, 0), (1, 0, 0)]), &Poly2::z2()),
            Ok(0)
        );
    }

    #[test]
    fn shared_component_detected() {
        let a = Poly2::z1().mul(&Poly2::z2());
        let b = Poly2::z1().mul(&p(&[(1, 0, 1), (1, 2, 0)]));
        assert_eq!(intersection_multiplicity(&a, &b), Err(IntersectionError::NotCoprime));
        // shared component away from the origin is harmless
        let u = p(&[(1, 0, 0), (1, 1, 0)]);
        assert_eq!(intersection_multiplicity(&Poly2::z1().mul(&u), &Poly2::z2().mul(&u)), Ok(1));
    }

    #[test]
    fn resultant_against_direct() {
        // Res_{z1}(z1^2 - z2, z1 - z2) = z2^2 - z2
        let a = p(&[(1, 2, 0), (-1, 0, 1)]);
        let b = p(&[(1, 1, 0), (-1, 0, 1)]);
        assert_eq!(resultant_z1(&a, &b), Poly1::from_i64s(&[0, -1, 1]));
    }
}
