//! Fixed-point germs `sigma: A -> A` with `sigma(z_i) = z_i + g h_i`, and the
//! local index data attached to them: the decomposition, `delta`, the branches
//! of `g` with their multiplicities, the type of each branch and its order `mu`.

mod branches;
mod decompose;
mod delta;
mod index;

pub use branches::{branches, BranchOverride, BranchRecord, BranchType, ParamKind};
pub use decompose::{decompose, Cofactors, GermDecomposition};
pub use delta::{b_ideal_contains, delta, delta_at, delta_resultant, quotient_dimension};
pub use index::{classify_branch, classify_branch_at, local_index, local_index_with, omega_sigma, restrict_along, DifferentialPair, IndexReport};

use crate::error::{Error, Result};
use crate::poly::Poly2;
use crate::series::{SeriesPair, TruncatedSeries2, CERTIFY_MARGIN, DEFAULT_PRECISION};
use crate::Rational;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Working precision for germ computations. Results are certified at `precision + 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub precision: u32,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { precision: DEFAULT_PRECISION }
    }
}

impl AnalysisConfig {
    pub fn new(precision: u32) -> Self {
        AnalysisConfig { precision }
    }

    pub fn certify_precision(&self) -> u32 {
        self.precision + CERTIFY_MARGIN
    }
}

/// Polynomial iterates up to this total degree are kept exact.
const EXACT_ITERATE_DEGREE: u32 = 16;

/// A germ of a map fixing the origin, `z -> (sigma(z1), sigma(z2))`.
///
/// Polynomial germs are exact. Iterates and inverses are lazy and can be
/// expanded at any precision; a bare series germ is frozen at its precision.
#[derive(Clone, Debug)]
pub struct MapGerm {
    label: Option<String>,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Polynomial(Poly2, Poly2),
    Iterate(Arc<MapGerm>, u32),
    Inverse(Arc<MapGerm>),
    Series(SeriesPair),
}

impl MapGerm {
    /// Germ with polynomial images.
    pub fn from_polynomials(p1: Poly2, p2: Poly2) -> Result<Self> {
        if !p1.vanishes_at_origin() || !p2.vanishes_at_origin() {
            return Err(Error::OriginNotFixed);
        }
        if p1 == Poly2::z1() && p2 == Poly2::z2() {
            return Err(Error::IdentityGerm);
        }
        Ok(MapGerm { label: None, repr: Repr::Polynomial(p1, p2) })
    }

    /// Germ given only by truncated images.
    pub fn from_series(images: SeriesPair) -> Result<Self> {
        if !images.first.constant_term().is_zero() || !images.second.constant_term().is_zero() {
            return Err(Error::OriginNotFixed);
        }
        if images == SeriesPair::identity(images.precision()) {
            return Err(Error::IdentityGerm);
        }
        Ok(MapGerm { label: None, repr: Repr::Series(images) })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Exact polynomial images, when known.
    pub fn polynomial_images(&self) -> Option<(&Poly2, &Poly2)> {
        match &self.repr {
            Repr::Polynomial(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.repr, Repr::Polynomial(..))
    }

    /// Largest precision at which the images can be produced.
    pub fn max_precision(&self) -> u32 {
        match &self.repr {
            Repr::Series(s) => s.precision(),
            Repr::Polynomial(..) => u32::MAX,
            Repr::Iterate(b, _) | Repr::Inverse(b) => b.max_precision(),
        }
    }

    /// Images `(sigma(z1), sigma(z2))` truncated at degree `precision`.
    pub fn images_at(&self, precision: u32) -> Result<SeriesPair> {
        match &self.repr {
            Repr::Polynomial(a, b) => Ok(SeriesPair::from_polys(a, b, precision)),
            Repr::Series(s) => Ok(s.truncate(precision)),
            Repr::Iterate(base, n) => {
                let f = base.images_at(precision)?;
                let mut cur = f.clone();
                for _ in 1..*n {
                    cur = f.compose(&cur)?;
                }
                Ok(cur)
            }
            Repr::Inverse(base) => inverse_images(&base.images_at(precision)?),
        }
    }

    /// Linear part `[[a, b], [c, d]]`: `sigma(z1) = a z1 + b z2 + ...`.
    pub fn linear_part(&self) -> Result<[[Rational; 2]; 2]> {
        let im = self.images_at(1)?;
        Ok([
            [im.first.coeff(1, 0), im.first.coeff(0, 1)],
            [im.second.coeff(1, 0), im.second.coeff(0, 1)],
        ])
    }

    pub(crate) fn base_for_guidance(&self) -> Option<&MapGerm> {
        match &self.repr {
            Repr::Iterate(b, _) | Repr::Inverse(b) => Some(b),
            _ => None,
        }
    }
}

/// `sigma^n`. Small polynomial iterates stay exact; larger ones are expanded lazily.
pub fn iterate(germ: &MapGerm, n: u32) -> Result<MapGerm> {
    if n == 0 {
        return Err(Error::Precondition("iterate needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(germ.clone());
    }
    let label = germ.label.as_ref().map(|l| format!("{l}^{n}"));
    if let Repr::Polynomial(p1, p2) = &germ.repr {
        let d = p1.total_degree().unwrap_or(1).max(p2.total_degree().unwrap_or(1)).max(1);
        if d.checked_pow(n).is_some_and(|dn| dn <= EXACT_ITERATE_DEGREE) {
            let (mut c1, mut c2) = (p1.clone(), p2.clone());
            for _ in 1..n {
                let n1 = p1.substitute(&c1, &c2);
                let n2 = p2.substitute(&c1, &c2);
                c1 = n1;
                c2 = n2;
            }
            let mut g = MapGerm::from_polynomials(c1, c2)?;
            g.label = label;
            return Ok(g);
        }
    }
    let repr = match &germ.repr {
        Repr::Iterate(b, m) => Repr::Iterate(b.clone(), m * n),
        _ => Repr::Iterate(Arc::new(germ.clone()), n),
    };
    let out = MapGerm { label, repr };
    if out.images_at(DEFAULT_PRECISION)? == SeriesPair::identity(DEFAULT_PRECISION) {
        return Err(Error::IdentityGerm);
    }
    Ok(out)
}

/// Inverse germ. Polynomial automorphisms get an exact polynomial inverse.
pub fn invert(germ: &MapGerm) -> Result<MapGerm> {
    let l = germ.linear_part()?;
    if (&l[0][0] * &l[1][1] - &l[0][1] * &l[1][0]).is_zero() {
        return Err(Error::NotInvertible);
    }
    let label = germ.label.as_ref().map(|s| format!("{s}^-1"));
    if let Repr::Inverse(b) = &germ.repr {
        let mut g = (**b).clone();
        g.label = label;
        return Ok(g);
    }
    if let Repr::Polynomial(p1, p2) = &germ.repr {
        // a plane polynomial automorphism and its inverse have the same degree
        let d = p1.total_degree().unwrap_or(1).max(p2.total_degree().unwrap_or(1));
        let inv = inverse_images(&germ.images_at(d + 1)?)?;
        let (q1, q2) = (inv.first.to_poly().truncate(d), inv.second.to_poly().truncate(d));
        let fwd_ok = p1.substitute(&q1, &q2) == Poly2::z1() && p2.substitute(&q1, &q2) == Poly2::z2();
        let back_ok = q1.substitute(p1, p2) == Poly2::z1() && q2.substitute(p1, p2) == Poly2::z2();
        if fwd_ok && back_ok {
            let mut g = MapGerm::from_polynomials(q1, q2)?;
            g.label = label;
            return Ok(g);
        }
    }
    Ok(MapGerm { label, repr: Repr::Inverse(Arc::new(germ.clone())) })
}

/// Solve `F(tau) = z` by `tau <- L^{-1}(z - R(tau))`, one degree per step.
fn inverse_images(f: &SeriesPair) -> Result<SeriesPair> {
    let n = f.precision();
    let (a, b) = (f.first.coeff(1, 0), f.first.coeff(0, 1));
    let (c, d) = (f.second.coeff(1, 0), f.second.coeff(0, 1));
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv = Rational::one() / det;
    let li = [[&d * &inv, -&b * &inv], [-&c * &inv, &a * &inv]];
    let lin = |x: &Rational, y: &Rational| {
        TruncatedSeries2::from_terms([((1, 0), x.clone()), ((0, 1), y.clone())], n)
    };
    let r1 = f.first.sub(&lin(&a, &b));
    let r2 = f.second.sub(&lin(&c, &d));
    let z1 = TruncatedSeries2::var(0, n);
    let z2 = TruncatedSeries2::var(1, n);
    let apply_li = |u: &TruncatedSeries2, v: &TruncatedSeries2| {
        SeriesPair::new(
            u.scale(&li[0][0]).add(&v.scale(&li[0][1])),
            u.scale(&li[1][0]).add(&v.scale(&li[1][1])),
        )
    };
    let mut tau = apply_li(&z1, &z2);
    for _ in 1..n {
        let u = z1.sub(&r1.compose(&tau)?);
        let v = z2.sub(&r2.compose(&tau)?);
        tau = apply_li(&u, &v);
    }
    Ok(tau)
}
