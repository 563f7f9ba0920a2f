//! Branches of the fixed curve `g = 0` through the origin.
//!
//! Smooth branches are found by blowing up along rational tangent directions
//! until each branch is a graph, solving for it as a series, and recovering
//! its irreducible defining polynomial by implicitization.

use super::GermDecomposition;
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::poly::{Poly1, Poly2};
use crate::series::{TruncatedSeries1, TruncatedSeries2};
use crate::Rational;
use num_traits::{One, Zero};

/// Relative type of a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchType {
    TypeI,
    TypeII,
}

impl BranchType {
    pub fn name(self) -> &'static str {
        match self {
            BranchType::TypeI => "TypeI",
            BranchType::TypeII => "TypeII",
        }
    }
}

/// How the parametrization of a branch is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// `(t, phi(t))`, solved from the defining polynomial.
    GraphOverZ1,
    /// `(phi(t), t)`, solved from the defining polynomial.
    GraphOverZ2,
    /// Supplied polynomials `(x(t), y(t))`.
    Supplied(Poly1, Poly1),
}

/// A user-supplied branch for a factor the automatic search cannot handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOverride {
    pub defining_polynomial: Poly2,
    pub x: Poly1,
    pub y: Poly1,
}

/// One height-one prime dividing `g`. Classification fields are filled by `classify_branch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchRecord {
    pub defining_polynomial: Poly2,
    pub kind: ParamKind,
    pub parametrization: (TruncatedSeries1, TruncatedSeries1),
    pub nu_p: u32,
    pub branch_type: Option<BranchType>,
    pub mu_p: Option<u32>,
    pub a_series: Option<TruncatedSeries1>,
}

impl BranchRecord {
    fn new(p: Poly2, kind: ParamKind, nu_p: u32, precision: u32) -> Result<Self> {
        let parametrization = param_at(&p, &kind, precision)?;
        Ok(BranchRecord {
            defining_polynomial: p,
            kind,
            parametrization,
            nu_p,
            branch_type: None,
            mu_p: None,
            a_series: None,
        })
    }

    /// The parametrization expanded at `precision`.
    pub fn param_at(&self, precision: u32) -> Result<(TruncatedSeries1, TruncatedSeries1)> {
        param_at(&self.defining_polynomial, &self.kind, precision)
    }
}

fn param_at(p: &Poly2, kind: &ParamKind, precision: u32) -> Result<(TruncatedSeries1, TruncatedSeries1)> {
    let t = TruncatedSeries1::t(precision);
    Ok(match kind {
        ParamKind::GraphOverZ1 => (t, solve_graph(p, precision)?),
        ParamKind::GraphOverZ2 => (solve_graph(&p.swap(), precision)?, t),
        ParamKind::Supplied(x, y) => (
            TruncatedSeries1::from_poly(x, precision),
            TruncatedSeries1::from_poly(y, precision),
        ),
    })
}

/// Solve `p(t, phi(t)) = 0` with `phi(0) = 0`, given `p(0) = 0` and `dp/dz2 (0) != 0`.
fn solve_graph(p: &Poly2, precision: u32) -> Result<TruncatedSeries1> {
    let b = p.coeff(0, 1);
    if b.is_zero() || !p.vanishes_at_origin() {
        return Err(Error::UnsupportedSingularBranch(p.to_string()));
    }
    let ps = TruncatedSeries2::from_poly(p, precision);
    let t = TruncatedSeries1::t(precision);
    let inv = Rational::one() / b;
    let mut phi = TruncatedSeries1::zero(precision);
    for _ in 0..=precision {
        let r = ps.eval_on(&t, &phi)?;
        if r.is_zero() {
            break;
        }
        phi = phi.sub(&r.scale(&inv));
    }
    Ok(phi)
}

/// Lowest form `F` of `s` with its order.
fn lowest_form(s: &Poly2) -> (u32, Poly2) {
    let m = s.order().expect("nonzero polynomial");
    (m, s.homogeneous_part(m))
}

const MAX_BLOWUPS: u32 = 24;

/// Branches `z2 = phi(z1)` of `s` at the origin; any branch tangent to `z1 = 0` is an error.
fn graph_branches(s: &Poly2, precision: u32, depth: u32, original: &Poly2) -> Result<Vec<TruncatedSeries1>> {
    let unsupported = || Error::UnsupportedSingularBranch(original.to_string());
    if depth > MAX_BLOWUPS {
        return Err(unsupported());
    }
    let (m, f) = lowest_form(s);
    if m == 0 {
        return Ok(Vec::new());
    }
    if f.coeff(0, m).is_zero() {
        return Err(unsupported());
    }
    if m == 1 {
        return Ok(vec![solve_graph(s, precision)?]);
    }
    let dehom = Poly1::new((0..=m).map(|j| f.coeff(m - j, j)).collect());
    let roots = dehom.rational_roots().ok_or_else(unsupported)?;
    if roots.iter().map(|(_, e)| e).sum::<u32>() != m {
        return Err(unsupported());
    }
    let mut out = Vec::new();
    for (c, _) in roots {
        for psi in blow_up_branches(s, &c, m, precision, depth, original)? {
            out.push(psi);
        }
    }
    Ok(out)
}

/// Branches of `s` tangent to `z2 = c z1`, found in the chart `z2 = z1 (u + c)`.
fn blow_up_branches(
    s: &Poly2,
    c: &Rational,
    m: u32,
    precision: u32,
    depth: u32,
    original: &Poly2,
) -> Result<Vec<TruncatedSeries1>> {
    let chart = Poly2::z1().mul(&Poly2::z2().add(&Poly2::constant(c.clone())));
    let strict = s
        .substitute(&Poly2::z1(), &chart)
        .exact_div(&Poly2::z1().pow(m))
        .expect("blow-up divides by the order");
    let inner = graph_branches(&strict, precision.saturating_sub(1), depth + 1, original)?;
    let t = TruncatedSeries1::t(precision);
    let cst = TruncatedSeries1::from_terms([(0, c.clone())], precision);
    Ok(inner.into_iter().map(|psi| t.mul(&cst.add(&psi)).truncate(precision)).collect())
}

/// Parametrizations of all branches of `s` at the origin.
fn all_branch_params(s: &Poly2, precision: u32) -> Result<Vec<(TruncatedSeries1, TruncatedSeries1)>> {
    let (m, f) = lowest_form(s);
    let t = TruncatedSeries1::t(precision);
    if m == 0 {
        return Ok(Vec::new());
    }
    if m == 1 {
        return Ok(vec![if !f.coeff(0, 1).is_zero() {
            (t, solve_graph(s, precision)?)
        } else {
            (solve_graph(&s.swap(), precision)?, t)
        }]);
    }
    let unsupported = || Error::UnsupportedSingularBranch(s.to_string());
    // tangent directions: z1 = 0 with multiplicity ev, the rest z2 = c z1
    let vertical = (0..=m).rev().take_while(|&j| f.coeff(m - j, j).is_zero()).count() as u32;
    let dehom = Poly1::new((0..=m).map(|j| f.coeff(m - j, j)).collect());
    let roots = dehom.rational_roots().ok_or_else(unsupported)?;
    if roots.iter().map(|(_, e)| e).sum::<u32>() + vertical != m {
        return Err(unsupported());
    }
    let mut out = Vec::new();
    for (c, _) in roots {
        for phi in blow_up_branches(s, &c, m, precision, 0, s)? {
            out.push((t.clone(), phi));
        }
    }
    if vertical > 0 {
        for phi in blow_up_branches(&s.swap(), &Rational::zero(), m, precision, 0, s)? {
            out.push((phi, t.clone()));
        }
    }
    Ok(out)
}

/// Smallest-degree polynomial vanishing on the branch to high order; divides `s`.
fn implicitize(x: &TruncatedSeries1, y: &TruncatedSeries1, s: &Poly2) -> Option<Poly2> {
    let ds = s.total_degree()?;
    for d in 1..=ds {
        let rows_needed = (d * ds + 1) as usize;
        let n = rows_needed as u32;
        let x = x.truncate(n);
        let y = y.truncate(n);
        let mut monos = Vec::new();
        let mut cols: Vec<TruncatedSeries1> = Vec::new();
        let mut xp = vec![TruncatedSeries1::one(n)];
        let mut yp = vec![TruncatedSeries1::one(n)];
        for k in 1..=d as usize {
            let nx = xp[k - 1].mul(&x);
            xp.push(nx);
            let ny = yp[k - 1].mul(&y);
            yp.push(ny);
        }
        for deg in 0..=d {
            for a in 0..=deg {
                monos.push((a, deg - a));
                cols.push(xp[a as usize].mul(&yp[(deg - a) as usize]));
            }
        }
        let matrix: Vec<Vec<Rational>> = (0..rows_needed as u32)
            .map(|e| cols.iter().map(|c| c.coeff(e)).collect())
            .collect();
        let ker = kernel(&matrix, monos.len());
        if let Some(v) = ker.first() {
            let p = Poly2::from_terms(monos.iter().zip(v).map(|(&e, c)| (e, c.clone())));
            return Some(p);
        }
    }
    None
}

/// First nonzero linear coefficient (of `z1`, else `z2`) scaled to 1.
fn normalize_by_linear_part(p: &Poly2) -> Option<Poly2> {
    let a = p.coeff(1, 0);
    let lead = if !a.is_zero() { a } else { p.coeff(0, 1) };
    (!lead.is_zero()).then(|| p.scale(&(Rational::one() / lead)))
}

/// Irreducible factors of the square-free `s` through the origin, each smooth there.
pub(crate) fn local_factors(s: &Poly2) -> Result<Vec<Poly2>> {
    let ds = s.total_degree().unwrap_or(0);
    let precision = ds * ds + 2;
    let mut out: Vec<Poly2> = Vec::new();
    for (x, y) in all_branch_params(s, precision)? {
        let p = implicitize(&x, &y, s).ok_or_else(|| Error::UnsupportedSingularBranch(s.to_string()))?;
        if !p.divides(s) {
            return Err(Error::UnsupportedSingularBranch(s.to_string()));
        }
        let p = normalize_by_linear_part(&p).ok_or_else(|| Error::UnsupportedSingularBranch(p.monic().to_string()))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Branch records (defining polynomial, parametrization, `nu_p`) for the decomposition.
///
/// Overrides are divided out of `g` first; the remaining factors through the
/// origin must be smooth there.
pub fn branches(dec: &GermDecomposition, overrides: &[BranchOverride], precision: u32) -> Result<Vec<BranchRecord>> {
    let mut g = dec.g().clone();
    let mut out = Vec::new();
    for ov in overrides {
        let (k, rest) = g.multiplicity_of(&ov.defining_polynomial);
        if k == 0 {
            return Err(Error::Precondition(format!(
                "override {} does not divide g = {}",
                ov.defining_polynomial,
                dec.g()
            )));
        }
        g = rest;
        out.push(BranchRecord::new(
            ov.defining_polynomial.clone(),
            ParamKind::Supplied(ov.x.clone(), ov.y.clone()),
            k,
            precision,
        )?);
    }
    for (s, k) in g.squarefree() {
        if !s.vanishes_at_origin() {
            continue;
        }
        for p in local_factors(&s)? {
            let kind = if !p.coeff(0, 1).is_zero() { ParamKind::GraphOverZ1 } else { ParamKind::GraphOverZ2 };
            out.push(BranchRecord::new(p, kind, k, precision)?);
        }
    }
    out.sort_by(|a, b| a.defining_polynomial.cmp(&b.defining_polynomial));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_expression as p;

    fn dec_with_g(g: &str) -> GermDecomposition {
        // sigma = (z1 + g*z1, z2 + g*z2) has decomposition (g, z1, z2) whenever g is local
        let g = p(g).unwrap();
        let germ = super::super::MapGerm::from_polynomials(
            Poly2::z1().add(&g.mul(&Poly2::z1())),
            Poly2::z2().add(&g.mul(&Poly2::z2())),
        )
        .unwrap();
        super::super::decompose(&germ).unwrap()
    }

    #[test]
    fn monomial_g() {
        let b = branches(&dec_with_g("z1^2*z2"), &[], 8).unwrap();
        assert_eq!(b.len(), 2);
        let e0 = b.iter().find(|r| r.defining_polynomial == Poly2::z1()).unwrap();
        assert_eq!(e0.nu_p, 2);
        assert!(e0.parametrization.0.is_zero());
        assert_eq!(e0.parametrization.1, TruncatedSeries1::t(8));
        let ei = b.iter().find(|r| r.defining_polynomial == Poly2::z2()).unwrap();
        assert_eq!(ei.nu_p, 1);
        assert_eq!(ei.parametrization.0, TruncatedSeries1::t(8));
        assert!(ei.parametrization.1.is_zero());
    }

    #[test]
    fn unit_and_parabola() {
        let germ = super::super::MapGerm::from_polynomials(p("2*z1").unwrap(), p("z2").unwrap()).unwrap();
        let d = super::super::decompose(&germ).unwrap();
        assert_eq!(d.g(), &Poly2::z1());
        let d1 = {
            let g = super::super::MapGerm::from_polynomials(p("z1 + z1^2 + z2").unwrap(), p("z2 + z1").unwrap()).unwrap();
            super::super::decompose(&g).unwrap()
        };
        assert!(branches(&d1, &[], 8).unwrap().is_empty());
        let b = branches(&dec_with_g("z2 - z1^2"), &[], 8).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].nu_p, 1);
        assert_eq!(b[0].parametrization.1, TruncatedSeries1::from_poly(&Poly1::from_i64s(&[0, 0, 1]), 8));
    }

    #[test]
    fn tangent_branches_through_blowup() {
        // two smooth branches sharing the tangent z2 = 0
        let b = branches(&dec_with_g("(z2 - z1^2)*(z2 + z1^2)"), &[], 8).unwrap();
        assert_eq!(b.len(), 2);
        // a vertical pair
        let b = branches(&dec_with_g("(z1 - z2^2)*(z1 - 2*z2^3)*z2"), &[], 8).unwrap();
        assert_eq!(b.len(), 3);
        for r in &b {
            let (x, y) = r.param_at(10).unwrap();
            let v = TruncatedSeries2::from_poly(&r.defining_polynomial, 10).eval_on(&x, &y).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn singular_factors_rejected() {
        assert!(matches!(
            branches(&dec_with_g("z2^2 - z1^3"), &[], 8),
            Err(Error::UnsupportedSingularBranch(_))
        ));
        // node with rational tangents: both branches smooth, the factor is not
        assert!(matches!(
            branches(&dec_with_g("z2^2 - z1^2 - z1^3"), &[], 8),
            Err(Error::UnsupportedSingularBranch(_))
        ));
        // irrational tangents
        assert!(matches!(
            branches(&dec_with_g("z2^2 - 2*z1^2"), &[], 8),
            Err(Error::UnsupportedSingularBranch(_))
        ));
    }

    #[test]
    fn override_for_cusp() {
        let ov = BranchOverride {
            defining_polynomial: p("z2^2 - z1^3").unwrap(),
            x: Poly1::from_i64s(&[0, 0, 1]),
            y: Poly1::from_i64s(&[0, 0, 0, 1]),
        };
        let b = branches(&dec_with_g("z1*(z2^2 - z1^3)"), &[ov], 8).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().any(|r| matches!(r.kind, ParamKind::Supplied(..))));
    }
}
