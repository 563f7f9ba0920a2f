//! Brute-force cross-checks that use only global polynomial algebra: fixed
//! point multiplicities by elimination, affine fixed point counts, and the
//! torus Lefschetz number as a determinant.

use crate::error::{Error, Result};
use crate::poly::{intersection_multiplicity, resultant_z1, IntersectionError, Poly2};
use crate::surd::{common_field, QuadSurd};
use crate::{rat, Rational};
use num_traits::Zero;

/// Degree product up to which elimination is used instead of local reduction.
const ELIMINATION_DEGREE: u32 = 64;
/// First truncation degree for local reduction, doubled up to the cap.
const FIRST_TRUNCATION: u32 = 16;
const TRUNCATION_CAP: u32 = 256;

/// A global polynomial map of the affine plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialMap {
    pub p1: Poly2,
    pub p2: Poly2,
}

impl PolynomialMap {
    pub fn new(p1: Poly2, p2: Poly2) -> Self {
        PolynomialMap { p1, p2 }
    }

    pub fn eval(&self, (a, b): (&Rational, &Rational)) -> (Rational, Rational) {
        (self.p1.eval(a, b), self.p2.eval(a, b))
    }

    fn degree(&self) -> u32 {
        self.p1.total_degree().unwrap_or(0).max(self.p2.total_degree().unwrap_or(0)).max(1)
    }

    /// `f^n` as polynomials.
    pub fn iterate(&self, n: u32) -> PolynomialMap {
        let (mut c1, mut c2) = (Poly2::z1(), Poly2::z2());
        for _ in 0..n {
            let n1 = self.p1.substitute(&c1, &c2);
            let n2 = self.p2.substitute(&c1, &c2);
            c1 = n1;
            c2 = n2;
        }
        PolynomialMap { p1: c1, p2: c2 }
    }

    /// `f^n(point + w) - point` in the variable `w`, truncated above degree `keep` if given.
    fn local_iterate(&self, point: (&Rational, &Rational), n: u32, keep: Option<u32>) -> Result<(Poly2, Poly2)> {
        let mut orbit = vec![(point.0.clone(), point.1.clone())];
        for _ in 0..n {
            let last = orbit.last().unwrap();
            orbit.push(self.eval((&last.0, &last.1)));
        }
        if orbit[n as usize] != orbit[0] {
            return Err(Error::Precondition(format!("({}, {}) is not fixed by f^{n}", point.0, point.1)));
        }
        let cut = |p: Poly2| keep.map_or(p.clone(), |k| p.truncate(k));
        let (mut c1, mut c2) = (Poly2::z1(), Poly2::z2());
        for i in 0..n as usize {
            let (a, b) = &orbit[i];
            let (a2, b2) = &orbit[i + 1];
            let g1 = self.p1.translate(a, b).sub(&Poly2::constant(a2.clone()));
            let g2 = self.p2.translate(a, b).sub(&Poly2::constant(b2.clone()));
            let n1 = cut(g1.substitute(&c1, &c2));
            let n2 = cut(g2.substitute(&c1, &c2));
            c1 = n1;
            c2 = n2;
        }
        Ok((c1, c2))
    }
}

/// `I_0(f, g)` by Fulton's reduction; `None` when the curves share a component through 0.
fn fulton(f: &Poly2, g: &Poly2) -> Option<u32> {
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc = 0u32;
    loop {
        if f.is_zero() || g.is_zero() {
            return None;
        }
        if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
            return Some(acc);
        }
        let fr = f.restrict_z2(&Rational::zero());
        let gr = g.restrict_z2(&Rational::zero());
        match (fr.is_zero(), gr.is_zero()) {
            (true, true) => return None,
            (true, false) | (false, true) => {
                // one of them is z2 * h: I(z2 h, g) = ord of g(z1, 0) + I(h, g)
                if gr.is_zero() {
                    std::mem::swap(&mut f, &mut g);
                }
                let other = g.restrict_z2(&Rational::zero());
                acc += other.order().expect("nonzero") as u32;
                f = f.exact_div(&Poly2::z2()).expect("z2 divides");
            }
            (false, false) => {
                let (r, s) = (fr.degree().unwrap(), gr.degree().unwrap());
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                }
                let (fr, gr) = (f.restrict_z2(&Rational::zero()), g.restrict_z2(&Rational::zero()));
                let (r, s) = (fr.degree().unwrap(), gr.degree().unwrap());
                let c = gr.lc() / fr.lc();
                g = g.sub(&f.shift((s - r) as u32, 0).scale(&c));
            }
        }
    }
}

/// `I_0(f, g)` from truncations, accepted once it is below the truncation degree.
fn truncated_multiplicity(map: &PolynomialMap, point: (&Rational, &Rational), n: u32) -> Result<u32> {
    let mut k = FIRST_TRUNCATION;
    while k <= TRUNCATION_CAP {
        let (c1, c2) = map.local_iterate(point, n, Some(k))?;
        let f = c1.sub(&Poly2::z1()).truncate(k - 1);
        let g = c2.sub(&Poly2::z2()).truncate(k - 1);
        if let Some(m) = fulton(&f, &g) {
            if m < k {
                return Ok(m);
            }
        }
        k *= 2;
    }
    Err(Error::NonIsolated(format!("({}, {})", point.0, point.1)))
}

/// Multiplicity of `point` as a solution of `f^n(z) = z`.
pub fn fixed_multiplicity(map: &PolynomialMap, point: (&Rational, &Rational), n: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let d = map.degree();
    if d.checked_pow(2 * n).is_some_and(|v| v <= ELIMINATION_DEGREE) {
        let (c1, c2) = map.local_iterate(point, n, None)?;
        return intersection_multiplicity(&c1.sub(&Poly2::z1()), &c2.sub(&Poly2::z2())).map_err(|e| match e {
            IntersectionError::NotCoprime => Error::NonIsolated(format!("({}, {})", point.0, point.1)),
            IntersectionError::ShearExhausted => Error::ShearExhausted,
        });
    }
    truncated_multiplicity(map, point, n)
}

/// Index at a point of declared fixed curves, assembled from intersection numbers.
///
/// `f^n(z) - z = g (H1, H2)` with `g` the product of the `curves` (taken with
/// the multiplicity to which they divide both differences). The result is
/// `I(H1, H2) + sum nu_p I(p, H1 p_z1 + H2 p_z2)`, valid when every curve is
/// smooth and of type I at the point.
pub fn curve_point_multiplicity(map: &PolynomialMap, point: (&Rational, &Rational), n: u32, curves: &[Poly2]) -> Result<u32> {
    let it = map.iterate(n);
    let (a, b) = point;
    let mut d1 = it.p1.sub(&Poly2::z1()).translate(a, b);
    let mut d2 = it.p2.sub(&Poly2::z2()).translate(a, b);
    let local: Vec<Poly2> = curves.iter().map(|p| p.translate(a, b)).collect();
    let mut nus = Vec::new();
    for p in &local {
        let mut nu = 0u32;
        while let (Some(q1), Some(q2)) = (d1.exact_div(p), d2.exact_div(p)) {
            d1 = q1;
            d2 = q2;
            nu += 1;
        }
        nus.push(nu);
    }
    let mut total = local_intersection(&d1, &d2).ok_or_else(|| Error::NonIsolated(format!("({a}, {b})")))?;
    for (p, nu) in local.iter().zip(nus) {
        if nu == 0 || !p.vanishes_at_origin() {
            continue;
        }
        let tau = d1.mul(&p.derivative(0)).add(&d2.mul(&p.derivative(1)));
        let mu = local_intersection(p, &tau)
            .ok_or_else(|| Error::Precondition(format!("{p} is not of type I at the point")))?;
        total += nu * mu;
    }
    Ok(total)
}

/// `I_0(f, g)`: elimination for small degrees, otherwise Fulton's reduction on
/// truncations, accepted once the answer is below the truncation degree.
fn local_intersection(f: &Poly2, g: &Poly2) -> Option<u32> {
    let deg = |p: &Poly2| p.total_degree().unwrap_or(0).max(1);
    if deg(f) * deg(g) <= ELIMINATION_DEGREE {
        return intersection_multiplicity(f, g).ok();
    }
    let mut k = FIRST_TRUNCATION;
    while k <= TRUNCATION_CAP {
        if let Some(m) = fulton(&f.truncate(k - 1), &g.truncate(k - 1)) {
            if m < k {
                return Some(m);
            }
        }
        k *= 2;
    }
    None
}

/// Number of solutions of `f^n(z) = z` in the affine plane, with multiplicity.
pub fn affine_fixed_count(map: &PolynomialMap, n: u32) -> Result<u32> {
    let it = map.iterate(n);
    let f = it.p1.sub(&Poly2::z1());
    let g = it.p2.sub(&Poly2::z2());
    if (f.is_constant() && !f.is_zero()) || (g.is_constant() && !g.is_zero()) {
        return Ok(0);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::NonIsolated("a coordinate of f^n is the identity".into()));
    }
    if !f.gcd(&g).is_constant() {
        return Err(Error::NonIsolated("the fixed locus contains a curve".into()));
    }
    // a linear change making f monic in z1 puts no solutions at infinity in that direction
    let top = f.homogeneous_part(f.total_degree().unwrap());
    for s in 0i64..=top.total_degree().unwrap() as i64 + 1 {
        let lc = top.eval(&rat(1), &rat(s));
        if lc.is_zero() {
            continue;
        }
        let sh = Poly2::z2().add(&Poly2::z1().scale(&rat(s)));
        let fs = f.substitute(&Poly2::z1(), &sh);
        let gs = g.substitute(&Poly2::z1(), &sh);
        let r = resultant_z1(&fs, &gs);
        return Ok(r.degree().unwrap_or(0) as u32);
    }
    unreachable!("a nonzero form has a nonvanishing direction among deg + 2 candidates")
}

/// `(1 - d1^n)(1 - d2^n)(1 - conj(d1)^n)(1 - conj(d2)^n)`, i.e. `|det(I - A^n)|^2`.
pub fn torus_lefschetz_oracle(d1: &QuadSurd, d2: &QuadSurd, n: u32) -> Result<QuadSurd> {
    common_field(&[d1, d2])?;
    if d1.mul(d2).abs_sq() != QuadSurd::one() {
        return Err(Error::Precondition("|d1 d2| must be 1".into()));
    }
    let one = QuadSurd::one();
    let n = n as i32;
    let a = one.sub(&d1.pow(n));
    let b = one.sub(&d2.pow(n));
    let det = a.mul(&b);
    Ok(det.mul(&det.conj()))
}
