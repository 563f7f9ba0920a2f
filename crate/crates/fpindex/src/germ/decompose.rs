use super::branches::local_factors;
use super::MapGerm;
use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::series::TruncatedSeries2;

/// How the cofactors `h1, h2` are available.
#[derive(Clone, Debug)]
pub enum Cofactors {
    /// Exact polynomials.
    Exact { h1: Poly2, h2: Poly2 },
    /// Obtained on demand by dividing the images of this germ by `g`.
    Guided { germ: MapGerm },
}

/// `sigma(z_i) = z_i + g h_i` with `g` the local gcd of the differences.
#[derive(Clone, Debug)]
pub struct GermDecomposition {
    g: Poly2,
    cofactors: Cofactors,
}

impl GermDecomposition {
    pub fn g(&self) -> &Poly2 {
        &self.g
    }

    pub fn cofactors(&self) -> &Cofactors {
        &self.cofactors
    }

    pub fn exact_cofactors(&self) -> Option<(&Poly2, &Poly2)> {
        match &self.cofactors {
            Cofactors::Exact { h1, h2 } => Some((h1, h2)),
            Cofactors::Guided { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.cofactors, Cofactors::Exact { .. })
    }

    pub fn g_series(&self, precision: u32) -> TruncatedSeries2 {
        TruncatedSeries2::from_poly(&self.g, precision)
    }

    /// `(h1, h2)` as series. Guided cofactors come out at `precision - ord(g)`.
    pub fn h_series(&self, precision: u32) -> Result<(TruncatedSeries2, TruncatedSeries2)> {
        match &self.cofactors {
            Cofactors::Exact { h1, h2 } => Ok((
                TruncatedSeries2::from_poly(h1, precision),
                TruncatedSeries2::from_poly(h2, precision),
            )),
            Cofactors::Guided { germ } => {
                let im = germ.images_at(precision)?;
                let d1 = im.first.sub(&TruncatedSeries2::var(0, precision));
                let d2 = im.second.sub(&TruncatedSeries2::var(1, precision));
                let g = self.g_series(precision);
                let div = |d: &TruncatedSeries2| {
                    d.exact_divide(&g).map_err(|_| {
                        Error::DecompositionUnavailable(
                            "g of the guiding germ does not divide the expanded images".into(),
                        )
                    })
                };
                Ok((div(&d1)?, div(&d2)?))
            }
        }
    }
}

/// Decompose a germ as `sigma(z_i) = z_i + g h_i`.
///
/// Polynomial germs use the polynomial gcd of the differences with factors
/// that do not vanish at the origin moved into the cofactors. Iterates and
/// inverses reuse `g` of the underlying germ and divide the expanded images.
pub fn decompose(germ: &MapGerm) -> Result<GermDecomposition> {
    if let Some((p1, p2)) = germ.polynomial_images() {
        let d1 = p1.sub(&Poly2::z1());
        let d2 = p2.sub(&Poly2::z2());
        if d1.is_zero() && d2.is_zero() {
            return Err(Error::IdentityGerm);
        }
        let gcd = d1.gcd(&d2);
        let g = local_part(&gcd);
        let h1 = d1.exact_div(&g).expect("local part divides the gcd");
        let h2 = d2.exact_div(&g).expect("local part divides the gcd");
        return Ok(GermDecomposition { g, cofactors: Cofactors::Exact { h1, h2 } });
    }
    match germ.base_for_guidance() {
        Some(base) => {
            let g = decompose(base)?.g;
            let dec = GermDecomposition { g, cofactors: Cofactors::Guided { germ: germ.clone() } };
            // the identity check for lazy germs happens on the expanded images
            let (h1, h2) = dec.h_series(8)?;
            if h1.is_zero() && h2.is_zero() {
                return Err(Error::IdentityGerm);
            }
            Ok(dec)
        }
        None => Err(Error::DecompositionUnavailable(
            "series germ without a polynomial model".into(),
        )),
    }
}

/// Product of the irreducible factors of `f` through the origin, with multiplicity.
///
/// Falls back to stripping univariate unit factors when a factor is singular
/// at the origin; the leftover factors are units of the local ring anyway.
fn local_part(f: &Poly2) -> Poly2 {
    if f.is_constant() {
        return Poly2::one();
    }
    let mut g = Poly2::one();
    for (s, k) in f.squarefree() {
        if !s.vanishes_at_origin() {
            continue;
        }
        let local = match local_factors(&s) {
            Ok(ps) => ps.iter().fold(Poly2::one(), |acc, p| acc.mul(p)),
            Err(_) => strip_univariate_units(&s),
        };
        g = g.mul(&local.pow(k));
    }
    g
}

fn strip_univariate_units(s: &Poly2) -> Poly2 {
    let unit_part = |c: Poly1| -> Poly1 {
        let k = c.order().unwrap_or(0);
        c.exact_div(&Poly1::x().pow(k as u32)).unwrap_or_else(Poly1::one)
    };
    let cz2 = unit_part(s.content_z1());
    let s = s.exact_div(&Poly2::from_univariate(&cz2, 1)).expect("content divides");
    let cz1 = unit_part(s.swap().content_z1());
    let s = s.exact_div(&Poly2::from_univariate(&cz1, 0)).expect("content divides");
    match s.order() {
        Some(_) => s.monic(),
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::germ;
    use super::*;
    use crate::io::parse_expression as p;

    #[test]
    fn cubic_surface_germ() {
        let d = decompose(&germ("z1 + z1^3*z2*(1 + z2)", "z2 + z1^2*z2^2*(1 - z1)")).unwrap();
        assert_eq!(d.g(), &p("z1^2*z2").unwrap());
        let (h1, h2) = d.exact_cofactors().unwrap();
        assert_eq!(h1, &p("z1*(1 + z2)").unwrap());
        assert_eq!(h2, &p("z2*(1 - z1)").unwrap());
    }

    #[test]
    fn shared_unit_is_moved_into_cofactors() {
        let d = decompose(&germ("z1 + z1^3*z2*(1 + z1 + z2^2)", "z2 + z1^2*z2^2*(1 + z1 + z2^2)")).unwrap();
        assert_eq!(d.g(), &p("z1^2*z2").unwrap());
        assert_eq!(d.exact_cofactors().unwrap().0, &p("z1*(1 + z1 + z2^2)").unwrap());
    }

    #[test]
    fn remark_examples() {
        let d = decompose(&germ("-2*z1 - z1^2 - z2", "z1")).unwrap();
        assert_eq!(d.g(), &Poly2::one());
        assert_eq!(d.exact_cofactors().unwrap(), (&p("-3*z1 - z1^2 - z2").unwrap(), &p("z1 - z2").unwrap()));
        let d = decompose(&germ("z1 + z1*(z1^2 + z2)", "z2 + z1^2")).unwrap();
        assert_eq!(d.g(), &p("z1").unwrap());
        assert_eq!(d.exact_cofactors().unwrap(), (&p("z1^2 + z2").unwrap(), &p("z1").unwrap()));
    }

    #[test]
    fn cofactors_reproduce_differences() {
        let s = germ("z1 + (z2 - z1^2)^2*(z1 + 3*z2)", "z2 + (z2 - z1^2)^2*(2*z1 - z2^2)");
        let d = decompose(&s).unwrap();
        let (h1, h2) = d.exact_cofactors().unwrap();
        assert_eq!(d.g().mul(h1).add(&Poly2::z1()), *s.polynomial_images().unwrap().0);
        assert_eq!(d.g().mul(h2).add(&Poly2::z2()), *s.polynomial_images().unwrap().1);
    }
}
