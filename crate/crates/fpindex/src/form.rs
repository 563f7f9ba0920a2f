//! Meromorphic 2-forms `z1^s u dz1 ^ dz2` in a chart where the curve is
//! `z1 = 0`, their pullbacks, and the type predictions attached to them.

use crate::error::{Error, Result};
use crate::germ::{AnalysisConfig, MapGerm};
use crate::poly::Poly2;
use crate::series::{SeriesPair, TruncatedSeries2};
use std::fmt;

/// `alpha dz1 ^ dz2` with `alpha = z1^s * unit_part`, `unit_part` not divisible by `z1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormGerm {
    pole_order_s: i32,
    unit_part: TruncatedSeries2,
    exact_unit: Option<Poly2>,
}

impl FormGerm {
    pub fn new(pole_order_s: i32, unit_part: TruncatedSeries2) -> Result<Self> {
        if unit_part.adic_order(0) != Some(0) {
            return Err(Error::Precondition("unit part vanishes along z1 = 0".into()));
        }
        Ok(FormGerm { pole_order_s, unit_part, exact_unit: None })
    }

    /// Form with a polynomial coefficient, expandable at any precision.
    pub fn from_poly(pole_order_s: i32, unit: &Poly2, precision: u32) -> Result<Self> {
        let mut f = FormGerm::new(pole_order_s, TruncatedSeries2::from_poly(unit, precision))?;
        f.exact_unit = Some(unit.clone());
        Ok(f)
    }

    /// `dz1 ^ dz2`.
    pub fn standard(precision: u32) -> Self {
        FormGerm::from_poly(0, &Poly2::one(), precision).expect("1 is a unit")
    }

    /// Exponent of `z1`; negative values are poles.
    pub fn pole_order_s(&self) -> i32 {
        self.pole_order_s
    }

    pub fn unit_part(&self) -> &TruncatedSeries2 {
        &self.unit_part
    }

    pub fn precision(&self) -> u32 {
        self.unit_part.precision()
    }

    /// Same form at another precision; only polynomial forms can be raised.
    pub fn at_precision(&self, precision: u32) -> Option<Self> {
        match &self.exact_unit {
            Some(u) => Some(FormGerm { unit_part: TruncatedSeries2::from_poly(u, precision), ..self.clone() }),
            None if precision <= self.precision() => {
                Some(FormGerm { unit_part: self.unit_part.truncate(precision), ..self.clone() })
            }
            None => None,
        }
    }
}

impl fmt::Display for FormGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z1^{} * ({}) dz1^dz2", self.pole_order_s, self.unit_part)
    }
}

/// `k` or `l` in the adapted expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// `sigma(z1) = z1 + z1^k f1`, `sigma(z2) = z2 + z1^l f2` with `f_i(0, z2) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedExpansion {
    pub k: Exponent,
    pub l: Exponent,
    pub f1: TruncatedSeries2,
    pub f2: TruncatedSeries2,
}

fn split_along_z1(d: &TruncatedSeries2) -> Result<(Exponent, TruncatedSeries2)> {
    match d.adic_order(0) {
        None => Ok((Exponent::Infinity, TruncatedSeries2::zero(d.precision()))),
        Some(0) => Err(Error::NotACurveFixingGerm),
        Some(k) => Ok((Exponent::Finite(k), d.divide_by_var_power(0, k)?)),
    }
}

/// Read off `k, l, f1, f2` for a germ fixing `z1 = 0` pointwise.
///
/// For germs without polynomial images an exponent above the precision shows up as `Infinity`.
pub fn adapted_expansion(germ: &MapGerm, config: &AnalysisConfig) -> Result<AdaptedExpansion> {
    let n = config.precision;
    let (d1, d2) = match germ.polynomial_images() {
        Some((p1, p2)) => {
            // exact orders, then series cofactors at the working precision
            let d1 = p1.sub(&Poly2::z1());
            let d2 = p2.sub(&Poly2::z2());
            let top = d1.total_degree().unwrap_or(0).max(d2.total_degree().unwrap_or(0));
            let m = n.max(top);
            (TruncatedSeries2::from_poly(&d1, m), TruncatedSeries2::from_poly(&d2, m))
        }
        None => {
            let im = germ.images_at(n)?;
            (im.first.sub(&TruncatedSeries2::var(0, n)), im.second.sub(&TruncatedSeries2::var(1, n)))
        }
    };
    let (k, f1) = split_along_z1(&d1)?;
    let (l, f2) = split_along_z1(&d2)?;
    if k == Exponent::Infinity && l == Exponent::Infinity {
        return Err(Error::IdentityGerm);
    }
    Ok(AdaptedExpansion { k, l, f1: f1.truncate(n), f2: f2.truncate(n) })
}

/// `nu_C` and type of the curve `z1 = 0` predicted from `k, l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveTypePrediction {
    pub nu_c: u32,
    pub is_type_ii: bool,
}

/// `nu_C = min(k, l)`; type II exactly when `k > l`.
pub fn curve_type_via_minkl(exp: &AdaptedExpansion) -> CurveTypePrediction {
    let nu = match exp.k.min(exp.l) {
        Exponent::Finite(m) => m,
        Exponent::Infinity => unreachable!("at most one exponent is infinite"),
    };
    CurveTypePrediction { nu_c: nu, is_type_ii: exp.k > exp.l }
}

/// `alpha(sigma) * det(D sigma) dz1 ^ dz2`, rewritten as `z1^s' * unit`.
///
/// A nonzero `s` needs `sigma(z1) = z1 * u` with `u` a unit. The result is
/// valid one degree below the form's precision because of the Jacobian.
pub fn pullback_form(germ: &MapGerm, form: &FormGerm) -> Result<FormGerm> {
    let n = form.precision();
    let im = germ.images_at(n)?;
    pullback_with_images(&im, form)
}

fn pullback_with_images(im: &SeriesPair, form: &FormGerm) -> Result<FormGerm> {
    let n = form.precision();
    let jac = im.first.partial_derivative(0).mul(&im.second.partial_derivative(1))
        .sub(&im.first.partial_derivative(1).mul(&im.second.partial_derivative(0)));
    let mut alpha = form.unit_part.compose(im)?.mul(&jac);
    let s = form.pole_order_s;
    if s != 0 {
        let u = im.first.divide_by_var_power(0, 1).map_err(|_| {
            Error::NotDivisible("the germ does not preserve z1 = 0".into())
        })?;
        let u = if s > 0 { u } else { u.invert_unit().map_err(|_| Error::NotDivisible("sigma(z1)/z1 is not a unit".into()))? };
        alpha = alpha.mul(&u.truncate(n).pow(s.unsigned_abs()));
    }
    let j = match alpha.adic_order(0) {
        Some(j) => j,
        None => return Err(Error::NotDivisible("pulled-back coefficient vanishes to working precision".into())),
    };
    let unit = alpha.divide_by_var_power(0, j)?;
    FormGerm::new(s + j as i32, unit)
}

/// Outcome of a preservation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreservationVerdict {
    /// Pullback equals the form at the working precision.
    pub preserved: bool,
    /// True when the answer could not be confirmed at the raised precision.
    pub precision_limited: bool,
}

fn preserved_at(germ: &MapGerm, form: &FormGerm) -> Result<bool> {
    let pulled = pullback_form(germ, form)?;
    Ok(pulled.pole_order_s == form.pole_order_s && pulled.unit_part.agrees_with(&form.unit_part))
}

/// Whether `sigma^* omega = omega`, at the form's precision and again four degrees higher.
pub fn is_preserved(germ: &MapGerm, form: &FormGerm) -> Result<PreservationVerdict> {
    let preserved = preserved_at(germ, form)?;
    let high = form.precision() + crate::series::CERTIFY_MARGIN;
    let precision_limited = match form.at_precision(high) {
        Some(f) if germ.max_precision() >= high => preserved_at(germ, &f)? != preserved,
        _ => true,
    };
    Ok(PreservationVerdict { preserved, precision_limited })
}

/// What a preserved form says about a fixed curve `z1 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypePrediction {
    ForcedTypeII,
    NoPrediction,
}

/// A preserved form without a pole of order exactly `nu_C` along the curve forces type II.
pub fn predict_type(form: &FormGerm, nu_c: u32) -> TypePrediction {
    if -(form.pole_order_s as i64) != nu_c as i64 {
        TypePrediction::ForcedTypeII
    } else {
        TypePrediction::NoPrediction
    }
}
