use super::{AnalysisConfig, Cofactors, GermDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::poly::{intersection_multiplicity, IntersectionError};
use crate::series::{Order, TruncatedSeries2};
use std::collections::BTreeMap;

/// Monomials of total degree below `d`, indexed degree by degree.
fn monomial_index(d: u32) -> BTreeMap<(u32, u32), usize> {
    let mut idx = BTreeMap::new();
    for deg in 0..d {
        for a in (0..=deg).rev() {
            let n = idx.len();
            idx.insert((a, deg - a), n);
        }
    }
    idx
}

/// Echelon basis of `(h1, h2) + m^d` modulo `m^d`.
fn ideal_mod_power(h: [&TruncatedSeries2; 2], d: u32, idx: &BTreeMap<(u32, u32), usize>) -> SparseEchelon {
    let mut ech = SparseEchelon::new();
    for hi in h {
        let Order::Finite(o) = hi.order() else { continue };
        for deg in 0..d.saturating_sub(o) {
            for a in 0..=deg {
                let b = deg - a;
                let row: SparseRow = hi
                    .terms()
                    .filter(|(&(x, y), _)| x + y + deg < d)
                    .map(|(&(x, y), c)| (idx[&(x + a, y + b)], c.clone()))
                    .collect();
                ech.insert(row);
            }
        }
    }
    ech
}

/// `dim A/(h1, h2)` by truncated linear algebra.
///
/// Computes `dim A/((h1,h2) + m^D)` for `D = 1, 2, ...` and stops at the
/// first repeat, which by Nakayama means `m^D` already lies in the ideal.
/// Returns the dimension and that `D`, or `None` if no repeat occurs up to `cap`.
/// The inputs must be known to degree `cap - 1`.
pub fn quotient_dimension(h1: &TruncatedSeries2, h2: &TruncatedSeries2, cap: u32) -> Option<(u32, u32)> {
    let mut prev: Option<usize> = None;
    for d in 1..=cap {
        let idx = monomial_index(d);
        let ech = ideal_mod_power([h1, h2], d, &idx);
        let dim = idx.len() - ech.rank();
        if prev == Some(dim) {
            return Some((dim as u32, d - 1));
        }
        prev = Some(dim);
    }
    None
}

/// `delta(sigma) = dim A/b(sigma)` at the given precision.
pub fn delta_at(dec: &GermDecomposition, config: &AnalysisConfig) -> Result<u32> {
    let cap = 4 * config.precision;
    match dec.cofactors() {
        Cofactors::Exact { h1, h2 } => {
            let a = TruncatedSeries2::from_poly(h1, cap);
            let b = TruncatedSeries2::from_poly(h2, cap);
            quotient_dimension(&a, &b, cap).map(|(d, _)| d).ok_or(Error::NotCoprime)
        }
        Cofactors::Guided { .. } => {
            let (a, b) = dec.h_series(config.precision)?;
            let known = a.precision().min(b.precision()) + 1;
            quotient_dimension(&a, &b, cap.min(known)).map(|(d, _)| d).ok_or(
                Error::PrecisionExhausted { low: config.precision, high: config.certify_precision() },
            )
        }
    }
}

/// `delta` certified by agreement between the working and the raised precision.
pub fn delta(dec: &GermDecomposition, config: &AnalysisConfig) -> Result<u32> {
    let low = delta_at(dec, config)?;
    if dec.is_exact() {
        return Ok(low);
    }
    let high = delta_at(dec, &AnalysisConfig::new(config.certify_precision()))?;
    if low != high {
        return Err(Error::PrecisionExhausted { low: config.precision, high: config.certify_precision() });
    }
    Ok(low)
}

/// `delta` by elimination: the local intersection multiplicity of `h1 = h2 = 0`.
pub fn delta_resultant(dec: &GermDecomposition) -> Result<u32> {
    let Some((h1, h2)) = dec.exact_cofactors() else {
        return Err(Error::DecompositionUnavailable("elimination needs polynomial cofactors".into()));
    };
    intersection_multiplicity(h1, h2).map_err(|e| match e {
        IntersectionError::NotCoprime => Error::NotCoprime,
        IntersectionError::ShearExhausted => Error::ShearExhausted,
    })
}

/// Whether `f` lies in `b(sigma) = (h1, h2)`, decided modulo a power of `m` the ideal contains.
pub fn b_ideal_contains(dec: &GermDecomposition, f: &TruncatedSeries2, config: &AnalysisConfig) -> Result<bool> {
    let (h1, h2) = dec.h_series(config.precision)?;
    let known = h1.precision().min(h2.precision()).min(f.precision()) + 1;
    let (_, d) = quotient_dimension(&h1, &h2, known)
        .ok_or(Error::PrecisionExhausted { low: config.precision, high: config.certify_precision() })?;
    let idx = monomial_index(d);
    let ech = ideal_mod_power([&h1, &h2], d, &idx);
    let row: SparseRow = f
        .terms()
        .filter(|(&(x, y), _)| x + y < d)
        .map(|(e, c)| (idx[e], c.clone()))
        .collect();
    Ok(ech.contains(row))
}
