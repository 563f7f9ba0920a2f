//! Exact polynomials over the rationals: univariate helpers and the bivariate
//! workhorse used for decompositions, branches and the oracle.

mod bivariate;
mod intersection;
mod univariate;

pub use bivariate::Poly2;
pub use intersection::{intersection_multiplicity, resultant_z1, IntersectionError};
pub use univariate::Poly1;

use crate::Rational;
use num_traits::{One, Signed};
use std::fmt;

/// Writes one signed term in the syntax accepted by the expression parser.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    vars: &[(&str, u32)],
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || vars.iter().all(|&(_, e)| e == 0) {
        parts.push(a.to_string());
    }
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}
