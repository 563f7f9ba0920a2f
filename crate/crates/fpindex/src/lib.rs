//! Exact computation of local fixed-point indices for planar map germs,
//! type I/II classification of fixed curves, and isolated periodic point
//! counts for algebraically stable surface maps.
//!
//! Everything is done over the rationals with truncated power series whose
//! precision is tracked and certified by recomputation at a higher degree.

pub mod error;
pub mod form;
pub mod germ;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod series;
pub mod surd;
pub mod surface;

pub use error::{Error, Result};
pub use num_rational::BigRational as Rational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d` as a reduced rational; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
