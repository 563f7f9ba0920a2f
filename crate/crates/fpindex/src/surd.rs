//! Exact arithmetic in a quadratic field `Q(sqrt d)`.

use crate::error::{Error, Result};
use crate::{rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `a + b sqrt(d)` with `d` a squarefree integer other than 0 and 1.
///
/// Rationals (`b = 0`) combine with any field. Combining two irrational values
/// from different fields panics; entry points check with [`common_field`] first.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    d: i64,
}

/// Split `n = k^2 m` with `m` squarefree.
fn square_split(n: i64) -> (i64, i64) {
    let (sign, mut m) = (n.signum(), n.unsigned_abs());
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k as i64, sign * m as i64)
}

/// The field shared by all irrational values, or `FieldMismatch`.
pub fn common_field(values: &[&QuadSurd]) -> Result<Option<i64>> {
    let mut field = None;
    for v in values {
        if let Some(d) = v.field() {
            match field {
                None => field = Some(d),
                Some(e) if e != d => return Err(Error::FieldMismatch),
                _ => {}
            }
        }
    }
    Ok(field)
}

impl QuadSurd {
    /// `a + b sqrt(d)`; square factors of `d` are pulled into `b`.
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        if d == 0 || b.is_zero() {
            return QuadSurd::rational(a);
        }
        let (k, m) = square_split(d);
        let b = b * rat(k);
        if m == 1 {
            return QuadSurd::rational(a + b);
        }
        QuadSurd { a, b, d: m }
    }

    pub fn rational(a: Rational) -> Self {
        QuadSurd { a, b: Rational::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Self {
        QuadSurd::rational(rat(n))
    }

    pub fn zero() -> Self {
        QuadSurd::int(0)
    }

    pub fn one() -> Self {
        QuadSurd::int(1)
    }

    /// `sqrt(n)` for a nonnegative or negative integer `n`.
    pub fn sqrt(n: i64) -> Self {
        QuadSurd::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand when irrational.
    pub fn field(&self) -> Option<i64> {
        (!self.b.is_zero()).then_some(self.d)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() || self.d > 0
    }

    fn join(&self, o: &Self) -> i64 {
        match (self.field(), o.field()) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "values from different quadratic fields");
                x
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => 0,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.join(o);
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b, d)
    }

    pub fn neg(&self) -> Self {
        QuadSurd { a: -&self.a, b: -&self.b, d: self.d }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.join(o);
        let a = &self.a * &o.a + &self.b * &o.b * rat(d);
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadSurd::new(a, b, d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadSurd::new(&self.a * c, &self.b * c, self.d)
    }

    /// `a - b sqrt(d)`.
    pub fn galois_conjugate(&self) -> Self {
        QuadSurd { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Complex conjugate: the Galois conjugate in an imaginary field, the identity in a real one.
    pub fn conj(&self) -> Self {
        if self.is_real() {
            self.clone()
        } else {
            self.galois_conjugate()
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d)
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// `Re(x)`.
    pub fn re(&self) -> Self {
        if self.is_real() {
            self.clone()
        } else {
            QuadSurd::rational(self.a.clone())
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        self.galois_conjugate().scale(&(Rational::one() / n))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i32) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QuadSurd::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Sign of a real value, exact.
    pub fn signum(&self) -> Ordering {
        assert!(self.is_real(), "sign of a non-real value");
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a^2 with d b^2
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Order of two real values.
    pub fn cmp_real(&self, o: &Self) -> Ordering {
        self.sub(o).signum()
    }

    pub fn abs_real(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Integer value when the number is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Approximation `(re, im)`, for display only.
    pub fn to_f64(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            (a, 0.0)
        } else if self.d > 0 {
            (a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            (a, b * (-self.d as f64).sqrt())
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadSurd {}

impl From<i64> for QuadSurd {
    fn from(n: i64) -> Self {
        QuadSurd::int(n)
    }
}

impl From<Rational> for QuadSurd {
    fn from(q: Rational) -> Self {
        QuadSurd::rational(q)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.d);
        let b = if self.b.is_one() {
            root
        } else if self.b == -Rational::one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else if let Some(rest) = b.strip_prefix('-') {
            write!(f, "{} - {rest}", self.a)
        } else {
            write!(f, "{} + {b}", self.a)
        }
    }
}

/// Unit-modulus element `((1 + d t^2) + 2 t sqrt(d)) / (1 - d t^2)` of an imaginary field.
pub fn unit_from_parameter(t: &Rational, d: i64) -> QuadSurd {
    assert!(d < 0, "needs an imaginary field");
    let dt2 = t * t * rat(d);
    let den = Rational::one() - &dt2;
    QuadSurd::new((Rational::one() + dt2) / &den, t * rat(2) / den, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn golden() -> QuadSurd {
        QuadSurd::new(ratio(3, 2), ratio(1, 2), 5)
    }

    #[test]
    fn field_arithmetic() {
        let g = golden();
        // g + 1/g = 3, g * g' = 1
        assert_eq!(g.add(&g.inv()), QuadSurd::int(3));
        assert_eq!(g.mul(&g.galois_conjugate()), QuadSurd::one());
        assert_eq!(g.pow(2), QuadSurd::new(ratio(7, 2), ratio(3, 2), 5));
        assert_eq!(g.pow(-1), g.galois_conjugate());
        assert_eq!(QuadSurd::sqrt(20), QuadSurd::new(rat(0), rat(2), 5));
        assert_eq!(QuadSurd::sqrt(9), QuadSurd::int(3));
        let i = QuadSurd::sqrt(-1);
        assert_eq!(i.mul(&i), QuadSurd::int(-1));
        assert_eq!(i.conj(), i.neg());
        assert_eq!(g.conj(), g);
    }

    #[test]
    fn signs() {
        assert_eq!(golden().signum(), Ordering::Greater);
        assert_eq!(QuadSurd::new(rat(2), rat(-1), 5).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(rat(-2), rat(1), 5).signum(), Ordering::Greater);
        assert_eq!(QuadSurd::new(rat(-9), rat(4), 5).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(rat(9), rat(-4), 5).signum(), Ordering::Greater);
        assert_eq!(golden().cmp_real(&QuadSurd::int(3)), Ordering::Less);
    }

    #[test]
    fn unit_modulus() {
        for (t, d) in [(ratio(1, 2), -1), (ratio(-3, 7), -3), (rat(2), -5)] {
            assert_eq!(unit_from_parameter(&t, d).abs_sq(), QuadSurd::one());
        }
    }

    #[test]
    fn mismatch_detected() {
        let a = QuadSurd::sqrt(2);
        let b = QuadSurd::sqrt(3);
        assert_eq!(common_field(&[&a, &b]), Err(Error::FieldMismatch));
        assert_eq!(common_field(&[&a, &QuadSurd::int(4)]), Ok(Some(2)));
    }

    #[test]
    fn display() {
        assert_eq!(golden().to_string(), "3/2 + 1/2*sqrt(5)");
        assert_eq!(QuadSurd::new(rat(9), rat(-4), 5).to_string(), "9 - 4*sqrt(5)");
        assert_eq!(QuadSurd::sqrt(-1).to_string(), "sqrt(-1)");
    }
}
