use super::Order;
use crate::error::{Error, Result};
use crate::poly::Poly1;
use crate::{rat, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Element of `Q[[t]]` known up to degree `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries1 {
    coeffs: BTreeMap<u32, Rational>,
    precision: u32,
}

impl TruncatedSeries1 {
    pub fn zero(precision: u32) -> Self {
        TruncatedSeries1 { coeffs: BTreeMap::new(), precision }
    }

    pub fn one(precision: u32) -> Self {
        Self::from_terms([(0, Rational::one())], precision)
    }

    /// The parameter `t` itself.
    pub fn t(precision: u32) -> Self {
        Self::from_terms([(1, Rational::one())], precision)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(it: I, precision: u32) -> Self {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (e, c) in it {
            if e <= precision && !c.is_zero() {
                *coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries1 { coeffs, precision }
    }

    pub fn from_poly(p: &Poly1, precision: u32) -> Self {
        Self::from_terms(
            p.coeffs().iter().enumerate().map(|(e, c)| (e as u32, c.clone())),
            precision,
        )
    }

    pub fn to_poly(&self) -> Poly1 {
        let mut v = vec![Rational::zero(); self.coeffs.keys().next_back().map_or(0, |&e| e as usize + 1)];
        for (&e, c) in &self.coeffs {
            v[e as usize] = c.clone();
        }
        Poly1::new(v)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, precision: u32) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::from_terms(self.coeffs.iter().map(|(&e, c)| (e, c.clone())), precision)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision.min(o.precision);
        Self::from_terms(
            self.coeffs.iter().chain(o.coeffs.iter()).map(|(&e, c)| (e, c.clone())),
            n,
        )
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries1 {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, a)| (e, a * c)), self.precision)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision.min(o.precision);
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in o.coeffs.range(..=n.saturating_sub(a)) {
                if a + b <= n {
                    *acc.entry(a + b).or_insert_with(Rational::zero) += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries1 { coeffs: acc, precision: n }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * rat(e as i64))),
            self.precision.saturating_sub(1),
        )
    }

    pub fn order(&self) -> Order {
        match self.coeffs.keys().next() {
            Some(&k) => Order::Finite(k),
            None => Order::AboveDegree(self.precision),
        }
    }

    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let n = self.precision;
        let inv0 = Rational::one() / &c0;
        let mut r: Vec<Rational> = vec![inv0.clone()];
        for d in 1..=n {
            let mut s = Rational::zero();
            for (&e, c) in self.coeffs.range(1..=d) {
                s += c * &r[(d - e) as usize];
            }
            r.push(-s * &inv0);
        }
        Ok(Self::from_terms(r.into_iter().enumerate().map(|(e, c)| (e as u32, c)), n))
    }
}

impl fmt::Display for TruncatedSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.precision + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_order() {
        let a = TruncatedSeries1::from_poly(&Poly1::from_i64s(&[1, 1]), 5);
        let inv = a.invert_unit().unwrap();
        assert_eq!(a.mul(&inv), TruncatedSeries1::one(5));
        assert_eq!(TruncatedSeries1::t(5).mul(&TruncatedSeries1::t(5)).order(), Order::Finite(2));
        assert_eq!(TruncatedSeries1::zero(5).order(), Order::AboveDegree(5));
        assert_eq!(
            TruncatedSeries1::from_poly(&Poly1::from_i64s(&[0, 0, 3]), 5).derivative(),
            TruncatedSeries1::from_poly(&Poly1::from_i64s(&[0, 6]), 4)
        );
    }
}
