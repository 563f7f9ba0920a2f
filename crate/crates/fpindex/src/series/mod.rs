//! Truncated power series over the rationals.
//!
//! A bivariate series at precision `N` knows every coefficient of total degree
//! at most `N`. Binary operations work at the smaller of the two precisions,
//! so a result never claims more than its inputs determine.

mod univariate;

pub use univariate::TruncatedSeries1;

use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::{rat, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Default truncation degree.
pub const DEFAULT_PRECISION: u32 = 16;

/// Extra degrees used when certifying a result.
pub const CERTIFY_MARGIN: u32 = 4;

/// Order of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    /// Every known coefficient vanishes; the true order exceeds the precision.
    AboveDegree(u32),
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::AboveDegree(_) => None,
        }
    }
}

/// Element of `Q[[z1, z2]]` known modulo terms of total degree above `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries2 {
    coeffs: BTreeMap<(u32, u32), Rational>,
    precision: u32,
}

impl TruncatedSeries2 {
    pub fn zero(precision: u32) -> Self {
        TruncatedSeries2 { coeffs: BTreeMap::new(), precision }
    }

    pub fn one(precision: u32) -> Self {
        Self::constant(Rational::one(), precision)
    }

    pub fn constant(c: Rational, precision: u32) -> Self {
        Self::from_terms([((0, 0), c)], precision)
    }

    /// `z1` (`i == 0`) or `z2` (`i == 1`).
    pub fn var(i: usize, precision: u32) -> Self {
        Self::from_poly(&Poly2::var(i), precision)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I, precision: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        for ((a, b), c) in it {
            if a + b <= precision && !c.is_zero() {
                let e: &mut Rational = coeffs.entry((a, b)).or_insert_with(Rational::zero);
                *e += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        TruncatedSeries2 { coeffs, precision }
    }

    pub fn from_poly(p: &Poly2, precision: u32) -> Self {
        Self::from_terms(p.terms().map(|(&e, c)| (e, c.clone())), precision)
    }

    /// The known part as a polynomial.
    pub fn to_poly(&self) -> Poly2 {
        Poly2::from_terms(self.coeffs.iter().map(|(&e, c)| (e, c.clone())))
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Rational {
        self.coeffs.get(&(e1, e2)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    /// Zero up to precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Drop to a lower precision (a higher request is ignored).
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
        TruncatedSeries2 {
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
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(a1, a2), ca) in &self.coeffs {
            if a1 + a2 > n {
                continue;
            }
            for (&(b1, b2), cb) in &o.coeffs {
                if a1 + a2 + b1 + b2 > n {
                    continue;
                }
                *acc.entry((a1 + b1, a2 + b2)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries2 { coeffs: acc, precision: n }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.precision);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `s(F, G)` for images `(F, G)` without constant terms.
    pub fn compose(&self, images: &SeriesPair) -> Result<Self> {
        let (f, g) = (&images.first, &images.second);
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Err(Error::NonLocalSubstitution);
        }
        let n = self.precision.min(images.precision());
        let mut rows: BTreeMap<u32, Vec<(u32, &Rational)>> = BTreeMap::new();
        for (&(a, b), c) in &self.coeffs {
            if a + b <= n {
                rows.entry(a).or_default().push((b, c));
            }
        }
        let Some(&top) = rows.keys().next_back() else {
            return Ok(Self::zero(n));
        };
        let max_b = rows.values().flatten().map(|&(b, _)| b).max().unwrap_or(0);
        let g = g.truncate(n);
        let f = f.truncate(n);
        let mut gpow = vec![Self::one(n)];
        for k in 1..=max_b as usize {
            let next = gpow[k - 1].mul(&g);
            gpow.push(next);
        }
        let row_value = |a: u32| -> Self {
            let mut s = Self::zero(n);
            if let Some(r) = rows.get(&a) {
                for &(b, c) in r {
                    s = s.add(&gpow[b as usize].scale(c));
                }
            }
            s
        };
        let mut acc = row_value(top);
        for a in (0..top).rev() {
            acc = acc.mul(&f).add(&row_value(a));
        }
        Ok(acc)
    }

    /// Term-wise derivative; precision drops by one.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let n = self.precision.saturating_sub(1);
        Self::from_terms(
            self.coeffs.iter().filter_map(|(&(a, b), c)| {
                if var == 0 {
                    (a > 0).then(|| ((a - 1, b), c * rat(a as i64)))
                } else {
                    (b > 0).then(|| ((a, b - 1), c * rat(b as i64)))
                }
            }),
            n,
        )
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let n = self.precision;
        let mut r = Self::constant(Rational::one() / c0, n);
        let two = Self::constant(rat(2), n);
        // Newton: r <- r (2 - s r) doubles the number of correct degrees
        let mut known = 0u32;
        while known < n {
            r = r.mul(&two.sub(&self.mul(&r)));
            known = 2 * known + 1;
        }
        Ok(r)
    }

    /// Least total degree of a nonzero coefficient.
    pub fn order(&self) -> Order {
        match self.coeffs.keys().map(|&(a, b)| a + b).min() {
            Some(k) => Order::Finite(k),
            None => Order::AboveDegree(self.precision),
        }
    }

    /// Largest `k` with `z_var^k` dividing the known part; `None` if zero.
    pub fn adic_order(&self, var: usize) -> Option<u32> {
        self.coeffs.keys().map(|&(a, b)| if var == 0 { a } else { b }).min()
    }

    /// Divide by `z_var^k`; the precision drops by `k`.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Result<Self> {
        let n = self.precision.saturating_sub(k);
        let mut out = Vec::new();
        for (&(a, b), c) in &self.coeffs {
            let e = if var == 0 { a } else { b };
            if e < k {
                return Err(Error::NotDivisible(format!("{} by z{}^{k}", self, var + 1)));
            }
            out.push((if var == 0 { (a - k, b) } else { (a, b - k) }, c.clone()));
        }
        Ok(Self::from_terms(out, n))
    }

    /// Homogeneous component of degree `d` as coefficients of `z1^e z2^(d-e)`, `e = 0..=d`.
    fn homogeneous(&self, d: u32) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); d as usize + 1];
        for (&(a, b), c) in self.coeffs.range((0, d)..=(d, 0)) {
            if a + b == d {
                v[a as usize] = c.clone();
            }
        }
        v
    }

    /// Quotient `q` with `b q = a` modulo degree `min(N_a, N_b) - ord(b)`.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        let k = match b.order() {
            Order::Finite(k) => k,
            Order::AboveDegree(_) => {
                return Err(Error::NotDivisible("divisor is zero up to precision".into()))
            }
        };
        let n = self.precision.min(b.precision);
        if k > n {
            return Err(Error::NotDivisible("divisor order exceeds precision".into()));
        }
        for &(x, y) in self.coeffs.keys() {
            if x + y < k {
                return Err(Error::NotDivisible(format!("{self} by {b}")));
            }
        }
        let qn = n - k;
        let bk = Poly1::new(b.homogeneous(k));
        let mut qs: Vec<Vec<Rational>> = Vec::with_capacity(qn as usize + 1);
        for j in 0..=qn {
            let mut r = self.homogeneous(k + j);
            for i in 1..=j {
                let bi = b.homogeneous(k + i);
                let qj = &qs[(j - i) as usize];
                for (e1, c1) in bi.iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for (e2, c2) in qj.iter().enumerate() {
                        r[e1 + e2] -= c1 * c2;
                    }
                }
            }
            // divide the binary form r (degree k + j) by b_k (degree k)
            let rp = Poly1::new(r);
            let q = match rp.exact_div(&bk) {
                Some(q) if q.degree().is_none_or(|d| d <= j as usize) => q,
                _ => return Err(Error::NotDivisible(format!("{self} by {b}"))),
            };
            let mut qv = q.coeffs().to_vec();
            qv.resize(j as usize + 1, Rational::zero());
            qs.push(qv);
        }
        Ok(Self::from_terms(
            qs.into_iter().enumerate().flat_map(|(j, v)| {
                v.into_iter()
                    .enumerate()
                    .map(move |(e, c)| ((e as u32, (j - e) as u32), c))
            }),
            qn,
        ))
    }

    /// Evaluate along a curve `(x(t), y(t))` with `x(0) = y(0) = 0`.
    pub fn eval_on(&self, x: &TruncatedSeries1, y: &TruncatedSeries1) -> Result<TruncatedSeries1> {
        if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
            return Err(Error::NonLocalSubstitution);
        }
        let n = self.precision.min(x.precision()).min(y.precision());
        let mut rows: BTreeMap<u32, Vec<(u32, &Rational)>> = BTreeMap::new();
        for (&(a, b), c) in &self.coeffs {
            rows.entry(a).or_default().push((b, c));
        }
        let Some(&top) = rows.keys().next_back() else {
            return Ok(TruncatedSeries1::zero(n));
        };
        let max_b = rows.values().flatten().map(|&(b, _)| b).max().unwrap_or(0);
        let mut ypow = vec![TruncatedSeries1::one(n)];
        for k in 1..=max_b as usize {
            let next = ypow[k - 1].mul(y);
            ypow.push(next);
        }
        let row_value = |a: u32| {
            let mut s = TruncatedSeries1::zero(n);
            if let Some(r) = rows.get(&a) {
                for &(b, c) in r {
                    s = s.add(&ypow[b as usize].scale(c));
                }
            }
            s
        };
        let mut acc = row_value(top);
        for a in (0..top).rev() {
            acc = acc.mul(x).add(&row_value(a));
        }
        Ok(acc)
    }

    /// True when both agree on every coefficient up to the smaller precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let n = self.precision.min(o.precision);
        self.truncate(n) == o.truncate(n)
    }
}

impl fmt::Display for TruncatedSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.to_poly(), self.precision + 1)
    }
}

/// Images `(sigma(z1), sigma(z2))` of a germ, kept at a common precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPair {
    pub first: TruncatedSeries2,
    pub second: TruncatedSeries2,
}

impl SeriesPair {
    pub fn new(first: TruncatedSeries2, second: TruncatedSeries2) -> Self {
        let n = first.precision().min(second.precision());
        SeriesPair { first: first.truncate(n), second: second.truncate(n) }
    }

    pub fn from_polys(p1: &Poly2, p2: &Poly2, precision: u32) -> Self {
        SeriesPair {
            first: TruncatedSeries2::from_poly(p1, precision),
            second: TruncatedSeries2::from_poly(p2, precision),
        }
    }

    pub fn identity(precision: u32) -> Self {
        Self::from_polys(&Poly2::z1(), &Poly2::z2(), precision)
    }

    pub fn precision(&self) -> u32 {
        self.first.precision()
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries2 {
        if i == 0 {
            &self.first
        } else {
            &self.second
        }
    }

    /// Substitute `inner` into both components: the pair `self ∘ inner`.
    pub fn compose(&self, inner: &SeriesPair) -> Result<SeriesPair> {
        Ok(SeriesPair::new(self.first.compose(inner)?, self.second.compose(inner)?))
    }

    pub fn truncate(&self, n: u32) -> Self {
        SeriesPair::new(self.first.truncate(n), self.second.truncate(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, u32, u32)], n: u32) -> TruncatedSeries2 {
        TruncatedSeries2::from_terms(terms.iter().map(|&(c, a, b)| ((a, b), rat(c))), n)
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(&[(1, 1, 0)], 8).add(&s(&[(1, 0, 1)], 8)), s(&[(1, 1, 0), (1, 0, 1)], 8));
        let x = s(&[(3, 2, 1), (1, 0, 0)], 8);
        assert_eq!(x.add(&TruncatedSeries2::zero(8)), x);
        assert_eq!(s(&[(1, 0, 0), (1, 1, 1)], 8).add(&s(&[(-1, 0, 0)], 8)), s(&[(1, 1, 1)], 8));
        assert_eq!(x.add(&TruncatedSeries2::zero(3)).precision(), 3);
    }

    #[test]
    fn mul_examples() {
        let a = s(&[(1, 0, 0), (1, 1, 0)], 4);
        let b = s(&[(1, 0, 0), (-1, 1, 0)], 4);
        assert_eq!(a.mul(&b), s(&[(1, 0, 0), (-1, 2, 0)], 4));
        assert_eq!(a.mul(&TruncatedSeries2::one(4)), a);
        let c = s(&[(1, 1, 0), (1, 0, 1)], 4);
        assert_eq!(c.mul(&c), s(&[(1, 2, 0), (2, 1, 1), (1, 0, 2)], 4));
        // truncation
        assert_eq!(s(&[(1, 3, 0)], 4).mul(&s(&[(1, 2, 0)], 4)), TruncatedSeries2::zero(4));
    }

    #[test]
    fn compose_examples() {
        let f = s(&[(1, 1, 0), (1, 0, 2)], 10);
        let swap = SeriesPair::new(s(&[(1, 0, 1)], 10), s(&[(1, 1, 0)], 10));
        assert_eq!(f.compose(&swap).unwrap(), s(&[(1, 0, 1), (1, 2, 0)], 10));
        let z1 = s(&[(1, 1, 0)], 10);
        let im = SeriesPair::new(s(&[(1, 1, 0), (1, 1, 1)], 10), s(&[(1, 0, 1)], 10));
        assert_eq!(z1.compose(&im).unwrap(), s(&[(1, 1, 0), (1, 1, 1)], 10));
        // geometric series in z1 evaluated at z1 + z2
        let n = 6;
        let geo = TruncatedSeries2::from_terms((0..=n).map(|k| ((k, 0), rat(1))), n);
        let im = SeriesPair::new(s(&[(1, 1, 0), (1, 0, 1)], n), TruncatedSeries2::zero(n));
        let got = geo.compose(&im).unwrap();
        let lin = s(&[(1, 1, 0), (1, 0, 1)], n);
        let mut want = TruncatedSeries2::zero(n);
        for k in 0..=n {
            want = want.add(&lin.pow(k));
        }
        assert_eq!(got, want);
        let bad = SeriesPair::new(s(&[(1, 0, 0)], n), s(&[(1, 0, 1)], n));
        assert_eq!(geo.compose(&bad), Err(Error::NonLocalSubstitution));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s(&[(1, 2, 1)], 6).partial_derivative(0), s(&[(2, 1, 1)], 5));
        assert!(s(&[(7, 0, 0)], 6).partial_derivative(1).is_zero());
        assert_eq!(s(&[(1, 3, 1)], 6).partial_derivative(1), s(&[(1, 3, 0)], 5));
    }

    #[test]
    fn invert_examples() {
        let n = 7;
        let inv = s(&[(1, 0, 0), (1, 1, 0)], n).invert_unit().unwrap();
        let want = TruncatedSeries2::from_terms((0..=n).map(|k| ((k, 0), rat(if k % 2 == 0 { 1 } else { -1 }))), n);
        assert_eq!(inv, want);
        assert_eq!(
            s(&[(2, 0, 0)], n).invert_unit().unwrap(),
            TruncatedSeries2::constant(Rational::new(1.into(), 2.into()), n)
        );
        assert_eq!(s(&[(1, 1, 0)], n).invert_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn order_examples() {
        assert_eq!(s(&[(1, 2, 1), (1, 4, 0)], 16).order(), Order::Finite(3));
        assert_eq!(s(&[(7, 0, 0)], 16).order(), Order::Finite(0));
        assert_eq!(TruncatedSeries2::zero(16).order(), Order::AboveDegree(16));
    }

    #[test]
    fn exact_divide_examples() {
        let z1 = s(&[(1, 1, 0)], 10);
        assert_eq!(s(&[(1, 2, 1)], 10).exact_divide(&z1).unwrap(), s(&[(1, 1, 1)], 9));
        assert_eq!(s(&[(1, 2, 0), (1, 1, 1)], 10).exact_divide(&z1).unwrap(), s(&[(1, 1, 0), (1, 0, 1)], 9));
        assert!(matches!(z1.exact_divide(&s(&[(1, 0, 1)], 10)), Err(Error::NotDivisible(_))));
        // division by a unit is inversion
        let u = s(&[(1, 0, 0), (1, 1, 0)], 6);
        assert_eq!(TruncatedSeries2::one(6).exact_divide(&u).unwrap(), u.invert_unit().unwrap());
    }

    #[test]
    fn evaluation_on_curve() {
        let f = s(&[(1, 2, 0), (1, 0, 1)], 8);
        let x = TruncatedSeries1::t(8);
        let y = TruncatedSeries1::from_poly(&Poly1::from_i64s(&[0, 0, -1]), 8);
        assert!(f.eval_on(&x, &y).unwrap().is_zero());
    }
}
