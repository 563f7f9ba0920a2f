//! Dense univariate polynomials over the rationals.

use crate::{rat, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// Polynomial in one variable, coefficients stored from degree 0 upward.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    coeffs: Vec<Rational>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let nq = self.coeffs.len().saturating_sub(dd);
        let mut q = vec![Rational::zero(); nq];
        for k in (0..nq).rev() {
            let c = &r[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        self.scale(&(Rational::one() / lc))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free decomposition `[(s_k, k)]` with `self = c * prod s_k^k`.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = fp.exact_div(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).expect("gcd divides");
            let nc = d.exact_div(&a).expect("gcd divides");
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicity, or `None` when the candidate search is too large.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, u32)>> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut out = Vec::new();
        for (s, k) in self.squarefree() {
            let mut s = s;
            if s.coeff(0).is_zero() {
                out.push((Rational::zero(), k));
                s = s.exact_div(&Self::x()).expect("x divides");
            }
            if s.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut den = BigInt::one();
            for c in s.coeffs() {
                den = den.lcm(c.denom());
            }
            let ints: Vec<BigInt> = s.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
            let a0 = divisors(&ints[0])?;
            let an = divisors(ints.last().unwrap())?;
            for p in &a0 {
                for q in &an {
                    for sign in [1i64, -1] {
                        let r = Rational::new(p * BigInt::from(sign), q.clone());
                        if s.eval(&r).is_zero() && !out.iter().any(|(x, _)| *x == r) {
                            out.push((r, k));
                        }
                    }
                }
            }
        }
        out.sort();
        Some(out)
    }

    /// Compose: `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Resultant treating `b` as having formal degree `nb` (its actual degree may be lower).
    pub fn resultant_formal(&self, b: &Self, nb: usize) -> Rational {
        let Some(m) = self.degree() else {
            return Rational::zero();
        };
        if m == 0 {
            return self.lc().pow(nb as i32);
        }
        if b.is_zero() {
            return Rational::zero();
        }
        // Res(A, B) = a^(nb - deg R) * (-1)^(m deg R) * Res(R, A), with R = B mod A
        let a = self.lc();
        let r = b.rem(self);
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        let mut acc = a.pow((nb - dr) as i32);
        if (m * dr) % 2 == 1 {
            acc = -acc;
        }
        acc * r.resultant_formal(self, m)
    }

    /// Resultant with both degrees taken as the actual ones.
    pub fn resultant(&self, b: &Self) -> Rational {
        self.resultant_formal(b, b.degree().unwrap_or(0))
    }

    /// Interpolating polynomial through `(i, values[i])` for `i = 0, 1, ...`.
    pub fn interpolate_at_naturals(values: &[Rational]) -> Self {
        let n = values.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / rat(level as i64);
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = acc
                .mul(&Self::from_i64s(&[-(i as i64), 1]))
                .add(&Self::constant(dd[i].clone()));
        }
        acc
    }
}

/// Positive divisors of a nonzero integer, refusing inputs above 10^12.
fn divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_traits::{Signed, ToPrimitive};
    let n = n.abs().to_u64().filter(|&v| v > 0 && v <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(num_bigint::BigInt::from).collect())
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            crate::poly::write_term(f, c, &[("t", e as u32)], first)?;
            first = false;
        }
        Ok(())
    }
}
