//! Sparse bivariate polynomials in `z1`, `z2` over the rationals.

use super::Poly1;
use crate::{rat, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in `z1, z2`, keyed by exponent pair `(e1, e2)`. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: Rational, e1: u32, e2: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        Poly2 { terms }
    }

    /// `z1` for `i == 0`, `z2` for `i == 1`.
    pub fn var(i: usize) -> Self {
        match i {
            0 => Self::monomial(Rational::one(), 1, 0),
            _ => Self::monomial(Rational::one(), 0, 1),
        }
    }

    pub fn z1() -> Self {
        Self::var(0)
    }

    pub fn z2() -> Self {
        Self::var(1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Rational {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// Lowest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| if var == 0 { a } else { b }).max()
    }

    /// Largest power of `z_var` dividing the polynomial (`None` for zero).
    pub fn adic_order(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| if var == 0 { a } else { b }).min()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(a, b), _)| a + b == d)
                .map(|(&e, c)| (e, c.clone())),
        )
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(a, b), _)| a + b <= d)
                .map(|(&e, c)| (e, c.clone())),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.add_term(e, -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, -c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(a1, a2), ca) in &self.terms {
            for (&(b1, b2), cb) in &o.terms {
                *acc.entry((a1 + b1, a2 + b2)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly2 { terms: acc }
    }

    /// Multiply by `z1^a z2^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(&(x, y), c)| ((x + a, y + b), c.clone())).collect(),
        }
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

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in z1 over coefficients evaluated in z2.
        let rows = self.rows_in_z1();
        let mut acc = Rational::zero();
        for row in rows.iter().rev() {
            acc = acc * x + row.eval(y);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| {
            if var == 0 {
                (a > 0).then(|| ((a - 1, b), c * rat(a as i64)))
            } else {
                (b > 0).then(|| ((a, b - 1), c * rat(b as i64)))
            }
        }))
    }

    /// Exchange `z1` and `z2`.
    pub fn swap(&self) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// Substitute `z1 -> p`, `z2 -> q`.
    pub fn substitute(&self, p: &Self, q: &Self) -> Self {
        let rows = self.rows_in_z1();
        if rows.is_empty() {
            return Self::zero();
        }
        let dq = rows.iter().map(|r| r.degree().unwrap_or(0)).max().unwrap_or(0);
        let mut qpow = vec![Self::one()];
        for k in 1..=dq {
            let next = qpow[k - 1].mul(q);
            qpow.push(next);
        }
        let mut acc = Self::zero();
        for row in rows.iter().rev() {
            let mut s = Self::zero();
            for (k, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    s = s.add(&qpow[k].scale(c));
                }
            }
            acc = acc.mul(p).add(&s);
        }
        acc
    }

    /// `p(z1 + a, z2 + b)`.
    pub fn translate(&self, a: &Rational, b: &Rational) -> Self {
        let p = Self::z1().add(&Self::constant(a.clone()));
        let q = Self::z2().add(&Self::constant(b.clone()));
        self.substitute(&p, &q)
    }

    /// Coefficients of `z1^i` as polynomials in `z2` (index `i`).
    pub fn rows_in_z1(&self) -> Vec<Poly1> {
        let Some(d) = self.degree_in(0) else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); d as usize + 1];
        for (&(a, b), c) in &self.terms {
            let r = &mut rows[a as usize];
            if r.len() <= b as usize {
                r.resize(b as usize + 1, Rational::zero());
            }
            r[b as usize] = c.clone();
        }
        rows.into_iter().map(Poly1::new).collect()
    }

    pub fn from_rows_in_z1(rows: &[Poly1]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(a, r)| {
            r.coeffs()
                .iter()
                .enumerate()
                .map(move |(b, c)| ((a as u32, b as u32), c.clone()))
        }))
    }

    /// Embed a univariate polynomial as a polynomial in `z_var`.
    pub fn from_univariate(p: &Poly1, var: usize) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (if var == 0 { (k, 0) } else { (0, k) }, c.clone())
        }))
    }

    /// `p(z1, b)` as a polynomial in `z1`.
    pub fn restrict_z2(&self, b: &Rational) -> Poly1 {
        Poly1::new(self.rows_in_z1().iter().map(|r| r.eval(b)).collect())
    }

    /// `p(a, z2)` as a polynomial in `z2`.
    pub fn restrict_z1(&self, a: &Rational) -> Poly1 {
        self.swap().restrict_z2(a)
    }

    /// Leading coefficient with respect to `z1`, as a polynomial in `z2`.
    pub fn lc_z1(&self) -> Poly1 {
        self.rows_in_z1().pop().unwrap_or_else(Poly1::zero)
    }

    /// Lex-leading term (highest `z1` power, then highest `z2` power).
    fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Exact quotient if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let ((d1, d2), dc) = d.leading().expect("division by zero polynomial");
        if d.num_terms() == 1 {
            let mut q = Self::zero();
            for (&(a, b), c) in &self.terms {
                if a < d1 || b < d2 {
                    return None;
                }
                q.terms.insert((a - d1, b - d2), c / dc);
            }
            return Some(q);
        }
        let dc = dc.clone();
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(((a, b), c)) = r.leading() {
            if a < d1 || b < d2 {
                return None;
            }
            let t = Self::monomial(c / &dc, a - d1, b - d2);
            r = r.sub(&d.mul(&t));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Number of times `p` divides `self`, together with the cofactor.
    pub fn multiplicity_of(&self, p: &Self) -> (u32, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        if p.is_constant() || cur.is_zero() {
            return (0, cur);
        }
        while let Some(q) = cur.exact_div(p) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// Scale so that the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Scale to integer coefficients with content 1 and positive lex-leading coefficient.
    pub fn primitive_integral(&self) -> Self {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading() else {
            return Self::zero();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut s = Rational::new(den, num);
        if lc.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Content with respect to `z1` (a monic polynomial in `z2`).
    pub fn content_z1(&self) -> Poly1 {
        let mut g = Poly1::zero();
        for r in self.rows_in_z1() {
            g = g.gcd(&r);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Greatest common divisor, normalized monic in the lex order.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        // common monomial factor first; what is left is often coprime
        let m1 = self.adic_order(0).unwrap().min(o.adic_order(0).unwrap());
        let m2 = self.adic_order(1).unwrap().min(o.adic_order(1).unwrap());
        if m1 + m2 > 0 {
            let m = Self::monomial(Rational::one(), m1, m2);
            let a = self.exact_div(&m).expect("monomial divides");
            let b = o.exact_div(&m).expect("monomial divides");
            return a.gcd(&b).mul(&m).monic();
        }
        let ca = self.content_z1();
        let cb = o.content_z1();
        let c = ca.gcd(&cb);
        if self.coprime_primitive_parts(o) {
            return Self::from_univariate(&c, 1).monic();
        }
        let mut a = primitive_rows(&self.rows_in_z1(), &ca);
        let mut b = primitive_rows(&o.rows_in_z1(), &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() {
                r
            } else {
                let cr = content_rows(&r);
                primitive_rows(&r, &cr)
            };
        }
        let g = Self::from_rows_in_z1(&a).mul(&Self::from_univariate(&c, 1));
        g.monic()
    }

    /// Sufficient test that the primitive parts in `Q[z2][z1]` are coprime.
    ///
    /// A common factor of positive `z1`-degree survives, with its degree, any
    /// specialization `z2 = c` that keeps both leading coefficients nonzero.
    fn coprime_primitive_parts(&self, o: &Self) -> bool {
        let (la, lb) = (self.lc_z1(), o.lc_z1());
        if self.degree_in(0) == Some(0) || o.degree_in(0) == Some(0) {
            return true;
        }
        // a single value may hit a common root of the specializations by accident
        let mut tries = 0;
        for k in 0..16i64 {
            let c = Rational::from_integer(((k + 1) / 2 * if k % 2 == 1 { 1 } else { -1 }).into());
            if la.eval(&c).is_zero() || lb.eval(&c).is_zero() {
                continue;
            }
            if self.restrict_z2(&c).gcd(&o.restrict_z2(&c)).degree() == Some(0) {
                return true;
            }
            tries += 1;
            if tries == 4 {
                break;
            }
        }
        false
    }

    /// Square-free decomposition `[(s_k, k)]`: `self = c * prod s_k^k` with pairwise coprime square-free `s_k`.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut by_mult: BTreeMap<u32, Self> = BTreeMap::new();
        if self.is_zero() {
            return Vec::new();
        }
        let cont = self.content_z1();
        for (s, k) in cont.squarefree() {
            let e = by_mult.entry(k).or_insert_with(Self::one);
            *e = e.mul(&Self::from_univariate(&s, 1));
        }
        let pp = self
            .exact_div(&Self::from_univariate(&cont, 1))
            .expect("content divides");
        if pp.degree_in(0).unwrap_or(0) > 0 {
            let f = pp.monic();
            let fp = f.derivative(0);
            let a0 = f.gcd(&fp);
            let mut b = f.exact_div(&a0).expect("gcd divides");
            let c = fp.exact_div(&a0).expect("gcd divides");
            let mut d = c.sub(&b.derivative(0));
            let mut i = 1;
            while !b.is_constant() {
                let a = b.gcd(&d);
                let nb = b.exact_div(&a).expect("gcd divides");
                let nc = d.exact_div(&a).expect("gcd divides");
                if !a.is_constant() {
                    let e = by_mult.entry(i).or_insert_with(Self::one);
                    *e = e.mul(&a);
                }
                d = nc.sub(&nb.derivative(0));
                b = nb;
                i += 1;
            }
        }
        by_mult
            .into_iter()
            .map(|(k, s)| (s.monic(), k))
            .filter(|(s, _)| !s.is_constant())
            .collect()
    }

    /// Coefficients as `(e1, e2, value)` in ascending exponent order.
    pub fn to_vec(&self) -> Vec<(u32, u32, Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect()
    }
}

fn content_rows(rows: &[Poly1]) -> Poly1 {
    let mut g = Poly1::zero();
    for r in rows {
        g = g.gcd(r);
    }
    g
}

/// Divide each row by `c` and normalize the overall scalar.
fn primitive_rows(rows: &[Poly1], c: &Poly1) -> Vec<Poly1> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<Poly1> = rows
        .iter()
        .map(|r| r.exact_div(c).expect("content divides"))
        .collect();
    let lead = out.last().map(|r| r.lc()).unwrap_or_else(Rational::one);
    if !lead.is_zero() {
        let inv = Rational::one() / lead;
        out = out.iter().map(|r| r.scale(&inv)).collect();
    }
    out
}

/// Pseudo-remainder of `a` by `b` in `Q[z2][z1]`, rows indexed by the `z1` power.
fn pseudo_rem(a: &[Poly1], b: &[Poly1]) -> Vec<Poly1> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Poly1> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly1> = r.iter().map(|x| x.mul(lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bj.mul(&lr));
        }
        while next.last().is_some_and(|x| x.is_zero()) {
            next.pop();
        }
        r = next;
    }
    r
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| (a + b, std::cmp::Reverse(a)));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            super::write_term(f, &self.terms[&(a, b)], &[("z1", a), ("z2", b)], i == 0)?;
        }
        Ok(())
    }
}

impl From<i64> for Poly2 {
    fn from(c: i64) -> Self {
        Poly2::from_i64(c)
    }
}
