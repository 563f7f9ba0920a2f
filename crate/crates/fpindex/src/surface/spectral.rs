use crate::poly::Poly1;
use crate::surd::QuadSurd;
use crate::{rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Spectral radius: exact when the dominant root has degree at most two, otherwise bracketed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralRadius {
    Exact(QuadSurd),
    Interval { lo: Rational, hi: Rational },
}

impl SpectralRadius {
    pub fn exact(&self) -> Option<&QuadSurd> {
        match self {
            SpectralRadius::Exact(q) => Some(q),
            SpectralRadius::Interval { .. } => None,
        }
    }

    /// `Greater` when certainly above `x`, `Less` when certainly below, `Equal` when undecided or equal.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        match self {
            SpectralRadius::Exact(q) => q.cmp_real(&QuadSurd::rational(x.clone())),
            SpectralRadius::Interval { lo, hi } => {
                if lo > x {
                    Ordering::Greater
                } else if hi < x {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SpectralRadius::Exact(q) => q.to_f64().0,
            SpectralRadius::Interval { lo, hi } => ((lo + hi) / rat(2)).to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
pub fn characteristic_polynomial(m: &[Vec<Rational>]) -> Poly1 {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &next);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / rat(k as i64);
        mk = next;
    }
    Poly1::new(coeffs)
}

pub(crate) fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let p = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

fn sturm_sequence(p: &Poly1) -> Vec<Poly1> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last().filter(|q| !q.is_zero()) {
        let r = seq[seq.len() - 2].rem(last).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[Poly1], x: &Rational) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|q| q.eval(x).cmp(&Rational::zero()))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Disjoint intervals `(lo, hi]`, each holding one real root of the squarefree `p`.
fn isolate_real_roots(p: &Poly1) -> Vec<(Rational, Rational)> {
    let seq = sturm_sequence(p);
    let lc = p.lc();
    let bound = Rational::one() + p.coeffs().iter().map(|c| (c / &lc).abs()).max().unwrap_or_default();
    let mut todo = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = todo.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / rat(2);
                todo.push((a, mid.clone()));
                todo.push((mid, b));
            }
        }
    }
    out.sort();
    out
}

/// Shrink an isolating interval of a squarefree polynomial below `width`.
fn refine(p: &Poly1, (mut a, mut b): (Rational, Rational), width: &Rational) -> (Rational, Rational) {
    if p.eval(&b).is_zero() {
        return (b.clone(), b);
    }
    while &(&b - &a) > width {
        let mid = (&a + &b) / rat(2);
        let fm = p.eval(&mid);
        if fm.is_zero() {
            return (mid.clone(), mid);
        }
        if (fm.is_positive()) == (p.eval(&b).is_positive()) {
            b = mid;
        } else {
            a = mid;
        }
    }
    (a, b)
}

fn squarefree_part(p: &Poly1) -> Poly1 {
    p.squarefree().into_iter().fold(Poly1::one(), |acc, (s, _)| acc.mul(&s))
}

/// Largest modulus among the real roots of `p`.
///
/// Pullbacks of algebraically stable maps preserve the nef cone, so their
/// spectral radius is itself an eigenvalue; complex roots are not examined.
pub fn dominant_real_root(p: &Poly1) -> Option<SpectralRadius> {
    let s = squarefree_part(p);
    if s.degree().unwrap_or(0) == 0 {
        return None;
    }
    let lc = s.lc();
    let bound = Rational::one() + s.coeffs().iter().map(|c| (c / &lc).abs()).max().unwrap_or_default();
    // integer content bound on the denominators of monic factors
    let mut den = BigInt::one();
    for c in s.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = s.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let width = Rational::one() / (Rational::from_integer(lead.clone()) * (bound.clone() * rat(2) + rat(2)) * rat(8));
    let roots: Vec<(Rational, Rational)> = isolate_real_roots(&s).into_iter().map(|iv| refine(&s, iv, &width)).collect();
    let mag = |iv: &(Rational, Rational)| ((&iv.0 + &iv.1) / rat(2)).abs();
    let (idx, dom) = roots.iter().enumerate().max_by(|x, y| {
        mag(x.1).cmp(&mag(y.1)).then_with(|| x.1 .0.cmp(&y.1 .0))
    })?;
    let negative = dom.1 <= Rational::zero();
    let flip = |q: QuadSurd| if negative { q.neg() } else { q };
    if dom.0 == dom.1 {
        return Some(SpectralRadius::Exact(flip(QuadSurd::rational(dom.0.clone()))));
    }
    if let Some(rs) = s.rational_roots() {
        if let Some((q, _)) = rs.iter().find(|(q, _)| *q > dom.0 && *q <= dom.1) {
            return Some(SpectralRadius::Exact(flip(QuadSurd::rational(q.clone()))));
        }
    }
    let lead_q = Rational::from_integer(lead);
    let round = |x: Rational| -> Rational { (x * &lead_q).round() / &lead_q };
    for (j, other) in roots.iter().enumerate() {
        if j == idx {
            continue;
        }
        let m1 = (&dom.0 + &dom.1) / rat(2);
        let m2 = (&other.0 + &other.1) / rat(2);
        let sigma = round(&m1 + &m2);
        let pi = round(&m1 * &m2);
        let quad = Poly1::new(vec![pi.clone(), -sigma.clone(), Rational::one()]);
        if !s.rem(&quad).is_zero() {
            continue;
        }
        let disc = &sigma * &sigma - &pi * rat(4);
        // sqrt(disc) = sqrt(num * den) / den
        let (n, d) = (disc.numer().clone(), disc.denom().clone());
        let Some(radicand) = (n * &d).to_i64() else { continue };
        let half = Rational::new(BigInt::one(), d * 2);
        let root = QuadSurd::new(Rational::zero(), half, radicand);
        let centre = QuadSurd::rational(&sigma / rat(2));
        let r = if m1 > m2 { centre.add(&root) } else { centre.sub(&root) };
        return Some(SpectralRadius::Exact(flip(r)));
    }
    let (lo, hi) = if negative { (-dom.1.clone(), -dom.0.clone()) } else { dom.clone() };
    Some(SpectralRadius::Interval { lo, hi })
}

/// Spectral radius of a square rational matrix, from its largest real eigenvalue.
pub fn spectral_radius(m: &[Vec<Rational>]) -> Option<SpectralRadius> {
    dominant_real_root(&characteristic_polynomial(m))
}
