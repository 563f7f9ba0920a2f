use super::spectral::{dominant_real_root, mat_mul, spectral_radius, SpectralRadius};
use crate::error::{Error, Result};
use crate::poly::Poly1;
use crate::surd::{common_field, QuadSurd};
use crate::{rat, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Values `t_n` for `n = 1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceSequence {
    Constant(Rational),
    /// `t_1, t_2, ...`; asking past the end is an error.
    Listed(Vec<Rational>),
    /// `t_n = s_n + offset` with `s_n = c_1 s_(n-1) + ... + c_k s_(n-k)` and `s_0 .. s_(k-1)` given.
    Recurrence { coefficients: Vec<Rational>, initial: Vec<Rational>, offset: Rational },
}

impl TraceSequence {
    pub fn value(&self, n: u32) -> Result<Rational> {
        match self {
            TraceSequence::Constant(c) => Ok(c.clone()),
            TraceSequence::Listed(v) => v
                .get(n as usize - 1)
                .cloned()
                .ok_or_else(|| Error::MissingIndexData(format!("no listed trace for n = {n}"))),
            TraceSequence::Recurrence { coefficients, initial, offset } => {
                let k = coefficients.len();
                let mut s = initial.clone();
                while s.len() <= n as usize {
                    let next: Rational = (0..k).map(|i| &coefficients[i] * &s[s.len() - 1 - i]).sum();
                    s.push(next);
                }
                Ok(&s[n as usize] + offset)
            }
        }
    }

    /// `x^k - c_1 x^(k-1) - ... - c_k` for a recurrence.
    pub fn characteristic_polynomial(&self) -> Option<Poly1> {
        let TraceSequence::Recurrence { coefficients, .. } = self else { return None };
        let k = coefficients.len();
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        for (i, ci) in coefficients.iter().enumerate() {
            c[k - 1 - i] = -ci.clone();
        }
        Some(Poly1::new(c))
    }
}

/// How the map acts on cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyMode {
    /// Only `H^{1,1}` carries a nontrivial action, given by `matrix`.
    H1Trivial { matrix: Vec<Vec<Rational>> },
    /// `matrix` on `H^{1,1}` and the scalar `delta` on `H^{2,0}`.
    K3 { matrix: Vec<Vec<Rational>>, hodge_scalar: QuadSurd },
    /// Complex torus with `f^*` on `H^{1,0}` having eigenvalues `delta`, `epsilon / delta`.
    Torus { delta: QuadSurd, epsilon: QuadSurd },
    /// Traces `t_n^{i,j}` of `(f^n)^*` on `H^{i,j}`; missing entries are zero.
    ExplicitTraces { traces: BTreeMap<(u8, u8), TraceSequence> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyAction {
    pub mode: CohomologyMode,
    pub picard_number: u32,
    /// User assertion; indeterminacy orbits are not checked.
    pub algebraically_stable: bool,
    pub kodaira_nonnegative: bool,
    /// Constant `B` in `|count - lambda^n| <= B`; the torus bound has its own.
    pub growth_constant: Option<Rational>,
}

impl CohomologyAction {
    pub fn new(mode: CohomologyMode, picard_number: u32, algebraically_stable: bool, kodaira_nonnegative: bool) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidScenario(m.into()));
        if picard_number == 0 {
            return bad("Picard number must be positive");
        }
        match &mode {
            CohomologyMode::H1Trivial { matrix } | CohomologyMode::K3 { matrix, .. } => {
                if matrix.is_empty() || matrix.iter().any(|r| r.len() != matrix.len()) {
                    return bad("action matrix must be square and nonempty");
                }
                if matrix.len() > picard_number as usize {
                    return bad("action matrix is larger than the Picard number");
                }
            }
            CohomologyMode::Torus { delta, epsilon } => {
                common_field(&[delta, epsilon])?;
                if epsilon.abs_sq() != QuadSurd::one() {
                    return bad("epsilon must have modulus one");
                }
                if delta.abs_sq().cmp_real(&QuadSurd::one()) == Ordering::Less {
                    return bad("delta must have modulus at least one");
                }
            }
            CohomologyMode::ExplicitTraces { traces } => {
                if traces.keys().any(|&(i, j)| i > 2 || j > 2) {
                    return bad("trace indices must lie in 0..=2");
                }
            }
        }
        Ok(CohomologyAction { mode, picard_number, algebraically_stable, kodaira_nonnegative, growth_constant: None })
    }

    pub fn with_growth_constant(mut self, b: Rational) -> Self {
        self.growth_constant = Some(b);
        self
    }

    fn require_as(&self) -> Result<()> {
        if self.algebraically_stable {
            Ok(())
        } else {
            Err(Error::NotAlgebraicallyStable)
        }
    }
}

fn trace_of_power(m: &[Vec<Rational>], n: u32) -> Rational {
    let size = m.len();
    let mut acc: Vec<Vec<Rational>> =
        (0..size).map(|i| (0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut base = m.to_vec();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    (0..size).map(|i| acc[i][i].clone()).sum()
}

/// Alternating sum of Hodge traces for a torus: `f^*` on `H^{1,0}` has eigenvalues `delta` and `epsilon / delta`.
pub fn torus_lefschetz(delta: &QuadSurd, epsilon: &QuadSurd, n: u32) -> QuadSurd {
    let n = n as i32;
    let dn = delta.pow(n);
    let dmn = delta.pow(-n);
    let en = epsilon.pow(n);
    let abs2n = delta.abs_sq().pow(n);
    let ratio = delta.conj().div(delta).pow(n);
    let one = QuadSurd::one();
    let inner = one.add(&en.conj()).mul(&dn)
        .add(&one.add(&en).mul(&dmn))
        .sub(&en.mul(&one.add(&ratio)));
    let two_re = inner.add(&inner.conj());
    abs2n.add(&abs2n.inv()).add(&QuadSurd::int(2)).sub(&two_re)
}

/// `L(f^n)`.
pub fn lefschetz_number(action: &CohomologyAction, n: u32) -> Result<QuadSurd> {
    action.require_as()?;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    Ok(match &action.mode {
        CohomologyMode::H1Trivial { matrix } => QuadSurd::rational(trace_of_power(matrix, n) + rat(2)),
        CohomologyMode::K3 { matrix, hodge_scalar } => {
            let dn = hodge_scalar.pow(n as i32);
            QuadSurd::rational(trace_of_power(matrix, n) + rat(2)).add(&dn).add(&dn.conj())
        }
        CohomologyMode::Torus { delta, epsilon } => torus_lefschetz(delta, epsilon, n),
        CohomologyMode::ExplicitTraces { traces } => {
            let mut acc = Rational::zero();
            for (&(i, j), seq) in traces {
                let v = seq.value(n)?;
                acc += if (i + j) % 2 == 0 { v } else { -v };
            }
            QuadSurd::rational(acc)
        }
    })
}

/// First dynamical degree `lambda(f)`.
pub fn dynamical_degree(action: &CohomologyAction) -> Result<SpectralRadius> {
    action.require_as()?;
    let none = || Error::Precondition("action has no real eigenvalue".into());
    match &action.mode {
        CohomologyMode::H1Trivial { matrix } | CohomologyMode::K3 { matrix, .. } => spectral_radius(matrix).ok_or_else(none),
        CohomologyMode::Torus { delta, .. } => Ok(SpectralRadius::Exact(delta.abs_sq())),
        CohomologyMode::ExplicitTraces { traces } => {
            let p = traces
                .get(&(1, 1))
                .and_then(TraceSequence::characteristic_polynomial)
                .ok_or_else(|| Error::Precondition("the H^{1,1} traces are not given by a recurrence".into()))?;
            dominant_real_root(&p).ok_or_else(none)
        }
    }
}

/// Which growth estimate was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthBound {
    /// `|count - lambda^n| < 4 lambda^(n/2) + 11`.
    Torus,
    /// `|count - lambda^n| <= B` with the declared constant.
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthVerdict {
    pub n: u32,
    pub lambda: QuadSurd,
    pub deviation: QuadSurd,
    pub bound: GrowthBound,
    pub within: bool,
}

/// Compare `count` with `lambda^n` under the estimate that applies to the action.
pub fn growth_bounds(action: &CohomologyAction, n: u32, count: &QuadSurd) -> Result<GrowthVerdict> {
    let lambda = dynamical_degree(action)?;
    let lambda = lambda
        .exact()
        .cloned()
        .ok_or_else(|| Error::Precondition("dynamical degree is not a quadratic surd".into()))?;
    if lambda.cmp_real(&QuadSurd::one()) != Ordering::Greater {
        return Err(Error::Precondition("growth bounds need lambda > 1".into()));
    }
    common_field(&[&lambda, count])?;
    let ln = lambda.pow(n as i32);
    let deviation = count.sub(&ln).abs_real();
    let (bound, within) = match (&action.mode, &action.growth_constant) {
        (CohomologyMode::Torus { .. }, _) => {
            // |X| < 4 Y + 11 with Y = lambda^(n/2) >= 0, decided by squaring
            let slack = deviation.sub(&QuadSurd::int(11));
            let within = slack.signum() == Ordering::Less
                || slack.mul(&slack).cmp_real(&ln.scale(&rat(16))) == Ordering::Less;
            (GrowthBound::Torus, within)
        }
        (_, Some(b)) => (GrowthBound::Constant, deviation.cmp_real(&QuadSurd::rational(b.clone())) != Ordering::Greater),
        (_, None) => return Err(Error::Precondition("no growth constant declared for this action".into())),
    };
    Ok(GrowthVerdict { n, lambda, deviation, bound, within })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn golden() -> QuadSurd {
        QuadSurd::new(ratio(3, 2), ratio(1, 2), 5)
    }

    fn torus(delta: QuadSurd, eps: QuadSurd) -> CohomologyAction {
        CohomologyAction::new(CohomologyMode::Torus { delta, epsilon: eps }, 4, true, true).unwrap()
    }

    fn cubic_traces() -> CohomologyAction {
        let mut traces = BTreeMap::new();
        traces.insert((0, 0), TraceSequence::Constant(rat(1)));
        traces.insert((2, 2), TraceSequence::Constant(rat(1)));
        traces.insert(
            (1, 1),
            TraceSequence::Recurrence { coefficients: vec![rat(18), rat(-1)], initial: vec![rat(2), rat(18)], offset: rat(4) },
        );
        CohomologyAction::new(CohomologyMode::ExplicitTraces { traces }, 7, true, false).unwrap().with_growth_constant(rat(2))
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(lefschetz_number(&torus(golden(), QuadSurd::one()), 1).unwrap(), QuadSurd::one());
        let id = CohomologyAction::new(CohomologyMode::H1Trivial { matrix: vec![vec![rat(1)]] }, 1, true, false).unwrap();
        assert_eq!(lefschetz_number(&id, 5).unwrap(), QuadSurd::int(3));
        assert_eq!(lefschetz_number(&cubic_traces(), 1).unwrap(), QuadSurd::int(24));
        assert_eq!(lefschetz_number(&cubic_traces(), 2).unwrap(), QuadSurd::int(328));
        let mut bad = id.clone();
        bad.algebraically_stable = false;
        assert_eq!(lefschetz_number(&bad, 1), Err(Error::NotAlgebraicallyStable));
    }

    #[test]
    fn k3_mode_adds_hodge_terms() {
        let i = QuadSurd::sqrt(-1);
        let a = CohomologyAction::new(CohomologyMode::K3 { matrix: vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]], hodge_scalar: i }, 20, true, true).unwrap();
        // trace 3, i + (-i) = 0
        assert_eq!(lefschetz_number(&a, 1).unwrap(), QuadSurd::int(5));
        // trace 7, -1 + -1
        assert_eq!(lefschetz_number(&a, 2).unwrap(), QuadSurd::int(7));
    }

    #[test]
    fn degrees() {
        let m = CohomologyAction::new(CohomologyMode::H1Trivial { matrix: vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]] }, 2, true, false).unwrap();
        assert_eq!(dynamical_degree(&m).unwrap(), SpectralRadius::Exact(golden()));
        assert_eq!(dynamical_degree(&torus(golden(), QuadSurd::one())).unwrap(), SpectralRadius::Exact(golden().pow(2)));
        let id = CohomologyAction::new(CohomologyMode::H1Trivial { matrix: vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]] }, 2, true, false).unwrap();
        assert_eq!(dynamical_degree(&id).unwrap(), SpectralRadius::Exact(QuadSurd::one()));
        assert_eq!(dynamical_degree(&cubic_traces()).unwrap(), SpectralRadius::Exact(QuadSurd::new(rat(9), rat(4), 5)));
    }

    #[test]
    fn growth() {
        let t = torus(golden(), QuadSurd::one());
        let l4 = lefschetz_number(&t, 4).unwrap();
        let v = growth_bounds(&t, 4, &l4).unwrap();
        assert!(v.within);
        assert_eq!(v.bound, GrowthBound::Torus);
        let id = CohomologyAction::new(CohomologyMode::H1Trivial { matrix: vec![vec![rat(1)]] }, 1, true, false).unwrap().with_growth_constant(rat(5));
        assert!(matches!(growth_bounds(&id, 1, &QuadSurd::int(3)), Err(Error::Precondition(_))));
        let c = cubic_traces();
        assert!(growth_bounds(&c, 1, &QuadSurd::int(16)).unwrap().within);
        assert!(!growth_bounds(&c, 1, &QuadSurd::int(20)).unwrap().within);
    }

    #[test]
    fn torus_invariants_checked() {
        let small = CohomologyMode::Torus { delta: QuadSurd::rational(ratio(1, 2)), epsilon: QuadSurd::one() };
        assert!(CohomologyAction::new(small, 4, true, true).is_err());
        let not_unit = CohomologyMode::Torus { delta: golden(), epsilon: QuadSurd::int(2) };
        assert!(CohomologyAction::new(not_unit, 4, true, true).is_err());
        let mixed = CohomologyMode::Torus { delta: golden(), epsilon: QuadSurd::sqrt(-1) };
        assert_eq!(CohomologyAction::new(mixed, 4, true, true), Err(Error::FieldMismatch));
    }
}
