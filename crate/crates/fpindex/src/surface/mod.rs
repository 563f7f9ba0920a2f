//! Surface-level bookkeeping: fixed points and periodic curves with their
//! indices, the action on cohomology, and the counting of isolated periodic
//! points through the Lefschetz number.

mod action;
mod spectral;

pub use action::{
    dynamical_degree, growth_bounds, lefschetz_number, torus_lefschetz, CohomologyAction, CohomologyMode, GrowthBound,
    GrowthVerdict, TraceSequence,
};
pub use spectral::{characteristic_polynomial, dominant_real_root, spectral_radius, SpectralRadius};

use crate::error::{Error, Result};
use crate::germ::{iterate, local_index, AnalysisConfig, BranchType, MapGerm};
use crate::poly::Poly2;
use crate::surd::QuadSurd;
use num_integer::Integer;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// A point of a curve at which the curve is `branch = 0` in the chart of `germ`.
#[derive(Clone, Debug)]
pub struct CurveWitness {
    pub point: String,
    pub germ: MapGerm,
    pub branch: Poly2,
}

#[derive(Clone, Debug)]
pub struct FixedCurveRecord {
    pub label: String,
    pub prime_period: u32,
    pub curve_type: BranchType,
    pub nu_c: u32,
    /// Self-intersection `tau_C`.
    pub tau: i64,
    /// Euler characteristic of the normalization; only type I terms use it.
    pub chi: Option<i64>,
    pub fiber_component: bool,
    pub germ_witnesses: Vec<CurveWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Isolation {
    AbsolutelyIsolated,
    ConditionallyIsolated { secondary_period: u32 },
    NonIsolated,
}

#[derive(Clone, Debug)]
pub struct FixedPointRecord {
    pub label: String,
    pub prime_period: u32,
    /// Chart germ of `f^{prime_period}` at the point.
    pub germ: Option<MapGerm>,
    /// Declared `nu_x(f^n)` for the listed `n`.
    pub declared_index: BTreeMap<u32, i64>,
    pub on_curves: Vec<String>,
    pub isolation: Option<Isolation>,
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub points: Vec<FixedPointRecord>,
    pub curves: Vec<FixedCurveRecord>,
    pub action: CohomologyAction,
    pub description: String,
    pub config: AnalysisConfig,
}

impl SurfaceModel {
    pub fn new(
        points: Vec<FixedPointRecord>,
        curves: Vec<FixedCurveRecord>,
        action: CohomologyAction,
        description: impl Into<String>,
    ) -> Result<Self> {
        let labels: BTreeSet<&str> = curves.iter().map(|c| c.label.as_str()).collect();
        if labels.len() != curves.len() {
            return Err(Error::InvalidScenario("duplicate curve label".into()));
        }
        for p in &points {
            if p.prime_period == 0 {
                return Err(Error::InvalidScenario(format!("point {} has period 0", p.label)));
            }
            if let Some(c) = p.on_curves.iter().find(|c| !labels.contains(c.as_str())) {
                return Err(Error::InvalidScenario(format!("point {} refers to unknown curve {c}", p.label)));
            }
            if let Some(Isolation::ConditionallyIsolated { secondary_period: m }) = p.isolation {
                if m <= p.prime_period || m % p.prime_period != 0 {
                    return Err(Error::InvalidScenario(format!(
                        "secondary period of {} must be a strictly larger multiple of its period",
                        p.label
                    )));
                }
            }
        }
        if let Some(c) = curves.iter().find(|c| c.prime_period == 0 || c.nu_c == 0) {
            return Err(Error::InvalidScenario(format!("curve {} needs positive period and index", c.label)));
        }
        Ok(SurfaceModel { points, curves, action, description: description.into(), config: AnalysisConfig::default() })
    }

    pub fn with_config(mut self, config: AnalysisConfig) -> Self {
        self.config = config;
        self
    }

    pub fn curve(&self, label: &str) -> Option<&FixedCurveRecord> {
        self.curves.iter().find(|c| c.label == label)
    }

    /// `P(f)`: the distinct prime periods of curves.
    pub fn curve_periods(&self) -> BTreeSet<u32> {
        self.curves.iter().map(|c| c.prime_period).collect()
    }

    /// `nu_x(f^n)`, from the germ when there is one, otherwise from the declared table.
    pub fn point_index(&self, point: &FixedPointRecord, n: u32) -> Result<i64> {
        let missing = || Error::MissingIndexData(format!("no index for {} at n = {n}", point.label));
        if !n.is_multiple_of(point.prime_period) {
            return Ok(0);
        }
        if let Some(g) = &point.germ {
            let it = iterate(g, n / point.prime_period)?;
            return Ok(local_index(&it, &self.config)?.nu_a as i64);
        }
        point.declared_index.get(&n).copied().ok_or_else(missing)
    }
}

/// `L(f^n)` of the model.
pub fn model_lefschetz(model: &SurfaceModel, n: u32) -> Result<QuadSurd> {
    lefschetz_number(&model.action, n)
}

/// `xi_k` with point indices taken for `f^n`; `n` is a multiple of `k`.
pub fn xi_k_at(model: &SurfaceModel, k: u32, n: u32) -> Result<i64> {
    if !model.curve_periods().contains(&k) {
        return Err(Error::MissingIndexData(format!("no periodic curve of prime period {k}")));
    }
    if !n.is_multiple_of(k) {
        return Err(Error::Precondition(format!("{n} is not a multiple of {k}")));
    }
    let on_k: BTreeSet<&str> =
        model.curves.iter().filter(|c| c.prime_period == k).map(|c| c.label.as_str()).collect();
    let mut sum = 0i64;
    for p in &model.points {
        if p.on_curves.iter().any(|c| on_k.contains(c.as_str())) {
            sum += model.point_index(p, n)?;
        }
    }
    for c in model.curves.iter().filter(|c| c.prime_period == k) {
        sum += c.tau * c.nu_c as i64;
    }
    Ok(sum)
}

/// `xi_k = sum of nu_x(f^k) over points on curves of prime period k + sum of tau_C nu_C`.
pub fn xi_k(model: &SurfaceModel, k: u32) -> Result<i64> {
    xi_k_at(model, k, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: u32,
    pub lefschetz: QuadSurd,
    pub xi: BTreeMap<u32, i64>,
    pub count_isolated: QuadSurd,
    pub growth: Option<GrowthVerdict>,
}

/// `#Per_n = L(f^n) - sum of xi_k over k in P(f) dividing n`.
pub fn count_isolated_periodic(model: &SurfaceModel, n: u32) -> Result<CountReport> {
    if let Some(c) = model.curves.iter().find(|c| c.curve_type == BranchType::TypeI) {
        return Err(Error::TypeICurvePresent(c.label.clone()));
    }
    let lefschetz = model_lefschetz(model, n)?;
    let mut xi = BTreeMap::new();
    for k in model.curve_periods().into_iter().filter(|k| n.is_multiple_of(*k)) {
        xi.insert(k, xi_k(model, k)?);
    }
    let total: i64 = xi.values().sum();
    let count_isolated = lefschetz.sub(&QuadSurd::int(total));
    let growth = growth_bounds(&model.action, n, &count_isolated).ok();
    Ok(CountReport { n, lefschetz, xi, count_isolated, growth })
}

/// `L(f^n)` minus the local side: the declared isolated-point sum, the model's
/// point indices, `chi_C nu_C` over type I curves and `tau_C nu_C` over type II curves.
pub fn saito_residual(model: &SurfaceModel, n: u32, declared_point_sum: i64) -> Result<QuadSurd> {
    let l = model_lefschetz(model, n)?;
    let mut local = declared_point_sum;
    for p in &model.points {
        local += model.point_index(p, n)?;
    }
    for c in model.curves.iter().filter(|c| n.is_multiple_of(c.prime_period)) {
        let weight = match c.curve_type {
            BranchType::TypeI => c
                .chi
                .ok_or_else(|| Error::MissingIndexData(format!("chi of type I curve {}", c.label)))?,
            BranchType::TypeII => c.tau,
        };
        local += weight * c.nu_c as i64;
    }
    Ok(l.sub(&QuadSurd::int(local)))
}

/// Isolation class of every point within periods up to `horizon`.
pub fn partition_isolated_points(model: &SurfaceModel, horizon: u32) -> BTreeMap<String, Isolation> {
    let mut out = BTreeMap::new();
    for p in &model.points {
        let mut class = Isolation::AbsolutelyIsolated;
        let mut secondary: Option<u32> = None;
        for c in p.on_curves.iter().filter_map(|l| model.curve(l)) {
            let m = p.prime_period.lcm(&c.prime_period);
            if m == p.prime_period {
                class = Isolation::NonIsolated;
            } else if m <= horizon {
                secondary = Some(secondary.map_or(m, |s| s.min(m)));
            }
        }
        if class != Isolation::NonIsolated {
            if let Some(m) = secondary {
                class = Isolation::ConditionallyIsolated { secondary_period: m };
            }
        }
        out.insert(p.label.clone(), class);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// A type II curve meets a curve whose period does not divide its own.
    PeriodNotDivisible { type_ii: String, other: String },
    /// Two intersecting type II curves with different periods.
    UnequalTypeIIPeriods { first: String, second: String },
    /// More distinct type II periods than the Picard bound allows.
    TooManyTypeIIPeriods { count: usize, bound: u32 },
    UnknownCurve(String),
}

/// Consistency of a periodic-curve inventory with the intersection and Picard constraints.
pub fn validate_periodic_inventory(model: &SurfaceModel, intersections: &[(String, String)]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (a, b) in intersections {
        let (Some(ca), Some(cb)) = (model.curve(a), model.curve(b)) else {
            for l in [a, b] {
                if model.curve(l).is_none() {
                    out.push(Violation::UnknownCurve(l.clone()));
                }
            }
            continue;
        };
        match (ca.curve_type, cb.curve_type) {
            (BranchType::TypeII, BranchType::TypeII) => {
                if ca.prime_period != cb.prime_period {
                    out.push(Violation::UnequalTypeIIPeriods { first: a.clone(), second: b.clone() });
                }
            }
            (BranchType::TypeII, BranchType::TypeI) | (BranchType::TypeI, BranchType::TypeII) => {
                let (t, o) = if ca.curve_type == BranchType::TypeII { (ca, cb) } else { (cb, ca) };
                if t.prime_period % o.prime_period != 0 {
                    out.push(Violation::PeriodNotDivisible { type_ii: t.label.clone(), other: o.label.clone() });
                }
            }
            _ => {}
        }
    }
    let expanding = dynamical_degree(&model.action)
        .map(|l| l.cmp_rational(&crate::rat(1)) == Ordering::Greater)
        .unwrap_or(false);
    if expanding {
        let periods: BTreeSet<u32> =
            model.curves.iter().filter(|c| c.curve_type == BranchType::TypeII).map(|c| c.prime_period).collect();
        let rho = model.action.picard_number;
        let bound = if model.action.kodaira_nonnegative { rho } else { rho + 1 };
        if periods.len() > bound as usize {
            out.push(Violation::TooManyTypeIIPeriods { count: periods.len(), bound });
        }
    }
    out
}

/// Result of recomputing a curve's data at one witness point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub curve: String,
    pub point: String,
    pub nu_c: u32,
    pub curve_type: BranchType,
    pub agrees: bool,
}

/// Recompute `nu_C` and the type of each curve at each of its witness points.
pub fn check_curve_witnesses(model: &SurfaceModel) -> Result<Vec<WitnessCheck>> {
    let mut out = Vec::new();
    for c in &model.curves {
        for w in &c.germ_witnesses {
            let report = local_index(&w.germ, &model.config)?;
            let b = report.branch(&w.branch).ok_or_else(|| {
                Error::InvalidScenario(format!("{} is not a branch of the germ at {}", w.branch, w.point))
            })?;
            let t = b.branch_type.expect("classified");
            out.push(WitnessCheck {
                curve: c.label.clone(),
                point: w.point.clone(),
                nu_c: b.nu_p,
                curve_type: t,
                agrees: b.nu_p == c.nu_c && t == c.curve_type,
            });
        }
    }
    Ok(out)
}
