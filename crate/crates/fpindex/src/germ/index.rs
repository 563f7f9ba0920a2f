use super::branches::{branches, BranchOverride, BranchRecord, BranchType, ParamKind};
use super::{decompose, delta, AnalysisConfig, GermDecomposition, MapGerm};
use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::series::{Order, TruncatedSeries1, TruncatedSeries2};

/// A 1-form `coeff_dz1 dz1 + coeff_dz2 dz2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialPair {
    pub coeff_dz1: TruncatedSeries2,
    pub coeff_dz2: TruncatedSeries2,
}

/// `h2 dz1 - h1 dz2`.
pub fn omega_sigma(dec: &GermDecomposition, precision: u32) -> Result<DifferentialPair> {
    let (h1, h2) = dec.h_series(precision)?;
    Ok(DifferentialPair { coeff_dz1: h2, coeff_dz2: h1.neg() })
}

/// Local index data of one germ.
#[derive(Clone, Debug)]
pub struct IndexReport {
    pub g: Poly2,
    pub delta: u32,
    pub branches: Vec<BranchRecord>,
    pub nu_a: u32,
    pub precision: u32,
    /// False when the cofactors came from expanded images rather than exact polynomials.
    pub exact_decomposition: bool,
}

impl IndexReport {
    /// The branch with this defining polynomial, if present.
    pub fn branch(&self, p: &Poly2) -> Option<&BranchRecord> {
        self.branches.iter().find(|b| &b.defining_polynomial == p)
    }
}

/// Type, `mu` and `a` of one branch at a single precision.
pub fn classify_branch_at(dec: &GermDecomposition, branch: &BranchRecord, precision: u32) -> Result<BranchRecord> {
    let (h1, h2) = dec.h_series(precision)?;
    let (x, y) = branch.param_at(precision)?;
    let h1c = h1.eval_on(&x, &y)?;
    let h2c = h2.eval_on(&x, &y)?;
    let tau = h2c.mul(&x.derivative()).sub(&h1c.mul(&y.derivative()));
    let (branch_type, a) = if matches!(tau.order(), Order::Finite(_)) {
        (BranchType::TypeI, tau)
    } else {
        // in coordinates (w, s) with the branch at w = 0, a is the dw coefficient along it
        let graph_over_z1 = match &branch.kind {
            ParamKind::GraphOverZ1 => true,
            ParamKind::GraphOverZ2 => false,
            ParamKind::Supplied(px, py) => {
                if *px == Poly1::x() {
                    true
                } else if *py == Poly1::x() {
                    false
                } else {
                    return Err(Error::UnsupportedSingularBranch(format!(
                        "{} is of type II and its parametrization is not smooth",
                        branch.defining_polynomial
                    )));
                }
            }
        };
        (BranchType::TypeII, if graph_over_z1 { h1c.neg() } else { h2c })
    };
    let mu = match a.order() {
        Order::Finite(k) => k,
        Order::AboveDegree(_) => {
            return Err(Error::PrecisionExhausted { low: precision, high: precision });
        }
    };
    let mut out = branch.clone();
    out.parametrization = (x, y);
    out.branch_type = Some(branch_type);
    out.mu_p = Some(mu);
    out.a_series = Some(a);
    Ok(out)
}

/// Classify at the working precision and confirm at the raised one.
pub fn classify_branch(dec: &GermDecomposition, branch: &BranchRecord, config: &AnalysisConfig) -> Result<BranchRecord> {
    let low = classify_branch_at(dec, branch, config.precision)?;
    let high = classify_branch_at(dec, branch, config.certify_precision())?;
    if low.branch_type != high.branch_type || low.mu_p != high.mu_p {
        return Err(Error::PrecisionExhausted { low: config.precision, high: config.certify_precision() });
    }
    Ok(low)
}

/// `nu_A = delta + sum nu_p mu_p` with all components certified.
pub fn local_index(germ: &MapGerm, config: &AnalysisConfig) -> Result<IndexReport> {
    local_index_with(germ, config, &[])
}

/// As [`local_index`], with user-supplied branches for singular factors of `g`.
pub fn local_index_with(germ: &MapGerm, config: &AnalysisConfig, overrides: &[BranchOverride]) -> Result<IndexReport> {
    let dec = decompose(germ)?;
    let delta = delta(&dec, config)?;
    let mut records = Vec::new();
    for b in branches(&dec, overrides, config.precision)? {
        records.push(classify_branch(&dec, &b, config)?);
    }
    let nu_a = delta + records.iter().map(|b| b.nu_p * b.mu_p.unwrap_or(0)).sum::<u32>();
    Ok(IndexReport {
        g: dec.g().clone(),
        delta,
        branches: records,
        nu_a,
        precision: config.precision,
        exact_decomposition: dec.is_exact(),
    })
}

/// `tau_p` of the 1-form along a parametrized branch, exposed for diagnostics.
pub fn restrict_along(form: &DifferentialPair, x: &TruncatedSeries1, y: &TruncatedSeries1) -> Result<TruncatedSeries1> {
    let a = form.coeff_dz1.eval_on(x, y)?;
    let b = form.coeff_dz2.eval_on(x, y)?;
    Ok(a.mul(&x.derivative()).add(&b.mul(&y.derivative())))
}
