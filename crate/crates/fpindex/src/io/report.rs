use crate::error::Error;
use crate::germ::{BranchRecord, BranchType, IndexReport};
use crate::surd::QuadSurd;
use crate::surface::{
    CountReport, FixedCurveRecord, GrowthBound, Isolation, SpectralRadius, Violation, WitnessCheck,
};
use crate::Rational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(Error::InvalidScenario(format!("unknown format '{other}' (json or table)"))),
        }
    }
}

/// One row of an oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub check: String,
    pub engine: String,
    pub oracle: String,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub enum Report {
    Index { germ: String, n: u32, report: IndexReport },
    Classify { branches: Vec<(String, BranchRecord)>, curves: Vec<FixedCurveRecord> },
    Lefschetz { values: Vec<(u32, QuadSurd)>, lambda: Option<SpectralRadius> },
    Count(Vec<CountReport>),
    Validate {
        violations: Vec<Violation>,
        witnesses: Vec<WitnessCheck>,
        partition: BTreeMap<String, Isolation>,
        residuals: Vec<(u32, QuadSurd)>,
    },
    Verify(Vec<VerifyRow>),
}

/// Integers as JSON numbers, everything else as a string such as `"-3/2"`.
pub fn rational_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(q.to_string())
}

pub fn surd_json(q: &QuadSurd) -> Value {
    match q.as_rational() {
        Some(r) => rational_json(r),
        None => json!(q.to_string()),
    }
}

pub fn spectral_json(s: &SpectralRadius) -> Value {
    match s {
        SpectralRadius::Exact(q) => json!({ "exact": surd_json(q), "approx": q.to_f64().0 }),
        SpectralRadius::Interval { lo, hi } => json!({ "interval": [rational_json(lo), rational_json(hi)] }),
    }
}

fn type_name(t: Option<BranchType>) -> &'static str {
    t.map_or("unclassified", BranchType::name)
}

pub fn branch_json(b: &BranchRecord) -> Value {
    json!({
        "branch": b.defining_polynomial.to_string(),
        "nu": b.nu_p,
        "type": type_name(b.branch_type),
        "mu": b.mu_p,
        "a": b.a_series.as_ref().map(|a| a.to_string()),
    })
}

pub fn index_json(germ: &str, n: u32, r: &IndexReport) -> Value {
    json!({
        "germ": germ,
        "n": n,
        "g": r.g.to_string(),
        "delta": r.delta,
        "branches": r.branches.iter().map(branch_json).collect::<Vec<_>>(),
        "nu_A": r.nu_a,
        "precision": r.precision,
        "exact_decomposition": r.exact_decomposition,
    })
}

pub fn curve_json(c: &FixedCurveRecord) -> Value {
    json!({
        "label": c.label,
        "prime_period": c.prime_period,
        "type": c.curve_type.name(),
        "nu": c.nu_c,
        "tau": c.tau,
        "chi": c.chi,
        "fiber_component": c.fiber_component,
    })
}

pub fn count_json(c: &CountReport) -> Value {
    let xi: serde_json::Map<String, Value> = c.xi.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "n": c.n,
        "lefschetz": surd_json(&c.lefschetz),
        "xi": xi,
        "count_isolated": surd_json(&c.count_isolated),
        "growth": c.growth.as_ref().map(|g| json!({
            "lambda": surd_json(&g.lambda),
            "deviation": surd_json(&g.deviation),
            "bound": match g.bound { GrowthBound::Torus => "torus", GrowthBound::Constant => "constant" },
            "within": g.within,
        })),
    })
}

pub fn isolation_name(i: &Isolation) -> String {
    match i {
        Isolation::AbsolutelyIsolated => "absolute".into(),
        Isolation::ConditionallyIsolated { secondary_period } => format!("conditional({secondary_period})"),
        Isolation::NonIsolated => "non_isolated".into(),
    }
}

pub fn violation_json(v: &Violation) -> Value {
    match v {
        Violation::PeriodNotDivisible { type_ii, other } => {
            json!({ "kind": "PeriodNotDivisible", "type_ii": type_ii, "other": other })
        }
        Violation::UnequalTypeIIPeriods { first, second } => {
            json!({ "kind": "UnequalTypeIIPeriods", "first": first, "second": second })
        }
        Violation::TooManyTypeIIPeriods { count, bound } => {
            json!({ "kind": "TooManyTypeIIPeriods", "count": count, "bound": bound })
        }
        Violation::UnknownCurve(l) => json!({ "kind": "UnknownCurve", "curve": l }),
    }
}

fn violation_text(v: &Violation) -> String {
    match v {
        Violation::PeriodNotDivisible { type_ii, other } => {
            format!("period of {other} does not divide the period of type II curve {type_ii}")
        }
        Violation::UnequalTypeIIPeriods { first, second } => {
            format!("intersecting type II curves {first} and {second} have different periods")
        }
        Violation::TooManyTypeIIPeriods { count, bound } => {
            format!("{count} distinct type II periods exceed the bound {bound}")
        }
        Violation::UnknownCurve(l) => format!("unknown curve {l}"),
    }
}

/// Machine-readable error object.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

impl Report {
    pub fn to_json(&self) -> Value {
        match self {
            Report::Index { germ, n, report } => index_json(germ, *n, report),
            Report::Classify { branches, curves } => json!({
                "branches": branches.iter().map(|(g, b)| {
                    let mut v = branch_json(b);
                    v["germ"] = json!(g);
                    v
                }).collect::<Vec<_>>(),
                "curves": curves.iter().map(curve_json).collect::<Vec<_>>(),
            }),
            Report::Lefschetz { values, lambda } => json!({
                "lefschetz": values.iter().map(|(n, l)| json!({ "n": n, "value": surd_json(l) })).collect::<Vec<_>>(),
                "dynamical_degree": lambda.as_ref().map(spectral_json),
            }),
            Report::Count(rows) => Value::Array(rows.iter().map(count_json).collect()),
            Report::Validate { violations, witnesses, partition, residuals } => json!({
                "violations": violations.iter().map(violation_json).collect::<Vec<_>>(),
                "witnesses": witnesses.iter().map(|w| json!({
                    "curve": w.curve, "point": w.point, "nu": w.nu_c, "type": w.curve_type.name(), "agrees": w.agrees,
                })).collect::<Vec<_>>(),
                "partition": partition.iter().map(|(k, v)| (k.clone(), json!(isolation_name(v)))).collect::<serde_json::Map<_, _>>(),
                "residuals": residuals.iter().map(|(n, r)| json!({ "n": n, "residual": surd_json(r) })).collect::<Vec<_>>(),
                "valid": self.passes(),
            }),
            Report::Verify(rows) => json!({
                "checks": rows.iter().map(|r| json!({
                    "check": r.check, "engine": r.engine, "oracle": r.oracle, "agrees": r.agrees,
                })).collect::<Vec<_>>(),
                "all_agree": self.passes(),
            }),
        }
    }

    pub fn to_table(&self) -> String {
        match self {
            Report::Index { germ, n, report } => {
                let mut out = format!(
                    "germ {germ}  n = {n}\ng = {}\ndelta = {}\nnu_A = {}\n",
                    report.g, report.delta, report.nu_a
                );
                if !report.branches.is_empty() {
                    out.push('\n');
                    out.push_str(&branch_table(report.branches.iter().map(|b| ("", b)), false));
                }
                out
            }
            Report::Classify { branches, curves } => {
                let mut out = String::new();
                if !branches.is_empty() {
                    out = branch_table(branches.iter().map(|(g, b)| (g.as_str(), b)), true);
                }
                if !curves.is_empty() {
                    let rows: Vec<Vec<String>> = curves
                        .iter()
                        .map(|c| {
                            vec![
                                c.label.clone(),
                                c.prime_period.to_string(),
                                c.nu_c.to_string(),
                                c.tau.to_string(),
                                c.curve_type.name().to_string(),
                            ]
                        })
                        .collect();
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(&render_table(&["curve", "period", "nu", "tau", "type"], &rows));
                }
                out
            }
            Report::Lefschetz { values, lambda } => {
                let rows: Vec<Vec<String>> = values.iter().map(|(n, l)| vec![n.to_string(), l.to_string()]).collect();
                let mut out = render_table(&["n", "L(f^n)"], &rows);
                if let Some(l) = lambda {
                    let _ = match l {
                        SpectralRadius::Exact(q) => writeln!(out, "lambda = {q} ~ {:.6}", q.to_f64().0),
                        SpectralRadius::Interval { lo, hi } => writeln!(out, "lambda in [{lo}, {hi}]"),
                    };
                }
                out
            }
            Report::Count(rows) => {
                let rows: Vec<Vec<String>> = rows
                    .iter()
                    .map(|c| {
                        let xi: i64 = c.xi.values().sum();
                        vec![
                            c.n.to_string(),
                            c.lefschetz.to_string(),
                            xi.to_string(),
                            c.count_isolated.to_string(),
                            opt(&c.growth.as_ref().map(|g| if g.within { "within" } else { "outside" })),
                        ]
                    })
                    .collect();
                render_table(&["n", "L(f^n)", "xi", "#Per_n", "growth"], &rows)
            }
            Report::Validate { violations, witnesses, partition, residuals } => {
                let mut out = String::new();
                if violations.is_empty() {
                    out.push_str("no inventory violations\n");
                } else {
                    for v in violations {
                        let _ = writeln!(out, "violation: {}", violation_text(v));
                    }
                }
                if !witnesses.is_empty() {
                    let rows: Vec<Vec<String>> = witnesses
                        .iter()
                        .map(|w| {
                            vec![
                                w.curve.clone(),
                                w.point.clone(),
                                w.nu_c.to_string(),
                                w.curve_type.name().to_string(),
                                if w.agrees { "yes" } else { "NO" }.to_string(),
                            ]
                        })
                        .collect();
                    out.push('\n');
                    out.push_str(&render_table(&["curve", "witness", "nu", "type", "agrees"], &rows));
                }
                if !partition.is_empty() {
                    let rows: Vec<Vec<String>> =
                        partition.iter().map(|(k, v)| vec![k.clone(), isolation_name(v)]).collect();
                    out.push('\n');
                    out.push_str(&render_table(&["point", "isolation"], &rows));
                }
                for (n, r) in residuals {
                    let _ = writeln!(out, "\nresidual at n = {n}: {r}");
                }
                out
            }
            Report::Verify(rows) => {
                let table: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![r.check.clone(), r.engine.clone(), r.oracle.clone(), if r.agrees { "yes" } else { "NO" }.into()]
                    })
                    .collect();
                render_table(&["check", "engine", "oracle", "agrees"], &table)
            }
        }
    }

    /// False when a validation or verification found a problem.
    pub fn passes(&self) -> bool {
        match self {
            Report::Validate { violations, witnesses, residuals, .. } => {
                violations.is_empty() && witnesses.iter().all(|w| w.agrees) && residuals.iter().all(|(_, r)| r.is_zero())
            }
            Report::Verify(rows) => rows.iter().all(|r| r.agrees),
            _ => true,
        }
    }
}

fn branch_table<'a>(it: impl Iterator<Item = (&'a str, &'a BranchRecord)>, with_germ: bool) -> String {
    let mut rows = Vec::new();
    for (g, b) in it {
        let mut r = vec![
            b.defining_polynomial.to_string(),
            b.nu_p.to_string(),
            type_name(b.branch_type).to_string(),
            opt(&b.mu_p),
        ];
        if with_germ {
            r.insert(0, g.to_string());
        }
        rows.push(r);
    }
    let headers: &[&str] = if with_germ { &["germ", "branch", "nu", "type", "mu"] } else { &["branch", "nu", "type", "mu"] };
    render_table(headers, &rows)
}

/// Render a report; JSON keys come out sorted.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => report.to_table(),
    }
}
