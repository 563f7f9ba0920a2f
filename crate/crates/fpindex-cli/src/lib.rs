//! Command-line surface of `fpindex`, callable in-process through [`run_command`].

use clap::{Args, Parser, Subcommand};
use fpindex::germ::{delta, decompose, delta_resultant, iterate, local_index_with, BranchType, IndexReport};
use fpindex::io::{emit_report, error_json, fixture, parse_scenario, Format, GermEntry, Report, Scenario, VerifyRow};
use fpindex::oracle::{curve_point_multiplicity, fixed_multiplicity, torus_lefschetz_oracle};
use fpindex::surface::{
    check_curve_witnesses, count_isolated_periodic, dynamical_degree, lefschetz_number, partition_isolated_points,
    saito_residual, validate_periodic_inventory, CohomologyMode,
};
use fpindex::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "fpindex", version, about = "Fixed-point indices, fixed-curve types and periodic-point counts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Working series precision (results are confirmed at precision + 4).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Output format: json or table.
    #[arg(long, global = true, default_value = "table")]
    format: String,
    /// Use a bundled scenario: remark42, remark43 or cubic-d4.
    #[arg(long, global = true)]
    fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local index of one germ, or of its n-th iterate.
    Index {
        scenario: Option<String>,
        #[arg(long)]
        germ: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Branch table of every germ, and the fixed curves of the model.
    Classify {
        scenario: Option<String>,
        #[arg(long)]
        germ: Option<String>,
    },
    /// Lefschetz numbers of the cohomology action.
    Lefschetz {
        scenario: Option<String>,
        #[arg(long, default_value = "1..6")]
        n_range: String,
    },
    /// Isolated periodic point counts.
    Count {
        scenario: Option<String>,
        #[arg(long, default_value = "1..6")]
        n_range: String,
    },
    /// Inventory constraints, curve witnesses, isolation classes and residuals.
    Validate {
        scenario: Option<String>,
        /// Periods considered when classifying isolation.
        #[arg(long, default_value_t = 12)]
        horizon: u32,
    },
    /// Compare the engine with the elimination oracle.
    Verify {
        scenario: Option<String>,
        /// Largest iterate checked at each germ.
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
}

/// Inclusive range `a..b`; `a > b` is empty.
pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || Error::InvalidScenario(format!("range '{s}' must look like 1..6"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a == 0 && b > 0 {
        return Err(Error::InvalidScenario("iterates start at 1".into()));
    }
    Ok(a..=b)
}

fn load(scenario: Option<&str>, global: &Global) -> Result<Scenario> {
    let mut s = match (scenario, global.fixture.as_deref()) {
        (Some(_), Some(_)) => return Err(Error::InvalidScenario("give a scenario file or --fixture, not both".into())),
        (None, Some(f)) => fixture(f)?,
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidScenario(format!("cannot read {path}: {e}")))?;
            parse_scenario(&text)?
        }
        (None, None) => return Err(Error::InvalidScenario("no scenario: give a file or --fixture".into())),
    };
    if let Some(p) = global.precision {
        if p < 2 {
            return Err(Error::InvalidScenario("precision must be at least 2".into()));
        }
        s.set_precision(p);
    }
    Ok(s)
}

fn index_of(entry: &GermEntry, n: u32, s: &Scenario) -> Result<IndexReport> {
    if n == 0 {
        return Err(Error::InvalidScenario("n must be positive".into()));
    }
    let germ = if n == 1 { entry.germ.clone() } else { iterate(&entry.germ, n)? };
    local_index_with(&germ, &s.config(), &entry.overrides)
}

fn verify(s: &Scenario, depth: u32) -> Result<Vec<VerifyRow>> {
    let mut rows = Vec::new();
    let row = |check: String, engine: String, oracle: String| {
        let agrees = engine == oracle;
        VerifyRow { check, engine, oracle, agrees }
    };
    for (label, entry) in &s.germs {
        let dec = decompose(&entry.germ)?;
        rows.push(row(
            format!("delta {label}"),
            delta(&dec, &s.config())?.to_string(),
            delta_resultant(&dec)?.to_string(),
        ));
        let Some(src) = &entry.source else { continue };
        for n in 1..=depth.max(1) {
            let r = index_of(entry, n, s)?;
            let power = src.power * n;
            let point = (&src.point.0, &src.point.1);
            let oracle = if r.branches.is_empty() {
                fixed_multiplicity(&src.map, point, power)?
            } else if r.branches.iter().all(|b| b.branch_type == Some(BranchType::TypeI)) {
                let (a, b) = (-src.point.0.clone(), -src.point.1.clone());
                let curves: Vec<_> = r.branches.iter().map(|br| br.defining_polynomial.translate(&a, &b)).collect();
                curve_point_multiplicity(&src.map, point, power, &curves)?
            } else {
                // no elimination oracle for type II branches
                continue;
            };
            rows.push(row(format!("nu {label} n={n}"), r.nu_a.to_string(), oracle.to_string()));
        }
    }
    if let Some(m) = &s.model {
        if let CohomologyMode::Torus { delta, epsilon } = &m.action.mode {
            for n in 1..=6 {
                rows.push(row(
                    format!("lefschetz n={n}"),
                    lefschetz_number(&m.action, n)?.to_string(),
                    torus_lefschetz_oracle(delta, epsilon, n)?.to_string(),
                ));
            }
        }
        for (&n, &declared) in &s.declared_isolated {
            let c = count_isolated_periodic(m, n)?;
            rows.push(row(format!("count n={n}"), c.count_isolated.to_string(), declared.to_string()));
        }
    }
    Ok(rows)
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Index { scenario, germ, n } => {
            let s = load(scenario.as_deref(), g)?;
            let (label, entry) = s.germ(germ.as_deref())?;
            Ok(Report::Index { germ: label.to_string(), n: *n, report: index_of(entry, *n, &s)? })
        }
        Command::Classify { scenario, germ } => {
            let s = load(scenario.as_deref(), g)?;
            let labels: Vec<&str> = match germ {
                Some(l) => vec![s.germ(Some(l))?.0],
                None => s.germs.keys().map(String::as_str).collect(),
            };
            let mut branches = Vec::new();
            for l in labels {
                let entry = &s.germs[l];
                for b in index_of(entry, 1, &s)?.branches {
                    branches.push((l.to_string(), b));
                }
            }
            let curves = s.model.as_ref().map(|m| m.curves.clone()).unwrap_or_default();
            Ok(Report::Classify { branches, curves })
        }
        Command::Lefschetz { scenario, n_range } => {
            let s = load(scenario.as_deref(), g)?;
            let m = s.model()?;
            let values = parse_range(n_range)?.map(|n| Ok((n, lefschetz_number(&m.action, n)?))).collect::<Result<_>>()?;
            Ok(Report::Lefschetz { values, lambda: dynamical_degree(&m.action).ok() })
        }
        Command::Count { scenario, n_range } => {
            let s = load(scenario.as_deref(), g)?;
            let m = s.model()?;
            let rows = parse_range(n_range)?.map(|n| count_isolated_periodic(m, n)).collect::<Result<_>>()?;
            Ok(Report::Count(rows))
        }
        Command::Validate { scenario, horizon } => {
            let s = load(scenario.as_deref(), g)?;
            let m = s.model()?;
            let mut residuals = Vec::new();
            for (&n, &declared) in &s.declared_isolated {
                residuals.push((n, saito_residual(m, n, declared)?));
            }
            Ok(Report::Validate {
                violations: validate_periodic_inventory(m, &s.intersections),
                witnesses: check_curve_witnesses(m)?,
                partition: partition_isolated_points(m, *horizon),
                residuals,
            })
        }
        Command::Verify { scenario, n } => {
            let s = load(scenario.as_deref(), g)?;
            Ok(Report::Verify(verify(&s, *n)?))
        }
    }
}

fn failure(e: &Error, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&error_json(e)).expect("values serialize")),
        Format::Table => format!("error [{}]: {e}\n", e.kind()),
    }
}

/// Run one invocation. `argv` excludes the program name.
///
/// Exit code 0 on success, 1 for a domain error or a failed check, 2 for bad
/// input. Errors are reported as `{"error": {"kind", "message"}}` in JSON mode.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let args = std::iter::once("fpindex").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let err = Error::InvalidScenario(e.to_string().lines().next().unwrap_or("bad arguments").to_string());
            let json = argv.iter().any(|a| a.as_ref() == "json");
            return (2, failure(&err, if json { Format::Json } else { Format::Table }));
        }
    };
    let format: Format = match cli.global.format.parse() {
        Ok(f) => f,
        Err(e) => return (2, failure(&e, Format::Json)),
    };
    match execute(&cli) {
        Ok(report) => (if report.passes() { 0 } else { 1 }, emit_report(&report, format)),
        Err(e) => (if e.is_input_error() { 2 } else { 1 }, failure(&e, format)),
    }
}
