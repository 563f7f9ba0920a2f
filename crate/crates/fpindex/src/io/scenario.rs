use super::expr::{parse_expression, parse_univariate};
use crate::error::{Error, Result};
use crate::form::FormGerm;
use crate::germ::{AnalysisConfig, BranchOverride, BranchType, MapGerm};
use crate::oracle::PolynomialMap;
use crate::poly::Poly2;
use crate::surd::QuadSurd;
use crate::surface::{
    CohomologyAction, CohomologyMode, CurveWitness, FixedCurveRecord, FixedPointRecord, Isolation, SurfaceModel,
    TraceSequence,
};
use crate::Rational;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

/// Where a germ came from, when it is the chart of a global map.
#[derive(Clone, Debug)]
pub struct GermSource {
    pub map: PolynomialMap,
    pub point: (Rational, Rational),
    /// The germ is the chart of `f^power`.
    pub power: u32,
}

#[derive(Clone, Debug)]
pub struct GermEntry {
    pub germ: MapGerm,
    pub overrides: Vec<BranchOverride>,
    pub source: Option<GermSource>,
}

/// A parsed scenario document.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub description: String,
    pub precision: Option<u32>,
    pub default_germ: Option<String>,
    pub maps: BTreeMap<String, PolynomialMap>,
    pub germs: BTreeMap<String, GermEntry>,
    pub forms: BTreeMap<String, FormGerm>,
    pub model: Option<SurfaceModel>,
    pub intersections: Vec<(String, String)>,
    /// Declared number of isolated periodic points, by `n`.
    pub declared_isolated: BTreeMap<u32, i64>,
}

impl Scenario {
    pub fn config(&self) -> AnalysisConfig {
        self.precision.map(AnalysisConfig::new).unwrap_or_default()
    }

    pub fn germ(&self, label: Option<&str>) -> Result<(&str, &GermEntry)> {
        let label = match label.or(self.default_germ.as_deref()) {
            Some(l) => l,
            None => self
                .germs
                .keys()
                .next()
                .ok_or_else(|| Error::InvalidScenario("scenario has no germs".into()))?,
        };
        self.germs
            .get_key_value(label)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Error::InvalidScenario(format!("unknown germ '{label}'")))
    }

    pub fn model(&self) -> Result<&SurfaceModel> {
        self.model.as_ref().ok_or_else(|| Error::InvalidScenario("scenario has no surface model".into()))
    }

    /// Override the working precision everywhere.
    pub fn set_precision(&mut self, precision: u32) {
        self.precision = Some(precision);
        if let Some(m) = self.model.take() {
            self.model = Some(m.with_config(AnalysisConfig::new(precision)));
        }
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidScenario(msg.into()))
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::InvalidScenario(format!("{what} must be an object")))
}

fn arr<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::InvalidScenario(format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::InvalidScenario(format!("{what} must be a string")))
}

fn uint(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::InvalidScenario(format!("{what} must be a nonnegative integer")))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::InvalidScenario(format!("{what} must be an integer")))
}

/// An integer, or a string such as `"-3/2"`.
fn rational(v: &Value, what: &str) -> Result<Rational> {
    if let Some(i) = v.as_i64() {
        return Ok(crate::rat(i));
    }
    let s = v.as_str().ok_or_else(|| Error::InvalidScenario(format!("{what} must be a rational")))?;
    let p = parse_expression(s)?;
    if !p.is_constant() {
        return bad(format!("{what} must be a rational constant"));
    }
    Ok(p.constant_term())
}

/// A rational, or `{"a": .., "b": .., "d": ..}` for `a + b sqrt(d)`.
fn surd(v: &Value, what: &str) -> Result<QuadSurd> {
    if let Some(o) = v.as_object() {
        let get = |k: &str| o.get(k).ok_or_else(|| Error::InvalidScenario(format!("{what}.{k} missing")));
        let a = rational(get("a")?, what)?;
        let b = rational(get("b")?, what)?;
        let d = int(get("d")?, what)?;
        return Ok(QuadSurd::new(a, b, d));
    }
    Ok(QuadSurd::rational(rational(v, what)?))
}

fn poly(v: &Value, what: &str) -> Result<Poly2> {
    parse_expression(string(v, what)?)
}

fn pair<'a>(v: &'a Value, what: &str) -> Result<(&'a Value, &'a Value)> {
    match arr(v, what)?.as_slice() {
        [a, b] => Ok((a, b)),
        _ => bad(format!("{what} must have two entries")),
    }
}

fn polynomial_map(v: &Value, what: &str) -> Result<PolynomialMap> {
    let (a, b) = pair(v, what)?;
    Ok(PolynomialMap::new(poly(a, what)?, poly(b, what)?))
}

/// Chart of `f^power` at `point`: `z -> f^power(point + z) - point`.
pub fn chart_germ(map: &PolynomialMap, point: &(Rational, Rational), power: u32) -> Result<MapGerm> {
    let it = map.iterate(power);
    let (a, b) = point;
    let p1 = it.p1.translate(a, b).sub(&Poly2::constant(a.clone()));
    let p2 = it.p2.translate(a, b).sub(&Poly2::constant(b.clone()));
    MapGerm::from_polynomials(p1, p2)
}

fn germ_entry(label: &str, v: &Value, maps: &BTreeMap<String, PolynomialMap>) -> Result<GermEntry> {
    let o = obj(v, label)?;
    let map = match (o.get("map"), o.get("images")) {
        (Some(m), None) => {
            let m = string(m, "germ map")?;
            maps.get(m).cloned().ok_or_else(|| Error::InvalidScenario(format!("germ {label}: unknown map '{m}'")))?
        }
        (None, Some(im)) => polynomial_map(im, "germ images")?,
        _ => return bad(format!("germ {label} needs exactly one of 'map' and 'images'")),
    };
    let point = match o.get("point") {
        Some(p) => {
            let (a, b) = pair(p, "point")?;
            (rational(a, "point")?, rational(b, "point")?)
        }
        None => (Rational::default(), Rational::default()),
    };
    let power = match o.get("power") {
        Some(p) => uint(p, "power")?.max(1),
        None => 1,
    };
    let germ = chart_germ(&map, &point, power)
        .map_err(|e| Error::InvalidScenario(format!("germ {label}: {e}")))?
        .with_label(label);
    let mut overrides = Vec::new();
    if let Some(bs) = o.get("branches") {
        for b in arr(bs, "branches")? {
            let bo = obj(b, "branch")?;
            let field = |k: &str| bo.get(k).ok_or_else(|| Error::InvalidScenario(format!("branch.{k} missing")));
            overrides.push(BranchOverride {
                defining_polynomial: poly(field("polynomial")?, "branch polynomial")?,
                x: parse_univariate(string(field("x")?, "branch x")?)?,
                y: parse_univariate(string(field("y")?, "branch y")?)?,
            });
        }
    }
    Ok(GermEntry { germ, overrides, source: Some(GermSource { map, point, power }) })
}

fn trace_sequence(v: &Value) -> Result<TraceSequence> {
    if let Some(o) = v.as_object() {
        if let Some(c) = o.get("constant") {
            return Ok(TraceSequence::Constant(rational(c, "constant")?));
        }
        if let Some(vals) = o.get("values") {
            return Ok(TraceSequence::Listed(
                arr(vals, "values")?.iter().map(|x| rational(x, "values")).collect::<Result<_>>()?,
            ));
        }
        if let Some(c) = o.get("recurrence") {
            let coefficients: Vec<Rational> =
                arr(c, "recurrence")?.iter().map(|x| rational(x, "recurrence")).collect::<Result<_>>()?;
            let initial: Vec<Rational> = arr(o.get("initial").unwrap_or(&Value::Null), "initial")?
                .iter()
                .map(|x| rational(x, "initial"))
                .collect::<Result<_>>()?;
            if initial.len() != coefficients.len() || coefficients.is_empty() {
                return bad("a recurrence needs as many initial values as coefficients");
            }
            let offset = match o.get("offset") {
                Some(x) => rational(x, "offset")?,
                None => Rational::default(),
            };
            return Ok(TraceSequence::Recurrence { coefficients, initial, offset });
        }
    }
    Ok(TraceSequence::Constant(rational(v, "trace")?))
}

fn matrix(v: &Value) -> Result<Vec<Vec<Rational>>> {
    arr(v, "matrix")?
        .iter()
        .map(|row| arr(row, "matrix row")?.iter().map(|x| rational(x, "matrix entry")).collect())
        .collect()
}

fn action(v: &Value, stable: bool) -> Result<CohomologyAction> {
    let o = obj(v, "action")?;
    let get = |k: &str| o.get(k).ok_or_else(|| Error::InvalidScenario(format!("action.{k} missing")));
    let mode = match string(get("mode")?, "action.mode")? {
        "h1_trivial" => CohomologyMode::H1Trivial { matrix: matrix(get("matrix")?)? },
        "k3" => CohomologyMode::K3 { matrix: matrix(get("matrix")?)?, hodge_scalar: surd(get("hodge_scalar")?, "hodge_scalar")? },
        "torus" => CohomologyMode::Torus { delta: surd(get("delta")?, "delta")?, epsilon: surd(get("epsilon")?, "epsilon")? },
        "explicit_traces" => {
            let mut traces = BTreeMap::new();
            for (k, t) in obj(get("traces")?, "traces")? {
                let idx: Vec<u8> = k.split(',').filter_map(|s| s.trim().parse().ok()).collect();
                let [i, j] = idx[..] else { return bad(format!("trace key '{k}' must look like \"1,1\"")) };
                traces.insert((i, j), trace_sequence(t)?);
            }
            CohomologyMode::ExplicitTraces { traces }
        }
        other => return bad(format!("unknown action mode '{other}'")),
    };
    let rho = uint(get("picard_number")?, "picard_number")?;
    let kod = o.get("kodaira_nonnegative").and_then(Value::as_bool).unwrap_or(false);
    let mut a = CohomologyAction::new(mode, rho, stable, kod)?;
    if let Some(b) = o.get("growth_constant") {
        a = a.with_growth_constant(rational(b, "growth_constant")?);
    }
    Ok(a)
}

fn curve_type(v: &Value) -> Result<BranchType> {
    match string(v, "curve type")? {
        "I" | "TypeI" => Ok(BranchType::TypeI),
        "II" | "TypeII" => Ok(BranchType::TypeII),
        other => bad(format!("unknown curve type '{other}'")),
    }
}

fn curve(v: &Value, germs: &BTreeMap<String, GermEntry>) -> Result<FixedCurveRecord> {
    let o = obj(v, "curve")?;
    let get = |k: &str| o.get(k).ok_or_else(|| Error::InvalidScenario(format!("curve.{k} missing")));
    let mut witnesses = Vec::new();
    if let Some(ws) = o.get("witnesses") {
        for w in arr(ws, "witnesses")? {
            let wo = obj(w, "witness")?;
            let wget = |k: &str| wo.get(k).ok_or_else(|| Error::InvalidScenario(format!("witness.{k} missing")));
            let g = string(wget("germ")?, "witness germ")?;
            let entry = germs.get(g).ok_or_else(|| Error::InvalidScenario(format!("unknown germ '{g}'")))?;
            witnesses.push(CurveWitness {
                point: wo.get("point").and_then(Value::as_str).unwrap_or(g).to_string(),
                germ: entry.germ.clone(),
                branch: poly(wget("branch")?, "witness branch")?,
            });
        }
    }
    Ok(FixedCurveRecord {
        label: string(get("label")?, "curve label")?.to_string(),
        prime_period: uint(get("prime_period")?, "prime_period")?,
        curve_type: curve_type(get("type")?)?,
        nu_c: uint(get("nu")?, "nu")?,
        tau: int(get("tau")?, "tau")?,
        chi: o.get("chi").filter(|c| !c.is_null()).map(|c| int(c, "chi")).transpose()?,
        fiber_component: o.get("fiber_component").and_then(Value::as_bool).unwrap_or(false),
        germ_witnesses: witnesses,
    })
}

fn isolation(v: &Value) -> Result<Isolation> {
    if let Some(o) = v.as_object() {
        if let Some(m) = o.get("conditional") {
            return Ok(Isolation::ConditionallyIsolated { secondary_period: uint(m, "secondary period")? });
        }
    }
    match v.as_str() {
        Some("absolute") => Ok(Isolation::AbsolutelyIsolated),
        Some("non_isolated") => Ok(Isolation::NonIsolated),
        _ => bad("isolation must be \"absolute\", \"non_isolated\" or {\"conditional\": m}"),
    }
}

fn point(v: &Value, germs: &BTreeMap<String, GermEntry>) -> Result<FixedPointRecord> {
    let o = obj(v, "point")?;
    let get = |k: &str| o.get(k).ok_or_else(|| Error::InvalidScenario(format!("point.{k} missing")));
    let germ = match o.get("germ") {
        Some(g) => {
            let g = string(g, "point germ")?;
            Some(germs.get(g).ok_or_else(|| Error::InvalidScenario(format!("unknown germ '{g}'")))?.germ.clone())
        }
        None => None,
    };
    let mut declared = BTreeMap::new();
    if let Some(d) = o.get("declared_index") {
        for (k, x) in obj(d, "declared_index")? {
            let n: u32 = k.parse().map_err(|_| Error::InvalidScenario(format!("bad iterate '{k}'")))?;
            declared.insert(n, int(x, "declared index")?);
        }
    }
    let on_curves = match o.get("on_curves") {
        Some(c) => arr(c, "on_curves")?.iter().map(|x| string(x, "curve label").map(str::to_string)).collect::<Result<_>>()?,
        None => vec![],
    };
    Ok(FixedPointRecord {
        label: string(get("label")?, "point label")?.to_string(),
        prime_period: o.get("prime_period").map(|p| uint(p, "prime_period")).transpose()?.unwrap_or(1),
        germ,
        declared_index: declared,
        on_curves,
        isolation: o.get("isolation").map(isolation).transpose()?,
    })
}

/// Parse a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) })?;
    let root = obj(&doc, "scenario")?;
    let empty = Value::Object(Map::new());
    let meta = obj(root.get("meta").unwrap_or(&empty), "meta")?;
    let precision = meta.get("precision").map(|p| uint(p, "precision")).transpose()?;
    let stable = meta.get("algebraically_stable").and_then(Value::as_bool).unwrap_or(false);

    let mut maps = BTreeMap::new();
    for (k, v) in obj(root.get("maps").unwrap_or(&empty), "maps")? {
        maps.insert(k.clone(), polynomial_map(v, k)?);
    }
    let mut germs = BTreeMap::new();
    for (k, v) in obj(root.get("germs").unwrap_or(&empty), "germs")? {
        germs.insert(k.clone(), germ_entry(k, v, &maps)?);
    }
    let default_germ = meta.get("default_germ").map(|g| string(g, "default_germ").map(str::to_string)).transpose()?;
    if let Some(g) = &default_germ {
        if !germs.contains_key(g) {
            return bad(format!("default germ '{g}' is not defined"));
        }
    }
    let mut forms = BTreeMap::new();
    for (k, v) in obj(root.get("forms").unwrap_or(&empty), "forms")? {
        let o = obj(v, k)?;
        let s = o.get("pole_order").map(|x| int(x, "pole_order")).transpose()?.unwrap_or(0);
        let unit = match o.get("unit") {
            Some(u) => poly(u, "form unit")?,
            None => Poly2::one(),
        };
        let prec = precision.unwrap_or(crate::series::DEFAULT_PRECISION);
        forms.insert(k.clone(), FormGerm::from_poly(s as i32, &unit, prec)?);
    }
    let model = match root.get("action") {
        Some(a) => {
            let action = action(a, stable)?;
            let curves = match root.get("curves") {
                Some(c) => arr(c, "curves")?.iter().map(|c| curve(c, &germs)).collect::<Result<_>>()?,
                None => vec![],
            };
            let points = match root.get("points") {
                Some(p) => arr(p, "points")?.iter().map(|p| point(p, &germs)).collect::<Result<_>>()?,
                None => vec![],
            };
            let description = meta.get("description").and_then(Value::as_str).unwrap_or("");
            let m = SurfaceModel::new(points, curves, action, description)?;
            Some(match precision {
                Some(p) => m.with_config(AnalysisConfig::new(p)),
                None => m,
            })
        }
        None => {
            if root.contains_key("curves") || root.contains_key("points") {
                return bad("curves and points need an action");
            }
            None
        }
    };
    let mut intersections = Vec::new();
    if let Some(is) = root.get("intersections") {
        for x in arr(is, "intersections")? {
            let (a, b) = pair(x, "intersection")?;
            intersections.push((string(a, "curve label")?.to_string(), string(b, "curve label")?.to_string()));
        }
    }
    let mut declared_isolated = BTreeMap::new();
    if let Some(d) = root.get("declared_isolated") {
        for (k, v) in obj(d, "declared_isolated")? {
            let n: u32 = k.parse().map_err(|_| Error::InvalidScenario(format!("bad iterate '{k}'")))?;
            declared_isolated.insert(n, int(v, "declared count")?);
        }
    }
    Ok(Scenario {
        description: meta.get("description").and_then(Value::as_str).unwrap_or("").to_string(),
        precision,
        default_germ,
        maps,
        germs,
        forms,
        model,
        intersections,
        declared_isolated,
    })
}

/// Names of the bundled scenarios.
pub const FIXTURES: [&str; 3] = ["remark42", "remark43", "cubic-d4"];

/// Text of a bundled scenario.
pub fn fixture_text(name: &str) -> Result<&'static str> {
    match name {
        "remark42" => Ok(include_str!("../../fixtures/remark42.json")),
        "remark43" => Ok(include_str!("../../fixtures/remark43.json")),
        "cubic-d4" => Ok(include_str!("../../fixtures/cubic-d4.json")),
        other => bad(format!("unknown fixture '{other}' (expected one of {})", FIXTURES.join(", "))),
    }
}

/// A bundled scenario, parsed.
pub fn fixture(name: &str) -> Result<Scenario> {
    parse_scenario(fixture_text(name)?)
}
