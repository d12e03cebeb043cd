//! Command-line front end: JSON requests in, one JSON report out.
//!
//! A request names a space and the arguments of one query:
//!
//! ```json
//! {"command": "norm", "space": {"p": 2, "components": [{"kind": "euclidean", "dim": 2}]},
//!  "x": {"entries": [{"index": 1, "coords": [3, 4]}]}}
//! ```
//!
//! Component indices in JSON are 1-based. Exit codes: 0 success, 2 malformed
//! or invalid input, 3 degenerate input (such as a zero vector where a
//! nonzero one is required), 1 anything else.

use std::fmt;

use lpsum::dgap::dgap_report;
use lpsum::oracles::{bj_orthogonal_oracle, oracle_diameter, oracle_dual_norm, oracle_min_norm};
use lpsum::orthogonality::{
    analyze_symmetry, bj_orthogonal, orthogonal_completion, orthogonality_witness,
    p_sip_commuting, sip, sip_value_interval, CanonicalSelector,
};
use lpsum::{Error, OracleConfig, Side, SumFunctional, SumSpace, SumVector};
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_NORMING_EPS: f64 = 1e-8;
pub const DEFAULT_DGAP_N: usize = 100;
pub const DEFAULT_DGAP_P: f64 = 2.0;
pub const DEFAULT_DUAL_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Norm,
    Dual,
    Support,
    Diam,
    Smooth,
    Orth,
    Sip,
    Complete,
    Symmetric,
    Falsify,
    Crosscheck,
    DgapReport,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Dual => "dual",
            Command::Support => "support",
            Command::Diam => "diam",
            Command::Smooth => "smooth",
            Command::Orth => "orth",
            Command::Sip => "sip",
            Command::Complete => "complete",
            Command::Symmetric => "symmetric",
            Command::Falsify => "falsify",
            Command::Crosscheck => "crosscheck",
            Command::DgapReport => "dgap-report",
        }
    }
}

/// A query. Which fields are required depends on the command.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Option<Command>,
    pub space: Option<SumSpace>,
    pub x: Option<SumVector>,
    pub y: Option<SumVector>,
    pub f: Option<SumFunctional>,
    pub eps: Option<f64>,
    pub side: Option<Side>,
    /// Exponent for `sip` commuting checks and for `dgap-report`.
    pub p: Option<f64>,
    /// Component count for `dgap-report`.
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub tol: f64,
    pub config: OracleConfig,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            config: OracleConfig::default(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed JSON, missing arguments, unknown command, invalid values.
    Validation(String),
    Degenerate(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Other(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Degenerate(_) => "degenerate",
            CliError::Other(_) => "other",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Degenerate(m) | CliError::Other(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateInput(_) => CliError::Degenerate(e.to_string()),
            Error::NotEnumerable(_) | Error::Construction(_) => CliError::Other(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub fn parse_request(text: &str) -> Result<Request, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed request: {e}")))
}

pub fn parse_config(text: &str) -> Result<OracleConfig, CliError> {
    let config: OracleConfig = serde_json::from_str(text)
        .map_err(|e| CliError::Validation(format!("malformed oracle config: {e}")))?;
    config.validate()?;
    Ok(config)
}

fn need<'a, T>(value: &'a Option<T>, name: &str, command: Command) -> Result<&'a T, CliError> {
    value
        .as_ref()
        .ok_or_else(|| CliError::Validation(format!("`{}` requires the field `{name}`", command.name())))
}

/// Checks every supplied argument against the space before dispatch.
fn validate(req: &Request, space: &SumSpace) -> Result<(), CliError> {
    for v in [&req.x, &req.y].into_iter().flatten() {
        space.check_vector(v)?;
    }
    if let Some(f) = &req.f {
        space.check_functional(f)?;
    }
    if let Some(eps) = req.eps {
        if !eps.is_finite() {
            return Err(CliError::Validation("eps must be finite".into()));
        }
    }
    Ok(())
}

/// Runs one request. `command` overrides the request's own `command` field,
/// which must agree when both are present.
pub fn execute(command: Option<Command>, req: &Request, opts: &Options) -> Result<Value, CliError> {
    let command = match (command, req.command) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Validation(format!(
                "subcommand `{}` does not match request command `{}`",
                a.name(),
                b.name()
            )))
        }
        (Some(c), _) | (None, Some(c)) => c,
        (None, None) => return Err(CliError::Validation("the request names no command".into())),
    };
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(CliError::Validation("tol must be positive and finite".into()));
    }
    opts.config.validate()?;
    if command == Command::DgapReport {
        let n = req.n.unwrap_or(DEFAULT_DGAP_N);
        let p = req.p.unwrap_or(DEFAULT_DGAP_P);
        let report = dgap_report(n, p)?;
        return Ok(normalize(to_value(&report)));
    }
    let space = need(&req.space, "space", command)?;
    validate(req, space)?;
    let x = || need(&req.x, "x", command);
    let y = || need(&req.y, "y", command);
    let side = || need(&req.side, "side", command).copied();
    let cfg = &opts.config;
    let out = match command {
        Command::Norm => json!({"norm": space.norm(x()?)?}),
        Command::Dual => {
            let mut out = json!({"space": to_value(&space.dual_space())});
            if let Some(f) = &req.f {
                let eps = req.eps.unwrap_or(DEFAULT_NORMING_EPS);
                let y = space.norming_element(f, eps)?;
                out["dual_norm"] = json!(space.dual_norm(f)?);
                out["value"] = json!(space.apply(f, &y)?);
                out["norming_element"] = to_value(&y);
            }
            out
        }
        Command::Support => {
            let x = x()?;
            let j = space.support_functionals(x)?;
            let mut out = json!({
                "norm": j.norm,
                "canonical": to_value(&j.canonical()),
                "description": to_value(&j),
            });
            out["extremes"] = match space.support_ext(x) {
                Ok(list) => to_value(&list),
                Err(Error::NotEnumerable(m)) => json!({"not_enumerable": m}),
                Err(e) => return Err(e.into()),
            };
            if let Some(f) = &req.f {
                out["is_support"] = json!(space.is_support(x, f)?);
            }
            out
        }
        Command::Diam => json!({"D": space.diameter(x()?)?, "cal_d": space.cal_d()?}),
        Command::Smooth => {
            let eps = req.eps.unwrap_or(0.0);
            to_value(&space.smoothness_report(x()?, eps)?)
        }
        Command::Orth => {
            let (x, y) = (x()?, y()?);
            let orthogonal = bj_orthogonal(space, x, y)?;
            let witness = orthogonality_witness(space, x, y)?;
            let mut out = json!({
                "orthogonal": orthogonal,
                "witness_functional": witness.map(|w| to_value(&w)),
            });
            if space.norm(x)? > 0.0 {
                out["interval"] = to_value(&space.value_interval(x, y)?);
            }
            out
        }
        Command::Sip => {
            let (x, y) = (x()?, y()?);
            let mut out = json!({
                "interval": to_value(&sip_value_interval(space, x, y)?),
                "canonical": sip(space, &CanonicalSelector, x, y)?,
            });
            if let Some(p) = req.p {
                out["commuting"] = json!({
                    "left": p_sip_commuting(space, x, y, p, Side::Left)?,
                    "right": p_sip_commuting(space, x, y, p, Side::Right)?,
                });
            }
            out
        }
        Command::Complete => {
            let (x, y) = (x()?, y()?);
            let c = orthogonal_completion(space, x, y)?;
            let z = y.axpy(c.t, x);
            json!({
                "t": c.t,
                "interval": to_value(&c.feasible),
                "completed": to_value(&z),
                "orthogonal": bj_orthogonal(space, x, &z)?,
            })
        }
        Command::Symmetric | Command::Falsify => {
            let a = analyze_symmetry(space, x()?, side()?, cfg)?;
            let mut out = Map::new();
            if command == Command::Symmetric {
                out.insert("result".into(), to_value(&a.result));
            }
            match a.falsification {
                Some(fz) => {
                    out.insert("witness".into(), to_value(&fz.witness));
                    out.insert("scheme".into(), to_value(&fz.scheme));
                    out.insert("oracle_confirmed".into(), json!(fz.oracle_confirmed));
                }
                None => {
                    out.insert("witness".into(), Value::Null);
                }
            }
            Value::Object(out)
        }
        Command::Crosscheck => crosscheck(space, req, opts)?,
        Command::DgapReport => unreachable!("handled above"),
    };
    Ok(normalize(out))
}

/// Formula against oracle for every query the supplied arguments allow.
fn crosscheck(space: &SumSpace, req: &Request, opts: &Options) -> Result<Value, CliError> {
    let cfg = &opts.config;
    let mut out = Map::new();
    let mut agree = true;
    if let Some(x) = &req.x {
        if space.norm(x)? > 0.0 {
            let d = space.diameter(x)?;
            let entry = match oracle_diameter(space, x, cfg) {
                Ok(o) => {
                    let ok = (d - o).abs() <= 1e-9 * d.max(o);
                    agree &= ok;
                    json!({"formula": d, "oracle": o, "agree": ok})
                }
                Err(Error::NotEnumerable(m)) => json!({"formula": d, "oracle": null, "not_enumerable": m}),
                Err(e) => return Err(e.into()),
            };
            out.insert("diameter".into(), entry);
        }
        if let Some(y) = &req.y {
            let formula = bj_orthogonal(space, x, y)?;
            let oracle = bj_orthogonal_oracle(space, x, y, opts.tol, cfg)?;
            agree &= formula == oracle;
            let mut entry = json!({"formula": formula, "oracle": oracle, "agree": formula == oracle});
            if space.norm(y)? > 0.0 {
                let m = oracle_min_norm(space, x, y, cfg)?;
                entry["min_norm"] = json!(m.min);
                entry["argmin"] = json!(m.argmin);
                entry["norm"] = json!(space.norm(x)?);
            }
            out.insert("orthogonality".into(), entry);
        }
    }
    if let Some(f) = &req.f {
        let norm = space.dual_norm(f)?;
        let bound = oracle_dual_norm(space, f, DEFAULT_DUAL_SAMPLES)?;
        let ok = bound <= norm * (1.0 + 1e-12);
        agree &= ok;
        out.insert(
            "dual_norm".into(),
            json!({"formula": norm, "oracle_lower_bound": bound, "agree": ok}),
        );
    }
    if out.is_empty() {
        return Err(CliError::Validation("`crosscheck` needs `x`, `x` and `y`, or `f`".into()));
    }
    out.insert("agree".into(), json!(agree));
    Ok(Value::Object(out))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Integral floats print as integers so `5.0` reads `5`.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() && x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 => {
                Value::Number(Number::from(x as i64))
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(text: &str) -> Request {
        parse_request(text).unwrap()
    }

    const EUCLID2: &str = r#"{"p": 2, "components": [{"kind": "euclidean", "dim": 2}, {"kind": "euclidean", "dim": 2}]}"#;

    #[test]
    fn norm_prints_integers() {
        let r = req(&format!(
            r#"{{"command": "norm", "space": {EUCLID2}, "x": {{"entries": [{{"index": 1, "coords": [3, 0]}}, {{"index": 2, "coords": [4, 0]}}]}}}}"#
        ));
        let out = execute(None, &r, &Options::default()).unwrap();
        assert_eq!(out, json!({"norm": 5}));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(parse_request("{").unwrap_err().exit_code(), 2);
        assert_eq!(parse_request(r#"{"command": "nope"}"#).unwrap_err().exit_code(), 2);
        let r = req(&format!(r#"{{"command": "diam", "space": {EUCLID2}, "x": {{"entries": []}}}}"#));
        assert_eq!(execute(None, &r, &Options::default()).unwrap_err().exit_code(), 3);
        let r = req(&format!(
            r#"{{"command": "norm", "space": {EUCLID2}, "x": {{"entries": [{{"index": 3, "coords": [1, 0]}}]}}}}"#
        ));
        assert_eq!(execute(None, &r, &Options::default()).unwrap_err().exit_code(), 2);
        let r = req(&format!(r#"{{"command": "norm", "space": {EUCLID2}}}"#));
        assert_eq!(execute(None, &r, &Options::default()).unwrap_err().exit_code(), 2);
        assert_eq!(
            execute(Some(Command::Diam), &req(r#"{"command": "norm"}"#), &Options::default())
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn config_is_validated() {
        assert!(parse_config(r#"{"grid_directions": 64}"#).is_ok());
        assert_eq!(parse_config(r#"{"grid_directions": 0}"#).unwrap_err().exit_code(), 2);
        assert_eq!(parse_config(r#"{"bogus": 1}"#).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn normalize_keeps_fractions() {
        assert_eq!(normalize(json!([2.0, 0.5, -3.0, 1e300])), json!([2, 0.5, -3, 1e300]));
    }
}
