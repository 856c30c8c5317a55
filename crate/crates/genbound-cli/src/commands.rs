//! The subcommands.

use std::path::Path;

use genbound::chain::{
    check_boundary_squared, check_equation, Chain, Report, RingSpec, SingularTerm, Verdict, Witness, CERTIFICATE_NOTE,
};
use genbound::comfort::{check_comfort, counterexample_map, SimplexHomeo};
use genbound::geometry::{parse_rational, project_layer, BaryPoint, Rational};
use genbound::homology_point::homology_table;
use genbound::sampling::{comfort_grid, Grid};
use genbound::theta::{face_delete, face_insert, FaceMap, ThetaFamily, ThetaKey, DEFAULT_DIMENSION_CAP};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::config::{Format, RunConfig, UsageError};
use crate::figure;

/// Why a command did not succeed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error("{0}")]
    Violation(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

/// Text to emit and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(UsageError::Invalid(msg.into()))
}

fn family_for(n_max: usize) -> Result<ThetaFamily, CliError> {
    if n_max > DEFAULT_DIMENSION_CAP {
        return Err(usage(format!(
            "dimension {n_max} exceeds the supported maximum {DEFAULT_DIMENSION_CAP}"
        )));
    }
    Ok(ThetaFamily::new(n_max.max(1)))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct SuiteParameters {
    n: usize,
    n_max: usize,
    #[serde(rename = "L")]
    l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<Vec<String>>,
}

#[derive(Serialize)]
struct SuiteGrid {
    denominator: u64,
    size: usize,
    seed: u64,
}

/// Several reports merged into one.
#[derive(Serialize)]
struct SuiteReport {
    check: String,
    parameters: SuiteParameters,
    grid: SuiteGrid,
    verdict: Verdict,
    instances: usize,
    pairs_checked: usize,
    witnesses: Vec<Witness>,
    certificate: String,
    reports: Vec<Report>,
}

fn render_suite(
    check: &str,
    parameters: SuiteParameters,
    cfg: &RunConfig,
    reports: Vec<Report>,
    grid_size: usize,
) -> Outcome {
    let passed = reports.iter().all(Report::passed);
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("check,n,L,j,p,i,k,verdict,pairs_checked,witnesses\n");
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            for r in &reports {
                let p = &r.parameters;
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.check,
                    p.n,
                    p.l,
                    opt(p.j),
                    opt(p.p),
                    opt(p.i),
                    opt(p.k),
                    if r.passed() { "pass" } else { "fail" },
                    r.pairs_checked,
                    r.witnesses.len()
                ));
            }
            s
        }
        _ => json(&SuiteReport {
            check: check.into(),
            parameters,
            grid: SuiteGrid {
                denominator: cfg.denominator,
                size: grid_size,
                seed: cfg.seed,
            },
            verdict: Verdict::from_bool(passed),
            instances: reports.len(),
            pairs_checked: reports.iter().map(|r| r.pairs_checked).sum(),
            witnesses: reports.iter().flat_map(|r| r.witnesses.clone()).collect(),
            certificate: CERTIFICATE_NOTE.into(),
            reports,
        }),
    };
    Outcome { text, passed }
}

fn no_svg(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.format == Some(Format::Svg) {
        return Err(usage("svg output is only available for the figure command"));
    }
    Ok(())
}

/// Every `EQUATION_{n,j≤p,i,k}` for `n` in the configured range.
pub fn verify_equations(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_svg(cfg)?;
    let (lo, hi) = cfg.range(1)?;
    if lo == 0 {
        return Err(usage("EQUATION needs n >= 1"));
    }
    cfg.check_denominator(hi)?;
    let (l, m) = cfg.tuple()?;
    if l > 1 {
        return Err(usage(format!("L = {l} is not supported; use 0 or 1")));
    }
    let family = family_for(hi)?;
    let mut reports = Vec::new();
    let mut grid_size = 0;
    for n in lo..=hi {
        let grid = Grid::canonical(n - 1, cfg.denominator, cfg.seed);
        grid_size += grid.len();
        for p in 0..=n {
            for j in 0..=p {
                for i in 0..=l {
                    for k in 0..=l {
                        let r =
                            check_equation(&family, l, n, (j, p), (i, k), &grid).map_err(|e| usage(e.to_string()))?;
                        reports.push(r);
                    }
                }
            }
        }
    }
    let params = SuiteParameters {
        n: lo,
        n_max: hi,
        l,
        m: cfg.m.as_ref().map(|_| m.labels()),
    };
    Ok(render_suite("equations", params, cfg, reports, grid_size))
}

/// `∂_n∘∂_{n+1} = 0` for `T = id(Δ_{n+1})` with `n` in the configured range.
pub fn verify_boundary(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_svg(cfg)?;
    let (lo, hi) = cfg.range(1)?;
    cfg.check_denominator(hi)?;
    let (l, m) = cfg.tuple()?;
    if l > 1 {
        return Err(usage(format!("L = {l} is not supported; use 0 or 1")));
    }
    let family = family_for(hi + 1)?;
    let mut reports = Vec::new();
    let mut grid_size = 0;
    for n in lo..=hi {
        let grid = Grid::canonical(n.saturating_sub(1), cfg.denominator, cfg.seed);
        grid_size += grid.len();
        let c = Chain::from_term(RingSpec::Integers, SingularTerm::identity(n + 1), BigInt::one());
        reports.push(check_boundary_squared(&family, &c, &m, &grid).map_err(|e| usage(e.to_string()))?);
    }
    let params = SuiteParameters {
        n: lo,
        n_max: hi,
        l,
        m: Some(m.labels()),
    };
    Ok(render_suite("boundary_squared", params, cfg, reports, grid_size))
}

/// A map addressable from the command line.
#[derive(Clone, Debug)]
pub enum MapSpec {
    Theta(ThetaKey),
    ThetaInverse(ThetaKey),
    PiAlpha { n: usize, alpha: Rational },
    FaceInsert(FaceMap),
    FaceDelete(FaceMap),
    Counterexample,
}

fn fields(body: &str) -> Vec<(String, String)> {
    body.split(',')
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

impl MapSpec {
    /// Parses ids such as `theta:L=1,n=2,i=1`, `theta_inv:L=1,n=2,i=0`,
    /// `pi_alpha:n=2,alpha=0`, `face:L=1,n=2,i=1,j=0`,
    /// `face_delete:L=1,n=2,i=1,j=0` and `counterexample`.
    pub fn parse(id: &str) -> Result<MapSpec, UsageError> {
        let bad = || UsageError::BadValue {
            key: "map".into(),
            value: id.to_string(),
        };
        let (kind, body) = id.split_once(':').unwrap_or((id, ""));
        match kind {
            "theta" => Ok(MapSpec::Theta(id.parse().map_err(|_| bad())?)),
            "theta_inv" => {
                let key: ThetaKey = format!("theta:{body}").parse().map_err(|_| bad())?;
                if key.i != 0 {
                    return Err(UsageError::Invalid(format!("{id}: only i = 0 has an inverse")));
                }
                Ok(MapSpec::ThetaInverse(key))
            }
            "face" => Ok(MapSpec::FaceInsert(id.parse().map_err(|_| bad())?)),
            "face_delete" => Ok(MapSpec::FaceDelete(format!("face:{body}").parse().map_err(|_| bad())?)),
            "pi_alpha" => {
                let f = fields(body);
                let get = |k: &str| f.iter().find(|(a, _)| a == k).map(|(_, v)| v.clone());
                let n = get("n").and_then(|v| v.parse().ok()).ok_or_else(bad)?;
                let alpha = get("alpha").and_then(|v| parse_rational(&v).ok()).ok_or_else(bad)?;
                Ok(MapSpec::PiAlpha { n, alpha })
            }
            "counterexample" => Ok(MapSpec::Counterexample),
            _ => Err(bad()),
        }
    }

    fn max_dim(&self) -> usize {
        match self {
            MapSpec::Theta(k) | MapSpec::ThetaInverse(k) => k.n,
            MapSpec::PiAlpha { n, .. } => *n,
            MapSpec::FaceInsert(f) | MapSpec::FaceDelete(f) => f.n,
            MapSpec::Counterexample => 2,
        }
    }

    /// Evaluates the map at `x`.
    pub fn eval(&self, family: &ThetaFamily, x: &BaryPoint) -> genbound::Result<BaryPoint> {
        let expect = |n: usize| {
            if x.dim() == n {
                Ok(())
            } else {
                Err(genbound::Error::DimensionMismatch {
                    expected: n,
                    found: x.dim(),
                })
            }
        };
        match self {
            MapSpec::Theta(k) => {
                expect(k.n)?;
                family.get(k)?.eval(x)
            }
            MapSpec::ThetaInverse(k) => {
                expect(k.n)?;
                family.get(k)?.eval_inverse(x)
            }
            MapSpec::PiAlpha { n, alpha } => {
                expect(*n)?;
                project_layer(x, alpha)
            }
            MapSpec::FaceInsert(f) => face_insert(f, x),
            MapSpec::FaceDelete(f) => face_delete(f, x),
            MapSpec::Counterexample => {
                expect(2)?;
                counterexample_map().eval(x)
            }
        }
    }

    fn homeo(&self, family: &ThetaFamily) -> Result<SimplexHomeo, UsageError> {
        match self {
            MapSpec::Theta(k) => family
                .get(k)
                .map(|h| (*h).clone())
                .map_err(|e| UsageError::Invalid(e.to_string())),
            MapSpec::Counterexample => Ok(counterexample_map()),
            _ => Err(UsageError::Invalid(
                "only theta and counterexample maps can be checked".into(),
            )),
        }
    }
}

/// Evaluates a map at the given points.
pub fn eval(cfg: &RunConfig, map_id: &str, points: &[String]) -> Result<Outcome, CliError> {
    no_svg(cfg)?;
    let spec = MapSpec::parse(map_id)?;
    let family = family_for(spec.max_dim())?;
    let parsed = points
        .iter()
        .map(|p| {
            p.parse::<BaryPoint>()
                .map_err(|e| usage(format!("cannot parse point {p:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for x in &parsed {
        let y = spec
            .eval(&family, x)
            .map_err(|e| CliError::Violation(format!("{map_id} at {x}: {e}")))?;
        rows.push((x.to_string(), y.to_string()));
    }
    let text = match cfg.format {
        Some(Format::Csv) => {
            let mut s = String::from("input, output\n");
            for (x, y) in &rows {
                s.push_str(&format!("{x}, {y}\n"));
            }
            s
        }
        Some(Format::Json) => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, y)| serde_json::json!({ "input": x, "output": y }))
                .collect();
            json(&serde_json::json!({ "map_id": map_id, "values": list }))
        }
        _ => rows.iter().map(|(_, y)| format!("{y}\n")).collect(),
    };
    Ok(Outcome { text, passed: true })
}

/// COMFORT check of a map on the canonical grid plus adversarial points.
pub fn verify_comfort(cfg: &RunConfig, map_id: &str) -> Result<Outcome, CliError> {
    no_svg(cfg)?;
    let spec = MapSpec::parse(map_id)?;
    let n = spec.max_dim();
    cfg.check_denominator(n)?;
    let family = family_for(n)?;
    let map = spec.homeo(&family)?;
    let grid = comfort_grid(n, cfg.denominator, cfg.seed);
    let report = check_comfort(map_id, &map, &grid, cfg.seed);
    Ok(Outcome {
        passed: report.passed(),
        text: json(&report),
    })
}

/// The boundary of `id(Δ_2)` and the requested α-crosses as CSV or SVG.
pub fn figure(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.n.unwrap_or(2) != 2 {
        return Err(usage("figures are planar; only n = 2 is supported"));
    }
    let (_, m) = cfg.tuple()?;
    let mut segments = figure::boundary_segments(&m);
    for alpha in &cfg.alpha {
        if alpha < &Rational::from_integer(0.into()) || alpha > &Rational::one() {
            return Err(usage(format!("alpha {alpha} must lie in [0,1]")));
        }
        segments.extend(figure::cross_segments(alpha));
    }
    let text = match cfg.format.unwrap_or(Format::Svg) {
        Format::Svg => figure::to_svg(&segments),
        Format::Csv => figure::to_csv(&segments),
        Format::Json => return Err(usage("figure output is csv or svg")),
    };
    Ok(Outcome { text, passed: true })
}

/// The homology table of a point.
pub fn homology(cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_svg(cfg)?;
    let lo = cfg.n.unwrap_or(0);
    let hi = cfg.n_max.unwrap_or(8.max(lo));
    if hi < lo {
        return Err(usage(format!("--n-max {hi} is below --n {lo}")));
    }
    let (_, m) = cfg.tuple()?;
    let rows = homology_table(&m, lo..=hi);
    let text = match cfg.format {
        Some(Format::Json) => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "boundary": r.boundary.to_string(),
                        "homology": r.homology.to_string()
                    })
                })
                .collect();
            json(&serde_json::json!({ "m": m.labels(), "rows": list }))
        }
        _ => rows.iter().map(|r| format!("{r}\n")).collect(),
    };
    Ok(Outcome { text, passed: true })
}

/// Writes `text` to `out`, or to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
