//! The `smpa` command line.
//!
//! Arguments naming an input accept a file path, `-` for standard input, or
//! inline JSON (anything starting with `{`). Exit status is 0 on success, 2
//! on a usage or I/O error and 1 on a domain error, which is reported on
//! standard error as `{"error": kind, "message": text}`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{eval_expr, Mode, SElem};
use crate::error::{Error, Result};
use crate::json::{from_json, to_json};
use crate::metrics::{Base, Combine, MetricId, SVector};
use crate::oracle::{cloud_slack, grid_connected, grid_project, grid_segment_sm, oracle_rho, GridSpec};
use crate::projection::{
    is_chebyshev, project_box, project_box_max, project_ray, project_segment_set, ProjectionResult,
};
use crate::segments::{
    component_count, geometric_segment, semimodule_segment, traditional_segment, SegmentSet,
};
use crate::sets::{
    is_box_semimodule_convex, is_connected, is_geometrically_convex, is_semimodule_convex,
    is_traditionally_convex, BoxSet, RaySet,
};
use crate::svg::Scene;

#[derive(Debug, Parser)]
#[command(name = "smpa", version, about = "Symmetrized max-plus algebra and the geometry of 𝕊ⁿ")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,

    /// Magnitude at which unbounded intervals are cut (grids and pictures).
    #[arg(long, global = true)]
    max_magnitude: Option<f64>,

    /// Seed for any randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Svg,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SegmentKind {
    Geometric,
    Semimodule,
    Traditional,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an arithmetic expression (read from standard input if omitted).
    Eval {
        #[arg(long, default_value = "smpa")]
        mode: Mode,
        expr: Option<String>,
    },
    /// Compute the segment between two points.
    Segment {
        #[arg(long, value_enum)]
        kind: SegmentKind,
        a: String,
        b: String,
    },
    /// Nearest points of a set (ray set, box or segment set) to a point.
    Project {
        point: String,
        set: String,
        /// Base distance on each coordinate.
        #[arg(long)]
        base: Option<Base>,
        /// Product metric, `rho<k><j>`, `D1` or `D2`.
        #[arg(long)]
        metric: Option<MetricId>,
        /// Grid step for max-combine metrics, whose nearest-point sets are sampled.
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Test properties of a set.
    Check {
        set: String,
        #[arg(long)]
        chebyshev: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        traditional: bool,
        #[arg(long)]
        geometric: bool,
        #[arg(long)]
        semimodule: bool,
    },
    /// Brute-force grid computations used to cross-check the exact routines.
    #[command(hide = true)]
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
        #[arg(long, global = true, default_value_t = 1e-3)]
        resolution: f64,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    Project {
        point: String,
        set: String,
        #[arg(long, default_value = "D2")]
        metric: MetricId,
    },
    Segment {
        a: String,
        b: String,
    },
    Connected {
        set: String,
    },
    Dist {
        x: String,
        y: String,
        #[arg(long, default_value = "D2")]
        metric: MetricId,
    },
}

/// A failure, split by exit status.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line on `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { stdin, global: cli.global };
    match dispatch(&mut ctx, cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{}", json!({"error": "usage", "message": msg}));
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", json!({"error": e.kind(), "message": e.to_string()}));
            1
        }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    global: Global,
}

impl Ctx<'_> {
    fn read(&mut self, source: &str) -> CliResult<String> {
        if source.trim_start().starts_with('{') {
            return Ok(source.to_string());
        }
        let mut text = String::new();
        if source == "-" {
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        } else {
            text = std::fs::read_to_string(source)
                .map_err(|e| Failure::Usage(format!("cannot read `{source}`: {e}")))?;
        }
        Ok(text)
    }

    fn value(&mut self, source: &str) -> CliResult<Value> {
        let text = self.read(source)?;
        Ok(from_json(&text)?)
    }

    /// A point of `𝕊ⁿ`, given as a vector or as a single element.
    fn point(&mut self, source: &str) -> CliResult<SVector> {
        let v = self.value(source)?;
        let text = v.to_string();
        if v.get("coords").is_some() {
            Ok(from_json(&text)?)
        } else {
            Ok(SVector::from(from_json::<SElem>(&text)?))
        }
    }

    fn set(&mut self, source: &str) -> CliResult<SetInput> {
        let v = self.value(source)?;
        let text = v.to_string();
        Ok(if v.get("factors").is_some() {
            SetInput::Box(from_json(&text)?)
        } else if v.get("pieces").is_some() {
            SetInput::Segment(from_json(&text)?)
        } else {
            SetInput::Rays(from_json(&text)?)
        })
    }

    fn grid(&self, resolution: f64) -> Result<GridSpec> {
        let d = GridSpec::default();
        GridSpec::new(resolution, self.global.max_magnitude.unwrap_or(d.max_magnitude), self.global.seed)
    }

    fn scene(&self, n: usize) -> Result<Scene> {
        let mut scene = Scene::new(n)?;
        if let Some(m) = self.global.max_magnitude {
            scene.clip = m;
        }
        Ok(scene)
    }
}

enum SetInput {
    Rays(RaySet),
    Box(BoxSet),
    Segment(SegmentSet),
}

fn emit<T: Serialize>(value: &T) -> String {
    to_json(value)
}

fn merge(base: Value, extra: Value) -> Value {
    match (base, extra) {
        (Value::Object(mut a), Value::Object(b)) => {
            a.extend(b);
            Value::Object(a)
        }
        (a, _) => a,
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> CliResult<String> {
    let fmt = ctx.global.out;
    match command {
        Command::Eval { mode, expr } => {
            let source = match expr {
                Some(e) => e,
                None => ctx.read("-")?,
            };
            let v = eval_expr(source.trim(), mode)?;
            Ok(match fmt {
                OutFormat::Json => emit(&v),
                OutFormat::Text => v.to_string(),
                OutFormat::Svg => {
                    let mut scene = ctx.scene(1)?;
                    scene.add_point(&v.into())?;
                    scene.render()
                }
            })
        }
        Command::Segment { kind, a, b } => {
            let (a, b) = (ctx.point(&a)?, ctx.point(&b)?);
            segment(ctx, fmt, kind, &a, &b)
        }
        Command::Project { point, set, base, metric, resolution } => {
            let x = ctx.point(&point)?;
            let set = ctx.set(&set)?;
            project(ctx, fmt, &x, &set, base, metric, resolution)
        }
        Command::Check { set, chebyshev, connected, traditional, geometric, semimodule } => {
            let flags = [chebyshev, connected, traditional, geometric, semimodule];
            let all = !flags.iter().any(|&f| f);
            let set = ctx.set(&set)?;
            let mut report = Map::new();
            match &set {
                SetInput::Rays(c) => {
                    if all || chebyshev || connected {
                        report.insert("connected".into(), is_connected(c)?.into());
                    }
                    if all || chebyshev {
                        report.insert("chebyshev".into(), is_chebyshev(c)?.into());
                    }
                    if all || traditional {
                        report.insert("traditionally_convex".into(), is_traditionally_convex(c)?.into());
                    }
                    if all || geometric {
                        report.insert("geometrically_convex".into(), is_geometrically_convex(c)?.into());
                    }
                    if all || semimodule {
                        report.insert("semimodule_convex".into(), is_semimodule_convex(c)?.into());
                    }
                }
                SetInput::Box(a) => {
                    if traditional || geometric {
                        return Err(Failure::Usage(
                            "traditional and geometric convexity are only decided for subsets of 𝕊".into(),
                        ));
                    }
                    let factors_connected = a
                        .factors
                        .iter()
                        .map(is_connected)
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .all(|c| c);
                    if all || chebyshev || connected {
                        report.insert("connected".into(), factors_connected.into());
                    }
                    if all || chebyshev {
                        report.insert("chebyshev".into(), factors_connected.into());
                    }
                    if all || semimodule {
                        report.insert("semimodule_convex".into(), is_box_semimodule_convex(a)?.into());
                    }
                }
                SetInput::Segment(_) => {
                    return Err(Failure::Usage("check expects a ray set or a box".into()));
                }
            }
            Ok(match fmt {
                OutFormat::Json => Value::Object(report).to_string(),
                OutFormat::Text => report.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
                OutFormat::Svg => match &set {
                    SetInput::Rays(c) => {
                        let mut scene = ctx.scene(1)?;
                        scene.add_rayset(0, c)?;
                        scene.render()
                    }
                    SetInput::Box(a) => {
                        let mut scene = ctx.scene(a.dim())?;
                        scene.add_box(a)?;
                        scene.render()
                    }
                    SetInput::Segment(_) => unreachable!("rejected above"),
                },
            })
        }
        Command::Oracle { what, resolution } => oracle(ctx, fmt, what, resolution),
    }
}

fn segment(
    ctx: &Ctx<'_>,
    fmt: OutFormat,
    kind: SegmentKind,
    a: &SVector,
    b: &SVector,
) -> CliResult<String> {
    let render_set = |s: &SegmentSet| -> Result<String> {
        let mut scene = ctx.scene(a.len())?;
        scene.add_segment_set(s)?;
        Ok(scene.render())
    };
    Ok(match kind {
        SegmentKind::Geometric => {
            let line = geometric_segment(a, b)?;
            match fmt {
                OutFormat::Json => emit(&line),
                OutFormat::Text => {
                    let mut s = format!("length: {}\n", line.length);
                    for (t, v) in line.t.iter().zip(line.vertex_points()) {
                        s.push_str(&format!("t = {t}: {v:?}\n"));
                    }
                    s
                }
                OutFormat::Svg => {
                    let mut scene = ctx.scene(a.len())?;
                    scene.add_broken_line(&line)?;
                    scene.render()
                }
            }
        }
        SegmentKind::Semimodule => {
            let s = semimodule_segment(a, b)?;
            let components = component_count(&s);
            match fmt {
                OutFormat::Json => {
                    let v = serde_json::to_value(&s).expect("segment sets serialize");
                    merge(v, json!({ "components": components })).to_string()
                }
                OutFormat::Text => format!("{s}\ncomponents: {components}\n"),
                OutFormat::Svg => render_set(&s)?,
            }
        }
        SegmentKind::Traditional => match traditional_segment(a, b)? {
            Some(s) => match fmt {
                OutFormat::Json => {
                    let v = serde_json::to_value(&s).expect("segment sets serialize");
                    merge(v, json!({ "representable": true })).to_string()
                }
                OutFormat::Text => format!("{s}\n"),
                OutFormat::Svg => render_set(&s)?,
            },
            None => match fmt {
                OutFormat::Json => json!({ "representable": false }).to_string(),
                OutFormat::Text => "not representable as a subset of 𝕊ⁿ\n".to_string(),
                OutFormat::Svg => {
                    return Err(Failure::Domain(Error::Precondition(
                        "the traditional segment is not representable in 𝕊ⁿ".into(),
                    )))
                }
            },
        },
    })
}

fn project_text<P: std::fmt::Debug>(p: &ProjectionResult<P>) -> String {
    let mut s = format!("distance: {}\nsingleton: {}\n", p.distance, p.singleton);
    for q in &p.points {
        s.push_str(&format!("{q:?}\n"));
    }
    s
}

fn project(
    ctx: &Ctx<'_>,
    fmt: OutFormat,
    x: &SVector,
    set: &SetInput,
    base: Option<Base>,
    metric: Option<MetricId>,
    resolution: Option<f64>,
) -> CliResult<String> {
    let id = match (metric, base) {
        (Some(m), Some(b)) if m.base != b => {
            return Err(Failure::Usage(format!("--metric {m} conflicts with --base {b}")));
        }
        (Some(m), _) => m,
        (None, Some(b)) => MetricId::new(Combine::Euclid, b),
        (None, None) => MetricId::D2,
    };
    let as_vectors = |p: ProjectionResult<SElem>| ProjectionResult {
        points: p.points.into_iter().map(SVector::from).collect(),
        distance: p.distance,
        singleton: p.singleton,
    };
    let (result, scene) = match set {
        SetInput::Rays(c) => {
            if x.len() != 1 {
                return Err(Error::DimensionMismatch { left: x.len(), right: 1 }.into());
            }
            let p = project_ray(x.get(0), c, id.base)?;
            if fmt == OutFormat::Json {
                return Ok(emit(&p));
            }
            if fmt == OutFormat::Text {
                return Ok(project_text(&p));
            }
            let mut scene = ctx.scene(1)?;
            scene.add_rayset(0, c)?;
            (as_vectors(p), scene)
        }
        SetInput::Box(a) => {
            let p = if id.combine == Combine::Max {
                match resolution {
                    Some(r) => project_box_max(x, a, id.base, r)?,
                    None => return Err(Error::MaxCombineNotFactorizable.into()),
                }
            } else {
                project_box(x, a, id)?
            };
            let mut scene = ctx.scene(a.dim().min(3))?;
            if fmt == OutFormat::Svg {
                scene.add_box(a)?;
            }
            (p, scene)
        }
        SetInput::Segment(s) => {
            let p = project_segment_set(x, s, id)?;
            let mut scene = ctx.scene(x.len().min(3))?;
            if fmt == OutFormat::Svg {
                scene.add_segment_set(s)?;
            }
            (p, scene)
        }
    };
    Ok(match fmt {
        OutFormat::Json => emit(&result),
        OutFormat::Text => project_text(&result),
        OutFormat::Svg => {
            let mut scene = scene;
            scene.add_projection(x, &result)?;
            scene.render()
        }
    })
}

fn oracle(ctx: &mut Ctx<'_>, fmt: OutFormat, what: OracleCommand, resolution: f64) -> CliResult<String> {
    if fmt == OutFormat::Svg {
        return Err(Failure::Usage("the oracle only prints JSON or text".into()));
    }
    let g = ctx.grid(resolution)?;
    let value = match what {
        OracleCommand::Project { point, set, metric } => {
            let x = ctx.point(&point)?;
            let a = match ctx.set(&set)? {
                SetInput::Rays(c) => BoxSet::new(vec![c])?,
                SetInput::Box(a) => a,
                SetInput::Segment(_) => {
                    return Err(Failure::Usage("the grid projection expects a ray set or a box".into()))
                }
            };
            let p = grid_project(&x, &a, metric, &g)?;
            let slack = cloud_slack(metric, a.dim(), &g);
            merge(serde_json::to_value(&p).expect("results serialize"), json!({ "slack": slack }))
        }
        OracleCommand::Segment { a, b } => {
            let (a, b) = (ctx.point(&a)?, ctx.point(&b)?);
            json!({ "points": grid_segment_sm(&a, &b, &g)? })
        }
        OracleCommand::Connected { set } => match ctx.set(&set)? {
            SetInput::Rays(c) => json!({ "connected": grid_connected(&c, &g)? }),
            _ => return Err(Failure::Usage("the grid connectivity test expects a ray set".into())),
        },
        OracleCommand::Dist { x, y, metric } => {
            let (x, y) = (ctx.point(&x)?, ctx.point(&y)?);
            if x.len() != y.len() {
                return Err(Error::DimensionMismatch { left: x.len(), right: y.len() }.into());
            }
            json!({ "distance": oracle_rho(metric, &x, &y) })
        }
    };
    Ok(match fmt {
        OutFormat::Text => serde_json::to_string_pretty(&value).expect("values serialize"),
        _ => value.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut input: &[u8] = b"";
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("smpa").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_prints_json() {
        let (code, out, _) = call(&["eval", "--mode", "mpa", "2 + 3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"sign":"+","exp":3}"#);
    }

    #[test]
    fn domain_error_is_reported_on_stderr() {
        let (code, _, err) = call(&["eval", "--mode", "mpa", "m:2 + 1"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "mode_violation");
    }

    #[test]
    fn usage_error_exits_2() {
        assert_eq!(call(&["segment", "--kind", "nope", "a", "b"]).0, 2);
        assert_eq!(call(&["project", "/nonexistent/x.json", "/nonexistent/s.json"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn max_combine_needs_resolution() {
        let x = r#"{"coords":[{"sign":"+","exp":1},{"sign":"-","exp":0}]}"#;
        let a = r#"{"factors":[{"plus":[[0,1]]},{"minus":[[2,3]]}]}"#;
        let (code, _, err) = call(&["project", "--metric", "rho02", x, a]);
        assert_eq!(code, 1);
        assert!(err.contains("max_combine"));
        let (code, out, _) = call(&["project", "--metric", "rho02", "--resolution", "0.1", x, a]);
        assert_eq!(code, 0);
        assert!(out.contains("\"singleton\":false"));
    }

    #[test]
    fn check_reports_sorted_keys() {
        let (code, out, _) = call(&["check", "--chebyshev", r#"{"plus":[[1,2]],"minus":[[1,2]]}"#]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"chebyshev":false,"connected":false}"#);
    }
}
