//! The `cw` command-line tool.
//!
//! Every command reads a polygon document, prints a JSON result (or writes
//! it to `--out`) and optionally draws an SVG figure. Exit codes: `0` success,
//! `2` bad input, `3` a mathematical identity failed.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::ball::{dual_ball, recover_primal, reorder_parallel, MinkowskiPlane};
use crate::cw::{central_equidistant, cusps_of_m, equidistant, CentralEquidistant, Cusps};
use crate::error::{Error, Result};
use crate::evolute::{
    containment_check, evolute, evolute_cusps, involute, signed_area, signed_area_gap,
};
use crate::geom::{CenteredBall, PairedPolygon};
use crate::io::{points_json, scalars_json, PolygonDocument};
use crate::iterate::{iterate_involutes, region_polygon, IterationTrace};
use crate::scalar::{Backend, Scalar};
use crate::svg::{render_svg, LayerKind, Scene};
use crate::verify::{verify, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "cw", version, about = "Polygons of constant Minkowskian width")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pair opposite sides and build the unit ball U and its dual V.
    Ball(Options),
    /// Dual of a centrally symmetric polygon.
    Dual(Options),
    /// Central equidistant M with its coefficients and cusps.
    Central(Options),
    /// Evolute (centers of curvature) and curvature radii.
    Evolute(Options),
    /// Involute N of the central equidistant and the signed area drop.
    Involute(Options),
    /// Iterated involutes converging to the central point.
    Iterate(Options),
    /// Run every identity on the polygon and print a report.
    Verify(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Polygon document (JSON).
    pub input: PathBuf,
    /// Half the width: U = (P_i - P_(i+n)) / (2a).
    #[arg(long, default_value = "1/2")]
    pub a: String,
    /// Equidistant parameter for M + cU.
    #[arg(long)]
    pub c: Option<String>,
    /// Equidistant parameter for N + dV.
    #[arg(long)]
    pub d: Option<String>,
    /// Maximum number of involute rounds.
    #[arg(long, default_value_t = 32)]
    pub steps: usize,
    /// Stop once the diameter of M(k) is below this.
    #[arg(long, default_value = "1e-6")]
    pub tol: String,
    #[arg(long, default_value = "rational")]
    pub backend: Backend,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write an SVG figure here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the iteration trace as CSV (`k,SA_M,SA_N,diameter`).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// What a command produced.
pub struct Outcome {
    pub json: Value,
    pub scene: Scene,
    pub csv: Option<String>,
    /// First identity that failed, if any.
    pub failure: Option<String>,
}

impl Outcome {
    fn new(json: Value, scene: Scene) -> Self {
        Outcome { json, scene, csv: None, failure: None }
    }
}

struct Parsed<S> {
    a: S,
    c: Option<S>,
    d: Option<S>,
    tol: S,
}

fn parse_options<S: Scalar>(opts: &Options) -> Result<Parsed<S>> {
    let positive = |text: &str, name: &'static str| -> Result<S> {
        let v = S::parse(text)?;
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::NonPositive(name))
        }
    };
    Ok(Parsed {
        a: positive(&opts.a, "a")?,
        c: opts.c.as_deref().map(S::parse).transpose()?,
        d: opts.d.as_deref().map(S::parse).transpose()?,
        tol: positive(&opts.tol, "tol")?,
    })
}

struct Setup<S> {
    doc: PolygonDocument,
    p: PairedPolygon<S>,
    plane: MinkowskiPlane<S>,
    m: CentralEquidistant<S>,
    cleanup: Vec<String>,
}

fn setup<S: Scalar>(doc: PolygonDocument, a: &S) -> Result<Setup<S>> {
    let (poly, notes) = doc.polygon::<S>()?;
    let p = reorder_parallel(&poly)?;
    let plane = MinkowskiPlane::new(&p, a.clone())?;
    let m = central_equidistant(&p, &plane.u)?;
    let cleanup = notes.iter().map(ToString::to_string).collect();
    let doc = PolygonDocument { name: doc.name, ..PolygonDocument::from_points(None, poly.vertices()) };
    Ok(Setup { doc, p, plane, m, cleanup })
}

fn header<S: Scalar>(command: &str, s: &Setup<S>) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("command".into(), json!(command));
    map.insert("backend".into(), json!(S::BACKEND));
    if let Some(name) = &s.doc.name {
        map.insert("name".into(), json!(name));
    }
    map.insert("polygon".into(), s.doc.to_json());
    map.insert("cleanup".into(), json!(s.cleanup));
    map.insert("a".into(), s.plane.a.to_json());
    map.insert("n".into(), json!(s.p.n()));
    map
}

fn cusps_json(c: &Cusps) -> Value {
    match c {
        Cusps::Degenerate => json!("degenerate"),
        Cusps::Indices(v) => json!(v),
    }
}

fn cmd_ball<S: Scalar>(s: &Setup<S>) -> Outcome {
    let mut map = header("ball", s);
    map.insert("paired".into(), points_json(s.p.vertices()));
    map.insert("u".into(), points_json(s.plane.u.vertices()));
    map.insert("v".into(), points_json(s.plane.v.vertices()));
    let mut scene = Scene::new();
    scene
        .add("polygon-p", LayerKind::Polygon, s.p.vertices())
        .add("ball-u", LayerKind::Ball, s.plane.u.vertices())
        .add("dual-v", LayerKind::Dual, s.plane.v.vertices());
    Outcome::new(Value::Object(map), scene)
}

fn cmd_dual<S: Scalar>(doc: &PolygonDocument) -> Result<Outcome> {
    let u = CenteredBall::new(doc.points::<S>()?)?;
    let v = dual_ball(&u);
    let recovered = recover_primal(&v).vertices().iter().zip(u.vertices()).all(|(x, y)| x.approx_eq(y));
    let mut out = Outcome::new(
        json!({
            "command": "dual",
            "backend": S::BACKEND,
            "name": doc.name,
            "u": points_json(u.vertices()),
            "v": points_json(v.vertices()),
            "area_u": u.area().to_json(),
            "area_v": v.area().to_json(),
        }),
        Scene::new(),
    );
    out.scene.add("ball-u", LayerKind::Ball, u.vertices()).add("dual-v", LayerKind::Dual, v.vertices());
    if !recovered {
        out.failure = Some("recovering U from its dual failed".into());
    }
    Ok(out)
}

fn cmd_central<S: Scalar>(s: &Setup<S>, c: Option<&S>) -> Outcome {
    let (u, m) = (&s.plane.u, &s.m);
    let mut map = header("central", s);
    map.insert("m".into(), points_json(&m.points));
    map.insert("alphas".into(), scalars_json(m.alphas.as_slice()));
    map.insert("betas".into(), scalars_json(&m.betas));
    map.insert("degenerate".into(), json!(m.is_degenerate()));
    map.insert("cusps".into(), cusps_json(&cusps_of_m(m, &s.p)));
    map.insert("min_convex_c".into(), m.min_convex_c().to_json());
    let mut scene = Scene::new();
    scene.add("polygon-p", LayerKind::Polygon, s.p.vertices());
    if let Some(c) = c {
        let pc = equidistant(m, u, c);
        map.insert("equidistant".into(), json!({ "c": c.to_json(), "points": points_json(&pc) }));
        scene.add("equidistant-c", LayerKind::Equidistant, &pc);
    }
    scene.add("central-m", LayerKind::Central, &m.points[..m.n()]);
    let mut out = Outcome::new(Value::Object(map), scene);
    if !m.ladder_holds(u) {
        out.failure = Some("beta ladder does not match the beta sums".into());
    }
    out
}

fn cmd_evolute<S: Scalar>(s: &Setup<S>) -> Result<Outcome> {
    let u = &s.plane.u;
    let e = evolute(s.p.vertices(), u)?;
    let mut map = header("evolute", s);
    map.insert("e".into(), points_json(e.points.as_slice()));
    map.insert("mus".into(), scalars_json(e.mus.as_slice()));
    map.insert("cusps".into(), cusps_json(&evolute_cusps(&e, u)));
    map.insert("cusps_m".into(), cusps_json(&cusps_of_m(&s.m, &s.p)));
    map.insert("signed_area".into(), signed_area(e.points.as_slice()).to_json());
    let mut scene = Scene::new();
    scene
        .add("polygon-p", LayerKind::Polygon, s.p.vertices())
        .add("central-m", LayerKind::Central, &s.m.points[..s.m.n()])
        .add("evolute-e", LayerKind::Evolute, &e.points.as_slice()[..s.p.n()]);
    Ok(Outcome::new(Value::Object(map), scene))
}

fn cmd_involute<S: Scalar>(s: &Setup<S>, d: Option<&S>, samples: usize) -> Result<Outcome> {
    let (u, v, m) = (&s.plane.u, &s.plane.v, &s.m);
    let inv = involute(m, v);
    let sa_m = signed_area(&m.points);
    let sa_n = signed_area(inv.points.as_slice());
    let gap = signed_area_gap(&m.betas, v);
    let region = region_polygon(m, u)?;
    let contained = containment_check(inv.points.as_slice(), &region, samples);
    let mut map = header("involute", s);
    map.insert("n_points".into(), points_json(inv.points.as_slice()));
    map.insert("betas".into(), scalars_json(&inv.betas));
    map.insert("sa_m".into(), sa_m.to_json());
    map.insert("sa_n".into(), sa_n.to_json());
    map.insert("gap".into(), gap.to_json());
    map.insert("contained".into(), json!(contained.contained));
    let mut scene = Scene::new();
    scene
        .add("polygon-p", LayerKind::Polygon, s.p.vertices())
        .add("central-m", LayerKind::Central, &m.points[..m.n()])
        .add("involute-n", LayerKind::Involute, &inv.points.as_slice()[..s.p.n()]);
    if let Some(d) = d {
        let n = CentralEquidistant::new(inv.points.0.clone(), v)?;
        let qd = equidistant(&n, v, d);
        map.insert("equidistant".into(), json!({ "d": d.to_json(), "points": points_json(&qd) }));
        scene.add("equidistant-d", LayerKind::Equidistant, &qd);
    }
    let mut out = Outcome::new(Value::Object(map), scene);
    if !(sa_m.clone() - sa_n).approx_eq(&gap) {
        out.failure = Some("SA(M) - SA(N) differs from the beta sum".into());
    } else if !contained.contained {
        out.failure = Some("a point of N lies outside M".into());
    }
    Ok(out)
}

/// `k,SA_M,SA_N,diameter`, one row per step.
pub fn trace_csv<S: Scalar>(trace: &IterationTrace<S>) -> String {
    let mut out = String::from("k,SA_M,SA_N,diameter\n");
    for s in &trace.steps {
        out.push_str(&format!("{},{},{},{:e}\n", s.k, s.sa_m, s.sa_n, s.diameter()));
    }
    out
}

fn cmd_iterate<S: Scalar>(s: &Setup<S>, parsed: &Parsed<S>, steps: usize) -> Result<Outcome> {
    let trace = iterate_involutes(&s.p, &parsed.a, steps, &parsed.tol)?;
    let rows: Vec<Value> = trace
        .steps
        .iter()
        .map(|st| {
            json!({
                "k": st.k,
                "sa_m": st.sa_m.to_json(),
                "sa_n": st.sa_n.to_json(),
                "alpha_gap": st.alpha_gap.to_json(),
                "beta_gap": st.beta_gap.to_json(),
                "diameter": st.diameter(),
            })
        })
        .collect();
    let sums = trace.sum_of_squares();
    let mut map = header("iterate", s);
    map.insert("trace".into(), Value::Array(rows));
    map.insert("center".into(), json!([trace.center.x.to_json(), trace.center.y.to_json()]));
    map.insert("radius".into(), json!(trace.radius));
    map.insert("converged".into(), json!(trace.converged));
    map.insert("slack".into(), sums.last().map_or(Value::Null, |(_, slack)| slack.to_json()));
    map.insert(
        "checks".into(),
        json!({
            "alpha_gaps": trace.steps.iter().all(|st| st.alpha_gap_holds()),
            "beta_gaps": trace.beta_gaps_hold(),
            "signed_areas_monotone": trace.signed_areas_monotone(),
            "sum_of_squares": trace.bound_holds(),
            "diameters_monotone": trace.diameters_monotone(),
        }),
    );

    let mut scene = Scene::new();
    scene.add("polygon-p", LayerKind::Polygon, s.p.vertices());
    let first = &trace.steps[0];
    if let Some(c) = &parsed.c {
        scene.add("equidistant-c", LayerKind::Equidistant, &equidistant(&first.m, &trace.plane.u, c));
    }
    if let Some(d) = &parsed.d {
        scene.add("equidistant-d", LayerKind::Equidistant, &equidistant(&first.n, &trace.plane.v, d));
    }
    for st in &trace.steps {
        scene.add(format!("iterate-k{}", st.k), LayerKind::Iterate, &st.m.points[..st.m.n()]);
    }

    let mut out = Outcome::new(Value::Object(map), scene);
    out.csv = Some(trace_csv(&trace));
    let failed = [
        (trace.steps.iter().all(|st| st.alpha_gap_holds()), "alpha gap"),
        (trace.beta_gaps_hold(), "beta gap"),
        (trace.signed_areas_monotone(), "signed area chain"),
        (trace.bound_holds(), "sum of squares bound"),
        (trace.diameters_monotone(), "diameter monotonicity"),
    ]
    .into_iter()
    .find(|(ok, _)| !ok);
    out.failure = failed.map(|(_, name)| format!("{name} failed"));
    Ok(out)
}

fn cmd_verify<S: Scalar>(doc: &PolygonDocument, parsed: &Parsed<S>, opts: &Options) -> Result<Outcome> {
    let vopts = VerifyOptions {
        a: parsed.a.clone(),
        c: parsed.c.clone(),
        steps: opts.steps,
        tol: parsed.tol.clone(),
        seed: opts.seed,
        samples: 16,
    };
    let report = verify(doc, &vopts)?;
    let s = setup::<S>(doc.clone(), &parsed.a)?;
    let e = evolute(s.p.vertices(), &s.plane.u)?;
    let inv = involute(&s.m, &s.plane.v);
    let mut scene = Scene::new();
    scene
        .add("polygon-p", LayerKind::Polygon, s.p.vertices())
        .add("ball-u", LayerKind::Ball, s.plane.u.vertices())
        .add("dual-v", LayerKind::Dual, s.plane.v.vertices())
        .add("central-m", LayerKind::Central, &s.m.points[..s.m.n()])
        .add("evolute-e", LayerKind::Evolute, &e.points.as_slice()[..s.p.n()])
        .add("involute-n", LayerKind::Involute, &inv.points.as_slice()[..s.p.n()]);
    let failure = report.failures().next().map(|c| format!("{}: expected {}, got {}", c.check_id, c.expected, c.actual));
    let json = serde_json::to_value(&report)?;
    Ok(Outcome { json, scene, csv: None, failure })
}

fn execute<S: Scalar>(command: &Command) -> Result<Outcome> {
    let opts = options(command);
    let parsed = parse_options::<S>(opts)?;
    let doc = PolygonDocument::read(&opts.input)?;
    match command {
        Command::Dual(_) => cmd_dual::<S>(&doc),
        Command::Verify(_) => cmd_verify(&doc, &parsed, opts),
        _ => {
            let s = setup::<S>(doc, &parsed.a)?;
            match command {
                Command::Ball(_) => Ok(cmd_ball(&s)),
                Command::Central(_) => Ok(cmd_central(&s, parsed.c.as_ref())),
                Command::Evolute(_) => cmd_evolute(&s),
                Command::Involute(_) => cmd_involute(&s, parsed.d.as_ref(), 16),
                Command::Iterate(_) => cmd_iterate(&s, &parsed, opts.steps),
                Command::Dual(_) | Command::Verify(_) => unreachable!("handled above"),
            }
        }
    }
}

fn options(command: &Command) -> &Options {
    match command {
        Command::Ball(o)
        | Command::Dual(o)
        | Command::Central(o)
        | Command::Evolute(o)
        | Command::Involute(o)
        | Command::Iterate(o)
        | Command::Verify(o) => o,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let opts = options(&cli.command);
    let result = match opts.backend {
        Backend::Rational => execute::<crate::scalar::Rational>(&cli.command),
        Backend::Float => execute::<f64>(&cli.command),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let emitted = (|| -> Result<()> {
        let text = serde_json::to_string_pretty(&outcome.json)? + "\n";
        match &opts.out {
            Some(path) => write_file(path, &text)?,
            None => print!("{text}"),
        }
        if let Some(path) = &opts.svg {
            write_file(path, &render_svg(&outcome.scene)?)?;
        }
        if let (Some(path), Some(csv)) = (&opts.csv, &outcome.csv) {
            write_file(path, csv)?;
        }
        Ok(())
    })();
    if let Err(e) = emitted {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("identity failure: {msg}");
            3
        }
        None => 0,
    }
}
