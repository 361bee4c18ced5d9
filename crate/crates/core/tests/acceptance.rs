//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::cell::OnceCell;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use cwpoly::ball::{dual_ball, recover_primal, unit_ball};
use cwpoly::cw::{barbier, central_equidistant, cusps_of_m, half_polygon_invariant, CentralEquidistant, Cusps};
use cwpoly::evolute::{
    containment_check, evolute, evolute_cusps, evolute_forms, involute, involute_second_form, signed_area,
    signed_area_gap,
};
use cwpoly::fuzz::{self, FuzzRng};
use cwpoly::geom::{det, CenteredBall, ConvexPolygon, PairedPolygon, Vec2};
use cwpoly::io::PolygonDocument;
use cwpoly::iterate::{iterate_involutes, region_polygon, IterationTrace};
use cwpoly::{Rational, Scalar};
use num_traits::{One, Signed, Zero};

type Q = Rational;

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn v(x: i64, y: i64) -> Vec2<Q> {
    Vec2::from_ints(x, y)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// A fuzz instance: paired polygon, half width, its plane and central equidistant.
struct Instance {
    p: PairedPolygon<Q>,
    a: Q,
    u: CenteredBall<Q>,
    v: CenteredBall<Q>,
    m: CentralEquidistant<Q>,
    c: Q,
}

fn instance(rng: &mut FuzzRng) -> Instance {
    let p = fuzz::random_paired(rng);
    let a = fuzz::random_c(rng);
    let u = unit_ball(&p, &a).expect("paired input");
    let v = dual_ball(&u);
    let m = central_equidistant(&p, &u).expect("ball from p");
    let c = fuzz::random_c(rng);
    Instance { p, a, u, v, m, c }
}

fn instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = fuzz::rng(seed);
    (0..count).map(|_| instance(&mut rng)).collect()
}

/// Shoelace area, kept separate from the library.
fn shoelace(points: &[Vec2<Q>]) -> Q {
    let k = points.len();
    (0..k).fold(Q::zero(), |acc, i| acc + det(&points[i], &points[(i + 1) % k])) / Q::from_i64(2)
}

fn triangle_golden() -> Outcome {
    let tri = ConvexPolygon::new(vec![v(0, 0), v(1, 0), v(0, 1)]).unwrap();
    let p = cwpoly::ball::reorder_parallel(&tri).unwrap();
    let a = q(1, 2);
    let u = unit_ball(&p, &a).unwrap();
    let dual = dual_ball(&u);
    let m = central_equidistant(&p, &u).unwrap();
    let mut fails = Vec::new();

    // Independent pass: every quantity from its definition, by hand.
    let pv = p.vertices();
    let n = 3;
    let oracle_u: Vec<Vec2<Q>> = (0..6).map(|i| (&pv[i] - &pv[(i + n) % 6]).scale(&(Q::one() / (a.clone() + a.clone())))).collect();
    let oracle_v: Vec<Vec2<Q>> = (0..6)
        .map(|i| {
            let (ui, uj) = (&oracle_u[i], &oracle_u[(i + 1) % 6]);
            (uj - ui).scale(&(Q::one() / det(ui, uj)))
        })
        .collect();
    let oracle_m: Vec<Vec2<Q>> = (0..6).map(|i| pv[i].midpoint(&pv[(i + n) % 6])).collect();
    let golden_u = [v(0, -1), v(1, -1), v(1, 0), v(0, 1), v(-1, 1), v(-1, 0)];
    let golden_v = [v(1, 0), v(0, 1), v(-1, 1), v(-1, 0), v(0, -1), v(1, -1)];
    if oracle_u != golden_u || u.vertices() != golden_u {
        fails.push("U");
    }
    if oracle_v != golden_v || dual.vertices() != golden_v {
        fails.push("V");
    }
    let medial = [Vec2::new(q(0, 1), q(1, 2)), Vec2::new(q(1, 2), q(1, 2)), Vec2::new(q(1, 2), q(0, 1))];
    let medial_ok = (0..6).all(|i| oracle_m[i] == medial[i % 3] && m.points[i] == medial[i % 3]);
    if !medial_ok {
        fails.push("M");
    }
    // alpha from M_(i+1) - M_i = alpha (U_(i+1) - U_i), beta from the half sums.
    let oracle_alpha: Vec<Q> = (0..6)
        .map(|i| {
            let dm = &oracle_m[(i + 1) % 6] - &oracle_m[i];
            let du = &oracle_u[(i + 1) % 6] - &oracle_u[i];
            if du.x.is_zero() { dm.y / du.y } else { dm.x / du.x }
        })
        .collect();
    let oracle_beta: Vec<Q> = (0..6)
        .map(|i| {
            let s = (i..i + n).fold(Q::zero(), |acc, j| {
                acc + oracle_alpha[j % 6].clone() * det(&oracle_u[j % 6], &oracle_u[(j + 1) % 6])
            });
            s / Q::from_i64(2)
        })
        .collect();
    let alpha_ok = m.alphas.as_slice() == oracle_alpha.as_slice()
        && oracle_alpha.iter().all(|x| x.abs() == q(1, 2))
        && (0..3).all(|i| oracle_alpha[i + 3] == -oracle_alpha[i].clone());
    if !alpha_ok {
        fails.push("alpha");
    }
    let beta_ok = m.betas == oracle_beta
        && oracle_beta.iter().all(|x| x.abs() == q(1, 4))
        && (0..3).all(|i| oracle_beta[i + 3] == -oracle_beta[i].clone());
    if !beta_ok {
        fails.push("beta");
    }
    let area_u = shoelace(&oracle_u);
    let b = barbier(&m, &u, &a).unwrap();
    if area_u != q(3, 1) || b.actual != q(3, 1) || b.expected != a.clone() * q(2, 1) * area_u {
        fails.push("L_V");
    }
    let inv = involute(&m, &dual);
    let sa_m = -shoelace(&m.points);
    let sa_n = -shoelace(inv.points.as_slice());
    let gap_oracle = (0..3).fold(Q::zero(), |acc, i| {
        acc + oracle_beta[i].clone() * oracle_beta[i].clone() * det(&oracle_v[(i + 5) % 6], &oracle_v[i])
    });
    let gap = signed_area_gap(&m.betas, &dual);
    if sa_m != q(1, 4) || sa_n != q(1, 16) || gap != q(3, 16) || gap_oracle != q(3, 16) || signed_area(&m.points) != sa_m {
        fails.push("signed areas");
    }
    let e = evolute(pv, &u).unwrap();
    if !(0..3).all(|i| e.mus[i].clone() + e.mus[i + 3].clone() == Q::one()) {
        fails.push("mu sums");
    }
    outcome(
        fails.is_empty(),
        if fails.is_empty() {
            "U, V, M, alpha, beta, L_V = 3, SA 1/4 and 1/16, gap 3/16, mu sums 1".to_string()
        } else {
            format!("mismatch in {}", fails.join(", "))
        },
    )
}

fn barbier_property(set: &[Instance]) -> Outcome {
    let bad = set.iter().position(|s| !barbier(&s.m, &s.u, &s.c).map(|b| b.expected == b.actual).unwrap_or(false));
    match bad {
        None => outcome(true, format!("{} instances, exact", set.len())),
        Some(i) => outcome(false, format!("instance {i} differs")),
    }
}

fn duality_involution() -> Outcome {
    let mut rng = fuzz::rng(3);
    let mut bad = None;
    for i in 0..1000 {
        let u: CenteredBall<Q> = fuzz::random_ball(&mut rng);
        let twice = dual_ball(&dual_ball(&u));
        let back = recover_primal(&dual_ball(&u));
        if twice != u.rotated(u.n() + 1) || back != u {
            bad = Some(i);
            break;
        }
    }
    match bad {
        None => outcome(true, "1000 balls: dual of dual is U (list rotated by n + 1), recovery formula index-exact"),
        Some(i) => outcome(false, format!("ball {i} not recovered")),
    }
}

fn defining_forms(set: &[Instance]) -> Outcome {
    for (k, s) in set.iter().enumerate() {
        let e = match evolute(s.p.vertices(), &s.u) {
            Ok(e) => e,
            Err(err) => return outcome(false, format!("instance {k}: {err}")),
        };
        if evolute_forms(s.p.vertices(), &s.u, &e).iter().any(|(x, y)| x != y) {
            return outcome(false, format!("instance {k}: evolute forms differ"));
        }
        let first = involute(&s.m, &s.v);
        if first.points.as_slice() != involute_second_form(&s.m, &s.v).as_slice() {
            return outcome(false, format!("instance {k}: involute forms differ"));
        }
    }
    outcome(true, format!("{} instances, evolute and involute forms equal", set.len()))
}

fn traces(set: &[Instance]) -> Vec<IterationTrace<Q>> {
    let tiny = Q::parse("1e-60").unwrap();
    set.iter().map(|s| iterate_involutes(&s.p, &s.a, 16, &tiny).expect("valid instance")).collect()
}

fn signed_area_chain(traces: &[IterationTrace<Q>]) -> Outcome {
    for (k, t) in traces.iter().enumerate() {
        if t.steps.len() != 17 {
            return outcome(false, format!("instance {k}: {} steps", t.steps.len()));
        }
        let independent = t.steps.iter().all(|s| {
            s.sa_m == signed_area(&s.m.points) && s.sa_n == signed_area(&s.n.points)
        });
        let ok = independent
            && t.signed_areas_monotone()
            && t.steps.iter().all(|s| s.alpha_gap_holds())
            && t.beta_gaps_hold()
            && t.bound_holds();
        if !ok {
            return outcome(false, format!("instance {k} breaks the chain"));
        }
    }
    outcome(true, format!("{} instances x 16 steps, gaps and prefix bound exact", traces.len()))
}

fn containment(traces: &[IterationTrace<Q>]) -> Outcome {
    let mut tested = 0;
    for (k, t) in traces.iter().enumerate() {
        for w in t.steps.windows(2).take(5) {
            let region = match region_polygon(&w[0].m, &t.plane.u) {
                Ok(r) => r,
                Err(e) => return outcome(false, format!("instance {k} step {}: {e}", w[0].k)),
            };
            let c = containment_check(&w[1].n.points, &region, 16);
            tested += c.tested;
            if !c.contained {
                let wit = &c.witnesses[0];
                return outcome(
                    false,
                    format!("RED ALERT instance {k}: N({}) leaves M({}) on segment {} at t = {}", w[1].k, w[0].k, wit.segment, wit.t),
                );
            }
        }
    }
    outcome(true, format!("{} instances, levels 0..4, {tested} sampled points inside", traces.len()))
}

fn convergence() -> Outcome {
    let mut rng = fuzz::rng(7);
    let mut worst = 0;
    for k in 0..100 {
        let p: PairedPolygon<f64> = fuzz::random_paired(&mut rng);
        let t = match iterate_involutes(&p, &0.5, 10_000, &1e-6) {
            Ok(t) => t,
            Err(e) => return outcome(false, format!("instance {k}: {e}")),
        };
        if !t.converged || !t.diameters_monotone() {
            return outcome(false, format!("instance {k}: converged {} monotone {}", t.converged, t.diameters_monotone()));
        }
        worst = worst.max(t.steps.len() - 1);
    }
    outcome(true, format!("100 float instances below 1e-6, at most {worst} steps, diameters monotone"))
}

fn corollary(set: &[Instance]) -> Outcome {
    for (k, s) in set.iter().enumerate() {
        let c = s.m.min_convex_c() + s.c.clone();
        match half_polygon_invariant(&s.m, &s.u, &c) {
            Ok(h) if h.is_constant() && h.closed_form_holds() => {}
            Ok(_) => return outcome(false, format!("instance {k}: not constant or closed form differs")),
            Err(e) => return outcome(false, format!("instance {k}: {e}")),
        }
    }
    outcome(true, format!("{} convex equidistants, constant; 2cL_V - 2A_1 = 2c^2 A(U) - A(P)", set.len()))
}

fn cusp_parity(set: &[Instance]) -> Outcome {
    let mut checked = 0;
    for (k, s) in set.iter().enumerate() {
        let cm = cusps_of_m(&s.m, &s.p);
        let e = evolute(s.p.vertices(), &s.u).expect("evolute");
        let ce = evolute_cusps(&e, &s.u);
        let (km, ke) = match (&cm, &ce) {
            (Cusps::Degenerate, _) => continue,
            (Cusps::Indices(m), Cusps::Indices(e)) => (m.len(), e.len()),
            (Cusps::Indices(_), Cusps::Degenerate) => return outcome(false, format!("instance {k}: E degenerate, M not")),
        };
        checked += 1;
        if km % 2 == 0 || km < 3 || ke % 2 == 0 || ke < km {
            return outcome(false, format!("instance {k}: {km} cusps of M, {ke} of E"));
        }
    }
    outcome(true, format!("{checked} non-symmetric instances, M odd >= 3, E odd >= M"))
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cw");
    let data = |name: &str| format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let dir = std::env::temp_dir().join(format!("cw-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let concave = dir.join("concave.json");
    std::fs::write(&concave, r#"{"vertices": [[0, 0], [2, 0], [1, 1], [2, 2], [0, 2]]}"#).unwrap();
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let codes: [(Vec<String>, i32); 4] = [
        (vec!["verify".into(), data("triangle.json")], 0),
        (vec!["verify".into(), data("non-cw-hexagon.json")], 3),
        (vec!["central".into(), concave.display().to_string()], 2),
        (vec!["ball".into(), dir.join("missing.json").display().to_string()], 2),
    ];
    for (args, code) in &codes {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&args).status.code();
        if got != Some(*code) {
            return outcome(false, format!("{args:?} exited with {got:?}, expected {code}"));
        }
    }

    let svg = |name: &str| {
        let path = dir.join(name);
        run(&["verify", &data("triangle.json"), "--svg", path.to_str().unwrap()]);
        std::fs::read(path).unwrap_or_default()
    };
    let (first, second) = (svg("a.svg"), svg("b.svg"));
    if first.is_empty() || first != second {
        return outcome(false, "SVG output differs between runs");
    }

    let input = data("octagon.json");
    let out = run(&["ball", &input]);
    let echoed: serde_json::Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("ball output is not JSON: {e}")),
    };
    let doc: PolygonDocument = serde_json::from_value(echoed["polygon"].clone()).unwrap();
    let original = PolygonDocument::read(Path::new(&input)).unwrap();
    if doc.points::<Q>().unwrap() != original.points::<Q>().unwrap() {
        return outcome(false, "polygon changed across the JSON round trip");
    }
    outcome(true, "exit codes 0/2/3, byte-identical SVG, JSON round trip")
}

fn main() {
    let start = Instant::now();
    let set = instances(2024, 1000);
    let iter_set = instances(99, 200);
    let cache = OnceCell::new();
    let traces = || cache.get_or_init(|| traces(&iter_set)).as_slice();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("triangle golden walkthrough", Box::new(triangle_golden)),
        ("Barbier property", Box::new(|| barbier_property(&set))),
        ("duality involution", Box::new(duality_involution)),
        ("defining-form agreement", Box::new(|| defining_forms(&set))),
        ("signed-area chain", Box::new(|| signed_area_chain(traces()))),
        ("containment", Box::new(|| containment(traces()))),
        ("convergence", Box::new(convergence)),
        ("corollary constancy", Box::new(|| corollary(&set))),
        ("cusp parity", Box::new(|| cusp_parity(&set))),
        ("CLI contract", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {} [{:.1?}]",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {} of {} passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
