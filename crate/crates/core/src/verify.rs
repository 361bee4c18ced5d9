//! Runs every identity on one polygon and collects the outcomes.

use std::fmt::Display;

use serde::Serialize;

use crate::ball::{
    constant_width_equivalences, dual_ball, is_constant_width, recover_primal, reorder_parallel, width,
    CwVerdict, MinkowskiPlane,
};
use crate::cw::{
    barbier, central_equidistant, cusps_of_m, equidistant, half_area_identity, half_polygon_invariant,
    half_v_length, half_v_length_closed_form, isoperimetric, CentralEquidistant, Cusps,
};
use crate::error::{Error, Result};
use crate::evolute::{
    containment_check, evolute, evolute_cusps, evolute_forms, involute, involute_second_form, signed_area,
    signed_area_gap,
};
use crate::fuzz;
use crate::geom::{
    cyc, det, minkowski_sum, mixed_area, mixed_area_alt, parallel, polygon_area, CenteredBall, ConvexPolygon,
    PairedPolygon, Vec2,
};
use crate::io::PolygonDocument;
use crate::iterate::{iterate_involutes, region_polygon};
use crate::scalar::{Backend, Scalar};

/// Every check the report contains, in order.
pub const CHECK_IDS: &[&str] = &[
    "geom.det_antisymmetric",
    "geom.mixed_area_oracle",
    "geom.mixed_area_symmetry",
    "geom.area_quadratic",
    "ball.reorder_count",
    "ball.dual_identity",
    "ball.dual_inequality",
    "ball.duality_involution",
    "ball.constant_width",
    "ball.equivalences",
    "ball.reference_width",
    "cw.alpha_sum_zero",
    "cw.beta_ladder",
    "cw.half_v_length",
    "cw.barbier",
    "cw.barbier_seeded",
    "cw.half_area",
    "cw.isoperimetric",
    "cw.corollary",
    "cw.cusps_m",
    "evolute.defining_forms",
    "evolute.mu_pairs",
    "evolute.shared_by_equidistants",
    "evolute.involute_forms",
    "evolute.evolute_of_involute",
    "evolute.signed_area_gap",
    "evolute.containment",
    "evolute.cusps_e",
    "iterate.alpha_gaps",
    "iterate.beta_gaps",
    "iterate.signed_areas_monotone",
    "iterate.sum_of_squares",
    "iterate.nested",
    "iterate.diameters_monotone",
    "iterate.shrinks",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub backend: Backend,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub backend: Backend,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions<S> {
    pub a: S,
    /// Equidistant parameter; `a` when absent.
    pub c: Option<S>,
    pub steps: usize,
    pub tol: S,
    pub seed: u64,
    pub samples: usize,
}

impl<S: Scalar> Default for VerifyOptions<S> {
    fn default() -> Self {
        VerifyOptions {
            a: S::from_ratio(1, 2),
            c: None,
            steps: 16,
            tol: S::parse("1e-6").expect("literal"),
            seed: 0,
            samples: 16,
        }
    }
}

struct Recorder {
    backend: Backend,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, id: &str, expected: impl Display, actual: impl Display, pass: bool) {
        self.checks.push(Check {
            check_id: id.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
            backend: self.backend,
        });
    }

    fn equal<S: Scalar>(&mut self, id: &str, expected: &S, actual: &S) {
        self.record(id, expected, actual, expected.approx_eq(actual));
    }

    /// Records the first index where `holds` fails, or a pass.
    fn all(&mut self, id: &str, expected: &str, count: usize, holds: impl Fn(usize) -> bool) {
        match (0..count).find(|&i| !holds(i)) {
            None => self.record(id, expected, format!("holds at all {count} indices"), true),
            Some(i) => self.record(id, expected, format!("fails at index {i}"), false),
        }
    }

    fn error(&mut self, id: &str, expected: &str, err: &Error) {
        self.record(id, expected, format!("error: {err}"), false);
    }
}

fn cusp_text(c: &Cusps) -> String {
    match c {
        Cusps::Degenerate => "degenerate".into(),
        Cusps::Indices(v) => format!("{} cusps at {v:?}", v.len()),
    }
}

/// Number of sides of `poly` that have a parallel partner, counted pairwise.
fn parallel_pairs<S: Scalar>(poly: &ConvexPolygon<S>) -> usize {
    let v = poly.vertices();
    let k = v.len() as isize;
    let edge = |i: isize| cyc(v, i + 1) - cyc(v, i);
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| parallel(&edge(i), &edge(j)))
        .count()
}

/// Runs the whole suite on the document's polygon.
///
/// Input problems (unparsable, non-convex, degenerate) are returned as
/// errors; identities that fail are recorded in the report.
pub fn verify<S: Scalar>(doc: &PolygonDocument, opts: &VerifyOptions<S>) -> Result<Report> {
    if !opts.a.is_positive() {
        return Err(Error::NonPositive("a"));
    }
    let (poly, _) = doc.polygon::<S>()?;
    let reference = doc.reference_ball::<S>()?;
    let p = reorder_parallel(&poly)?;
    let plane = MinkowskiPlane::new(&p, opts.a.clone())?;
    let (u, v) = (&plane.u, &plane.v);
    let m = central_equidistant(&p, u)?;
    let c = opts.c.clone().unwrap_or_else(|| opts.a.clone());
    let min_c = m.min_convex_c();
    let c_convex = if c < min_c { min_c } else { c.clone() };

    let mut r = Recorder { backend: S::BACKEND, checks: Vec::new() };
    geom_checks(&mut r, &poly, &p, u);
    ball_checks(&mut r, &poly, &p, u, &opts.a, reference.as_ref());
    cw_checks(&mut r, &p, &m, u, v, &c, &c_convex, opts.seed);
    evolute_checks(&mut r, &p, &m, u, v, &c_convex, opts.samples);
    iterate_checks(&mut r, &p, opts);

    debug_assert_eq!(r.checks.iter().map(|c| c.check_id.as_str()).collect::<Vec<_>>(), CHECK_IDS);
    let passed = r.checks.iter().filter(|c| c.pass).count();
    let total = r.checks.len();
    Ok(Report {
        name: doc.name.clone(),
        backend: S::BACKEND,
        seed: opts.seed,
        checks: r.checks,
        summary: Summary { total, passed, failed: total - passed },
    })
}

fn geom_checks<S: Scalar>(r: &mut Recorder, poly: &ConvexPolygon<S>, p: &PairedPolygon<S>, u: &CenteredBall<S>) {
    let v = poly.vertices();
    let worst = v
        .iter()
        .flat_map(|a| v.iter().map(move |b| (det(a, b) + det(b, a)).abs()))
        .fold(S::zero(), |acc, x| if x > acc { x } else { acc });
    r.record("geom.det_antisymmetric", "0", &worst, worst.approx_eq(&S::zero()));

    let mixed = mixed_area(p.vertices(), u.vertices()).expect("same length");
    let sum_area = polygon_area(&minkowski_sum(v, u.vertices()));
    let oracle = (sum_area - poly.area() - u.area()).half();
    r.equal("geom.mixed_area_oracle", &oracle, &mixed);

    let alt = mixed_area_alt(p.vertices(), u.vertices()).expect("same length");
    r.equal("geom.mixed_area_symmetry", &mixed, &alt);

    // area(P + tU) = A(P) + 2t A(P, U) + t^2 A(U), fitted at t = 0, 1, 2.
    let area_at = |t: i64| {
        let scaled: Vec<Vec2<S>> = u.vertices().iter().map(|x| x.scale(&S::from_i64(t))).collect();
        polygon_area(&minkowski_sum(v, &scaled))
    };
    let (f0, f1, f2) = (area_at(0), area_at(1), area_at(2));
    let middle = (S::from_i64(4) * f1 - S::from_i64(3) * f0 - f2) / S::from_i64(4);
    r.equal("geom.area_quadratic", &mixed, &middle);
}

fn ball_checks<S: Scalar>(
    r: &mut Recorder,
    poly: &ConvexPolygon<S>,
    p: &PairedPolygon<S>,
    u: &CenteredBall<S>,
    a: &S,
    reference: Option<&CenteredBall<S>>,
) {
    let k = poly.len();
    let pairs = parallel_pairs(poly);
    r.record("ball.reorder_count", k - pairs, p.n(), k - pairs == p.n());

    let dual = dual_ball(u);
    let len = u.len();
    let one = S::one();
    r.all("ball.dual_identity", "[U_i, V] = [U_(i+1), V] = 1", len, |i| {
        let i = i as isize;
        let w = dual.vertex(i);
        det(u.vertex(i), w).approx_eq(&one) && det(u.vertex(i + 1), w).approx_eq(&one)
    });
    r.all("ball.dual_inequality", "[U_j, V_(i+1/2)] <= 1", len, |i| {
        let w = dual.vertex(i as isize);
        u.vertices().iter().all(|x| det(x, w).le_approx(&one))
    });
    let back = recover_primal(&dual);
    r.all("ball.duality_involution", "recovered U equals U", len, |i| {
        back.vertex(i as isize).approx_eq(u.vertex(i as isize))
    });

    match is_constant_width(p.vertices(), u) {
        CwVerdict::ConstantWidth(w) => {
            let two_a = a.clone() + a.clone();
            let widths_ok = dual.vertices().iter().all(|f| width(p.vertices(), f).approx_eq(&two_a));
            r.record("ball.constant_width", a, &w, w.approx_eq(a) && widths_ok);
        }
        CwVerdict::NotConstantWidth { index, reason } => {
            r.record("ball.constant_width", a, format!("{reason:?} at index {index}"), false)
        }
    }
    let eq = constant_width_equivalences(p.vertices(), u);
    r.record(
        "ball.equivalences",
        "all four characterizations agree",
        format!(
            "width {} sum {} diagonals {} ratio {}",
            eq.constant_width,
            eq.sum_homothetic,
            eq.diagonals_parallel,
            eq.diagonal_ratio.is_some()
        ),
        eq.all_agree() && eq.diagonal_ratio.is_some(),
    );

    let ball = reference.unwrap_or(u);
    let directions = dual_ball(ball);
    let widths: Vec<S> = directions.vertices().iter().map(|f| width(poly.vertices(), f)).collect();
    match (1..widths.len()).find(|&i| !widths[i].approx_eq(&widths[0])) {
        None => r.record("ball.reference_width", "constant width", format!("width {}", widths[0]), true),
        Some(i) => r.record(
            "ball.reference_width",
            format!("width {} in every direction", widths[0]),
            format!("width {} in direction {i}", widths[i]),
            false,
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn cw_checks<S: Scalar>(
    r: &mut Recorder,
    p: &PairedPolygon<S>,
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    v: &CenteredBall<S>,
    c: &S,
    c_convex: &S,
    seed: u64,
) {
    let sum = (0..m.len() as isize).fold(S::zero(), |acc, i| acc + m.alphas.at(i).clone() * u.edge_det(i));
    r.equal("cw.alpha_sum_zero", &S::zero(), &sum);
    r.record("cw.beta_ladder", "ladder matches sums", m.ladder_holds(u), m.ladder_holds(u));

    r.all("cw.half_v_length", "L_V(i, c) = c A(U) + 2 beta_i", m.len(), |i| {
        half_v_length(m, u, v, i, c)
            .map(|l| l.approx_eq(&half_v_length_closed_form(m, u, i, c)))
            .unwrap_or(false)
    });

    match barbier(m, u, c) {
        Ok(b) => r.equal("cw.barbier", &b.expected, &b.actual),
        Err(e) => r.error("cw.barbier", "2c A(U)", &e),
    }
    let mut rng = fuzz::rng(seed);
    let cs: Vec<S> = (0..16).map(|_| fuzz::random_c(&mut rng)).collect();
    let failed = cs.iter().find(|c| !barbier(m, u, c).map(|b| b.holds()).unwrap_or(false));
    match failed {
        None => r.record("cw.barbier_seeded", "2c A(U) for 16 seeded c", "holds for all", true),
        Some(c) => r.record("cw.barbier_seeded", "2c A(U) for 16 seeded c", format!("fails at c = {c}"), false),
    }

    r.all("cw.half_area", "A_1 - A_2 = 4c beta_i", m.len(), |i| {
        half_area_identity(m, u, i, c_convex).map(|h| h.holds()).unwrap_or(false)
    });
    match isoperimetric(m, u, c_convex) {
        Ok((lhs, rhs)) => r.record("cw.isoperimetric", format!(">= {rhs}"), &lhs, rhs.le_approx(&lhs)),
        Err(e) => r.error("cw.isoperimetric", "L^2 >= 4 A(U) A(P)", &e),
    }
    match half_polygon_invariant(m, u, c_convex) {
        Ok(h) => r.record(
            "cw.corollary",
            format!("constant, closed form {}", h.closed_form_rhs),
            format!("values {}", h.values.first().map(|v| v.to_string()).unwrap_or_default()),
            h.is_constant() && h.closed_form_holds(),
        ),
        Err(e) => r.error("cw.corollary", "constant", &e),
    }

    let cusps = cusps_of_m(m, p);
    let ok = match cusps.count() {
        None => true,
        Some(k) => k % 2 == 1 && k >= 3,
    };
    r.record("cw.cusps_m", "odd and at least 3", cusp_text(&cusps), ok);
}

fn evolute_checks<S: Scalar>(
    r: &mut Recorder,
    p: &PairedPolygon<S>,
    m: &CentralEquidistant<S>,
    u: &CenteredBall<S>,
    v: &CenteredBall<S>,
    c: &S,
    samples: usize,
) {
    let e = match evolute(p.vertices(), u) {
        Ok(e) => e,
        Err(err) => {
            for id in CHECK_IDS.iter().filter(|id| id.starts_with("evolute.")) {
                r.error(id, "evolute exists", &err);
            }
            return;
        }
    };
    let forms = evolute_forms(p.vertices(), u, &e);
    r.all("evolute.defining_forms", "P_i - mu U_i = P_(i+1) - mu U_(i+1)", forms.len(), |i| {
        forms[i].0.approx_eq(&forms[i].1)
    });

    let pc = equidistant(m, u, c);
    match evolute(&pc, u) {
        Ok(ec) => {
            let n = p.n() as isize;
            let two_c = c.clone() + c.clone();
            r.all("evolute.mu_pairs", "mu_i + mu_(i+n) = 2c", p.len(), |i| {
                let i = i as isize;
                (ec.mus.at(i).clone() + ec.mus.at(i + n).clone()).approx_eq(&two_c)
            });
            r.all("evolute.shared_by_equidistants", "E(P(c)) = E(P)", p.len(), |i| {
                ec.points[i].approx_eq(&e.points[i])
            });
        }
        Err(err) => {
            r.error("evolute.mu_pairs", "mu_i + mu_(i+n) = 2c", &err);
            r.error("evolute.shared_by_equidistants", "E(P(c)) = E(P)", &err);
        }
    }

    let inv = involute(m, v);
    let second = involute_second_form(m, v);
    r.all("evolute.involute_forms", "both expressions of N agree", second.len(), |i| {
        inv.points[i].approx_eq(&second[i])
    });
    match evolute(&inv.points.0, v) {
        Ok(back) => r.all("evolute.evolute_of_involute", "E(N)_i = M_(i+1)", back.points.len(), |i| {
            back.points[i].approx_eq(m.point(i as isize + 1))
        }),
        Err(err) => r.error("evolute.evolute_of_involute", "E(N)_i = M_(i+1)", &err),
    }

    let sa_m = signed_area(&m.points);
    let sa_n = signed_area(&inv.points.0);
    let gap = signed_area_gap(&m.betas, v);
    let zero = S::zero();
    r.record(
        "evolute.signed_area_gap",
        format!("{gap}"),
        format!("{}", sa_m.clone() - sa_n.clone()),
        (sa_m.clone() - sa_n.clone()).approx_eq(&gap) && zero.le_approx(&sa_m) && zero.le_approx(&sa_n),
    );

    match region_polygon(m, u) {
        Ok(region) => {
            let check = containment_check(&inv.points.0, &region, samples);
            let actual = match check.witnesses.first() {
                None => format!("{} points inside", check.tested),
                Some(w) => format!("segment {} at t = {} outside ({:?})", w.segment, w.t, w.chords),
            };
            r.record("evolute.containment", "N inside the closure of M", actual, check.contained);
        }
        Err(err) => r.error("evolute.containment", "N inside the closure of M", &err),
    }

    let ce = evolute_cusps(&e, u);
    let cm = cusps_of_m(m, p);
    let ok = match (ce.count(), cm.count()) {
        (None, _) | (_, None) => true,
        (Some(ke), Some(km)) => ke % 2 == 1 && ke >= km,
    };
    r.record("evolute.cusps_e", "odd and at least the cusps of M", cusp_text(&ce), ok);
}

fn iterate_checks<S: Scalar>(r: &mut Recorder, p: &PairedPolygon<S>, opts: &VerifyOptions<S>) {
    let trace = match iterate_involutes(p, &opts.a, opts.steps, &opts.tol) {
        Ok(t) => t,
        Err(err) => {
            for id in CHECK_IDS.iter().filter(|id| id.starts_with("iterate.")) {
                r.error(id, "iteration runs", &err);
            }
            return;
        }
    };
    let steps = &trace.steps;
    r.all("iterate.alpha_gaps", "SA(N(k)) - SA(M(k)) = alpha sum", steps.len(), |k| steps[k].alpha_gap_holds());
    r.record("iterate.beta_gaps", "SA(M(k)) - SA(N(k+1)) = beta sum", trace.beta_gaps_hold(), trace.beta_gaps_hold());
    r.record(
        "iterate.signed_areas_monotone",
        "SA(N(0)) >= SA(M(0)) >= SA(N(1)) >= ... >= 0",
        trace.signed_areas_monotone(),
        trace.signed_areas_monotone(),
    );
    let slack = trace.sum_of_squares().last().map(|(_, s)| s.to_string()).unwrap_or_else(|| "no prefix".into());
    r.record("iterate.sum_of_squares", "nonnegative slack", format!("final slack {slack}"), trace.bound_holds());

    let levels = steps.len().min(4);
    let mut failure = None;
    for w in steps.windows(2).take(levels) {
        let (cur, next) = (&w[0], &w[1]);
        let outer = region_polygon(&cur.m, &trace.plane.u).map(|reg| containment_check(&next.n.points, &reg, opts.samples));
        let inner = region_polygon(&cur.n, &trace.plane.v).map(|reg| containment_check(&cur.m.points, &reg, opts.samples));
        match (outer, inner) {
            (Ok(o), Ok(i)) if o.contained && i.contained => {}
            (Ok(o), _) if !o.contained => failure = failure.or(Some(format!("N({}) leaves M({})", cur.k + 1, cur.k))),
            (_, Ok(i)) if !i.contained => failure = failure.or(Some(format!("M({0}) leaves N({0})", cur.k))),
            _ => failure = failure.or(Some(format!("no region at step {}", cur.k))),
        }
    }
    match failure {
        None => r.record("iterate.nested", "nested closures", format!("{levels} levels nested"), true),
        Some(f) => r.record("iterate.nested", "nested closures", f, false),
    }

    r.record("iterate.diameters_monotone", true, trace.diameters_monotone(), trace.diameters_monotone());
    let first = steps[0].diameter();
    let last = trace.radius;
    r.record(
        "iterate.shrinks",
        format!("diameter below {first} or converged"),
        format!("diameter {last} after {} steps, center ({}, {})", steps.len() - 1, trace.center.x, trace.center.y),
        trace.converged || last < first,
    );
}
