//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use metric_geom::ball_approx::{
    ball_deviation_from_set, ball_hausdorff, best_ball, set_deviation_from_ball, ConvexBody,
};
use metric_geom::chebyshev::{chebyshev_center, closure_z1_membership, self_sets, CenterOptions};
use metric_geom::hausdorff::{hausdorff, midpoint_set};
use metric_geom::hilbert::{
    lobachevsky_unit_dist, median_length, tangent_limit, tangent_norm, HilbertBall, TangentMode,
};
use metric_geom::maps::{compose, delta_p_equivalence_check, similarity_coefficient, MapTable};
use metric_geom::nnet::{alpha_p, alpha_pr_geodesic, Exponent};
use metric_geom::projection::{
    delta_projection_stability, lambda_disconnect, ratio_monotonicity_check, DiskRegion, Region,
};
use metric_geom::report::worst_slack;
use metric_geom::{CoordSpace, Euclidean, GeodesicSpace, KleinBall, MetricSpace, ModelSpace, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the open disk of radius `r`.
fn in_disk(g: &mut ChaCha8Rng, r: f64) -> Point {
    let t = g.random_range(0.0..2.0 * PI);
    let s = r * g.random::<f64>().sqrt();
    Point::xy(s * t.cos(), s * t.sin())
}

fn same_set(a: &[Point], b: &[Point], tol: f64) -> bool {
    let within = |x: &Point, s: &[Point]| s.iter().any(|y| (x.vector() - y.vector()).norm() <= tol);
    a.iter().all(|x| within(x, b)) && b.iter().all(|y| within(y, a))
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn example_one() -> Outcome {
    let e = Euclidean::new(2);
    let m = vec![Point::xy(0.0, 0.0), Point::xy(-1.0, -1.0), Point::xy(-1.0, 1.0)];
    let w = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 1.0), Point::xy(1.0, -1.0)];
    let a = hausdorff(&e, &m, &w);
    let hat = alpha_p(&e, &m, &w, Exponent::Infinity).expect("sizes match").cost;
    let chain = alpha_pr_geodesic(&e, &m, &w, Exponent::Infinity, 8).expect("valid nets");
    let omega = vec![
        Point::xy(0.0, 0.0),
        Point::xy(-0.5, -0.5),
        Point::xy(-0.5, 0.5),
        Point::xy(0.5, 0.5),
        Point::xy(0.5, -0.5),
    ];
    let mid = midpoint_set(&e, &m, &w);
    let exact = chain.exact.unwrap_or(f64::NAN);
    let pass = near(a, 2f64.sqrt(), 1e-9)
        && near(hat, 2.0, 1e-9)
        && near(exact, 2.0, 1e-9)
        && mid.len() == 5
        && same_set(&mid, &omega, 0.0);
    outcome(pass, format!("alpha={a:.12} alpha_inf={hat:.12} alpha_inf_R={exact:.12} |Omega|={}", mid.len()))
}

fn example_two_values(a: f64, b: f64) -> (f64, f64, f64) {
    let e = Euclidean::new(1);
    let p = |v: f64| Point::new(vec![v]);
    let m = vec![p(0.0), p(2.0 * a), p(3.0 * a + b)];
    let w = vec![p(a), p(2.0 * a + b), p(4.0 * a + b)];
    let alpha = hausdorff(&e, &m, &w);
    let hat = alpha_p(&e, &m, &w, Exponent::Infinity).expect("sizes match").cost;
    let r = alpha_pr_geodesic(&e, &m, &w, Exponent::Infinity, 8).expect("valid nets");
    (alpha, r.exact.unwrap_or(f64::NAN), hat)
}

fn example_two() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut lines = Vec::new();
    let mut pass = true;
    for (a, b) in [(1.0, 0.5), (1.0, 1.0), (2.0, 1.5), (1.0, 1.5), (1.0, 2.0), (0.5, 0.8), (1.0, 3.0), (1.0, 4.5), (0.5, 2.0)] {
        let (al, ar, ah) = example_two_values(a, b);
        let ok = if b <= a {
            near(al, a, TOL) && near(ar, a, TOL) && near(ah, a, TOL)
        } else if b <= 2.0 * a {
            near(al, a, TOL) && near(ar, b, TOL) && near(ah, b, TOL) && a < b
        } else {
            near(al, a, TOL) && near(ar, 2.0 * a, TOL) && near(ah, b, TOL)
        };
        pass &= ok;
        lines.push(format!("(a={a},b={b}): {al:.3}/{ar:.3}/{ah:.3}"));
    }
    let (al, ar, ah) = example_two_values(1.0, 3.0);
    pass &= near(al, 1.0, TOL) && near(ar, 2.0, TOL) && near(ah, 3.0, TOL);
    outcome(pass, format!("alpha/alpha_inf_R/alpha_inf {}", lines.join(" ")))
}

fn example_triangle() -> Outcome {
    let e = Euclidean::new(2);
    let h = 3f64.sqrt() / 2.0;
    let (o, a, b) = (Point::xy(0.0, 0.0), Point::xy(0.5, h), Point::xy(-0.5, h));
    let s = vec![o, a.clone(), b.clone()];
    let hs = self_sets(&e, &s).expect("nonempty").diametral;
    let mut worst = 0.0f64;
    let mut pass = same_set(&hs, &s, 1e-12);
    for n in 2..=64 {
        let c = Point::xy(0.0, 1.0 / n as f64);
        let sn = vec![c.clone(), a.clone(), b.clone()];
        let al = hausdorff(&e, &sn, &s);
        worst = worst.max((al - 1.0 / n as f64).abs());
        let k = self_sets(&e, &sn).expect("nonempty");
        let ab = [a.clone(), b.clone()];
        pass &= near(al, 1.0 / n as f64, 1e-12)
            && same_set(&k.z0, &[c], 1e-12)
            && same_set(&k.diametral, &ab, 1e-12)
            && same_set(&k.q0, &ab, 1e-12)
            && near(hausdorff(&e, &k.diametral, &hs), 1.0, 1e-12);
    }
    outcome(pass, format!("n=2..64, max |alpha(S_n,S) - 1/n| = {worst:.2e}"))
}

fn segment_ball() -> Outcome {
    let mut g = rng(4);
    let spaces = [CoordSpace::euclidean(2), CoordSpace::klein(2, 1.0, 1.0).expect("valid ball")];
    let mut worst_c = 0.0f64;
    let mut worst_r = 0.0f64;
    let mut slowest = 0.0f64;
    for space in &spaces {
        for _ in 0..25 {
            let (x, y) = (in_disk(&mut g, 0.9), in_disk(&mut g, 0.9));
            let started = Instant::now();
            let fit = best_ball(space, &ConvexBody::Segment { x: x.clone(), y: y.clone() }, 1e-10).expect("valid body");
            slowest = slowest.max(started.elapsed().as_secs_f64());
            worst_c = worst_c.max(space.dist(&fit.center, &space.midpoint(&x, &y)));
            worst_r = worst_r.max((fit.radius - space.dist(&x, &y) / 4.0).abs());
        }
    }
    let pass = worst_c <= 1e-6 && worst_r <= 1e-6 && slowest < 5.0;
    outcome(pass, format!("center err {worst_c:.2e}, radius err {worst_r:.2e}, slowest {slowest:.3}s"))
}

/// Smallest enclosing circle by enumerating all support pairs and triples.
fn minidisk(p: &[[f64; 2]]) -> ([f64; 2], f64) {
    let covers = |c: [f64; 2], r: f64| p.iter().all(|q| (q[0] - c[0]).hypot(q[1] - c[1]) <= r * (1.0 + 1e-12) + 1e-12);
    let mut best = (p[0], if p.len() == 1 { 0.0 } else { f64::INFINITY });
    let mut consider = |c: [f64; 2], r: f64| {
        if r < best.1 && covers(c, r) {
            best = (c, r);
        }
    };
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let c = [(p[i][0] + p[j][0]) / 2.0, (p[i][1] + p[j][1]) / 2.0];
            consider(c, (p[i][0] - c[0]).hypot(p[i][1] - c[1]));
            for k in (j + 1)..p.len() {
                let (a, b, q) = (p[i], p[j], p[k]);
                let d = 2.0 * (a[0] * (b[1] - q[1]) + b[0] * (q[1] - a[1]) + q[0] * (a[1] - b[1]));
                if d.abs() < 1e-14 {
                    continue;
                }
                let n = |v: [f64; 2]| v[0] * v[0] + v[1] * v[1];
                let ux = (n(a) * (b[1] - q[1]) + n(b) * (q[1] - a[1]) + n(q) * (a[1] - b[1])) / d;
                let uy = (n(a) * (q[0] - b[0]) + n(b) * (a[0] - q[0]) + n(q) * (b[0] - a[0])) / d;
                consider([ux, uy], (a[0] - ux).hypot(a[1] - uy));
            }
        }
    }
    best
}

fn chebyshev_vs_minidisk() -> Outcome {
    let mut g = rng(5);
    let e = Euclidean::new(2);
    let started = Instant::now();
    let (mut worst_r, mut worst_c) = (0.0f64, 0.0f64);
    let mut failures = 0;
    for _ in 0..200 {
        let n = g.random_range(1..=30);
        let raw: Vec<[f64; 2]> = (0..n).map(|_| [g.random_range(-1.0..1.0), g.random_range(-1.0..1.0)]).collect();
        let m: Vec<Point> = raw.iter().map(|p| Point::xy(p[0], p[1])).collect();
        let (c, r) = minidisk(&raw);
        match chebyshev_center(&e, &m, CenterOptions::default()) {
            Ok(res) => {
                worst_r = worst_r.max((res.radius - r).abs());
                let z = &res.centers[0];
                worst_c = worst_c.max((z[0] - c[0]).hypot(z[1] - c[1]));
            }
            Err(_) => failures += 1,
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let pass = failures == 0 && worst_r <= 1e-6 && worst_c <= 1e-5 && secs < 60.0;
    outcome(pass, format!("radius err {worst_r:.2e}, center err {worst_c:.2e}, failures {failures}, {secs:.2}s"))
}

fn net_chain() -> Outcome {
    let mut g = rng(6);
    let euclid = CoordSpace::euclidean(2);
    let klein = CoordSpace::klein(2, 1.0, 1.0).expect("valid ball");
    let mut violations = 0;
    for space in [&euclid, &klein] {
        for _ in 0..10_000 {
            let n = g.random_range(1..=8);
            let s: Vec<Point> = (0..n).map(|_| in_disk(&mut g, 0.95)).collect();
            let c = self_sets(space, &s).expect("nonempty");
            let tol = 1e-12;
            if !(c.m <= c.m1 + tol && c.m1 <= c.r0 + tol && c.r0 <= c.diameter + tol) {
                violations += 1;
            }
        }
    }
    let e = Euclidean::new(2);
    let square = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(1.0, 1.0), Point::xy(0.0, 1.0)];
    let pentagon: Vec<Point> = (0..5).map(|i| {
        let t = 2.0 * PI * i as f64 / 5.0;
        Point::xy(t.cos(), t.sin())
    }).collect();
    let sq = self_sets(&e, &square).expect("nonempty");
    let pe = self_sets(&e, &pentagon).expect("nonempty");
    let sq_ok = sq.in_d0 && !closure_z1_membership(&e, &square).expect("nonempty");
    let pe_ok = closure_z1_membership(&e, &pentagon).expect("nonempty") && !pe.in_dm1 && !pe.in_d0_nminus1;
    let pass = violations == 0 && sq_ok && pe_ok;
    outcome(pass, format!("2x10^4 nets, {violations} chain violations; square verdict {sq_ok}, pentagon verdict {pe_ok}"))
}

fn hilbert_lobachevsky() -> Outcome {
    let mut g = rng(7);
    let h = HilbertBall::euclidean(1.0, 1.0).expect("valid ball");
    let mut worst = 0.0f64;
    let mut sandwich_fail = 0;
    for _ in 0..1000 {
        let (x, y) = (in_disk(&mut g, 0.95), in_disk(&mut g, 0.95));
        worst = worst.max((h.dist(&x, &y) - lobachevsky_unit_dist(1.0, &x, &y)).abs());
        let (u, v) = (in_disk(&mut g, 0.5), in_disk(&mut g, 0.5));
        let (lo, hi) = h.sandwich(0.5, &u, &v);
        let d = h.dist(&u, &v);
        if !(lo <= d * (1.0 + 1e-12) && d <= hi * (1.0 + 1e-12)) {
            sandwich_fail += 1;
        }
    }
    // (r/k) dist -> |x - y|; the error is O(1/r^2), a factor 100 per decade
    let (x, y) = (Point::xy(0.3, 0.1), Point::xy(-0.2, 0.4));
    let e = (x.vector() - y.vector()).norm();
    let errs: Vec<f64> = [10.0, 100.0, 1000.0, 10000.0]
        .iter()
        .map(|&r| {
            let hb = HilbertBall::euclidean(r, 1.0).expect("valid ball");
            (r * hb.dist(&x, &y) - e).abs()
        })
        .collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    let rate_ok = ratios.iter().all(|q| *q <= 0.5 && *q >= 0.01 / 1.2 && *q <= 0.01 * 1.2);
    let pass = worst <= 1e-9 && sandwich_fail == 0 && rate_ok;
    outcome(
        pass,
        format!(
            "max |cross-ratio - arccosh form| {worst:.2e}; sandwich failures {sandwich_fail}; scaling errors {:?} ratios {:?}",
            errs.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>(),
            ratios.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn tangent() -> Outcome {
    let mut g = rng(8);
    let space = ModelSpace::Coord(CoordSpace::klein(2, 1.0, 1.0).expect("valid ball"));
    let geo = space.geodesic().expect("coordinate model");
    let o = Point::zeros(2);
    let mut worst = 0.0f64;
    let mut nonmonotone = 0;
    let mut errors = 0;
    for _ in 0..200 {
        let (x, y) = (in_disk(&mut g, 0.9), in_disk(&mut g, 0.9));
        let lim = tangent_norm(&space, &o, &x, &y, TangentMode::Limit);
        let closed = tangent_norm(&space, &o, &x, &y, TangentMode::ClosedForm);
        match (lim, closed) {
            (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
            _ => errors += 1,
        }
        if !tangent_limit(geo, &o, &x, &y).map(|t| t.monotone).unwrap_or(false) {
            nonmonotone += 1;
        }
    }
    let pass = worst <= 1e-4 && nonmonotone == 0 && errors == 0;
    outcome(pass, format!("max |limit - closed form| {worst:.2e}, non-monotone {nonmonotone}, errors {errors}"))
}

fn median() -> Outcome {
    let mut g = rng(9);
    let k = KleinBall::unit(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (z, u, v) = (in_disk(&mut g, 0.9), in_disk(&mut g, 0.9), in_disk(&mut g, 0.9));
        let (a, b) = median_length(&k, &z, &u, &v);
        worst = worst.max((a - b).abs());
    }
    outcome(worst <= 1e-9, format!("max gap {worst:.2e} on 1000 triples"))
}

/// Points of the circle `|z - x| = r`, `n` samples.
fn circle(x: &Point, r: f64, n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            Point::xy(x[0] + r * t.cos(), x[1] + r * t.sin())
        })
        .collect()
}

/// Boundary samples of a planar body.
fn body_boundary(m: &ConvexBody, n: usize) -> Vec<Point> {
    let along = |a: &Point, b: &Point| -> Vec<Point> {
        (0..=n).map(|i| Point::from(a.vector() + (b.vector() - a.vector()) * (i as f64 / n as f64))).collect()
    };
    match m {
        ConvexBody::MetricBall { center, radius } => circle(center, *radius, n),
        ConvexBody::Segment { x, y } => along(x, y),
        ConvexBody::Hull { vertices } => {
            (0..vertices.len()).flat_map(|i| along(&vertices[i], &vertices[(i + 1) % vertices.len()])).collect()
        }
    }
}

/// Ball and body boundaries are sampled with this many points per circle or
/// edge; the chord error is at most `r (1 - cos(pi / n))`.
const BALL_SAMPLES: usize = 4096;

fn ball_closed_forms() -> Outcome {
    let mut g = rng(10);
    let e = CoordSpace::euclidean(2);
    let mut bodies = Vec::new();
    for _ in 0..10 {
        bodies.push(ConvexBody::MetricBall { center: in_disk(&mut g, 0.5), radius: g.random_range(0.2..1.0) });
        bodies.push(ConvexBody::Segment { x: in_disk(&mut g, 1.0), y: in_disk(&mut g, 1.0) });
        let pts: Vec<Point> = (0..8).map(|_| in_disk(&mut g, 1.0)).collect();
        bodies.push(ConvexBody::hull(pts).expect("nonempty"));
    }
    let mut worst = 0.0f64;
    let mut cases = 0;
    for m in &bodies {
        let edge = body_boundary(m, BALL_SAMPLES);
        for _ in 0..5 {
            let x = loop {
                let x = in_disk(&mut g, 3.0);
                if !m.contains(&e, &x) {
                    break x;
                }
            };
            let r = g.random_range(0.0..2.0);
            let ball = circle(&x, r, BALL_SAMPLES);
            let db = |z: &Point| (e.dist(z, &x) - r).max(0.0);
            let m_from_ball = edge.iter().map(db).fold(0.0, f64::max);
            let ball_from_m = ball.iter().chain(std::iter::once(&x)).map(|z| m.dist(&e, z)).fold(0.0, f64::max);
            worst = worst
                .max((ball_deviation_from_set(&e, m, &x, r) - m_from_ball).abs())
                .max((set_deviation_from_ball(&e, m, &x, r) - ball_from_m).abs())
                .max((ball_hausdorff(&e, m, &x, r) - m_from_ball.max(ball_from_m)).abs());
            cases += 1;
        }
    }
    outcome(worst <= 1e-4, format!("{cases} cases on disks, segments, hulls; {BALL_SAMPLES} samples per arc/edge; max gap {worst:.2e}"))
}

fn maps_sandwich() -> Outcome {
    let mut g = rng(11);
    let e = Euclidean::new(2);
    let mut checks = 0;
    let mut failed = 0;
    for _ in 0..100 {
        let n = g.random_range(2..=10);
        let dom: Vec<Point> = (0..n).map(|_| in_disk(&mut g, 2.0)).collect();
        let f = MapTable::new(&e, &e, dom.clone(), (0..n).map(|_| in_disk(&mut g, 3.0)).collect()).expect("valid table");
        let h = MapTable::new(&e, &e, dom.clone(), (0..n).map(|_| in_disk(&mut g, 3.0)).collect()).expect("valid table");
        for p in &dom {
            for q in &dom {
                let c = delta_p_equivalence_check(&e, &e, &f, &h, p, q).expect("same domain");
                checks += c.len();
                failed += c.iter().filter(|c| !c.pass).count();
            }
        }
    }
    let similarity = |s: f64, t: f64, shift: (f64, f64)| {
        move |x: &Point| Point::xy(s * (t.cos() * x[0] - t.sin() * x[1]) + shift.0, s * (t.sin() * x[0] + t.cos() * x[1]) + shift.1)
    };
    let mut worst = 0.0f64;
    let mut undetected = 0;
    for _ in 0..20 {
        let dom: Vec<Point> = (0..6).map(|_| in_disk(&mut g, 1.0)).collect();
        let (s1, s2) = (g.random_range(0.2..3.0), g.random_range(0.2..3.0));
        let inner = MapTable::from_fn(&e, &e, dom, similarity(s1, g.random_range(0.0..6.0), (0.3, -0.1))).expect("valid table");
        let outer = MapTable::from_fn(&e, &e, inner.values.clone(), similarity(s2, g.random_range(0.0..6.0), (-1.0, 0.5)))
            .expect("valid table");
        let composed = compose::<Euclidean, Euclidean, Point>(&e, &outer, &inner).expect("values lie in the domain");
        match similarity_coefficient(&e, &e, &composed) {
            Some(s) => worst = worst.max((s - s1 * s2).abs() / (s1 * s2)),
            None => undetected += 1,
        }
    }
    let pass = failed == 0 && undetected == 0 && worst <= 1e-12;
    outcome(pass, format!("{checks} sandwich checks, {failed} failed; similarity rel err {worst:.2e}, undetected {undetected}"))
}

fn projection_harness() -> Outcome {
    let unit = DiskRegion::disk(Point::xy(0.0, 0.0), 1.0);
    let lens = DiskRegion { disks: vec![(Point::xy(0.0, 0.0), 1.0), (Point::xy(1.2, 0.0), 1.0)] };
    let cap = DiskRegion { disks: vec![(Point::xy(0.0, 0.0), 1.0), (Point::xy(0.0, -1.6), 1.0)] };
    let params = [(0.05, 0.2, 0.6, 0.1, 0.4), (0.1, 0.3, 1.0, 0.3, 0.8), (0.01, 0.05, 0.1, 0.02, 0.07), (0.1, 0.2, 0.5, 0.2, 0.5)];
    let mut checks = Vec::new();
    for (m, x) in [(&unit, Point::xy(2.5, 0.3)), (&lens, Point::xy(0.6, 2.0)), (&lens, Point::xy(3.0, 0.5)), (&cap, Point::xy(0.4, 1.7))] {
        for &(t, e, d, ep, dp) in &params {
            checks.extend(ratio_monotonicity_check(&x, m, t, e, d, ep, dp).expect("ordered parameters"));
        }
        let y = Point::xy(x[0] + 0.05, x[1] - 0.02);
        let shifted = Region::Disks(DiskRegion {
            disks: m.disks.iter().map(|(c, r)| (Point::xy(c[0] + 0.03, c[1] + 0.01), r + 0.02)).collect(),
        });
        let finite = Region::Points { points: m.boundary_samples().into_iter().step_by(97).collect() };
        for w in [&shifted, &finite] {
            for (eps, delta) in [(0.2, 0.3), (0.5, 0.1), (0.0, 0.4)] {
                checks.extend(delta_projection_stability(&x, &y, m, w, eps, delta).expect("positive mu"));
            }
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    outcome(
        failed.is_empty(),
        format!("{} checks, worst slack {:.2e}, failed {:?}", checks.len(), worst_slack(&checks), failed),
    )
}

/// `max` over bipartitions of the smallest cross distance.
fn lambda_brute(e: &Euclidean, m: &[Point]) -> f64 {
    let n = m.len();
    if n < 2 {
        return 0.0;
    }
    let mut best = 0.0f64;
    // point n-1 stays on the B side, which enumerates each bipartition once
    for mask in 1u32..(1 << (n - 1)) {
        let mut gap = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                if mask >> i & 1 == 1 && (j == n - 1 || mask >> j & 1 == 0) {
                    gap = gap.min(e.dist(&m[i], &m[j]));
                }
            }
        }
        best = best.max(gap);
    }
    best
}

fn lambda() -> Outcome {
    let mut g = rng(13);
    let e = Euclidean::new(2);
    let mut mismatches = 0;
    let mut instances = 0;
    for n in 1..=12 {
        for _ in 0..20 {
            let m: Vec<Point> = (0..n).map(|_| in_disk(&mut g, 1.0)).collect();
            if lambda_disconnect(&e, &m) != lambda_brute(&e, &m) {
                mismatches += 1;
            }
            instances += 1;
        }
    }
    outcome(mismatches == 0, format!("{instances} instances, {mismatches} mismatches"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("three-point nets in the plane", example_one),
        ("line nets ordering patterns", example_two),
        ("perturbed equilateral triangle family", example_triangle),
        ("segment best ball", segment_ball),
        ("chebyshev center vs minidisk", chebyshev_vs_minidisk),
        ("net class chain and verdicts", net_chain),
        ("hilbert and lobachevsky distances", hilbert_lobachevsky),
        ("tangent limit", tangent),
        ("median identity", median),
        ("ball deviation closed forms", ball_closed_forms),
        ("damped map metric sandwich", maps_sandwich),
        ("delta-projection inequalities", projection_harness),
        ("disconnectivity vs bipartitions", lambda),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "criterion {:>2}: {} {name} [{:.2}s] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
