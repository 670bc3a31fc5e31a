//! Seeded property suites. Each returns one record per property, holding
//! the worst case found over its instances.

use std::f64::consts::PI;

use anyhow::{bail, Result};
use metric_geom::ball_approx::{best_ball, psi, r_fun, ConvexBody};
use metric_geom::chebyshev::{chebyshev_center, hull_membership_check, radius_perturbation_bounds, self_sets, CenterOptions};
use metric_geom::hausdorff::{cross_diameter, deviation, diameter, eps_projection, hausdorff, midpoint_set};
use metric_geom::hilbert::{lobachevsky_unit_dist, median_length, tangent_limit, tangent_closed_form, HilbertBall};
use metric_geom::maps::{compose, delta_p_equivalence_check, similarity_coefficient, MapTable};
use metric_geom::nnet::{alpha_p, alpha_pr_geodesic, alpha_star, Exponent};
use metric_geom::projection::{lambda_disconnect, ratio_monotonicity_check, DiskRegion};
use metric_geom::report::Check;
use metric_geom::spaces::check_busemann_npc;
use metric_geom::{CoordSpace, Euclidean, GeodesicSpace, KleinBall, MetricSpace, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::worst;

pub const NAMES: [&str; 8] = ["spaces", "hausdorff", "nnet", "chebyshev", "ball_approx", "projection", "hilbert", "maps"];

fn disk(g: &mut ChaCha8Rng, r: f64) -> Point {
    let t = g.random_range(0.0..2.0 * PI);
    let s = r * g.random::<f64>().sqrt();
    Point::xy(s * t.cos(), s * t.sin())
}

fn set(g: &mut ChaCha8Rng, max: usize, r: f64) -> Vec<Point> {
    let n = g.random_range(1..=max);
    (0..n).map(|_| disk(g, r)).collect()
}

/// Runs one suite or, for `all`, each in turn.
pub fn run(name: &str, seed: u64) -> Result<Vec<Check>> {
    if name == "all" {
        let mut out = Vec::new();
        for n in NAMES {
            out.extend(run(n, seed)?);
        }
        return Ok(out);
    }
    let Some(idx) = NAMES.iter().position(|n| *n == name) else {
        bail!("unknown suite {name:?}; expected one of {} or all", NAMES.join(", "));
    };
    // each suite gets its own stream, so running one alone reproduces its
    // part of `all`
    let mut g = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
    let checks = match name {
        "spaces" => spaces(&mut g),
        "hausdorff" => hausdorff_suite(&mut g),
        "nnet" => nnet(&mut g)?,
        "chebyshev" => chebyshev(&mut g)?,
        "ball_approx" => ball(&mut g)?,
        "projection" => projection(&mut g)?,
        "hilbert" => hilbert(&mut g)?,
        "maps" => maps(&mut g)?,
        _ => unreachable!("indexed above"),
    };
    Ok(checks.into_iter().map(|mut c| {
        c.name = format!("{name}: {}", c.name);
        c
    }).collect())
}

fn spaces(g: &mut ChaCha8Rng) -> Vec<Check> {
    let k = KleinBall::unit(2);
    let triples: Vec<[Point; 3]> = (0..500).map(|_| [disk(g, 0.95), disk(g, 0.95), disk(g, 0.95)]).collect();
    vec![
        worst("klein triangle inequality", triples.iter().map(|[x, y, z]| {
            Check::le("", k.dist(x, z), k.dist(x, y) + k.dist(y, z), 1e-9)
        })),
        worst("klein symmetry", triples.iter().map(|[x, y, _]| Check::eq("", k.dist(x, y), k.dist(y, x), 1e-12))),
        worst("klein geodesic additivity", triples.iter().map(|[x, y, _]| {
            let z = k.midpoint(x, y);
            Check::eq("", k.dist(x, &z) + k.dist(&z, y), k.dist(x, y), 1e-9 * (1.0 + k.dist(x, y)))
        })),
        worst("klein busemann midpoint convexity", triples.iter().map(|[x, y, z]| Check::flag("", check_busemann_npc(&k, x, y, z)))),
    ]
}

fn hausdorff_suite(g: &mut ChaCha8Rng) -> Vec<Check> {
    let e = Euclidean::new(2);
    let cases: Vec<[Vec<Point>; 3]> = (0..200).map(|_| [set(g, 7, 1.0), set(g, 7, 1.0), set(g, 7, 1.0)]).collect();
    vec![
        worst("deviation triangle", cases.iter().map(|[m, w, t]| {
            Check::le("", deviation(&e, m, t), deviation(&e, m, w) + deviation(&e, w, t), 1e-12)
        })),
        worst("diameter shift", cases.iter().map(|[m, w, _]| {
            Check::le("", (diameter(&e, m) - diameter(&e, w)).abs(), 2.0 * hausdorff(&e, m, w), 1e-12)
        })),
        worst("hausdorff below cross diameter", cases.iter().map(|[m, w, _]| {
            Check::le("", hausdorff(&e, m, w), cross_diameter(&e, m, w), 1e-12)
        })),
        worst("midpoint set halves the distance", cases.iter().map(|[m, w, _]| {
            let om = midpoint_set(&e, m, w);
            let a = hausdorff(&e, m, w);
            Check::eq("", hausdorff(&e, m, &om).max(hausdorff(&e, &om, w)), a / 2.0, 1e-9)
        })),
        worst("eps projection grows with eps", cases.iter().map(|[m, w, _]| {
            let x = &w[0];
            let small = eps_projection(&e, x, m, 0.1);
            Check::flag("", small.iter().all(|p| eps_projection(&e, x, m, 0.3).contains(p)))
        })),
    ]
}

fn nnet(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let e = Euclidean::new(2);
    let mut order = Vec::new();
    let mut sandwich = Vec::new();
    let mut two = Vec::new();
    for _ in 0..60 {
        let n = g.random_range(1..=3);
        let s: Vec<Point> = (0..n).map(|_| disk(g, 1.0)).collect();
        let t: Vec<Point> = (0..n).map(|_| disk(g, 1.0)).collect();
        let inf = alpha_p(&e, &s, &t, Exponent::Infinity)?.cost;
        let fin = alpha_p(&e, &s, &t, Exponent::new(2.0)?)?.cost;
        let star = alpha_star(&e, &s, &t);
        order.push(Check::le("", star, inf, 1e-12));
        order.push(Check::le("", inf, fin, 1e-12));
        let b = alpha_pr_geodesic(&e, &s, &t, Exponent::Infinity, 3)?;
        sandwich.push(Check::le("", b.lower, b.upper, 1e-12));
        sandwich.push(Check::le("", b.upper, inf, 1e-12));
        if n == 2 {
            two.push(Check::eq("", star, inf, 1e-12));
        }
    }
    let m = vec![Point::xy(0.0, 0.0), Point::xy(-1.0, -1.0), Point::xy(-1.0, 1.0)];
    let w = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 1.0), Point::xy(1.0, -1.0)];
    let fixture = alpha_pr_geodesic(&e, &m, &w, Exponent::Infinity, 8)?;
    Ok(vec![
        worst("star metric below bottleneck below p-assignment", order),
        worst("chain value between hausdorff and assignment", sandwich),
        worst("two-nets: star metric equals bottleneck", two),
        Check::eq("three-point plane nets: hausdorff", hausdorff(&e, &m, &w), 2f64.sqrt(), 1e-9),
        Check::eq("three-point plane nets: bottleneck", alpha_p(&e, &m, &w, Exponent::Infinity)?.cost, 2.0, 1e-9),
        Check::eq("three-point plane nets: chain metric", fixture.exact.unwrap_or(f64::NAN), 2.0, 1e-9),
    ])
}

fn chebyshev(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let spaces = [CoordSpace::euclidean(2), CoordSpace::klein(2, 1.0, 1.0)?];
    let mut chain = Vec::new();
    for space in &spaces {
        for _ in 0..300 {
            let c = self_sets(space, &set(g, 8, 0.95))?;
            chain.push(Check::le("", c.m, c.m1, 1e-12));
            chain.push(Check::le("", c.m1, c.r0, 1e-12));
            chain.push(Check::le("", c.r0, c.diameter, 1e-12));
        }
    }
    let e = Euclidean::new(2);
    let mut perturb = Vec::new();
    let mut hull = Vec::new();
    let mut center = Vec::new();
    for _ in 0..60 {
        let (m, w, a, b) = (set(g, 5, 1.0), set(g, 5, 1.0), set(g, 5, 1.0), set(g, 5, 1.0));
        perturb.extend(radius_perturbation_bounds(&e, &m, &w, &a, &b)?);
        hull.push(Check::flag("", hull_membership_check(&m, 1e-7)?));
        for space in &spaces {
            let c = chebyshev_center(space, &w, CenterOptions::default())?;
            let z = &c.centers[0];
            // no sampled point of the hull beats the returned radius
            let probe = m.iter().chain(&w).map(|p| metric_geom::chebyshev::eccentricity(space, &w, &space.midpoint(z, p)));
            center.push(Check::le("", c.radius, probe.fold(f64::INFINITY, f64::min), 1e-8));
        }
    }
    Ok(vec![
        worst("net chain m <= m1 <= R0 <= D", chain),
        worst("radius perturbation bounds", perturb),
        worst("chebyshev center lies in the hull", hull),
        worst("chebyshev radius is locally minimal", center),
    ])
}

fn ball(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let e = CoordSpace::euclidean(2);
    let mut identity = Vec::new();
    let mut lipschitz = Vec::new();
    let mut inside = Vec::new();
    for _ in 0..40 {
        let m = ConvexBody::hull((0..6).map(|_| disk(g, 1.0)).collect())?;
        for _ in 0..10 {
            let (x, y) = (disk(g, 2.0), disk(g, 2.0));
            let (px, py) = (psi(&e, &m, &x)?, psi(&e, &m, &y)?);
            identity.push(Check::eq("", px + r_fun(&e, &m, &x)?, m.farthest(&e, &x), 1e-12));
            lipschitz.push(Check::le("", (px - py).abs(), 1.5 * e.dist(&x, &y), 1e-12));
        }
        let fit = best_ball(&e, &m, 1e-7)?;
        inside.push(Check::le("", m.dist(&e, &fit.center), 0.0, 1e-9));
    }
    let mut segment = Vec::new();
    for space in [CoordSpace::euclidean(2), CoordSpace::klein(2, 1.0, 1.0)?] {
        for _ in 0..10 {
            let (x, y) = (disk(g, 0.9), disk(g, 0.9));
            let fit = best_ball(&space, &ConvexBody::Segment { x: x.clone(), y: y.clone() }, 1e-10)?;
            segment.push(Check::eq("", fit.radius, space.dist(&x, &y) / 4.0, 1e-6));
        }
    }
    Ok(vec![
        worst("psi plus r equals farthest distance", identity),
        worst("psi is 3/2-Lipschitz", lipschitz),
        worst("best ball center lies in the body", inside),
        worst("segment best ball radius is a quarter length", segment),
    ])
}

fn projection(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let unit = DiskRegion::disk(Point::xy(0.0, 0.0), 1.0);
    let mut ratios = Vec::new();
    for _ in 0..4 {
        let t: f64 = g.random_range(0.5..2.0);
        let x = Point::xy(2.0 * t.cos(), 2.0 * t.sin());
        ratios.extend(ratio_monotonicity_check(&x, &unit, 0.05, 0.2, 0.6, 0.1, 0.4)?);
    }
    let e = Euclidean::new(2);
    let mut lambda = Vec::new();
    for _ in 0..40 {
        let m = set(g, 9, 1.0);
        let n = m.len();
        let mut brute = 0.0f64;
        for mask in 1u32..(1 << (n - 1)) {
            let side = |i: usize| i != n - 1 && mask >> i & 1 == 1;
            let gap = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| side(i) && !side(j))
                .map(|(i, j)| e.dist(&m[i], &m[j]))
                .fold(f64::INFINITY, f64::min);
            brute = brute.max(gap);
        }
        lambda.push(Check::eq("", lambda_disconnect(&e, &m), brute, 0.0));
    }
    Ok(vec![worst("nested delta-projection ratios", ratios), worst("disconnectivity equals bipartition search", lambda)])
}

fn hilbert(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let h = HilbertBall::euclidean(1.0, 1.0)?;
    let k = KleinBall::unit(2);
    let o = Point::zeros(2);
    let mut cross = Vec::new();
    let mut sandwich = Vec::new();
    let mut median = Vec::new();
    let mut tangent = Vec::new();
    for _ in 0..200 {
        let (x, y, z) = (disk(g, 0.9), disk(g, 0.9), disk(g, 0.9));
        cross.push(Check::eq("", h.dist(&x, &y), lobachevsky_unit_dist(1.0, &x, &y), 1e-9));
        let (u, v) = (disk(g, 0.5), disk(g, 0.5));
        let (lo, hi) = h.sandwich(0.5, &u, &v);
        sandwich.push(Check::le("", lo, h.dist(&u, &v), 1e-12));
        sandwich.push(Check::le("", h.dist(&u, &v), hi, 1e-12));
        let (a, b) = median_length(&k, &z, &x, &y);
        median.push(Check::eq("", a, b, 1e-9));
        let t = tangent_limit(&k, &o, &x, &y)?;
        tangent.push(Check::eq("", t.value, tangent_closed_form(&k, &x, &y), 1e-4));
        tangent.push(Check::flag("", t.monotone));
    }
    Ok(vec![
        worst("cross-ratio metric equals the arccosh form", cross),
        worst("norm sandwich on the half ball", sandwich),
        worst("median identity", median),
        worst("tangent limit agrees with closed form and decreases", tangent),
    ])
}

fn maps(g: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let e = Euclidean::new(2);
    let mut sandwich = Vec::new();
    for _ in 0..30 {
        let n = g.random_range(2..=8);
        let dom: Vec<Point> = (0..n).map(|_| disk(g, 2.0)).collect();
        let f = MapTable::new(&e, &e, dom.clone(), (0..n).map(|_| disk(g, 3.0)).collect())?;
        let h = MapTable::new(&e, &e, dom.clone(), (0..n).map(|_| disk(g, 3.0)).collect())?;
        for p in &dom {
            for q in &dom {
                sandwich.extend(delta_p_equivalence_check(&e, &e, &f, &h, p, q)?);
            }
        }
    }
    let mut sigma = Vec::new();
    for _ in 0..20 {
        let (s1, s2, t1, t2) = (g.random_range(0.2..3.0), g.random_range(0.2..3.0), g.random_range(0.0..6.0), g.random_range(0.0..6.0));
        let rot = |s: f64, t: f64| move |x: &Point| Point::xy(s * (t.cos() * x[0] - t.sin() * x[1]), s * (t.sin() * x[0] + t.cos() * x[1]));
        let dom: Vec<Point> = (0..5).map(|_| disk(g, 1.0)).collect();
        let inner = MapTable::from_fn(&e, &e, dom, rot(s1, t1))?;
        let outer = MapTable::from_fn(&e, &e, inner.values.clone(), rot(s2, t2))?;
        let both = compose::<Euclidean, Euclidean, Point>(&e, &outer, &inner)?;
        let got = similarity_coefficient(&e, &e, &both).unwrap_or(f64::NAN);
        sigma.push(Check::eq("", got, s1 * s2, 1e-12 * s1 * s2));
    }
    Ok(vec![worst("damped metric base-point sandwich", sandwich), worst("similarity coefficient is multiplicative", sigma)])
}
