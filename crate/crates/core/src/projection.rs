//! Metric projection and delta-projection onto convex sets, the
//! disconnectivity measure `lambda`, and an inequality harness for the
//! continuity of the delta-projection in the plane.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::ball_approx::ConvexBody;
use crate::error::{GeomError, Result};
use crate::report::Check;
use crate::spaces::{CoordSpace, MetricSpace, Point};

pub use crate::hausdorff::eps_projection as delta_projection;

/// Nearest point of a convex body.
pub fn project_convex(space: &CoordSpace, x: &Point, m: &ConvexBody) -> Result<Point> {
    m.validate(space)?;
    space.check_point(x)?;
    Ok(m.project(space, x))
}

/// `lambda(M)`: the largest gap over bipartitions `M = A u B`, which is the
/// longest edge of a minimum spanning tree (Prim, dense graph).
pub fn lambda_disconnect<S: MetricSpace>(space: &S, m: &[S::Pt]) -> f64 {
    let n = m.len();
    if n < 2 {
        return 0.0;
    }
    let mut in_tree = vec![false; n];
    let mut reach = vec![f64::INFINITY; n];
    reach[0] = 0.0;
    let mut longest = 0.0f64;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !in_tree[i])
            .min_by(|&a, &b| reach[a].total_cmp(&reach[b]))
            .expect("a vertex is left");
        in_tree[u] = true;
        longest = longest.max(reach[u]);
        for v in 0..n {
            if !in_tree[v] {
                reach[v] = reach[v].min(space.dist(&m[u], &m[v]));
            }
        }
    }
    longest
}

/// Boundary samples per arc when evaluating deviations of planar regions.
pub const ARC_SAMPLES: usize = 2000;
/// Interior grid cells per axis, used when the target set is not convex.
pub const INTERIOR_GRID: usize = 200;

fn v2(p: &Point) -> Vector2<f64> {
    Vector2::new(p[0], p[1])
}

fn pt(v: Vector2<f64>) -> Point {
    Point::xy(v.x, v.y)
}

/// Intersection of closed Euclidean disks in the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskRegion {
    pub disks: Vec<(Point, f64)>,
}

const MEMBER_TOL: f64 = 1e-12;

impl DiskRegion {
    pub fn disk(center: Point, radius: f64) -> Self {
        DiskRegion { disks: vec![(center, radius)] }
    }

    fn validate(&self) -> Result<()> {
        if self.disks.is_empty() {
            return Err(GeomError::EmptySet);
        }
        for (c, r) in &self.disks {
            if c.dim() != 2 {
                return Err(GeomError::DimensionMismatch { expected: 2, found: c.dim() });
            }
            if !(*r >= 0.0) {
                return Err(GeomError::InvalidParameter(format!("disk radius {r}")));
            }
        }
        Ok(())
    }

    fn contains_v(&self, a: Vector2<f64>) -> bool {
        self.disks.iter().all(|(c, r)| (a - v2(c)).norm() <= r + MEMBER_TOL * (1.0 + r))
    }

    pub fn contains(&self, a: &Point) -> bool {
        self.contains_v(v2(a))
    }

    /// Pairwise circle intersections lying in the region.
    fn vertices(&self) -> Vec<Vector2<f64>> {
        let mut out = Vec::new();
        for i in 0..self.disks.len() {
            for j in (i + 1)..self.disks.len() {
                for p in circle_meet(&self.disks[i], &self.disks[j]) {
                    if self.contains_v(p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    fn project_v(&self, a: Vector2<f64>) -> Option<Vector2<f64>> {
        if self.contains_v(a) {
            return Some(a);
        }
        let mut cand = self.vertices();
        for (c, r) in &self.disks {
            let d = a - v2(c);
            let n = d.norm();
            let p = if n == 0.0 { v2(c) } else { v2(c) + d * (r / n) };
            if self.contains_v(p) {
                cand.push(p);
            }
        }
        cand.into_iter().min_by(|p, q| (a - p).norm().total_cmp(&(a - q).norm()))
    }

    /// Nearest point of the region, `None` when it is empty.
    pub fn project(&self, a: &Point) -> Option<Point> {
        self.project_v(v2(a)).map(pt)
    }

    pub fn dist(&self, a: &Point) -> f64 {
        self.project_v(v2(a)).map_or(f64::INFINITY, |p| (v2(a) - p).norm())
    }

    /// Points on the boundary arcs, vertices included.
    pub fn boundary_samples(&self) -> Vec<Point> {
        let mut out: Vec<Vector2<f64>> = self.vertices();
        for (i, (c, r)) in self.disks.iter().enumerate() {
            let c = v2(c);
            let at = |t: f64| c + Vector2::new(t.cos(), t.sin()) * *r;
            let mut cuts: Vec<f64> = Vec::new();
            for (j, other) in self.disks.iter().enumerate() {
                if i != j {
                    cuts.extend(circle_meet(&self.disks[i], other).iter().map(|p| (p.y - c.y).atan2(p.x - c.x)));
                }
            }
            cuts.sort_by(f64::total_cmp);
            if cuts.is_empty() {
                cuts.push(0.0);
            }
            cuts.push(cuts[0] + std::f64::consts::TAU);
            for w in cuts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                if hi - lo < 1e-15 || !self.contains_v(at(0.5 * (lo + hi))) {
                    continue;
                }
                out.extend((0..=ARC_SAMPLES).map(|k| at(lo + (hi - lo) * k as f64 / ARC_SAMPLES as f64)));
            }
        }
        out.into_iter().filter(|p| self.contains_v(*p)).map(pt).collect()
    }

    /// Boundary samples plus a grid of interior points.
    pub fn solid_samples(&self) -> Vec<Point> {
        let mut out = self.boundary_samples();
        let (c, r) = self
            .disks
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("validated region");
        let h = 2.0 * r / INTERIOR_GRID as f64;
        for i in 0..=INTERIOR_GRID {
            for j in 0..=INTERIOR_GRID {
                let p = Vector2::new(c[0] - r + h * i as f64, c[1] - r + h * j as f64);
                if self.contains_v(p) {
                    out.push(pt(p));
                }
            }
        }
        out
    }

    /// Mesh width of the interior grid.
    pub fn mesh(&self) -> f64 {
        let r = self.disks.iter().map(|d| d.1).fold(f64::INFINITY, f64::min);
        2.0 * r / INTERIOR_GRID as f64
    }
}

fn circle_meet(a: &(Point, f64), b: &(Point, f64)) -> Vec<Vector2<f64>> {
    let (c1, r1) = (v2(&a.0), a.1);
    let (c2, r2) = (v2(&b.0), b.1);
    let d = (c2 - c1).norm();
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let u = (c2 - c1) / d;
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - along * along).max(0.0).sqrt();
    let base = c1 + u * along;
    let n = Vector2::new(-u.y, u.x);
    vec![base + n * h, base - n * h]
}

/// A planar set in the harness: a finite set or an intersection of disks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Points { points: Vec<Point> },
    Disks(DiskRegion),
}

impl Region {
    pub fn dist(&self, a: &Point) -> f64 {
        match self {
            Region::Points { points } => points.iter().map(|p| (v2(a) - v2(p)).norm()).fold(f64::INFINITY, f64::min),
            Region::Disks(d) => d.dist(a),
        }
    }

    fn is_convex(&self) -> bool {
        match self {
            Region::Points { points } => points.len() <= 1,
            Region::Disks(_) => true,
        }
    }

    fn samples(&self, solid: bool) -> Vec<Point> {
        match self {
            Region::Points { points } => points.clone(),
            Region::Disks(d) if solid => d.solid_samples(),
            Region::Disks(d) => d.boundary_samples(),
        }
    }

    /// `P(x, self, delta)`.
    pub fn delta_projection(&self, x: &Point, delta: f64) -> Region {
        match self {
            Region::Points { points } => Region::Points {
                points: delta_projection(&crate::spaces::Euclidean::new(2), x, points, delta),
            },
            Region::Disks(d) => {
                let gap = d.dist(x);
                if delta == 0.0 {
                    return Region::Points { points: d.project(x).into_iter().collect() };
                }
                let mut disks = d.disks.clone();
                disks.push((x.clone(), gap + delta));
                Region::Disks(DiskRegion { disks })
            }
        }
    }
}

/// `beta(a, b)`. Exact for finite `a`; otherwise a supremum over samples,
/// which covers the interior when `b` is not convex.
pub fn region_deviation(a: &Region, b: &Region) -> f64 {
    a.samples(!b.is_convex()).iter().map(|p| b.dist(p)).fold(0.0, f64::max)
}

pub fn region_hausdorff(a: &Region, b: &Region) -> f64 {
    region_deviation(a, b).max(region_deviation(b, a))
}

/// Slack allowed for sampled suprema.
pub const HARNESS_SLACK: f64 = 1e-3;

/// Ratio inequalities for nested delta-projections of a convex region `m`,
/// with `F = P(x, M, delta)` and `G = P(x, M, t)`.
pub fn ratio_monotonicity_check(
    x: &Point,
    m: &DiskRegion,
    t: f64,
    eps: f64,
    delta: f64,
    eps_p: f64,
    delta_p: f64,
) -> Result<Vec<Check>> {
    m.validate()?;
    if !(0.0 < t && t < eps && eps < delta && 0.0 < eps_p && eps_p <= eps && eps_p < delta_p && delta_p <= delta) {
        return Err(GeomError::InvalidParameter(format!(
            "need 0 < t < eps < delta, 0 < eps' <= eps, eps' < delta' <= delta; got {t}, {eps}, {delta}, {eps_p}, {delta_p}"
        )));
    }
    let body = Region::Disks(m.clone());
    let p = |d: f64| body.delta_projection(x, d);
    let (pt_, pe, pd) = (p(t), p(eps), p(delta));
    let (pep, pdp, p0) = (p(eps_p), p(delta_p), p(0.0));
    let gap = m.dist(x);
    let beta = region_deviation;
    let s = HARNESS_SLACK;
    Ok(vec![
        Check::le("ratio a", beta(&pd, &pe) / (delta - eps), beta(&pd, &pt_) / (delta - t), s),
        Check::le("ratio b", beta(&pd, &pt_) / (delta - t), beta(&pe, &pt_) / (eps - t), s),
        Check::le("ratio c", beta(&pd, &pe) / (delta - eps), beta(&pdp, &pep) / (delta_p - eps_p), s),
        Check::le("ratio to projection", beta(&pd, &p0) / delta, beta(&pdp, &p0) / delta_p, s),
        Check::le("linear growth", beta(&pd, &pe), (2.0 * gap / delta + 1.0) * (delta - eps), s),
    ])
}

/// Stability of `P(y, W, delta)` against `P(x, M, eps)`. The second bound is
/// checked only when `w` is convex.
pub fn delta_projection_stability(
    x: &Point,
    y: &Point,
    m: &DiskRegion,
    w: &Region,
    eps: f64,
    delta: f64,
) -> Result<Vec<Check>> {
    m.validate()?;
    let mu = eps.max(delta);
    if !(mu > 0.0) || eps < 0.0 || delta < 0.0 {
        return Err(GeomError::InvalidParameter(format!("eps {eps}, delta {delta}")));
    }
    let body = Region::Disks(m.clone());
    let lhs = region_hausdorff(&w.delta_projection(y, delta), &body.delta_projection(x, eps));
    let a_mw = region_hausdorff(&body, w);
    let xy = (v2(x) - v2(y)).norm();
    let spread = (eps - delta).abs() + 2.0 * xy + 2.0 * a_mw;
    let gap_x = m.dist(x);
    let mut out = vec![Check::le("projection stability", lhs, a_mw + (2.0 * gap_x / mu + 2.0) * spread, HARNESS_SLACK)];
    if let Region::Disks(_) = w {
        let lambda = mu + 2.0 * xy + 2.0 * a_mw;
        let gap = gap_x.min(w.dist(y));
        out.push(Check::le(
            "projection stability, convex pair",
            lhs,
            a_mw + (2.0 * gap / lambda + 1.0) * spread,
            HARNESS_SLACK,
        ));
    }
    Ok(out)
}
