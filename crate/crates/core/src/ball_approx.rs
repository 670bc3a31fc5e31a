//! Best approximation of a convex compact body by a closed ball in the
//! Hausdorff metric.
//!
//! For a body `M` and a point `x` write `beta(M, x)` for the farthest
//! distance, `|xM|` for the distance to `M` and `|x(X\M)|` for the depth of
//! `x` inside `M`. Then
//!
//! * `psi(M, x) = (beta + |xM| - |x(X\M)|) / 2`
//! * `r(M, x)   = (beta - |xM| + |x(X\M)|) / 2`
//!
//! and `alpha(B[x, r], M) = max(r + |xM| - |x(X\M)|, beta - r)`, minimized
//! over `r` at `r(M, x)` with value `psi(M, x)`.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::optim::golden_min;
use crate::spaces::{CoordSpace, GeodesicSpace, MetricSpace, Point};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexBody {
    /// Convex hull of planar points, Euclidean only.
    Hull { vertices: Vec<Point> },
    MetricBall { center: Point, radius: f64 },
    Segment { x: Point, y: Point },
}

/// Counter-clockwise convex hull of planar points (monotone chain). Collinear
/// inputs give the two extreme points, a single point gives itself.
pub fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().map(|(x, y)| Point::xy(x, y)).collect();
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 2 {
        hull = vec![pts[0], pts[pts.len() - 1]];
    }
    hull.into_iter().map(|(x, y)| Point::xy(x, y)).collect()
}

fn segment_param(x: &DVector<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let d = b - a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        0.0
    } else {
        ((x - a).dot(&d) / len2).clamp(0.0, 1.0)
    }
}

fn polygon_edges(h: &[Point]) -> impl Iterator<Item = (&Point, &Point)> {
    (0..h.len()).map(move |i| (&h[i], &h[(i + 1) % h.len()]))
}

/// Signed distances of `x` to the edge lines of a counter-clockwise polygon,
/// positive inside.
fn edge_offsets<'a>(h: &'a [Point], x: &'a Point) -> impl Iterator<Item = f64> + 'a {
    polygon_edges(h).map(move |(a, b)| {
        let e = b.vector() - a.vector();
        let w = x.vector() - a.vector();
        (e[0] * w[1] - e[1] * w[0]) / e.norm()
    })
}

impl ConvexBody {
    pub fn hull(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(GeomError::EmptySet);
        }
        if let Some(p) = vertices.iter().find(|p| p.dim() != 2) {
            return Err(GeomError::DimensionMismatch { expected: 2, found: p.dim() });
        }
        Ok(ConvexBody::Hull { vertices: convex_hull_2d(&vertices) })
    }

    /// Checks that the body lives in `space`.
    pub fn validate(&self, space: &CoordSpace) -> Result<()> {
        match self {
            ConvexBody::Hull { vertices } => {
                if !matches!(space, CoordSpace::Euclidean(_)) {
                    return Err(GeomError::UnsupportedBody("hull bodies are Euclidean"));
                }
                if vertices.is_empty() {
                    return Err(GeomError::EmptySet);
                }
                vertices.iter().try_for_each(|v| space.check_point(v))
            }
            ConvexBody::MetricBall { center, radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(GeomError::InvalidParameter(format!("ball radius {radius}")));
                }
                space.check_point(center)
            }
            ConvexBody::Segment { x, y } => {
                space.check_point(x)?;
                space.check_point(y)
            }
        }
    }

    /// True for hulls without interior and for segments.
    pub fn is_degenerate(&self) -> bool {
        match self {
            ConvexBody::Hull { vertices } => vertices.len() < 3,
            ConvexBody::MetricBall { .. } => false,
            ConvexBody::Segment { .. } => true,
        }
    }

    /// `beta(M, x)`.
    pub fn farthest(&self, space: &CoordSpace, x: &Point) -> f64 {
        match self {
            ConvexBody::Hull { vertices } => vertices.iter().map(|v| space.dist(x, v)).fold(0.0, f64::max),
            ConvexBody::MetricBall { center, radius } => space.dist(x, center) + radius,
            ConvexBody::Segment { x: a, y: b } => space.dist(x, a).max(space.dist(x, b)),
        }
    }

    pub fn contains(&self, space: &CoordSpace, x: &Point) -> bool {
        self.dist(space, x) <= 1e-12
    }

    /// Metric projection of `x` onto the body.
    pub fn project(&self, space: &CoordSpace, x: &Point) -> Point {
        match self {
            ConvexBody::Hull { vertices } => {
                if vertices.len() >= 3 && edge_offsets(vertices, x).all(|o| o >= 0.0) {
                    return x.clone();
                }
                if vertices.len() == 1 {
                    return vertices[0].clone();
                }
                polygon_edges(vertices)
                    .map(|(a, b)| {
                        let t = segment_param(x.vector(), a.vector(), b.vector());
                        Point::from(a.vector() + (b.vector() - a.vector()) * t)
                    })
                    .min_by(|p, q| space.dist(x, p).total_cmp(&space.dist(x, q)))
                    .expect("nonempty hull")
            }
            ConvexBody::MetricBall { center, radius } => {
                let d = space.dist(center, x);
                if d <= *radius {
                    x.clone()
                } else {
                    space.geodesic(center, x, radius / d)
                }
            }
            ConvexBody::Segment { x: a, y: b } => match space {
                CoordSpace::Euclidean(_) => {
                    let t = segment_param(x.vector(), a.vector(), b.vector());
                    Point::from(a.vector() + (b.vector() - a.vector()) * t)
                }
                CoordSpace::Klein(_) => {
                    // distance to a point moving along a geodesic is convex
                    let f = |t: f64| space.dist(x, &space.geodesic(a, b, t));
                    let (t, _) = golden_min(f, 0.0, 1.0, 1e-14);
                    space.geodesic(a, b, t)
                }
            },
        }
    }

    /// `|xM|`.
    pub fn dist(&self, space: &CoordSpace, x: &Point) -> f64 {
        match self {
            ConvexBody::MetricBall { center, radius } => (space.dist(center, x) - radius).max(0.0),
            _ => space.dist(x, &self.project(space, x)),
        }
    }

    /// `|x(X\M)|`: zero outside, the depth inside. Bodies without interior
    /// have depth zero everywhere.
    pub fn depth(&self, space: &CoordSpace, x: &Point) -> f64 {
        match self {
            ConvexBody::Hull { vertices } if vertices.len() >= 3 => {
                edge_offsets(vertices, x).fold(f64::INFINITY, f64::min).max(0.0)
            }
            ConvexBody::MetricBall { center, radius } => (radius - space.dist(center, x)).max(0.0),
            _ => 0.0,
        }
    }
}

/// `psi(M, x)`.
pub fn psi(space: &CoordSpace, m: &ConvexBody, x: &Point) -> Result<f64> {
    m.validate(space)?;
    space.check_point(x)?;
    Ok(psi_unchecked(space, m, x))
}

fn psi_unchecked(space: &CoordSpace, m: &ConvexBody, x: &Point) -> f64 {
    0.5 * (m.farthest(space, x) + m.dist(space, x) - m.depth(space, x))
}

/// `r(M, x)`.
pub fn r_fun(space: &CoordSpace, m: &ConvexBody, x: &Point) -> Result<f64> {
    m.validate(space)?;
    space.check_point(x)?;
    Ok(0.5 * (m.farthest(space, x) - m.dist(space, x) + m.depth(space, x)))
}

/// `beta(M, B[x, r]) = max(0, beta(M, x) - r)`.
pub fn ball_deviation_from_set(space: &CoordSpace, m: &ConvexBody, x: &Point, r: f64) -> f64 {
    (m.farthest(space, x) - r).max(0.0)
}

/// `beta(B[x, r], M)`: `r + |xM|` for `x` outside `M`, and
/// `max(0, r - |x(X\M)|)` inside, which is attained by the point of the
/// sphere beyond the nearest boundary point.
pub fn set_deviation_from_ball(space: &CoordSpace, m: &ConvexBody, x: &Point, r: f64) -> f64 {
    (r + m.dist(space, x) - m.depth(space, x)).max(0.0)
}

/// `alpha(B[x, r], M)`.
pub fn ball_hausdorff(space: &CoordSpace, m: &ConvexBody, x: &Point, r: f64) -> f64 {
    set_deviation_from_ball(space, m, x, r).max(ball_deviation_from_set(space, m, x, r))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallFit {
    pub center: Point,
    pub radius: f64,
    pub hausdorff_value: f64,
}

/// Grid resolution per axis of the coarse search over a hull.
pub const GRID: usize = 64;

/// A ball nearest to `M` in the Hausdorff metric. The center is searched in
/// `M`, where every minimizer of `psi` lies.
pub fn best_ball(space: &CoordSpace, m: &ConvexBody, tol: f64) -> Result<BallFit> {
    m.validate(space)?;
    let center = match m {
        ConvexBody::MetricBall { center, .. } => center.clone(),
        ConvexBody::Segment { x, y } => {
            let (t, _) = golden_min(|t| psi_unchecked(space, m, &space.geodesic(x, y, t)), 0.0, 1.0, tol.min(1e-9));
            space.geodesic(x, y, t)
        }
        ConvexBody::Hull { vertices } => best_in_hull(space, m, vertices, tol)?,
    };
    let radius = r_fun(space, m, &center)?;
    Ok(BallFit { hausdorff_value: ball_hausdorff(space, m, &center, radius), center, radius })
}

fn best_in_hull(space: &CoordSpace, m: &ConvexBody, vertices: &[Point], tol: f64) -> Result<Point> {
    if vertices.len() <= 2 {
        let seg = ConvexBody::Segment { x: vertices[0].clone(), y: vertices[vertices.len() - 1].clone() };
        return best_ball(space, &seg, tol).map(|f| f.center);
    }
    let (lo, hi) = vertices.iter().fold(([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]), |(lo, hi), v| {
        ([lo[0].min(v[0]), lo[1].min(v[1])], [hi[0].max(v[0]), hi[1].max(v[1])])
    });
    let f = |p: &Point| psi_unchecked(space, m, p);
    let mut best = (vertices[0].clone(), f(&vertices[0]));
    for i in 0..=GRID {
        for j in 0..=GRID {
            let p = Point::xy(
                lo[0] + (hi[0] - lo[0]) * i as f64 / GRID as f64,
                lo[1] + (hi[1] - lo[1]) * j as f64 / GRID as f64,
            );
            if m.contains(space, &p) {
                let v = f(&p);
                if v < best.1 {
                    best = (p, v);
                }
            }
        }
    }
    // compass search over 16 directions, restricted to M
    let dirs: Vec<(f64, f64)> = (0..16)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / 8.0;
            (t.cos(), t.sin())
        })
        .collect();
    let mut step = (hi[0] - lo[0]).max(hi[1] - lo[1]) / GRID as f64;
    let mut iterations = 0usize;
    while step > tol * 1e-3 {
        iterations += 1;
        if iterations > 100_000 {
            return Err(GeomError::NonConvergence { iterations, residual: step });
        }
        let trial = dirs
            .iter()
            .map(|(dx, dy)| Point::xy(best.0[0] + step * dx, best.0[1] + step * dy))
            .filter(|p| m.contains(space, p))
            .map(|p| {
                let v = f(&p);
                (p, v)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match trial {
            Some(t) if t.1 < best.1 - 1e-15 => best = t,
            _ => step *= 0.5,
        }
    }
    Ok(best.0)
}

/// Deviations `beta(chi(M_n), chi(M))` between computed best-ball centers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityTable {
    pub deviations: Vec<f64>,
    pub values: Vec<f64>,
    pub limit_value: f64,
    /// Last deviation below `tol` and no later entry exceeding an earlier
    /// one by more than `tol`.
    pub pass: bool,
}

pub fn best_ball_stability(space: &CoordSpace, family: &[ConvexBody], limit: &ConvexBody, tol: f64) -> Result<StabilityTable> {
    if family.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let target = best_ball(space, limit, tol * 1e-3)?;
    let fits = family.iter().map(|m| best_ball(space, m, tol * 1e-3)).collect::<Result<Vec<_>>>()?;
    let deviations: Vec<f64> = fits.iter().map(|f| space.dist(&f.center, &target.center)).collect();
    let monotone = deviations
        .iter()
        .enumerate()
        .all(|(i, d)| deviations[..i].iter().all(|e| *d <= e + tol));
    let pass = monotone && *deviations.last().expect("nonempty") < tol;
    Ok(StabilityTable {
        values: fits.iter().map(|f| f.hausdorff_value).collect(),
        deviations,
        limit_value: target.hausdorff_value,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::KleinBall;

    fn square() -> ConvexBody {
        ConvexBody::hull(vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(1.0, 1.0), Point::xy(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn hull_drops_interior_points() {
        let h = convex_hull_2d(&[Point::xy(0.0, 0.0), Point::xy(2.0, 0.0), Point::xy(1.0, 0.5), Point::xy(1.0, 2.0)]);
        assert_eq!(h.len(), 3);
        let line = convex_hull_2d(&[Point::xy(0.0, 0.0), Point::xy(1.0, 1.0), Point::xy(2.0, 2.0)]);
        assert_eq!(line, vec![Point::xy(0.0, 0.0), Point::xy(2.0, 2.0)]);
    }

    #[test]
    fn outside_point_functionals() {
        let e = CoordSpace::euclidean(2);
        let m = square();
        let x = Point::xy(3.0, 0.5);
        assert!((m.dist(&e, &x) - 2.0).abs() < 1e-15);
        let b = m.farthest(&e, &x);
        assert!((psi(&e, &m, &x).unwrap() - (b + 2.0) / 2.0).abs() < 1e-15);
        assert!((r_fun(&e, &m, &x).unwrap() - (b - 2.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn segment_midpoint_quarter() {
        let e = CoordSpace::euclidean(2);
        let m = ConvexBody::Segment { x: Point::xy(0.0, 0.0), y: Point::xy(1.0, 0.0) };
        assert!((psi(&e, &m, &Point::xy(0.5, 0.0)).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn square_center_and_depth() {
        let e = CoordSpace::euclidean(2);
        let m = square();
        let c = Point::xy(0.5, 0.5);
        assert!((m.depth(&e, &c) - 0.5).abs() < 1e-15);
        let fit = best_ball(&e, &m, 1e-9).unwrap();
        assert!(e.dist(&fit.center, &c) < 1e-6);
        let expect = (0.5f64.sqrt() - 0.5) / 2.0;
        assert!((fit.hausdorff_value - expect).abs() < 1e-9);
    }

    #[test]
    fn ball_is_its_own_best_ball() {
        let k = CoordSpace::Klein(KleinBall::unit(2));
        let m = ConvexBody::MetricBall { center: Point::xy(0.2, -0.1), radius: 0.7 };
        let fit = best_ball(&k, &m, 1e-9).unwrap();
        assert_eq!(fit.center, Point::xy(0.2, -0.1));
        assert!(fit.hausdorff_value.abs() < 1e-15 && (fit.radius - 0.7).abs() < 1e-15);
    }

    #[test]
    fn hull_in_klein_is_rejected() {
        let k = CoordSpace::Klein(KleinBall::unit(2));
        assert!(matches!(psi(&k, &square(), &Point::xy(0.1, 0.1)), Err(GeomError::UnsupportedBody(_))));
    }
}
