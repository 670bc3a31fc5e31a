//! Deviation, Hausdorff distance, metric eps-projections and the midpoint
//! set between two finite sets.

use std::ops::Deref;

use crate::error::{GeomError, Result};
use crate::spaces::{FiniteSpace, GeodesicSpace, MetricSpace, EQ_TOL};

/// A nonempty finite set of pairwise distinct points.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<P>(Vec<P>);

impl<P: Clone> PointSet<P> {
    /// Validates membership in `space`, nonemptiness and distinctness.
    pub fn new<S: MetricSpace<Pt = P>>(space: &S, points: Vec<P>) -> Result<Self> {
        if points.is_empty() {
            return Err(GeomError::EmptySet);
        }
        for p in &points {
            space.check_point(p)?;
        }
        for i in 0..points.len() {
            for j in 0..i {
                if space.dist(&points[i], &points[j]) <= EQ_TOL {
                    return Err(GeomError::DuplicatePoint(j, i));
                }
            }
        }
        Ok(PointSet(points))
    }

    /// Collapses near-duplicates instead of rejecting them.
    pub fn collapsed<S: MetricSpace<Pt = P>>(space: &S, points: Vec<P>) -> Result<Self> {
        Self::new(space, dedup(space, points, EQ_TOL))
    }

    pub fn into_inner(self) -> Vec<P> {
        self.0
    }
}

impl<P> Deref for PointSet<P> {
    type Target = [P];
    fn deref(&self) -> &[P] {
        &self.0
    }
}

/// Keeps the first representative of every cluster of points closer than `tol`.
pub fn dedup<S: MetricSpace>(space: &S, points: Vec<S::Pt>, tol: f64) -> Vec<S::Pt> {
    let mut out: Vec<S::Pt> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| space.dist(q, &p) <= tol) {
            out.push(p);
        }
    }
    out
}

/// `|xM|`.
pub fn dist_to_set<S: MetricSpace>(space: &S, x: &S::Pt, m: &[S::Pt]) -> f64 {
    m.iter().map(|y| space.dist(x, y)).fold(f64::INFINITY, f64::min)
}

/// `beta(M, W) = max_{x in M} |xW|`.
pub fn deviation<S: MetricSpace>(space: &S, m: &[S::Pt], w: &[S::Pt]) -> f64 {
    m.iter().map(|x| dist_to_set(space, x, w)).fold(0.0, f64::max)
}

/// `alpha(M, W) = max(beta(M, W), beta(W, M))`.
pub fn hausdorff<S: MetricSpace>(space: &S, m: &[S::Pt], w: &[S::Pt]) -> f64 {
    deviation(space, m, w).max(deviation(space, w, m))
}

/// `P(x, M, eps) = M ∩ B[x, |xM| + eps]`; ties within `1e-12` are kept.
pub fn eps_projection<S: MetricSpace>(space: &S, x: &S::Pt, m: &[S::Pt], eps: f64) -> Vec<S::Pt> {
    let r = dist_to_set(space, x, m) + eps + EQ_TOL;
    m.iter().filter(|y| space.dist(x, y) <= r).cloned().collect()
}

/// `D(M) = max |xy|` over pairs of `M`.
pub fn diameter<S: MetricSpace>(space: &S, m: &[S::Pt]) -> f64 {
    cross_diameter(space, m, m)
}

/// `D(M, W) = max |xy|` over `x in M`, `y in W`.
pub fn cross_diameter<S: MetricSpace>(space: &S, m: &[S::Pt], w: &[S::Pt]) -> f64 {
    m.iter()
        .flat_map(|x| w.iter().map(move |y| (x, y)))
        .map(|(x, y)| space.dist(x, y))
        .fold(0.0, f64::max)
}

/// The set of midpoints of `x` with its nearest points in `W` and of `y` with
/// its nearest points in `M`, for all `x in M`, `y in W`.
pub fn midpoint_set<S: GeodesicSpace>(space: &S, m: &[S::Pt], w: &[S::Pt]) -> Vec<S::Pt> {
    let mut out = Vec::new();
    for (from, to) in [(m, w), (w, m)] {
        for x in from {
            for v in eps_projection(space, x, to, 0.0) {
                out.push(space.midpoint(x, &v));
            }
        }
    }
    dedup(space, out, 1e-10)
}

/// Both sides of `alpha(B[M, r], B[W, R]) <= alpha(M, W) + |R - r|` in a
/// finite space, with the balls computed as subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct BallBound {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `B[M, r] = {x : |xM| <= r}` as a subset of a finite space.
pub fn generalized_ball(space: &FiniteSpace, core: &[usize], r: f64) -> Vec<usize> {
    space.points().filter(|x| dist_to_set(space, x, core) <= r + EQ_TOL).collect()
}

pub fn generalized_ball_check(
    space: &FiniteSpace,
    m: &[usize],
    r: f64,
    w: &[usize],
    big_r: f64,
) -> Result<BallBound> {
    if m.is_empty() || w.is_empty() {
        return Err(GeomError::EmptySet);
    }
    if r < 0.0 || big_r < 0.0 {
        return Err(GeomError::InvalidParameter("ball radii must be nonnegative".into()));
    }
    for p in m.iter().chain(w) {
        space.check_point(p)?;
    }
    let bm = generalized_ball(space, m, r);
    let bw = generalized_ball(space, w, big_r);
    let lhs = hausdorff(space, &bm, &bw);
    let rhs = hausdorff(space, m, w) + (big_r - r).abs();
    Ok(BallBound { lhs, rhs, ok: lhs <= rhs + 1e-9 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{Euclidean, Point};

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::xy(x, y)).collect()
    }

    #[test]
    fn deviation_basics() {
        let e = Euclidean::new(2);
        let m = pts(&[(0.0, 0.0)]);
        let w = pts(&[(3.0, 4.0)]);
        assert_eq!(deviation(&e, &m, &w), 5.0);
        let big = pts(&[(0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(deviation(&e, &m, &big), 0.0);
        assert_eq!(hausdorff(&e, &big, &big), 0.0);
    }

    #[test]
    fn projection_ties_and_large_eps() {
        let e = Euclidean::new(2);
        let m = pts(&[(-1.0, 0.0), (1.0, 0.0), (0.0, 5.0)]);
        let x = Point::xy(0.0, 0.0);
        assert_eq!(eps_projection(&e, &x, &m, 0.0).len(), 2);
        assert_eq!(eps_projection(&e, &x, &m, 10.0).len(), 3);
    }

    #[test]
    fn point_set_validation() {
        let e = Euclidean::new(2);
        assert_eq!(PointSet::new(&e, vec![]).unwrap_err(), GeomError::EmptySet);
        let dup = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(PointSet::new(&e, dup.clone()).unwrap_err(), GeomError::DuplicatePoint(0, 2));
        assert_eq!(PointSet::collapsed(&e, dup).unwrap().len(), 2);
    }

    #[test]
    fn singleton_diameter() {
        let e = Euclidean::new(2);
        assert_eq!(diameter(&e, &pts(&[(4.0, 2.0)])), 0.0);
    }

    #[test]
    fn midpoint_set_of_equal_sets() {
        let e = Euclidean::new(2);
        let m = pts(&[(0.0, 0.0), (2.0, 1.0), (-1.0, 3.0)]);
        let om = midpoint_set(&e, &m, &m);
        assert_eq!(om.len(), 3);
        assert_eq!(hausdorff(&e, &m, &om), 0.0);
    }

    #[test]
    fn ball_bound_on_a_path() {
        let s = FiniteSpace::path(12);
        let b = generalized_ball_check(&s, &[1, 7], 1.0, &[3], 2.5).unwrap();
        assert!(b.ok, "{b:?}");
        let same = generalized_ball_check(&s, &[4], 2.0, &[4], 2.0).unwrap();
        assert_eq!((same.lhs, same.rhs), (0.0, 0.0));
    }

    #[test]
    fn ball_bound_fails_in_a_two_point_space() {
        // B[{0}, 0.9] = {0} while B[{0}, 1] = {0, 1}.
        let two = FiniteSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let b = generalized_ball_check(&two, &[0], 0.9, &[0], 1.0).unwrap();
        assert!(!b.ok);
        assert_eq!(b.lhs, 1.0);
        assert!((b.rhs - 0.1).abs() < 1e-15);
    }
}
