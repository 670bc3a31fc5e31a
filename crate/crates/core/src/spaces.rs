//! Model metric spaces and the geodesic operator `omega`.
//!
//! Three models are provided: Euclidean space, the Klein ball model of
//! Lobachevsky space (the Hilbert metric of a Euclidean ball), and finite
//! spaces given by a distance matrix. Geodesics in both continuous models
//! are Euclidean chords, so `omega` reduces to a one-dimensional problem on
//! the chord.

use std::fmt::Debug;
use std::ops::Deref;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, MetricViolation, Result};

/// Absolute slack used when comparing distances for equality.
pub const EQ_TOL: f64 = 1e-12;

/// A coordinate vector. Serializes as a plain JSON array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(DVector<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(DVector::from_vec(coords))
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Point::new(vec![x, y])
    }

    pub fn zeros(dim: usize) -> Self {
        Point(DVector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.0
    }
}

impl Deref for Point {
    type Target = DVector<f64>;
    fn deref(&self) -> &DVector<f64> {
        &self.0
    }
}

impl From<DVector<f64>> for Point {
    fn from(v: DVector<f64>) -> Self {
        Point(v)
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::new(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point::new(v.to_vec())
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0.as_slice().to_vec()
    }
}

/// A metric space over points of type `Pt`.
pub trait MetricSpace {
    type Pt: Clone + Debug;

    /// Distance between two valid points. Validity is the caller's
    /// responsibility; see [`MetricSpace::check_point`].
    fn dist(&self, x: &Self::Pt, y: &Self::Pt) -> f64;

    fn check_point(&self, _x: &Self::Pt) -> Result<()> {
        Ok(())
    }

    fn checked_dist(&self, x: &Self::Pt, y: &Self::Pt) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.dist(x, y))
    }
}

/// A metric space with unique segments and a parametrization
/// `omega(x, y, t)` satisfying `|x omega| = |t| |xy|`.
pub trait GeodesicSpace: MetricSpace {
    /// Point on the line through `x` and `y` with signed parameter `lambda`.
    /// Fails when the extension leaves the space.
    fn omega(&self, x: &Self::Pt, y: &Self::Pt, lambda: f64) -> Result<Self::Pt>;

    /// Point of the segment `[x, y]`; `lambda` is clamped to `[0, 1]`.
    fn geodesic(&self, x: &Self::Pt, y: &Self::Pt, lambda: f64) -> Self::Pt {
        self.omega(x, y, lambda.clamp(0.0, 1.0))
            .expect("segment points stay inside the space")
    }

    fn midpoint(&self, x: &Self::Pt, y: &Self::Pt) -> Self::Pt {
        self.geodesic(x, y, 0.5)
    }
}

/// Coordinate models whose equidistant sets `{z : |za| = |zb|}` are
/// affine hyperplanes `g . z = h`.
pub trait LinearBisectors: GeodesicSpace<Pt = Point> {
    fn bisector(&self, a: &Point, b: &Point) -> (DVector<f64>, f64);
    fn dim(&self) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Euclidean {
    pub dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Self {
        Euclidean { dim }
    }
}

impl MetricSpace for Euclidean {
    type Pt = Point;

    fn dist(&self, x: &Point, y: &Point) -> f64 {
        (&x.0 - &y.0).norm()
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        check_dim(self.dim, x)
    }
}

impl GeodesicSpace for Euclidean {
    fn omega(&self, x: &Point, y: &Point, lambda: f64) -> Result<Point> {
        Ok(Point(&x.0 + (&y.0 - &x.0) * lambda))
    }
}

impl LinearBisectors for Euclidean {
    fn bisector(&self, a: &Point, b: &Point) -> (DVector<f64>, f64) {
        ((&b.0 - &a.0) * 2.0, b.0.norm_squared() - a.0.norm_squared())
    }

    fn dim(&self) -> usize {
        self.dim
    }
}

/// Klein model of Lobachevsky space in the open Euclidean ball `B(0, r)`
/// with curvature scale `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KleinBall {
    pub dim: usize,
    pub r: f64,
    pub k: f64,
}

impl KleinBall {
    pub fn new(dim: usize, r: f64, k: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && k > 0.0 && k.is_finite()) {
            return Err(GeomError::InvalidParameter(format!(
                "klein ball needs r > 0 and k > 0, got r={r}, k={k}"
            )));
        }
        Ok(KleinBall { dim, r, k })
    }

    /// The standard model `r = k = 1`.
    pub fn unit(dim: usize) -> Self {
        KleinBall { dim, r: 1.0, k: 1.0 }
    }

    /// `r^2 - |x|^2`, evaluated as a product to keep precision near the sphere.
    fn gap(&self, x: &Point) -> f64 {
        let n = x.0.norm();
        (self.r - n) * (self.r + n)
    }

    /// Distance from the origin, `k artanh(|x| / r)`.
    pub fn dist_from_origin(&self, x: &Point) -> f64 {
        self.k * (x.0.norm() / self.r).atanh()
    }
}

impl MetricSpace for KleinBall {
    type Pt = Point;

    fn dist(&self, x: &Point, y: &Point) -> f64 {
        // cosh(d/k) = A / sqrt(B) with A = r^2 - (x,y), B = (r^2-|x|^2)(r^2-|y|^2).
        // A^2 - B = r^2 |x-y|^2 - |x ^ (y-x)|^2, so the asinh form avoids the
        // cancellation that the arccosh form suffers for nearby points.
        let w = &y.0 - &x.0;
        let n = x.0.len();
        let mut wedge = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let t = x.0[i] * w[j] - x.0[j] * w[i];
                wedge += t * t;
            }
        }
        let num = (self.r * self.r * w.norm_squared() - wedge).max(0.0);
        let den = (self.gap(x) * self.gap(y)).sqrt();
        self.k * (num.sqrt() / den).asinh()
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        check_dim(self.dim, x)?;
        let norm = x.0.norm();
        if !(norm < self.r) {
            return Err(GeomError::OutsideBall { norm, radius: self.r });
        }
        Ok(())
    }
}

impl GeodesicSpace for KleinBall {
    fn omega(&self, x: &Point, y: &Point, lambda: f64) -> Result<Point> {
        let diff = &y.0 - &x.0;
        let d = diff.norm();
        if d == 0.0 {
            return Ok(x.clone());
        }
        let u = diff / d;
        let (t_minus, t_plus) = euclidean_chord(&x.0, &u, self.r);
        let s = chord_param(-t_minus, t_plus, d, lambda);
        let p = Point(&x.0 + u * s);
        let norm = p.0.norm();
        if !(norm < self.r) || !s.is_finite() {
            return Err(GeomError::OutsideBall { norm, radius: self.r });
        }
        Ok(p)
    }
}

impl LinearBisectors for KleinBall {
    fn bisector(&self, a: &Point, b: &Point) -> (DVector<f64>, f64) {
        let sa = self.gap(a).sqrt();
        let sb = self.gap(b).sqrt();
        (&a.0 / sa - &b.0 / sb, self.r * self.r * (1.0 / sa - 1.0 / sb))
    }

    fn dim(&self) -> usize {
        self.dim
    }
}

/// Parameters `t_minus < 0 < t_plus` with `|x + t u| = r`, for `|x| < r`
/// and a unit vector `u`.
pub(crate) fn euclidean_chord(x: &DVector<f64>, u: &DVector<f64>, r: f64) -> (f64, f64) {
    let b = x.dot(u);
    let n = x.norm();
    let c = -(r - n) * (r + n);
    let disc = (b * b - c).max(0.0).sqrt();
    let q = if b >= 0.0 { -(b + disc) } else { -b + disc };
    let (t1, t2) = (q, c / q);
    (t1.min(t2), t1.max(t2))
}

/// Position on a chord. The chord has endpoints at `-a` and `b` (with
/// `a, b > 0`), the base point sits at 0 and the target at `d` with
/// `0 < d < b`. Returns the position whose Hilbert distance from 0 is
/// `lambda` times that of `d`, with sign following `lambda`.
pub(crate) fn chord_param(a: f64, b: f64, d: f64, lambda: f64) -> f64 {
    let log_ratio = (d / a).ln_1p() - (-d / b).ln_1p();
    let qm1 = (lambda * log_ratio).exp_m1();
    if qm1.is_infinite() {
        return b;
    }
    a * b * qm1 / (b + a + a * qm1)
}

/// Hilbert distance along a chord with endpoints `-a`, `b` between the
/// positions 0 and `d`, with scale `k`: `(k/2) ln cross-ratio`.
pub(crate) fn chord_dist(a: f64, b: f64, d: f64, k: f64) -> f64 {
    0.5 * k * ((d / a).ln_1p() - (-d / b).ln_1p())
}

fn check_dim(dim: usize, x: &Point) -> Result<()> {
    if x.dim() != dim {
        return Err(GeomError::DimensionMismatch { expected: dim, found: x.dim() });
    }
    Ok(())
}

/// A finite metric space on indices `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteSpace {
    n: usize,
    d: Vec<f64>,
}

impl FiniteSpace {
    /// Validates the matrix; equivalent to [`validate_finite_metric`].
    pub fn new(d: Vec<Vec<f64>>) -> Result<Self> {
        validate_finite_metric(&d).map_err(GeomError::from)
    }

    /// Integers `0..n` with `|ij| = |i - j|`.
    pub fn path(n: usize) -> Self {
        let d = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i as f64 - j as f64).abs()))
            .collect();
        FiniteSpace { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

impl MetricSpace for FiniteSpace {
    type Pt = usize;

    fn dist(&self, x: &usize, y: &usize) -> f64 {
        self.d[x * self.n + y]
    }

    fn check_point(&self, x: &usize) -> Result<()> {
        if *x >= self.n {
            return Err(GeomError::IndexOutOfRange { index: *x, size: self.n });
        }
        Ok(())
    }
}

/// Checks the metric axioms with relative tolerance `1e-9` and reports the
/// first violation found.
pub fn validate_finite_metric(d: &[Vec<f64>]) -> std::result::Result<FiniteSpace, MetricViolation> {
    const TOL: f64 = 1e-9;
    let n = d.len();
    for (row, r) in d.iter().enumerate() {
        if r.len() != n {
            return Err(MetricViolation::NotSquare { row, len: r.len(), expected: n });
        }
    }
    let scale = d.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = TOL * scale;
    for i in 0..n {
        if d[i][i].abs() > tol {
            return Err(MetricViolation::Diagonal { i, value: d[i][i] });
        }
        for j in 0..n {
            let v = d[i][j];
            if !(v.is_finite() && v >= 0.0) {
                return Err(MetricViolation::Negative { i, j, value: v });
            }
            if (v - d[j][i]).abs() > tol {
                return Err(MetricViolation::Asymmetric { i, j, slack: v - d[j][i] });
            }
            if i != j && v <= tol {
                return Err(MetricViolation::NotSeparated { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let slack = d[i][k] - d[i][j] - d[j][k];
                if slack > tol {
                    return Err(MetricViolation::Triangle { i, j, k, slack });
                }
            }
        }
    }
    let flat = (0..n)
        .flat_map(|i| (0..n).map(move |j| if i == j { 0.0 } else { 0.5 * (d[i][j] + d[j][i]) }))
        .collect();
    Ok(FiniteSpace { n, d: flat })
}

/// Coordinate models with geodesics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoordSpace {
    Euclidean(Euclidean),
    Klein(KleinBall),
}

impl CoordSpace {
    pub fn euclidean(dim: usize) -> Self {
        CoordSpace::Euclidean(Euclidean::new(dim))
    }

    pub fn klein(dim: usize, r: f64, k: f64) -> Result<Self> {
        KleinBall::new(dim, r, k).map(CoordSpace::Klein)
    }
}

impl MetricSpace for CoordSpace {
    type Pt = Point;

    fn dist(&self, x: &Point, y: &Point) -> f64 {
        match self {
            CoordSpace::Euclidean(s) => s.dist(x, y),
            CoordSpace::Klein(s) => s.dist(x, y),
        }
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        match self {
            CoordSpace::Euclidean(s) => s.check_point(x),
            CoordSpace::Klein(s) => s.check_point(x),
        }
    }
}

impl GeodesicSpace for CoordSpace {
    fn omega(&self, x: &Point, y: &Point, lambda: f64) -> Result<Point> {
        match self {
            CoordSpace::Euclidean(s) => s.omega(x, y, lambda),
            CoordSpace::Klein(s) => s.omega(x, y, lambda),
        }
    }
}

impl LinearBisectors for CoordSpace {
    fn bisector(&self, a: &Point, b: &Point) -> (DVector<f64>, f64) {
        match self {
            CoordSpace::Euclidean(s) => s.bisector(a, b),
            CoordSpace::Klein(s) => s.bisector(a, b),
        }
    }

    fn dim(&self) -> usize {
        match self {
            CoordSpace::Euclidean(s) => s.dim,
            CoordSpace::Klein(s) => s.dim,
        }
    }
}

/// Any supported model, as selected at run time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelSpace {
    Coord(CoordSpace),
    Finite(FiniteSpace),
}

impl ModelSpace {
    pub fn geodesic(&self) -> Result<&CoordSpace> {
        match self {
            ModelSpace::Coord(s) => Ok(s),
            ModelSpace::Finite(_) => Err(GeomError::NotGeodesic),
        }
    }
}

/// Condition (A) witness in a geodesic space: the midpoint, if it satisfies
/// `2 max(|xz|, |zy|) < |xy| + eps`.
pub fn condition_a_witness<S: GeodesicSpace>(
    space: &S,
    x: &S::Pt,
    y: &S::Pt,
    eps: f64,
) -> Result<Option<S::Pt>> {
    check_eps(eps)?;
    let z = space.midpoint(x, y);
    let lhs = 2.0 * space.dist(x, &z).max(space.dist(&z, y));
    Ok((lhs < space.dist(x, y) + eps).then_some(z))
}

/// Condition (A) witness in a finite space by exhaustive scan. Returns the
/// point minimizing `max(|xz|, |zy|)` when it qualifies.
pub fn condition_a_scan(space: &FiniteSpace, x: usize, y: usize, eps: f64) -> Result<Option<usize>> {
    check_eps(eps)?;
    space.check_point(&x)?;
    space.check_point(&y)?;
    let dxy = space.dist(&x, &y);
    let best = space
        .points()
        .map(|z| (z, space.dist(&x, &z).max(space.dist(&z, &y))))
        .filter(|&(_, m)| 2.0 * m < dxy + eps)
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(best.map(|(z, _)| z))
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(GeomError::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// Busemann midpoint inequality `2 |omega(z,x) omega(z,y)| <= |xy|` at one triple.
pub fn check_busemann_npc<S: GeodesicSpace>(space: &S, x: &S::Pt, y: &S::Pt, z: &S::Pt) -> bool {
    let mx = space.midpoint(z, x);
    let my = space.midpoint(z, y);
    2.0 * space.dist(&mx, &my) <= space.dist(x, y) + 1e-9
}
