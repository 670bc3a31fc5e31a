//! Chebyshev radii and centers: relative, self-relative and absolute, the
//! quantities used to classify finite nets, best N-nets, and radius
//! perturbation bounds.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hausdorff::{cross_diameter, deviation, diameter, dist_to_set, hausdorff};
use crate::report::Check;
use crate::spaces::{Euclidean, GeodesicSpace, LinearBisectors, MetricSpace, Point};

/// Tolerance for equality of distances in the net classification.
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterResult<P> {
    pub centers: Vec<P>,
    pub radius: f64,
    pub iterations: usize,
    pub residual: f64,
    /// True when optimality was verified rather than estimated.
    pub certified: bool,
}

/// `beta(M, {x})`, the farthest distance from `x` to `M`.
pub fn eccentricity<S: MetricSpace>(space: &S, m: &[S::Pt], x: &S::Pt) -> f64 {
    m.iter().map(|y| space.dist(x, y)).fold(0.0, f64::max)
}

/// `R_W(M)` and `Z_W(M)` by enumeration of the finite set `W`. Centers are
/// the points of `W` within `tol` of the minimum.
pub fn relative_radius_centers<S: MetricSpace>(
    space: &S,
    m: &[S::Pt],
    w: &[S::Pt],
    tol: f64,
) -> Result<CenterResult<S::Pt>> {
    if m.is_empty() || w.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let ecc: Vec<f64> = w.iter().map(|x| eccentricity(space, m, x)).collect();
    let radius = ecc.iter().copied().fold(f64::INFINITY, f64::min);
    let centers: Vec<S::Pt> = w
        .iter()
        .zip(&ecc)
        .filter(|(_, &e)| e <= radius + tol)
        .map(|(x, _)| x.clone())
        .collect();
    let residual = ecc.iter().filter(|&&e| e <= radius + tol).fold(0.0f64, |a, &e| a.max(e - radius));
    Ok(CenterResult { centers, radius, iterations: 0, residual, certified: true })
}

/// `R_W(M)`.
pub fn relative_radius<S: MetricSpace>(space: &S, m: &[S::Pt], w: &[S::Pt]) -> f64 {
    w.iter().map(|x| eccentricity(space, m, x)).fold(f64::INFINITY, f64::min)
}

/// Quantities attached to a finite net of distinct points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetClassification<P> {
    pub m: f64,
    pub m1: f64,
    pub h: Vec<P>,
    pub h1: Vec<P>,
    pub diameter: f64,
    pub r0: f64,
    pub z0: Vec<P>,
    pub diametral: Vec<P>,
    pub q0: Vec<P>,
    pub in_d0: bool,
    pub in_dm1: bool,
    pub in_d0_nminus1: bool,
    pub z0_cardinality: usize,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLASS_TOL * (1.0 + a.abs().max(b.abs()))
}

/// Every quantity of [`NetClassification`] by enumeration.
pub fn self_sets<S: MetricSpace>(space: &S, s: &[S::Pt]) -> Result<NetClassification<S::Pt>> {
    if s.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let n = s.len();
    let d: Vec<Vec<f64>> = s.iter().map(|a| s.iter().map(|b| space.dist(a, b)).collect()).collect();
    // |x S(x)|, with S(x) = {x} for a singleton
    let gap: Vec<f64> = (0..n)
        .map(|i| if n == 1 { 0.0 } else { (0..n).filter(|&j| j != i).map(|j| d[i][j]).fold(f64::INFINITY, f64::min) })
        .collect();
    let ecc: Vec<f64> = d.iter().map(|r| r.iter().copied().fold(0.0, f64::max)).collect();
    let m = gap.iter().copied().fold(f64::INFINITY, f64::min);
    let m1 = gap.iter().copied().fold(0.0, f64::max);
    let big_d = ecc.iter().copied().fold(0.0, f64::max);
    let r0 = ecc.iter().copied().fold(f64::INFINITY, f64::min);
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<S::Pt> { (0..n).filter(|&i| f(i)).map(|i| s[i].clone()).collect() };
    let z0_idx: Vec<usize> = (0..n).filter(|&i| close(ecc[i], r0)).collect();
    let q0 = pick(&|i| close(z0_idx.iter().map(|&j| d[i][j]).fold(0.0, f64::max), r0));
    let in_d0 = close(big_d, r0);
    let far_count = |i: usize| (0..n).filter(|&j| j != i && close(d[i][j], big_d)).count();
    let in_dm1 = n > 1 && in_d0 && (0..n).any(|i| far_count(i) == n - 1);
    let in_d0_nminus1 = n > 1 && in_d0 && (0..n).any(|i| far_count(i) + 2 >= n);
    Ok(NetClassification {
        m,
        m1,
        h: pick(&|i| close(gap[i], m)),
        h1: pick(&|i| close(gap[i], m1)),
        diameter: big_d,
        r0,
        z0: z0_idx.iter().map(|&i| s[i].clone()).collect(),
        diametral: pick(&|i| close(ecc[i], big_d)),
        q0,
        in_d0,
        in_dm1,
        in_d0_nminus1,
        z0_cardinality: z0_idx.len(),
    })
}

/// Membership in the closure of the nets with a single self-relative
/// center: `D(Z_0(S)) < R_0(S)`, or some pair `x, y` has `|xy| = R_0(S)` and
/// `D({x, y}, S \ {x, y}) = R_0(S)`.
pub fn closure_z1_membership<S: MetricSpace>(space: &S, s: &[S::Pt]) -> Result<bool> {
    let c = self_sets(space, s)?;
    if diameter(space, &c.z0) < c.r0 - CLASS_TOL * (1.0 + c.r0) {
        return Ok(true);
    }
    let n = s.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if !close(space.dist(&s[i], &s[j]), c.r0) {
                continue;
            }
            let pair = [s[i].clone(), s[j].clone()];
            let rest: Vec<S::Pt> = (0..n).filter(|&k| k != i && k != j).map(|k| s[k].clone()).collect();
            if rest.is_empty() || close(cross_diameter(space, &pair, &rest), c.r0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Settings of the center solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub patience: usize,
}

impl Default for CenterOptions {
    fn default() -> Self {
        CenterOptions { tol: 1e-8, max_iter: 1_000_000, patience: 50 }
    }
}

/// Chebyshev center of a finite set in a model whose bisectors are affine.
///
/// Runs the geodesic descent `x <- omega(x, farthest, 1/(k+2))`. At
/// geometric checkpoints the current near-farthest points are tried as
/// support sets: the point of their affine hull equidistant from all of
/// them is accepted when it lies in their convex hull and covers `M`, which
/// certifies optimality.
pub fn chebyshev_center<S: LinearBisectors>(space: &S, m: &[Point], opts: CenterOptions) -> Result<CenterResult<Point>> {
    let first = m.first().ok_or(GeomError::EmptySet)?;
    for p in m {
        space.check_point(p)?;
    }
    if m.len() == 1 {
        return Ok(CenterResult { centers: vec![first.clone()], radius: 0.0, iterations: 0, residual: 0.0, certified: true });
    }
    let lower = 0.5 * diameter(space, m);
    let centroid = m.iter().fold(DVector::zeros(first.dim()), |acc, p| acc + p.vector()) / m.len() as f64;
    let mut x = Point::from(centroid);
    let mut best_x = x.clone();
    let mut best_f = f64::INFINITY;
    let mut stale = 0usize;
    let mut checkpoint = 16usize;
    for k in 0..opts.max_iter {
        let (far, f) = farthest(space, m, &x);
        if f < best_f - opts.tol {
            stale = 0;
        } else {
            stale += 1;
        }
        if f < best_f {
            best_f = f;
            best_x = x.clone();
        }
        let done = stale >= opts.patience || best_f - lower < opts.tol;
        if k + 1 == checkpoint || done {
            if let Some((c, r, slack)) = polish(space, m, &best_x, best_f) {
                return Ok(CenterResult { centers: vec![c], radius: r, iterations: k + 1, residual: slack, certified: true });
            }
            checkpoint *= 4;
        }
        if done {
            return Ok(CenterResult {
                centers: vec![best_x],
                radius: best_f,
                iterations: k + 1,
                residual: best_f - lower,
                certified: false,
            });
        }
        x = space.geodesic(&x, &m[far], 1.0 / (k as f64 + 2.0));
    }
    Err(GeomError::NonConvergence { iterations: opts.max_iter, residual: best_f - lower })
}

fn farthest<S: MetricSpace<Pt = Point>>(space: &S, m: &[Point], x: &Point) -> (usize, f64) {
    m.iter()
        .enumerate()
        .map(|(i, y)| (i, space.dist(x, y)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

/// Number of near-farthest points tried as support candidates.
const SUPPORT_POOL: usize = 10;

fn polish<S: LinearBisectors>(space: &S, m: &[Point], x: &Point, f: f64) -> Option<(Point, f64, f64)> {
    let mut order: Vec<(usize, f64)> = m.iter().enumerate().map(|(i, y)| (i, space.dist(x, y))).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    let pool: Vec<usize> = order
        .iter()
        .take(SUPPORT_POOL)
        .filter(|(_, d)| *d >= 0.5 * f)
        .map(|&(i, _)| i)
        .collect();
    let max_size = (space.dim() + 1).min(pool.len());
    let mut best: Option<(Point, f64, f64)> = None;
    let mut subset = Vec::new();
    for size in 2..=max_size {
        for_each_subset(pool.len(), size, &mut subset, &mut |idx| {
            let pts: Vec<&Point> = idx.iter().map(|&i| &m[pool[i]]).collect();
            if let Some((c, r)) = equidistant_in_hull(space, &pts) {
                let reach = eccentricity(space, m, &c);
                if reach <= r + 1e-10 * (1.0 + r) && best.as_ref().is_none_or(|b| r < b.1) {
                    best = Some((c, r, (reach - r).max(0.0)));
                }
            }
        });
    }
    best
}

fn for_each_subset(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    cur.clear();
    rec(0, n, k, cur, f);
}

/// The point of `aff(A)` equidistant from all of `A`, if it exists, lies in
/// `conv(A)`, and is inside the space.
fn equidistant_in_hull<S: LinearBisectors>(space: &S, a: &[&Point]) -> Option<(Point, f64)> {
    let k = a.len() - 1;
    let a0 = a[0].vector();
    let dirs: Vec<DVector<f64>> = a[1..].iter().map(|p| p.vector() - a0).collect();
    let mut g = DMatrix::zeros(k, k);
    let mut rhs = DVector::zeros(k);
    for j in 0..k {
        let (n, h) = space.bisector(a[0], a[j + 1]);
        for i in 0..k {
            g[(j, i)] = n.dot(&dirs[i]);
        }
        rhs[j] = h - n.dot(a0);
    }
    let c = g.lu().solve(&rhs)?;
    let total: f64 = c.iter().sum();
    let bary_min = c.iter().copied().fold(1.0 - total, f64::min);
    if !(bary_min >= -1e-9) {
        return None;
    }
    let x = dirs.iter().zip(c.iter()).fold(a0.clone(), |acc, (d, ci)| acc + d * *ci);
    let x = Point::from(x);
    space.check_point(&x).ok()?;
    let r = space.dist(&x, a[0]);
    a.iter()
        .all(|p| (space.dist(&x, p) - r).abs() <= 1e-9 * (1.0 + r))
        .then_some((x, r))
}

/// Minimum-norm point of the convex hull of `p` (Wolfe's algorithm).
pub fn min_norm_point(p: &[DVector<f64>]) -> DVector<f64> {
    let scale = p.iter().map(|v| v.norm_squared()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let i0 = (0..p.len()).min_by(|&a, &b| p[a].norm_squared().total_cmp(&p[b].norm_squared())).expect("nonempty");
    let mut corral = vec![i0];
    let mut w = vec![1.0];
    let mut x = p[i0].clone();
    for _ in 0..10_000 {
        let j = (0..p.len()).min_by(|&a, &b| x.dot(&p[a]).total_cmp(&x.dot(&p[b]))).expect("nonempty");
        if x.norm_squared() - x.dot(&p[j]) <= 1e-14 * scale || corral.contains(&j) {
            break;
        }
        corral.push(j);
        w.push(0.0);
        loop {
            let Some(alpha) = affine_min_norm(p, &corral) else { break };
            if alpha.iter().all(|&a| a > 1e-14) {
                w = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (wi, ai) in w.iter().zip(&alpha) {
                if *ai <= 1e-14 && wi - ai > 0.0 {
                    theta = theta.min(wi / (wi - ai));
                }
            }
            for (wi, ai) in w.iter_mut().zip(&alpha) {
                *wi += theta * (ai - *wi);
            }
            let keep: Vec<bool> = w.iter().map(|&wi| wi > 1e-14).collect();
            corral = corral.iter().zip(&keep).filter(|(_, &k)| k).map(|(&c, _)| c).collect();
            w = w.iter().zip(&keep).filter(|(_, &k)| k).map(|(&v, _)| v).collect();
            let sum: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= sum);
            if corral.len() == 1 {
                w = vec![1.0];
                break;
            }
        }
        x = corral.iter().zip(&w).fold(DVector::zeros(p[0].len()), |acc, (&i, &wi)| acc + &p[i] * wi);
    }
    x
}

/// Weights `alpha` with `sum alpha = 1` minimizing `|sum alpha_i p_i|`.
fn affine_min_norm(p: &[DVector<f64>], idx: &[usize]) -> Option<Vec<f64>> {
    let k = idx.len();
    let mut a = DMatrix::zeros(k + 1, k + 1);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            a[(r, c)] = p[i].dot(&p[j]);
        }
        a[(r, k)] = 1.0;
        a[(k, r)] = 1.0;
    }
    let mut b = DVector::zeros(k + 1);
    b[k] = 1.0;
    let sol = a.lu().solve(&b)?;
    Some(sol.iter().take(k).copied().collect())
}

/// Euclidean distance from `x` to the convex hull of `m`.
pub fn distance_to_hull(m: &[Point], x: &Point) -> f64 {
    let shifted: Vec<DVector<f64>> = m.iter().map(|p| p.vector() - x.vector()).collect();
    min_norm_point(&shifted).norm()
}

/// Whether the Euclidean Chebyshev center of `m` lies in `conv(m)` within `tol`.
pub fn hull_membership_check(m: &[Point], tol: f64) -> Result<bool> {
    let dim = m.first().ok_or(GeomError::EmptySet)?.dim();
    let c = chebyshev_center(&Euclidean::new(dim), m, CenterOptions::default())?;
    Ok(distance_to_hull(m, &c.centers[0]) <= tol)
}

/// Best covering by at most `n` balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetMode {
    Exact,
    Local,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetFit {
    pub centers: Vec<Point>,
    pub radius: f64,
    /// Indices of `M` covered by each center.
    pub clusters: Vec<Vec<usize>>,
}

/// Limit on the number of partitions enumerated in exact mode.
pub const PARTITION_LIMIT: u128 = 100_000;

/// Number of partitions of an `n`-set into at most `k` blocks.
pub fn partition_count(n: usize, k: usize) -> u128 {
    // Stirling numbers of the second kind, row by row.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; k + 1];
        for j in 1..=k {
            next[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row = next;
    }
    row.iter().skip(1).fold(0u128, |a, &b| a.saturating_add(b))
}

/// Best `n`-net `S*` with `beta(M, S*) = R_n(M)` (exact mode) or a local
/// optimum from deterministic farthest-first starts (local mode).
pub fn best_nnet<S: LinearBisectors>(space: &S, m: &[Point], n: usize, mode: NetMode) -> Result<NetFit> {
    if m.is_empty() {
        return Err(GeomError::EmptySet);
    }
    if n == 0 {
        return Err(GeomError::InvalidParameter("n must be positive".into()));
    }
    if n >= m.len() {
        return Ok(NetFit { centers: m.to_vec(), radius: 0.0, clusters: (0..m.len()).map(|i| vec![i]).collect() });
    }
    match mode {
        NetMode::Exact => exact_nnet(space, m, n),
        NetMode::Local => Ok(local_nnet(space, m, n)),
    }
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn cluster_center<S: LinearBisectors>(space: &S, m: &[Point], idx: &[usize]) -> (Point, f64) {
    let pts: Vec<Point> = idx.iter().map(|&i| m[i].clone()).collect();
    let c = chebyshev_center(space, &pts, CenterOptions::default())
        .expect("finite nonempty clusters converge");
    (c.centers[0].clone(), c.radius)
}

fn exact_nnet<S: LinearBisectors>(space: &S, m: &[Point], n: usize) -> Result<NetFit> {
    let count = partition_count(m.len(), n);
    if count > PARTITION_LIMIT || m.len() > 63 {
        return Err(GeomError::GuardExceeded { count, limit: PARTITION_LIMIT });
    }
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut label = vec![0usize; m.len()];
    let mut best: (f64, Vec<usize>) = (f64::INFINITY, Vec::new());
    // restricted growth strings with at most n blocks
    fn rec<S: LinearBisectors>(
        i: usize,
        used: usize,
        n: usize,
        label: &mut Vec<usize>,
        space: &S,
        m: &[Point],
        cache: &mut HashMap<u64, f64>,
        best: &mut (f64, Vec<usize>),
    ) {
        if i == label.len() {
            let mut masks = vec![0u64; used];
            for (j, &b) in label.iter().enumerate() {
                masks[b] |= 1 << j;
            }
            let mut worst = 0.0f64;
            for mask in masks {
                let r = *cache.entry(mask).or_insert_with(|| {
                    let idx: Vec<usize> = members(mask).collect();
                    cluster_center(space, m, &idx).1
                });
                worst = worst.max(r);
                if worst >= best.0 {
                    return;
                }
            }
            *best = (worst, label.clone());
            return;
        }
        for b in 0..(used + 1).min(n) {
            label[i] = b;
            rec(i + 1, used.max(b + 1), n, label, space, m, cache, best);
        }
    }
    rec(0, 0, n, &mut label, space, m, &mut cache, &mut best);
    Ok(fit_from_labels(space, m, &best.1))
}

fn fit_from_labels<S: LinearBisectors>(space: &S, m: &[Point], label: &[usize]) -> NetFit {
    let blocks = label.iter().copied().max().map_or(0, |b| b + 1);
    let clusters: Vec<Vec<usize>> = (0..blocks).map(|b| (0..m.len()).filter(|&i| label[i] == b).collect()).collect();
    let fitted: Vec<(Point, f64)> = clusters.iter().map(|c| cluster_center(space, m, c)).collect();
    let radius = fitted.iter().map(|f| f.1).fold(0.0, f64::max);
    NetFit { centers: fitted.into_iter().map(|f| f.0).collect(), radius, clusters }
}

fn local_nnet<S: LinearBisectors>(space: &S, m: &[Point], n: usize) -> NetFit {
    let starts = m.len().min(8);
    let mut best: Option<NetFit> = None;
    for s in 0..starts {
        // farthest-first traversal from point s
        let mut centers = vec![m[s].clone()];
        while centers.len() < n {
            let far = (0..m.len())
                .max_by(|&a, &b| dist_to_set(space, &m[a], &centers).total_cmp(&dist_to_set(space, &m[b], &centers)))
                .expect("nonempty");
            centers.push(m[far].clone());
        }
        let mut label: Vec<usize> = Vec::new();
        for _ in 0..100 {
            let next: Vec<usize> = m.iter().map(|p| nearest(space, &centers, p)).collect();
            if next == label {
                break;
            }
            label = next;
            let fit = fit_from_labels(space, m, &compact(&label));
            centers = fit.centers;
        }
        let fit = improve_by_moves(space, m, compact(&label), n);
        if best.as_ref().is_none_or(|b| fit.radius < b.radius) {
            best = Some(fit);
        }
    }
    best.expect("at least one start")
}

/// Moves single points between clusters while the covering radius drops.
fn improve_by_moves<S: LinearBisectors>(space: &S, m: &[Point], mut label: Vec<usize>, n: usize) -> NetFit {
    let mut fit = fit_from_labels(space, m, &label);
    for _ in 0..50 {
        let mut moved = false;
        for i in 0..m.len() {
            for b in (0..n).filter(|&b| b != label[i]) {
                let mut trial = label.clone();
                trial[i] = b;
                let trial = compact(&trial);
                let next = fit_from_labels(space, m, &trial);
                if next.radius < fit.radius - 1e-12 {
                    label = trial;
                    fit = next;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            break;
        }
    }
    fit
}

fn nearest<S: MetricSpace<Pt = Point>>(space: &S, c: &[Point], p: &Point) -> usize {
    (0..c.len()).min_by(|&a, &b| space.dist(&c[a], p).total_cmp(&space.dist(&c[b], p))).expect("nonempty")
}

/// Relabels so that block ids are `0..k` in order of first appearance.
fn compact(label: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    label
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// Evaluates the radius perturbation inequalities for finite sets.
pub fn radius_perturbation_bounds<S: MetricSpace>(
    space: &S,
    m: &[S::Pt],
    w: &[S::Pt],
    a: &[S::Pt],
    b: &[S::Pt],
) -> Result<Vec<Check>> {
    if [m, w, a, b].iter().any(|s| s.is_empty()) {
        return Err(GeomError::EmptySet);
    }
    const TOL: f64 = 1e-9;
    let beta = |x: &[S::Pt], y: &[S::Pt]| deviation(space, x, y);
    let alpha = |x: &[S::Pt], y: &[S::Pt]| hausdorff(space, x, y);
    let shift = (relative_radius(space, m, w) - relative_radius(space, a, b)).abs();
    let r0_shift = (relative_radius(space, m, m) - relative_radius(space, a, a)).abs();
    let pool: Vec<S::Pt> = m.iter().chain(w).chain(a).chain(b).cloned().collect();
    let pooled = (relative_radius(space, m, &pool) - relative_radius(space, w, &pool)).abs();
    let theta = relative_radius(space, m, w).max(relative_radius(space, w, m));
    Ok(vec![
        Check::le(
            "relative radius shift by deviations",
            shift,
            (beta(m, a) + beta(b, w)).max(beta(a, m) + beta(w, b)),
            TOL,
        ),
        Check::le("relative radius shift by hausdorff sums", shift, alpha(m, a) + alpha(w, b), TOL),
        Check::le("self radius shift by deviations", r0_shift, beta(m, a) + beta(a, m), TOL),
        Check::le("self radius shift by hausdorff", r0_shift, 2.0 * alpha(m, a), TOL),
        Check::le("pooled radius shift", pooled, alpha(m, w), TOL),
        Check::le("hausdorff below theta", alpha(m, w), theta, TOL),
        Check::le("theta below cross diameter", theta, cross_diameter(space, m, w), TOL),
        Check::le("diameter shift", (diameter(space, m) - diameter(space, w)).abs(), 2.0 * alpha(m, w), TOL),
    ])
}

/// True when some `omega(x, y, eps)` with distinct `x, y in Z_0(M)` lies in
/// `M` (within `1e-9`). Such points are excluded in strictly convex models.
pub fn midpoint_hits_set<S: GeodesicSpace>(space: &S, m: &[S::Pt], eps: f64) -> Result<bool> {
    let c = self_sets(space, m)?;
    for (i, x) in c.z0.iter().enumerate() {
        for y in &c.z0[i + 1..] {
            let z = space.geodesic(x, y, eps);
            if dist_to_set(space, &z, m) <= 1e-9 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
