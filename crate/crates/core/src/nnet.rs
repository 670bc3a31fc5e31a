//! Metrics on N-nets with repetitions: the assignment metric `alpha_p`, its
//! bottleneck form `alpha_inf`, the support metric `alpha_*`, bounds for the
//! quotient metric `alpha_{p,R}`, and geodesics between nets.

use std::collections::HashMap;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hausdorff::{cross_diameter, dedup, hausdorff};
use crate::spaces::{GeodesicSpace, MetricSpace, EQ_TOL};

/// The exponent `p` of `rho_{N,p}`, with a distinguished infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(GeomError::InvalidParameter(format!("p must be in [1, inf], got {p}")))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `l_p` norm of a vector of nonnegative numbers. Entries are scaled by
    /// their maximum before raising to the power, which keeps large `p` finite.
    pub fn combine(self, values: &[f64]) -> f64 {
        let top = values.iter().copied().fold(0.0, f64::max);
        match self {
            Exponent::Infinity => top,
            _ if top == 0.0 => 0.0,
            Exponent::Finite(p) => top * values.iter().map(|v| (v / top).powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

/// A nonempty list of points with repetitions allowed; order carries no meaning.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMultiset<P>(Vec<P>);

impl<P: Clone> PointMultiset<P> {
    pub fn new<S: MetricSpace<Pt = P>>(space: &S, points: Vec<P>) -> Result<Self> {
        if points.is_empty() {
            return Err(GeomError::EmptySet);
        }
        for p in &points {
            space.check_point(p)?;
        }
        Ok(PointMultiset(points))
    }

    pub fn into_inner(self) -> Vec<P> {
        self.0
    }
}

impl<P> Deref for PointMultiset<P> {
    type Target = [P];
    fn deref(&self) -> &[P] {
        &self.0
    }
}

/// An optimal matching: `perm[i]` is the index in the second net matched to
/// the `i`-th point of the first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub perm: Vec<usize>,
    pub cost: f64,
    pub p: Exponent,
}

fn check_sizes(n: usize, m: usize) -> Result<()> {
    if n != m {
        return Err(GeomError::SizeMismatch { left: n, right: m });
    }
    if n == 0 {
        return Err(GeomError::EmptySet);
    }
    Ok(())
}

/// `rho_{N,p}` of two ordered tuples.
pub fn rho_np<S: MetricSpace>(space: &S, x: &[S::Pt], y: &[S::Pt], p: Exponent) -> Result<f64> {
    check_sizes(x.len(), y.len())?;
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| space.dist(a, b)).collect();
    Ok(p.combine(&d))
}

fn dist_matrix<S: MetricSpace>(space: &S, x: &[S::Pt], y: &[S::Pt]) -> Vec<Vec<f64>> {
    x.iter().map(|a| y.iter().map(|b| space.dist(a, b)).collect()).collect()
}

/// `alpha_p(S, T)`: the minimum of `rho_{N,p}` over all matchings.
pub fn alpha_p<S: MetricSpace>(space: &S, s: &[S::Pt], t: &[S::Pt], p: Exponent) -> Result<Assignment> {
    check_sizes(s.len(), t.len())?;
    Ok(assign(&dist_matrix(space, s, t), p))
}

/// Optimal assignment for a square distance matrix.
pub fn assign(d: &[Vec<f64>], p: Exponent) -> Assignment {
    let perm = match p {
        Exponent::Infinity => bottleneck(d),
        Exponent::Finite(q) => {
            let top = d.iter().flatten().copied().fold(0.0, f64::max);
            let scale = if top > 0.0 { top } else { 1.0 };
            let c: Vec<Vec<f64>> = d.iter().map(|r| r.iter().map(|v| (v / scale).powf(q)).collect()).collect();
            hungarian(&c)
        }
    };
    let matched: Vec<f64> = perm.iter().enumerate().map(|(i, &j)| d[i][j]).collect();
    Assignment { cost: p.combine(&matched), perm, p }
}

/// Minimum-cost perfect matching by shortest augmenting paths with
/// potentials, `O(n^3)`.
pub fn hungarian(c: &[Vec<f64>]) -> Vec<usize> {
    let n = c.len();
    // 1-based arrays; column 0 is a virtual start.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = c[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[row_of[j] - 1] = j - 1;
    }
    perm
}

/// Bottleneck matching: binary search over sorted entries with a perfect
/// matching test at each threshold.
pub fn bottleneck(d: &[Vec<f64>]) -> Vec<usize> {
    let mut levels: Vec<f64> = d.iter().flatten().copied().collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let (mut lo, mut hi) = (0, levels.len() - 1);
    let mut best = perfect_matching(d, levels[hi]).expect("complete graph has a perfect matching");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(d, levels[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    best
}

/// Kuhn's augmenting paths on the graph of entries `<= threshold`.
fn perfect_matching(d: &[Vec<f64>], threshold: f64) -> Option<Vec<usize>> {
    let n = d.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, d: &[Vec<f64>], thr: f64, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..d.len() {
            if d[i][j] <= thr && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, d, thr, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, d, threshold, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        perm[o.expect("perfect")] = j;
    }
    Some(perm)
}

/// Support of a multiset: duplicates within `1e-12` collapsed.
pub fn support<S: MetricSpace>(space: &S, s: &[S::Pt]) -> Vec<S::Pt> {
    dedup(space, s.to_vec(), EQ_TOL)
}

/// `alpha_*`: Hausdorff distance between supports.
pub fn alpha_star<S: MetricSpace>(space: &S, s: &[S::Pt], t: &[S::Pt]) -> f64 {
    hausdorff(space, &support(space, s), &support(space, t))
}

/// Result of the chain search for `alpha_{p,R}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainBounds<P> {
    /// `alpha` of the supports.
    pub lower: f64,
    /// Best chain value found; never above `alpha_p(S, T)`.
    pub upper: f64,
    /// Set when the value is known: for `N = 1`, for `N = 2` with `p = inf`,
    /// when the chain meets the lower bound, or when the search over the
    /// candidate family reached a fixpoint within `max_chain` steps.
    pub exact: Option<f64>,
    /// True when `exact` is backed by an equality rather than by a fixpoint
    /// of the finite search.
    pub certified: bool,
    /// Supports along the best chain, from `supp S` to `supp T`.
    pub chain: Vec<Vec<P>>,
}

/// Above this many candidate supports the chain search is skipped.
pub const CHAIN_NODE_LIMIT: usize = 4000;

/// `alpha_{p,R}` bounds with candidate supports drawn from the supports of
/// `S` and `T` only.
pub fn alpha_pr<S: MetricSpace>(
    space: &S,
    s: &[S::Pt],
    t: &[S::Pt],
    p: Exponent,
    max_chain: usize,
) -> Result<ChainBounds<S::Pt>> {
    let pool: Vec<S::Pt> = s.iter().chain(t).cloned().collect();
    chain_search(space, s, t, p, max_chain, pool)
}

/// `alpha_{p,R}` bounds in a geodesic space; candidate points also include
/// the midpoints of all pairs `(x, y)` with `x in S`, `y in T`.
pub fn alpha_pr_geodesic<S: GeodesicSpace>(
    space: &S,
    s: &[S::Pt],
    t: &[S::Pt],
    p: Exponent,
    max_chain: usize,
) -> Result<ChainBounds<S::Pt>> {
    let mut pool: Vec<S::Pt> = s.iter().chain(t).cloned().collect();
    for x in s {
        for y in t {
            pool.push(space.midpoint(x, y));
        }
    }
    let trial = dedup(space, pool.clone(), 1e-10);
    if subset_count(trial.len(), s.len()) > CHAIN_NODE_LIMIT as u128 {
        return alpha_pr(space, s, t, p, max_chain);
    }
    chain_search(space, s, t, p, max_chain, pool)
}

fn subset_count(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 1..=k.min(n) {
        c = c * (n - i + 1) as u128 / i as u128;
        total += c;
    }
    total
}

fn chain_search<S: MetricSpace>(
    space: &S,
    s: &[S::Pt],
    t: &[S::Pt],
    p: Exponent,
    max_chain: usize,
    pool: Vec<S::Pt>,
) -> Result<ChainBounds<S::Pt>> {
    check_sizes(s.len(), t.len())?;
    if max_chain == 0 {
        return Err(GeomError::InvalidParameter("max_chain must be positive".into()));
    }
    let n = s.len();
    let supp_s = support(space, s);
    let supp_t = support(space, t);
    let lower = hausdorff(space, &supp_s, &supp_t);
    let direct = alpha_p(space, s, t, p)?.cost;
    let trivial = |exact: Option<f64>| ChainBounds {
        lower,
        upper: exact.unwrap_or(direct),
        exact,
        certified: exact.is_some(),
        chain: vec![supp_s.clone(), supp_t.clone()],
    };
    if n == 1 || (n == 2 && p == Exponent::Infinity) || direct <= lower + 1e-9 {
        return Ok(trivial(Some(lower)));
    }

    let pool = dedup(space, pool, 1e-10);
    if subset_count(pool.len(), n) > CHAIN_NODE_LIMIT as u128 {
        return Ok(trivial(None));
    }
    let index_of = |x: &S::Pt| {
        pool.iter()
            .position(|q| space.dist(q, x) <= 1e-10)
            .expect("support points are in the pool")
    };
    let key = |pts: &[S::Pt]| {
        let mut k: Vec<usize> = pts.iter().map(index_of).collect();
        k.sort_unstable();
        k.dedup();
        k
    };
    let nodes = subsets(pool.len(), n);
    let node_id: HashMap<Vec<usize>, usize> = nodes.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let start = node_id[&key(&supp_s)];
    let goal = node_id[&key(&supp_t)];

    // All multisets of size n with a given support.
    let fills: Vec<Vec<Vec<usize>>> = nodes.iter().map(|k| multisets_with_support(k, n)).collect();
    let d: Vec<Vec<f64>> = pool.iter().map(|a| pool.iter().map(|b| space.dist(a, b)).collect()).collect();
    let m = nodes.len();
    let mut weight = vec![f64::INFINITY; m * m];
    for a in 0..m {
        for b in (a + 1)..m {
            let mut best = f64::INFINITY;
            for x in &fills[a] {
                for y in &fills[b] {
                    let sub: Vec<Vec<f64>> = x.iter().map(|&i| y.iter().map(|&j| d[i][j]).collect()).collect();
                    best = best.min(assign(&sub, p).cost);
                }
            }
            weight[a * m + b] = best;
            weight[b * m + a] = best;
        }
        weight[a * m + a] = 0.0;
    }

    // Layered Bellman-Ford: after round r, best[v] is the cheapest chain of
    // at most r steps from the start support.
    let mut best = vec![f64::INFINITY; m];
    let mut pred: Vec<Vec<usize>> = Vec::new();
    best[start] = 0.0;
    let mut converged = false;
    for _ in 0..max_chain {
        let mut next = best.clone();
        let mut from = vec![usize::MAX; m];
        for v in 0..m {
            for u in 0..m {
                let c = best[u] + weight[u * m + v];
                if c < next[v] - 1e-15 {
                    next[v] = c;
                    from[v] = u;
                }
            }
        }
        pred.push(from);
        let changed = next.iter().zip(&best).any(|(a, b)| a < b);
        best = next;
        if !changed {
            converged = true;
            break;
        }
    }
    let value = best[goal].min(direct);

    let mut chain_ids = vec![goal];
    let mut cur = goal;
    for from in pred.iter().rev() {
        if from[cur] != usize::MAX {
            cur = from[cur];
            chain_ids.push(cur);
        }
    }
    chain_ids.reverse();
    if chain_ids[0] != start {
        chain_ids.insert(0, start);
    }
    let chain = chain_ids
        .iter()
        .map(|&id| nodes[id].iter().map(|&i| pool[i].clone()).collect())
        .collect();

    let certified = value <= lower + 1e-9;
    let exact = (certified || converged).then_some(value);
    Ok(ChainBounds { lower, upper: value, exact, certified, chain })
}

/// All subsets of `0..n` with between 1 and `k` elements, as sorted lists.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lists of length `n` whose set of entries is exactly `support`.
fn multisets_with_support(support: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let extra = n - support.len();
    // distribute `extra` additional copies over the support, nondecreasing index
    fn rec(idx: usize, left: usize, support: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in idx..support.len() {
            cur.push(support[i]);
            rec(i, left - 1, support, cur, out);
            cur.pop();
        }
    }
    let mut cur = support.to_vec();
    rec(0, extra, support, &mut cur, &mut out);
    out
}

/// `S(lambda)`: pointwise geodesic interpolation along an optimal matching.
pub fn nnet_interpolate<S: GeodesicSpace>(
    space: &S,
    s: &[S::Pt],
    t: &[S::Pt],
    p: Exponent,
    lambda: f64,
) -> Result<Vec<S::Pt>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!("lambda must be in [0, 1], got {lambda}")));
    }
    let a = alpha_p(space, s, t, p)?;
    Ok(s.iter().zip(&a.perm).map(|(x, &j)| space.geodesic(x, &t[j], lambda)).collect())
}

fn two<P>(s: &[P]) -> Result<(&P, &P)> {
    match s {
        [x, y] => Ok((x, y)),
        _ => Err(GeomError::SizeMismatch { left: 2, right: s.len() }),
    }
}

/// `pi({x, y}) = omega_{1/2}(x, y)`.
pub fn pi_midpoint<S: GeodesicSpace>(space: &S, s: &[S::Pt]) -> Result<S::Pt> {
    let (x, y) = two(s)?;
    Ok(space.midpoint(x, y))
}

/// Midpoint 2-nets between 2-nets `S` and `T`: for each pair `x in S`,
/// `u in T` realizing `D(S, T)`, the net
/// `{omega_{1/2}(x, T(u)), omega_{1/2}(S(x), u)}`, where `S(x)` is the other
/// point of `S`.
pub fn twonet_midpoints<S: GeodesicSpace>(space: &S, s: &[S::Pt], t: &[S::Pt]) -> Result<Vec<Vec<S::Pt>>> {
    two(s)?;
    two(t)?;
    let big_d = cross_diameter(space, s, t);
    let mut out: Vec<Vec<S::Pt>> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            if space.dist(&s[i], &t[j]) < big_d - EQ_TOL {
                continue;
            }
            let z = vec![space.midpoint(&s[i], &t[1 - j]), space.midpoint(&s[1 - i], &t[j])];
            let fresh = out.iter().all(|o| hausdorff(space, o, &z) > 1e-10);
            if fresh {
                out.push(z);
            }
        }
    }
    Ok(out)
}
