//! Metrics on maps over finite domains: Busemann's damped supremum
//! `delta_p`, the truncated Kuratowski-style series `delta`, Hölder classes
//! and similarity coefficients. All suprema run over the finite domain and
//! are exact.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::report::Check;
use crate::spaces::MetricSpace;

/// A map given by its values on a finite domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapTable<P, Q> {
    pub domain: Vec<P>,
    pub values: Vec<Q>,
}

impl<P: Clone, Q: Clone> MapTable<P, Q> {
    pub fn new<X, Y>(dom: &X, cod: &Y, domain: Vec<P>, values: Vec<Q>) -> Result<Self>
    where
        X: MetricSpace<Pt = P>,
        Y: MetricSpace<Pt = Q>,
    {
        if domain.is_empty() {
            return Err(GeomError::EmptySet);
        }
        if domain.len() != values.len() {
            return Err(GeomError::SizeMismatch { left: domain.len(), right: values.len() });
        }
        domain.iter().try_for_each(|x| dom.check_point(x))?;
        values.iter().try_for_each(|y| cod.check_point(y))?;
        Ok(MapTable { domain, values })
    }

    /// The table of `x -> f(x)` for a closure.
    pub fn from_fn<X, Y>(dom: &X, cod: &Y, domain: Vec<P>, f: impl Fn(&P) -> Q) -> Result<Self>
    where
        X: MetricSpace<Pt = P>,
        Y: MetricSpace<Pt = Q>,
    {
        let values = domain.iter().map(f).collect();
        Self::new(dom, cod, domain, values)
    }
}

impl<P, Q> MapTable<P, Q> {
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

/// Tolerance for matching domain points.
const MATCH_TOL: f64 = 1e-12;

fn same_domain<X: MetricSpace, Q>(dom: &X, f: &MapTable<X::Pt, Q>, g: &MapTable<X::Pt, Q>) -> Result<()> {
    if f.len() != g.len() {
        return Err(GeomError::SizeMismatch { left: f.len(), right: g.len() });
    }
    if f.domain.iter().zip(&g.domain).any(|(a, b)| dom.dist(a, b) > MATCH_TOL) {
        return Err(GeomError::InvalidParameter("maps are tabulated on different domains".into()));
    }
    Ok(())
}

/// `delta_p(f, g) = max_x d(f x, g x) e^{-|px|}`.
pub fn busemann_delta_p<X: MetricSpace, Y: MetricSpace>(
    dom: &X,
    cod: &Y,
    f: &MapTable<X::Pt, Y::Pt>,
    g: &MapTable<X::Pt, Y::Pt>,
    p: &X::Pt,
) -> Result<f64> {
    same_domain(dom, f, g)?;
    dom.check_point(p)?;
    Ok(f
        .domain
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(x, (a, b))| cod.dist(a, b) * (-dom.dist(p, x)).exp())
        .fold(0.0, f64::max))
}

/// `e^{-|pq|} delta_p <= delta_q <= e^{|pq|} delta_p`.
pub fn delta_p_equivalence_check<X: MetricSpace, Y: MetricSpace>(
    dom: &X,
    cod: &Y,
    f: &MapTable<X::Pt, Y::Pt>,
    g: &MapTable<X::Pt, Y::Pt>,
    p: &X::Pt,
    q: &X::Pt,
) -> Result<Vec<Check>> {
    let dp = busemann_delta_p(dom, cod, f, g, p)?;
    let dq = busemann_delta_p(dom, cod, f, g, q)?;
    let w = dom.dist(p, q).exp();
    let tol = 1e-12 * (1.0 + dp.max(dq) * w);
    Ok(vec![
        Check::le("damped metric lower sandwich", dp / w, dq, tol),
        Check::le("damped metric upper sandwich", dq, dp * w, tol),
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    /// The omitted tail is at most this.
    pub tail_bound: f64,
    pub terms: Vec<f64>,
}

/// `sum_i 2^{-i} delta_i / (1 + delta_i)` with `delta_i` the supremum over
/// `B[center, r_i]`, truncated after the given radii.
pub fn kuratowski_delta<X: MetricSpace, Y: MetricSpace>(
    dom: &X,
    cod: &Y,
    f: &MapTable<X::Pt, Y::Pt>,
    g: &MapTable<X::Pt, Y::Pt>,
    center: &X::Pt,
    radii: &[f64],
) -> Result<SeriesValue> {
    same_domain(dom, f, g)?;
    if radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GeomError::InvalidParameter("radii must be positive and increasing".into()));
    }
    let terms: Vec<f64> = radii
        .iter()
        .map(|&r| {
            f.domain
                .iter()
                .zip(f.values.iter().zip(&g.values))
                .filter(|(x, _)| dom.dist(center, x) <= r)
                .map(|(_, (a, b))| cod.dist(a, b))
                .fold(0.0, f64::max)
        })
        .collect();
    let value = terms
        .iter()
        .enumerate()
        .map(|(i, d)| 0.5f64.powi(i as i32 + 1) * d / (1.0 + d))
        .sum();
    Ok(SeriesValue { value, tail_bound: 0.5f64.powi(radii.len() as i32), terms })
}

/// Whether `d(f x, f y) <= b |xy|^alpha` on every pair.
pub fn holder_membership<X: MetricSpace, Y: MetricSpace>(
    dom: &X,
    cod: &Y,
    f: &MapTable<X::Pt, Y::Pt>,
    b: f64,
    alpha: f64,
) -> Result<bool> {
    if !(b >= 0.0) || !(alpha > 0.0 && alpha <= 1.0) {
        return Err(GeomError::InvalidParameter(format!("need B >= 0 and alpha in (0, 1], got {b}, {alpha}")));
    }
    let n = f.len();
    Ok((0..n).all(|i| {
        (i + 1..n).all(|j| {
            cod.dist(&f.values[i], &f.values[j]) <= b * dom.dist(&f.domain[i], &f.domain[j]).powf(alpha) + 1e-12
        })
    }))
}

/// The constant ratio `d(f x, f y) / |xy|` when it is constant within a
/// relative `1e-9` over all pairs of distinct points.
pub fn similarity_coefficient<X: MetricSpace, Y: MetricSpace>(dom: &X, cod: &Y, f: &MapTable<X::Pt, Y::Pt>) -> Option<f64> {
    let n = f.len();
    let ratios: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let d = dom.dist(&f.domain[i], &f.domain[j]);
            (d > MATCH_TOL).then(|| cod.dist(&f.values[i], &f.values[j]) / d)
        })
        .collect();
    let first = *ratios.first()?;
    let (lo, hi) = ratios.iter().fold((first, first), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    (lo > 0.0 && hi - lo <= 1e-9 * hi).then_some(0.5 * (lo + hi))
}

/// `f o g`, where every value of `g` must be a domain point of `f`.
pub fn compose<X: MetricSpace, Y: MetricSpace, Q: Clone>(
    mid: &Y,
    f: &MapTable<Y::Pt, Q>,
    g: &MapTable<X::Pt, Y::Pt>,
) -> Result<MapTable<X::Pt, Q>>
where
    X::Pt: Clone,
{
    let values = g
        .values
        .iter()
        .map(|y| {
            f.domain
                .iter()
                .position(|z| mid.dist(y, z) <= MATCH_TOL)
                .map(|i| f.values[i].clone())
                .ok_or_else(|| GeomError::InvalidParameter("a value of g lies outside the domain of f".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MapTable { domain: g.domain.clone(), values })
}

/// The inverse table of an injective map.
pub fn inverse<X: MetricSpace, Y: MetricSpace>(cod: &Y, f: &MapTable<X::Pt, Y::Pt>) -> Result<MapTable<Y::Pt, X::Pt>>
where
    X::Pt: Clone,
    Y::Pt: Clone,
{
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            if cod.dist(&f.values[i], &f.values[j]) <= MATCH_TOL {
                return Err(GeomError::DuplicatePoint(i, j));
            }
        }
    }
    Ok(MapTable { domain: f.values.clone(), values: f.domain.clone() })
}
