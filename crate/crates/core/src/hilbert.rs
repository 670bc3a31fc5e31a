//! Hilbert geometry of a ball in a strictly convex norm, closed forms of the
//! Klein model, Busemann's tangent metric at a point, comparison angles and
//! the `psi` / `phi` functionals built on them.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::optim::golden_min;
use crate::spaces::{chord_dist, chord_param, euclidean_chord, GeodesicSpace, KleinBall, MetricSpace, ModelSpace, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HilbertNorm {
    Euclidean,
    PNorm { p: f64 },
}

impl HilbertNorm {
    pub fn norm(&self, v: &DVector<f64>) -> f64 {
        match *self {
            HilbertNorm::Euclidean => v.norm(),
            HilbertNorm::PNorm { p } => {
                let m = v.amax();
                if m == 0.0 {
                    0.0
                } else {
                    m * v.iter().map(|c| (c.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
        }
    }
}

/// The open ball `B(0, r)` of a strictly convex norm with the Hilbert
/// metric `(k/2) ln` of the cross-ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertBall {
    pub r: f64,
    pub k: f64,
    pub norm: HilbertNorm,
}

impl HilbertBall {
    pub fn new(r: f64, k: f64, norm: HilbertNorm) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && k > 0.0 && k.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("hilbert ball needs r, k > 0, got {r}, {k}")));
        }
        if let HilbertNorm::PNorm { p } = norm {
            if !(p > 1.0 && p.is_finite()) {
                return Err(GeomError::InvalidParameter(format!("p-norm needs 1 < p < inf, got {p}")));
            }
        }
        Ok(HilbertBall { r, k, norm })
    }

    pub fn euclidean(r: f64, k: f64) -> Result<Self> {
        Self::new(r, k, HilbertNorm::Euclidean)
    }

    /// `t > 0` with `|x + t u| = r`.
    fn hit_param(&self, x: &DVector<f64>, u: &DVector<f64>) -> f64 {
        match self.norm {
            HilbertNorm::Euclidean => euclidean_chord(x, u, self.r).1,
            HilbertNorm::PNorm { .. } => {
                let f = |t: f64| self.norm.norm(&(x + u * t)) - self.r;
                let mut hi = (self.r + self.norm.norm(x)) / self.norm.norm(u).max(f64::MIN_POSITIVE);
                while f(hi) < 0.0 {
                    hi *= 2.0;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if f(mid) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// The point where the ray from `x` through `y` meets the sphere.
    pub fn boundary_hit(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (u, _) = self.direction(x, y)?;
        Ok(Point::from(x.vector() + &u * self.hit_param(x.vector(), &u)))
    }

    fn direction(&self, x: &Point, y: &Point) -> Result<(DVector<f64>, f64)> {
        let w = y.vector() - x.vector();
        let d = w.norm();
        if d == 0.0 {
            return Err(GeomError::Degenerate);
        }
        Ok((w / d, d))
    }

    /// Euclidean chord data `(a, b, d)`: the sphere lies at `-a` and `b`
    /// along the line from `x` (at 0) to `y` (at `d`).
    fn chord(&self, x: &Point, y: &Point) -> Option<(f64, f64, f64)> {
        let (u, d) = self.direction(x, y).ok()?;
        let b = self.hit_param(x.vector(), &u);
        let a = self.hit_param(x.vector(), &(-&u));
        Some((a, b, d))
    }

    /// `lambda_p(x)` by the explicit power formula, evaluated in log form.
    pub fn lambda_p(&self, p: &Point, x: &Point, lambda: f64) -> Result<Point> {
        self.check_point(p)?;
        self.check_point(x)?;
        let Some((a, b, d)) = self.chord(p, x) else { return Ok(p.clone()) };
        // x_p lies beyond x on the ray from p, p_x beyond p on the ray from x
        let (p_xp, x_px, p_px, x_xp) = (b.ln(), (a + d).ln(), a.ln(), (b - d).ln());
        let u = lambda * (p_xp + x_px);
        let v = lambda * (p_px + x_xp);
        let w1 = (lambda - 1.0) * p_xp + lambda * x_px;
        let w2 = (lambda - 1.0) * p_px + lambda * x_xp;
        let m = w1.max(w2);
        let s = (v - m).exp() * (u - v).exp_m1() / ((w1 - m).exp() + (w2 - m).exp());
        let out = Point::from(p.vector() + (x.vector() - p.vector()) * (s / d));
        let norm = self.norm.norm(out.vector());
        if !(norm < self.r) || !s.is_finite() {
            return Err(GeomError::OutsideBall { norm, radius: self.r });
        }
        Ok(out)
    }

    /// Midpoint `(x + a y) / (1 + a)`.
    pub fn midpoint_closed_form(&self, x: &Point, y: &Point) -> Result<Point> {
        self.check_point(x)?;
        self.check_point(y)?;
        let Some((a, b, d)) = self.chord(x, y) else { return Ok(x.clone()) };
        // |x - y_x| = b, |x - x_y| = a, |y - y_x| = b - d, |y - x_y| = a + d
        let ratio = ((b / (b - d)) * (a / (a + d))).sqrt();
        Ok(Point::from((x.vector() + y.vector() * ratio) / (1.0 + ratio)))
    }

    /// Both sides of the Lipschitz sandwich on `B[0, r1]`.
    pub fn sandwich(&self, r1: f64, x: &Point, y: &Point) -> (f64, f64) {
        let e = (x.vector() - y.vector()).norm();
        let lower = self.k * (self.r - r1) * e / ((self.r + r1) * (self.r + r1));
        let upper = self.k * self.r * e / ((self.r - r1) * (self.r - r1));
        (lower, upper)
    }
}

impl MetricSpace for HilbertBall {
    type Pt = Point;

    fn dist(&self, x: &Point, y: &Point) -> f64 {
        match self.chord(x, y) {
            None => 0.0,
            Some((a, b, d)) => chord_dist(a, b, d, self.k),
        }
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        let norm = self.norm.norm(x.vector());
        if !(norm < self.r) {
            return Err(GeomError::OutsideBall { norm, radius: self.r });
        }
        Ok(())
    }
}

impl GeodesicSpace for HilbertBall {
    fn omega(&self, x: &Point, y: &Point, lambda: f64) -> Result<Point> {
        let Some((a, b, d)) = self.chord(x, y) else { return Ok(x.clone()) };
        let s = chord_param(a, b, d, lambda);
        let out = Point::from(x.vector() + (y.vector() - x.vector()) * (s / d));
        let norm = self.norm.norm(out.vector());
        if !(norm < self.r) || !s.is_finite() {
            return Err(GeomError::OutsideBall { norm, radius: self.r });
        }
        Ok(out)
    }
}

/// `k arccosh((1 - (x, y)) / sqrt((1 - |x|^2)(1 - |y|^2)))` in the unit ball.
pub fn lobachevsky_unit_dist(k: f64, x: &Point, y: &Point) -> f64 {
    let num = 1.0 - x.dot(y.vector());
    let den = ((1.0 - x.norm_squared()) * (1.0 - y.norm_squared())).sqrt();
    k * (num / den).max(1.0).acosh()
}

/// Both sides of the median formula: `|zw|` for `w` the midpoint of
/// `[u, v]`, and `k arccosh((ch|zu| + ch|zv|) / (2 ch(|uv|/2)))` with
/// distances in units of `k`.
pub fn median_length(space: &KleinBall, z: &Point, u: &Point, v: &Point) -> (f64, f64) {
    let k = space.k;
    let direct = space.dist(z, &space.midpoint(u, v));
    let ch = |d: f64| (d / k).cosh();
    let arg = (ch(space.dist(z, u)) + ch(space.dist(z, v))) / (2.0 * ch(0.5 * space.dist(u, v)));
    (direct, k * arg.max(1.0).acosh())
}

/// The rescaled vector `x rho(0, x) / |x|` of the Klein model at the origin.
fn log_map(space: &KleinBall, x: &Point) -> DVector<f64> {
    let n = x.norm();
    if n == 0.0 {
        x.vector().clone()
    } else {
        x.vector() * (space.dist_from_origin(x) / n)
    }
}

/// `|x~ - y~|` with `v~ = v rho(0, v) / |v|`, the tangent norm at the origin.
pub fn tangent_closed_form(space: &KleinBall, x: &Point, y: &Point) -> f64 {
    (log_map(space, x) - log_map(space, y)).norm()
}

/// `|x~ + y~| / 2`, the rate of `rho(0, mid(lambda_0 x, lambda_0 y))`.
pub fn midpoint_rate_closed_form(space: &KleinBall, x: &Point, y: &Point) -> f64 {
    0.5 * (log_map(space, x) + log_map(space, y)).norm()
}

/// `rho(0, mid(lambda_0 x, lambda_0 y)) / lambda`.
pub fn midpoint_rate(space: &KleinBall, x: &Point, y: &Point, lambda: f64) -> Result<f64> {
    let o = Point::zeros(x.dim());
    let a = space.omega(&o, x, lambda)?;
    let b = space.omega(&o, y, lambda)?;
    Ok(space.dist_from_origin(&space.midpoint(&a, &b)) / lambda)
}

/// `x +_p y = 2_p(mid(x, y))`.
pub fn geodesic_sum<S: GeodesicSpace>(space: &S, p: &S::Pt, x: &S::Pt, y: &S::Pt) -> Result<S::Pt> {
    space.omega(p, &space.midpoint(x, y), 2.0)
}

/// `|x~ + y~ - 2 z~|` with `z` the midpoint of `[x, y]`.
pub fn sum_defect_closed_form(space: &KleinBall, x: &Point, y: &Point) -> f64 {
    let z = space.midpoint(x, y);
    (log_map(space, x) + log_map(space, y) - log_map(space, &z) * 2.0).norm()
}

/// `|lambda_0(x +_0 y), lambda_0 x +_0 lambda_0 y| / lambda`.
pub fn sum_defect(space: &KleinBall, x: &Point, y: &Point, lambda: f64) -> Result<f64> {
    let o = Point::zeros(x.dim());
    let left = space.omega(&o, &geodesic_sum(space, &o, x, y)?, lambda)?;
    let right = geodesic_sum(space, &o, &space.omega(&o, x, lambda)?, &space.omega(&o, y, lambda)?)?;
    Ok(space.dist(&left, &right) / lambda)
}

/// `|lambda_0 x, lambda_0 y| / lambda`, which tends to
/// `rho(0, x) + rho(0, y)` as `lambda` grows.
pub fn spread_rate(space: &KleinBall, x: &Point, y: &Point, lambda: f64) -> Result<f64> {
    let o = Point::zeros(x.dim());
    Ok(space.dist(&space.omega(&o, x, lambda)?, &space.omega(&o, y, lambda)?) / lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentMode {
    Limit,
    ClosedForm,
}

/// Outcome of the rescaled-geodesic limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentLimit {
    pub value: f64,
    /// Exponent `k` of the last evaluated `nu = 2^-k`.
    pub last_exponent: u32,
    pub converged: bool,
    /// `q(nu)` never increased as `nu` halved.
    pub monotone: bool,
    pub samples: Vec<f64>,
}

/// First and last exponents of the grid `nu = 2^-k`.
pub const NU_RANGE: (u32, u32) = (4, 40);
/// Stop once consecutive grid values differ by less than this.
pub const NU_STOP: f64 = 1e-7;

/// `m_p(x, y)` as the limit of `|omega(p, x, nu) omega(p, y, nu)| / nu`.
pub fn tangent_limit<S: GeodesicSpace>(space: &S, p: &S::Pt, x: &S::Pt, y: &S::Pt) -> Result<TangentLimit> {
    space.check_point(p)?;
    space.check_point(x)?;
    space.check_point(y)?;
    let q = |k: u32| -> Result<f64> {
        let nu = 0.5f64.powi(k as i32);
        Ok(space.dist(&space.omega(p, x, nu)?, &space.omega(p, y, nu)?) / nu)
    };
    let mut samples = vec![q(NU_RANGE.0)?];
    let mut monotone = true;
    for k in (NU_RANGE.0 + 1)..=NU_RANGE.1 {
        let prev = *samples.last().expect("nonempty");
        let next = q(k)?;
        samples.push(next);
        monotone &= next <= prev + 1e-9 * (1.0 + prev);
        if (next - prev).abs() < NU_STOP {
            return Ok(TangentLimit { value: next, last_exponent: k, converged: true, monotone, samples });
        }
    }
    let value = *samples.last().expect("nonempty");
    Ok(TangentLimit { value, last_exponent: NU_RANGE.1, converged: false, monotone, samples })
}

/// `m_p(x, y)` on a model space. The closed form is available for the Klein
/// model at the origin.
pub fn tangent_norm(space: &ModelSpace, p: &Point, x: &Point, y: &Point, mode: TangentMode) -> Result<f64> {
    let geo = space.geodesic()?;
    match mode {
        TangentMode::Limit => {
            let t = tangent_limit(geo, p, x, y)?;
            if t.converged {
                Ok(t.value)
            } else {
                Err(GeomError::NonConvergence { iterations: t.samples.len(), residual: t.value })
            }
        }
        TangentMode::ClosedForm => match geo {
            crate::spaces::CoordSpace::Klein(kb) if p.iter().all(|c| *c == 0.0) => {
                geo.check_point(x)?;
                geo.check_point(y)?;
                Ok(tangent_closed_form(kb, x, y))
            }
            crate::spaces::CoordSpace::Euclidean(_) => Ok((x.vector() - y.vector()).norm()),
            _ => Err(GeomError::InvalidParameter("closed form needs the Klein model at the origin".into())),
        },
    }
}

/// A class `[x; lambda]` of the tangent space at `base`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentVector<P> {
    pub base: P,
    pub rep: P,
    pub scale: f64,
}

/// `m_p` on tangent vectors with the scale `tau = 2 max(lambda, mu, 1)`.
pub fn tangent_dist<S: GeodesicSpace>(space: &S, v1: &TangentVector<S::Pt>, v2: &TangentVector<S::Pt>) -> Result<f64>
where
    S::Pt: PartialEq,
{
    let tau = 2.0 * v1.scale.max(v2.scale).max(1.0);
    tangent_dist_with_scale(space, v1, v2, tau)
}

/// `tau m_p(omega(p, x, lambda/tau), omega(p, y, mu/tau))` for an admissible
/// `tau >= max(lambda, mu)`.
pub fn tangent_dist_with_scale<S: GeodesicSpace>(
    space: &S,
    v1: &TangentVector<S::Pt>,
    v2: &TangentVector<S::Pt>,
    tau: f64,
) -> Result<f64>
where
    S::Pt: PartialEq,
{
    if v1.base != v2.base {
        return Err(GeomError::InvalidParameter("tangent vectors at different base points".into()));
    }
    if !(v1.scale >= 0.0 && v2.scale >= 0.0 && v1.scale.is_finite() && v2.scale.is_finite()) {
        return Err(GeomError::InvalidParameter("tangent scales must be finite and nonnegative".into()));
    }
    if !(tau > 0.0 && tau >= v1.scale.max(v2.scale)) {
        return Err(GeomError::InvalidParameter(format!("scale {tau} below the vector scales")));
    }
    let p = &v1.base;
    let x = space.omega(p, &v1.rep, v1.scale / tau)?;
    let y = space.omega(p, &v2.rep, v2.scale / tau)?;
    Ok(tau * tangent_limit(space, p, &x, &y)?.value)
}

/// Upper angle at `p` between the segments `[p, x]` and `[p, y]`, from
/// comparison triangles with both sides shrunk by the same `nu`.
pub fn upper_angle<S: GeodesicSpace>(space: &S, p: &S::Pt, x: &S::Pt, y: &S::Pt) -> Result<f64> {
    let (a, b) = (space.dist(p, x), space.dist(p, y));
    if a == 0.0 || b == 0.0 {
        return Err(GeomError::Degenerate);
    }
    let c = tangent_limit(space, p, x, y)?.value;
    Ok(((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0).acos())
}

/// `psi_y(x) = |px| |py| cos(upper angle)`, zero when `x` or `y` is `p`.
pub fn psi_functional<S: GeodesicSpace>(space: &S, p: &S::Pt, y: &S::Pt, x: &S::Pt) -> Result<f64> {
    let (a, b) = (space.dist(p, x), space.dist(p, y));
    if a == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    Ok(a * b * upper_angle(space, p, x, y)?.cos())
}

/// `phi_L(x)`: the signed distance from `p` to the projection of `x` onto
/// the line through `p` and `q`, positive towards `q`.
pub fn phi_functional<S: GeodesicSpace>(space: &S, p: &S::Pt, q: &S::Pt, x: &S::Pt) -> Result<f64> {
    let pq = space.dist(p, q);
    if pq == 0.0 {
        return Err(GeomError::Degenerate);
    }
    // the foot is no farther from p than x is
    let reach = space.dist(p, x) / pq * (1.0 + 1e-9) + 1e-12;
    let f = |t: f64| space.omega(p, q, t).map_or(f64::INFINITY, |z| space.dist(x, &z));
    let (t, _) = golden_min(f, -reach, reach, 1e-15 * (1.0 + reach));
    Ok(t * pq)
}
