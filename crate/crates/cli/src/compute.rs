use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use metric_geom::ball_approx::{best_ball, psi, ConvexBody};
use metric_geom::chebyshev::{best_nnet, chebyshev_center, eccentricity, self_sets, CenterOptions, NetMode};
use metric_geom::hausdorff::{deviation, hausdorff, midpoint_set};
use metric_geom::hilbert::{tangent_norm, HilbertBall, HilbertNorm, TangentMode};
use metric_geom::maps::{busemann_delta_p, delta_p_equivalence_check, MapTable};
use metric_geom::nnet::{alpha_p, alpha_pr_geodesic, Exponent};
use metric_geom::projection::lambda_disconnect;
use metric_geom::report::Check;
use metric_geom::{CoordSpace, GeodesicSpace, MetricSpace, ModelSpace, Point};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Op {
    Hausdorff,
    Deviation,
    MidpointSet,
    AlphaP,
    AlphaPr,
    ChebyshevCenter,
    SelfSets,
    BestNnet,
    BestBall,
    Lambda,
    HilbertDist,
    TangentNorm,
    DeltaP,
}

impl Op {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

fn field<T: DeserializeOwned>(input: &Value, key: &str) -> Result<T> {
    let v = input.get(key).with_context(|| format!("input is missing field {key:?}"))?;
    serde_json::from_value(v.clone()).with_context(|| format!("malformed field {key:?}"))
}

fn optional<T: DeserializeOwned>(input: &Value, key: &str) -> Result<Option<T>> {
    match input.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => field(input, key).map(Some),
    }
}

fn point(space: &CoordSpace, input: &Value, key: &str) -> Result<Point> {
    let p: Point = field(input, key)?;
    space.check_point(&p).with_context(|| format!("point {key:?}"))?;
    Ok(p)
}

fn points(space: &CoordSpace, input: &Value, key: &str) -> Result<Vec<Point>> {
    let ps: Vec<Point> = field(input, key)?;
    if ps.is_empty() {
        bail!("field {key:?} must be a nonempty list of points");
    }
    for (i, p) in ps.iter().enumerate() {
        space.check_point(p).with_context(|| format!("point {i} of {key:?}"))?;
    }
    Ok(ps)
}

/// `p` as a number >= 1 or the string "inf"; infinity when absent.
fn exponent(input: &Value) -> Result<Exponent> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Word(String),
    }
    match optional::<Raw>(input, "p")? {
        None => Ok(Exponent::Infinity),
        Some(Raw::Num(p)) => Ok(Exponent::new(p)?),
        Some(Raw::Word(w)) if w == "inf" || w == "infinity" => Ok(Exponent::Infinity),
        Some(Raw::Word(w)) => bail!("p must be a number or \"inf\", got {w:?}"),
    }
}

/// Runs one operation, returning the result value and its self-checks.
pub fn run(op: Op, space: &CoordSpace, input: &Value, tol: f64) -> Result<(Value, Vec<Check>)> {
    let s = space;
    Ok(match op {
        Op::Hausdorff | Op::Deviation => {
            let (m, w) = (points(s, input, "M")?, points(s, input, "W")?);
            let (mw, wm) = (deviation(s, &m, &w), deviation(s, &w, &m));
            let value = if op == Op::Hausdorff { hausdorff(s, &m, &w) } else { mw };
            (json!({"value": value, "deviation_m_w": mw, "deviation_w_m": wm}), vec![])
        }
        Op::MidpointSet => {
            let (m, w) = (points(s, input, "M")?, points(s, input, "W")?);
            let om = midpoint_set(s, &m, &w);
            let half = hausdorff(s, &m, &w) / 2.0;
            let checks = vec![
                Check::eq("midpoint set halves the distance from M", hausdorff(s, &m, &om), half, tol * (1.0 + half)),
                Check::eq("midpoint set halves the distance to W", hausdorff(s, &om, &w), half, tol * (1.0 + half)),
            ];
            (json!({"points": om}), checks)
        }
        Op::AlphaP => {
            let (a, b) = (points(s, input, "S")?, points(s, input, "T")?);
            let r = alpha_p(s, &a, &b, exponent(input)?)?;
            (serde_json::to_value(r)?, vec![])
        }
        Op::AlphaPr => {
            let (a, b) = (points(s, input, "S")?, points(s, input, "T")?);
            let p = exponent(input)?;
            let max_chain = optional::<usize>(input, "max_chain")?.unwrap_or(4);
            let r = alpha_pr_geodesic(s, &a, &b, p, max_chain)?;
            let direct = alpha_p(s, &a, &b, p)?.cost;
            let checks = vec![
                Check::le("hausdorff below chain value", r.lower, r.upper, tol),
                Check::le("chain value below assignment value", r.upper, direct, tol),
            ];
            let out = json!({"lower": r.lower, "upper": r.upper, "exact": r.exact, "certified": r.certified, "chain": r.chain});
            (out, checks)
        }
        Op::ChebyshevCenter => {
            let m = points(s, input, "M")?;
            let opts = CenterOptions { tol: tol.max(1e-14), ..CenterOptions::default() };
            let c = chebyshev_center(s, &m, opts)?;
            let ecc = eccentricity(s, &m, &c.centers[0]);
            let checks = vec![Check::le("eccentricity within residual of radius", ecc - c.radius, c.residual, tol)];
            (serde_json::to_value(c)?, checks)
        }
        Op::SelfSets => {
            let m = points(s, input, "S")?;
            let c = self_sets(s, &m)?;
            let checks = vec![
                Check::le("m below m1", c.m, c.m1, tol),
                Check::le("m1 below R0", c.m1, c.r0, tol),
                Check::le("R0 below D", c.r0, c.diameter, tol),
            ];
            (serde_json::to_value(c)?, checks)
        }
        Op::BestNnet => {
            let m = points(s, input, "M")?;
            let n: usize = field(input, "n")?;
            let mode = optional::<NetMode>(input, "mode")?.unwrap_or(NetMode::Exact);
            let fit = best_nnet(s, &m, n, mode)?;
            let cover = m
                .iter()
                .map(|x| fit.centers.iter().map(|c| s.dist(x, c)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            let checks = vec![Check::le("centers cover within the radius", cover, fit.radius, tol * (1.0 + fit.radius))];
            (serde_json::to_value(fit)?, checks)
        }
        Op::BestBall => {
            let body: ConvexBody = field(input, "body")?;
            let fit = best_ball(s, &body, tol.max(1e-12))?;
            let checks = vec![
                Check::le("center lies in the body", body.dist(s, &fit.center), 0.0, 1e-9),
                Check::eq("value equals psi at the center", fit.hausdorff_value, psi(s, &body, &fit.center)?, 1e-9),
            ];
            (serde_json::to_value(fit)?, checks)
        }
        Op::Lambda => {
            let m = points(s, input, "M")?;
            (json!({"value": lambda_disconnect(s, &m)}), vec![])
        }
        Op::HilbertDist => {
            let (r, k) = match s {
                CoordSpace::Klein(b) => (b.r, b.k),
                CoordSpace::Euclidean(_) => (1.0, 1.0),
            };
            let norm = match optional::<f64>(input, "p_norm")? {
                Some(p) => HilbertNorm::PNorm { p },
                None => HilbertNorm::Euclidean,
            };
            let h = HilbertBall::new(r, k, norm)?;
            let (x, y): (Point, Point) = (field(input, "x")?, field(input, "y")?);
            h.check_point(&x)?;
            h.check_point(&y)?;
            let mid = h.midpoint(&x, &y);
            let d = h.dist(&x, &y);
            let checks = vec![Check::eq("midpoint halves the distance", 2.0 * h.dist(&x, &mid), d, tol * (1.0 + d))];
            (json!({"value": d, "midpoint": mid}), checks)
        }
        Op::TangentNorm => {
            let (p, x, y) = (point(s, input, "p")?, point(s, input, "x")?, point(s, input, "y")?);
            let mode = optional::<TangentMode>(input, "mode")?.unwrap_or(TangentMode::Limit);
            let model = ModelSpace::Coord(*s);
            let value = tangent_norm(&model, &p, &x, &y, mode)?;
            let mut checks = vec![Check::le("below the distance", value, s.dist(&x, &y), 1e-9)];
            if let Ok(closed) = tangent_norm(&model, &p, &x, &y, TangentMode::ClosedForm) {
                checks.push(Check::eq("limit agrees with closed form", value, closed, 1e-4));
            }
            (json!({"value": value}), checks)
        }
        Op::DeltaP => {
            let dom = points(s, input, "domain")?;
            let f = MapTable::new(s, s, dom.clone(), field(input, "f")?)?;
            let g = MapTable::new(s, s, dom.clone(), field(input, "g")?)?;
            let p = point(s, input, "p")?;
            let value = busemann_delta_p(s, s, &f, &g, &p)?;
            let mut checks = Vec::new();
            for q in &dom {
                checks.extend(delta_p_equivalence_check(s, s, &f, &g, &p, q)?);
            }
            (json!({"value": value}), vec![crate::report::worst("damped metric sandwich over base points", checks)])
        }
    })
}
