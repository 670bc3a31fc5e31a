//! Seeded random instances. Every stream is ChaCha8 seeded with
//! `seed_from_u64`, which is stable across platforms and releases of
//! `rand_chacha`.

use anyhow::{bail, Result};
use clap::ValueEnum;
use metric_geom::ball_approx::ConvexBody;
use metric_geom::{CoordSpace, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::space::dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    UniformPoints,
    Clustered,
    NnetPair,
    ConvexHull,
    MapTable,
}

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub n: usize,
    pub clusters: usize,
    pub spread: f64,
}

/// Sampling radius: the unit ball in Euclidean space, `0.95 r` in the
/// Klein model.
fn reach(space: &CoordSpace) -> f64 {
    match space {
        CoordSpace::Euclidean(_) => 1.0,
        CoordSpace::Klein(k) => 0.95 * k.r,
    }
}

/// Uniform point in the ball of radius `r` (normalized Gaussian direction,
/// radius `r u^{1/d}`).
fn in_ball(g: &mut ChaCha8Rng, d: usize, r: f64) -> Point {
    loop {
        let v: Vec<f64> = (0..d).map(|_| g.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 0.0 && n <= 1.0 {
            let s = r * g.random::<f64>().powf(1.0 / d as f64) / n;
            return Point::new(v.into_iter().map(|c| c * s).collect());
        }
    }
}

pub fn generate(space: &CoordSpace, kind: Kind, params: Params, seed: u64) -> Result<Value> {
    let Params { n, clusters, spread } = params;
    if n == 0 {
        bail!("n must be positive");
    }
    if !(spread > 0.0 && spread <= 1.0) {
        bail!("spread must be in (0, 1], got {spread}");
    }
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    let (d, r) = (dim(space), reach(space));
    let sample = |count: usize, g: &mut ChaCha8Rng| -> Vec<Point> { (0..count).map(|_| in_ball(g, d, r)).collect() };
    let data = match kind {
        Kind::UniformPoints => json!({"M": sample(n, &mut g)}),
        Kind::Clustered => {
            if clusters == 0 || clusters > n {
                bail!("clusters must be in 1..=n, got {clusters}");
            }
            // centers stay far enough inside that clusters fit in the ball
            let centers: Vec<Point> = (0..clusters).map(|_| in_ball(&mut g, d, r * (1.0 - spread))).collect();
            let pts: Vec<Point> = (0..n)
                .map(|i| {
                    let off = in_ball(&mut g, d, r * spread);
                    Point::from(centers[i % clusters].vector() + off.vector())
                })
                .collect();
            json!({"M": pts, "centers": centers})
        }
        Kind::NnetPair => json!({"S": sample(n, &mut g), "T": sample(n, &mut g)}),
        Kind::ConvexHull => {
            if d != 2 {
                bail!("convex_hull instances are planar");
            }
            if !matches!(space, CoordSpace::Euclidean(_)) {
                bail!("convex_hull instances need the euclidean space");
            }
            let body = ConvexBody::hull(sample(n.max(3), &mut g))?;
            json!({"body": body})
        }
        Kind::MapTable => {
            let domain = sample(n, &mut g);
            json!({"domain": domain, "f": sample(n, &mut g), "g": sample(n, &mut g), "p": domain[0]})
        }
    };
    Ok(json!({
        "kind": kind.to_possible_value().expect("no skipped variants").get_name(),
        "seed": seed,
        "space": space,
        "params": {"n": n, "clusters": clusters, "spread": spread},
        "data": data,
    }))
}
