use anyhow::{bail, Context, Result};
use metric_geom::CoordSpace;

/// Parses `euclidean[:dim]` or `klein[:dim[:r[:k]]]`.
pub fn parse_space(spec: &str) -> Result<CoordSpace> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums: Vec<&str> = parts.collect();
    let num = |i: usize, default: f64| -> Result<f64> {
        nums.get(i)
            .map(|s| s.parse::<f64>().with_context(|| format!("bad number {s:?} in space {spec:?}")))
            .unwrap_or(Ok(default))
    };
    let dim = num(0, 2.0)?;
    if dim < 1.0 || dim.fract() != 0.0 {
        bail!("space dimension must be a positive integer, got {dim}");
    }
    let dim = dim as usize;
    match kind {
        "euclidean" if nums.len() <= 1 => Ok(CoordSpace::euclidean(dim)),
        "klein" if nums.len() <= 3 => Ok(CoordSpace::klein(dim, num(1, 1.0)?, num(2, 1.0)?)?),
        _ => bail!("unknown space {spec:?}; expected euclidean[:dim] or klein[:dim[:r[:k]]]"),
    }
}

pub fn dim(space: &CoordSpace) -> usize {
    match space {
        CoordSpace::Euclidean(e) => e.dim,
        CoordSpace::Klein(k) => k.dim,
    }
}
