//! One-dimensional minimization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimizer of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..300 {
        if hi - lo <= tol {
            break;
        }
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    // the endpoints are candidates too when the minimum sits on the boundary
    [(lo, f(lo)), (hi, f(hi)), (a, fa), (b, fb)]
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_kink_and_boundary() {
        let (t, v) = golden_min(|t| (t - 0.3).abs(), 0.0, 1.0, 1e-13);
        assert!((t - 0.3).abs() < 1e-12 && v < 1e-12);
        let (t, _) = golden_min(|t| t, 0.0, 1.0, 1e-13);
        assert_eq!(t, 0.0);
    }
}
