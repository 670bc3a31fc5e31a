//! Inequality check records shared by the property harnesses.

use serde::{Deserialize, Serialize};

/// One evaluated inequality `lhs <= rhs`. `slack = rhs - lhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl Check {
    /// `lhs <= rhs` up to `tol`.
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Check { name: name.into(), lhs, rhs, slack, pass: slack >= -tol }
    }

    /// `|lhs - rhs| <= tol`, with slack `-|lhs - rhs|`.
    pub fn eq(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = -(lhs - rhs).abs();
        Check { name: name.into(), lhs, rhs, slack, pass: slack >= -tol }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        let v = if ok { 0.0 } else { -1.0 };
        Check { name: name.into(), lhs: 0.0, rhs: v, slack: v, pass: ok }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn worst_slack(checks: &[Check]) -> f64 {
    checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min)
}
