//! Predicted isolation of extremal times of `Y = X + f` from one-sided
//! majorant slopes.
//!
//! A vertex `a` is predicted isolated when `f'(a)` falls outside its
//! superdifferential `[R − tol, L + tol]`, `L` and `R` being the left and right
//! slopes of the majorant (`L = +∞` at the first vertex, `R = −∞` at the
//! last). Otherwise it is an accumulation candidate on both sides.

use serde::{Deserialize, Serialize};

use super::DriftSpec;
use crate::error::{Error, Result};
use crate::hull::extremal::ExtremalSet;
use crate::hull::{concave_majorant_of_path, Side};
use crate::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolationVerdict {
    pub time: f64,
    pub left_slope: Option<f64>,
    pub right_slope: Option<f64>,
    pub derivative: f64,
    pub left_isolated: bool,
    pub right_isolated: bool,
    /// Distance to the previous time in the extremal set.
    pub left_gap: Option<f64>,
    pub right_gap: Option<f64>,
}

/// `10⁻⁶ · (value range / time range)` of the path skeleton.
pub fn default_tolerance(y: &Path) -> f64 {
    let sk = y.skeleton();
    let (lo, hi) = (0..sk.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
        (lo.min(sk.floor(i)), hi.max(sk.star(i)))
    });
    let h = y.horizon();
    1e-6 * (hi - lo) / h.length()
}

pub fn classify_isolation(
    y: &Path,
    f: &DriftSpec,
    e: &ExtremalSet,
    tol: Option<f64>,
) -> Result<Vec<IsolationVerdict>> {
    let tol = tol.unwrap_or_else(|| default_tolerance(y));
    let (m, _) = concave_majorant_of_path(y);
    let times = e.times();
    let mut out = Vec::with_capacity(times.len());
    for (k, &a) in times.iter().enumerate() {
        let i = m
            .vertex_index(a)
            .ok_or_else(|| Error::ContractViolation(format!("time {a} is not a majorant vertex")))?;
        let left = (i > 0).then(|| m.slope_at(a, Side::Left)).transpose()?;
        let right = (i + 1 < m.vertex_count()).then(|| m.slope_at(a, Side::Right)).transpose()?;
        let d = f.derivative(a);
        let upper = left.map_or(f64::INFINITY, |l| l + tol);
        let lower = right.map_or(f64::NEG_INFINITY, |r| r - tol);
        let isolated = !(d >= lower && d <= upper);
        out.push(IsolationVerdict {
            time: a,
            left_slope: left,
            right_slope: right,
            derivative: d,
            left_isolated: isolated,
            right_isolated: isolated,
            left_gap: (k > 0).then(|| a - times[k - 1]),
            right_gap: (k + 1 < times.len()).then(|| times[k + 1] - a),
        });
    }
    Ok(out)
}
