//! Hausdorff distance between finite sorted subsets of the line.

use crate::error::{Error, Result};

/// `sup_{a∈A} inf_{b∈B} |a − b|` by a single merged sweep.
fn directed(a: &[f64], b: &[f64]) -> f64 {
    let mut j = 0;
    let mut d: f64 = 0.0;
    for &x in a {
        while j + 1 < b.len() && b[j + 1] <= x {
            j += 1;
        }
        let mut near = (x - b[j]).abs();
        if j + 1 < b.len() {
            near = near.min((b[j + 1] - x).abs());
        }
        d = d.max(near);
    }
    d
}

/// Both sets must be non-empty and sorted increasingly.
pub fn hausdorff_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::UndefinedDistance("Hausdorff distance to an empty set".into()));
    }
    if a.windows(2).any(|w| w[1] < w[0]) || b.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::ContractViolation("time sets must be sorted".into()));
    }
    Ok(directed(a, b).max(directed(b, a)))
}
