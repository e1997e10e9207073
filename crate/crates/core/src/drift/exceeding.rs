//! Exceeding times: first skeleton time after `u` at which the drifted path
//! rises above the line of slope `f'(u) + μ` through `(u, Y(u))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{add_drift, DriftSpec};
use crate::error::{Error, Result};
use crate::path::process::ProcessSpec;
use crate::path::Path;
use crate::rng::RngStream;

/// `None` stands for `+∞`.
pub fn exceeding_time(y: &Path, f: &DriftSpec, mu: f64, u: f64) -> Result<Option<f64>> {
    Ok(exceeding_node(y, f, mu, u)?.map(|(t, _)| t))
}

/// Exceeding time together with the jump of `Y` there.
fn exceeding_node(y: &Path, f: &DriftSpec, mu: f64, u: f64) -> Result<Option<(f64, f64)>> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("μ = {mu} must be positive")));
    }
    let yu = y.value_at(u)?;
    let c = f.derivative(u) + mu;
    let sk = y.skeleton();
    let start = sk.times.partition_point(|&t| t <= u);
    Ok((start..sk.len()).find(|&i| sk.value[i] - yu > c * (sk.times[i] - u)).map(|i| (sk.times[i], sk.jump(i))))
}

/// `S_1 < S_2 < …` obtained by restarting from each exceeding time, at most `max` of them.
pub fn iterated_exceeding_times(y: &Path, f: &DriftSpec, mu: f64, u: f64, max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut from = u;
    while out.len() < max {
        match exceeding_time(y, f, mu, from)? {
            Some(s) => {
                out.push(s);
                from = s;
            }
            None => break,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceedingCell {
    pub mu: f64,
    pub u: f64,
    pub finite: usize,
    pub at_positive_jump: usize,
    /// `None` when no replica produced a finite exceeding time.
    pub fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceedingReport {
    pub applicable: bool,
    pub cells: Vec<ExceedingCell>,
}

/// Fraction of finite exceeding times that fall on positive jumps of `X`.
///
/// Only jump-path processes are applicable; other inputs give a report with
/// `applicable = false` and no cells.
pub fn exceeding_times_are_jumps_experiment(
    process: &ProcessSpec,
    f: &DriftSpec,
    mus: &[f64],
    us: &[f64],
    replicas: usize,
    rng: RngStream,
) -> Result<ExceedingReport> {
    f.validate()?;
    let probe = process.simulate(rng.split(0))?;
    if !probe.is_jump() {
        return Ok(ExceedingReport { applicable: false, cells: vec![] });
    }
    let per_replica: Vec<Vec<Option<bool>>> = (0..replicas as u64)
        .into_par_iter()
        .map(|i| -> Result<Vec<Option<bool>>> {
            let x = process.simulate(rng.split(i))?;
            let y = add_drift(&x, f)?;
            let mut row = Vec::with_capacity(mus.len() * us.len());
            for &mu in mus {
                for &u in us {
                    row.push(exceeding_node(&y, f, mu, u)?.map(|(_, jump)| jump > 0.0));
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    let mut k = 0;
    for &mu in mus {
        for &u in us {
            let finite = per_replica.iter().filter(|r| r[k].is_some()).count();
            let hit = per_replica.iter().filter(|r| r[k] == Some(true)).count();
            cells.push(ExceedingCell {
                mu,
                u,
                finite,
                at_positive_jump: hit,
                fraction: (finite > 0).then(|| hit as f64 / finite as f64),
            });
            k += 1;
        }
    }
    Ok(ExceedingReport { applicable: true, cells })
}
