//! Final clumps predicted from the concave majorant of the velocity potential.
//!
//! With particles at unit spacing, set `ψ(0) = 0` and `ψ(k+1) − ψ(k) = −v_k`.
//! The extremal superior times `e_0 < e_1 < … < e_m` of the piecewise-linear
//! interpolation of `ψ` cut `0..N` into the final blocks `e_j..e_{j+1}−1`.

use serde::{Deserialize, Serialize};

use super::{init_system, run_to_completion, unit_positions};
use crate::error::{Error, Result};
use crate::hull::upper_hull_indices;

pub fn potential(velocities: &[f64]) -> Vec<f64> {
    let mut psi = Vec::with_capacity(velocities.len() + 1);
    psi.push(0.0);
    for v in velocities {
        psi.push(psi.last().unwrap() - v);
    }
    psi
}

pub fn partition_oracle(velocities: &[f64]) -> Result<Vec<(usize, usize)>> {
    if velocities.is_empty() || velocities.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("need finite velocities".into()));
    }
    let psi = potential(velocities);
    let xs: Vec<f64> = (0..psi.len()).map(|k| k as f64).collect();
    let e = upper_hull_indices(&xs, &psi, 0.0)?;
    for w in e.windows(2) {
        let (a, b) = (w[0], w[1]);
        for k in a + 1..b {
            let cross = (xs[b] - xs[a]) * (psi[k] - psi[a]) - (psi[b] - psi[a]) * (xs[k] - xs[a]);
            if cross == 0.0 {
                return Err(Error::DegenerateInput(format!("ψ({k}) lies exactly on the face [{a}, {b}]")));
            }
        }
    }
    Ok(e.windows(2).map(|w| (w[0], w[1] - 1)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub agrees: bool,
    pub simulated: Vec<(usize, usize)>,
    pub oracle: Vec<(usize, usize)>,
    pub events: usize,
    /// `|Σm − N| / N` at completion.
    pub mass_error: f64,
    /// Largest relative momentum drift over the event log.
    pub momentum_error: f64,
    /// Final velocities are non-decreasing left to right.
    pub stable: bool,
}

/// Simulates `N` particles at unit spacing and compares with [`partition_oracle`].
pub fn verify_discrete_theorem(velocities: &[f64]) -> Result<TheoremCheck> {
    let oracle = partition_oracle(velocities)?;
    let n = velocities.len();
    let start = init_system(&unit_positions(n), velocities)?;
    let p0 = start.total_momentum();
    let mut sys = start;
    let mut momentum_error: f64 = 0.0;
    let mut events = 0;
    let scale = velocities.iter().map(|v| v.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
    while let Some(ev) = super::next_collision(&sys) {
        sys = super::merge(&sys, &ev)?;
        events += 1;
        momentum_error = momentum_error.max((sys.total_momentum() - p0).abs() / scale);
    }
    debug_assert_eq!(run_to_completion(&init_system(&unit_positions(n), velocities)?)?.0, sys);
    let simulated = sys.partition();
    let stable = sys.clumps.windows(2).all(|w| w[0].velocity <= w[1].velocity);
    Ok(TheoremCheck {
        agrees: simulated == oracle,
        simulated,
        oracle,
        events,
        mass_error: (sys.total_mass() - n as f64).abs() / n as f64,
        momentum_error,
        stable,
    })
}
