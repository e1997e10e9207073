//! Brownian motion, Euler–Maruyama Itô paths and discrete random walks.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::levy::JumpLaw;
use super::{Grid, GridPath};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Brownian path on `grid`, started at 0.
pub fn simulate_brownian(grid: Grid, rng: RngStream) -> GridPath {
    let mut r = rng.rng();
    let s = grid.h.sqrt();
    let mut values = Vec::with_capacity(grid.n + 1);
    let mut x = 0.0;
    values.push(x);
    for _ in 0..grid.n {
        let z: f64 = StandardNormal.sample(&mut r);
        x += s * z;
        values.push(x);
    }
    GridPath { t0: grid.t0, h: grid.h, values }
}

/// Coefficient `(time, state) -> value` that can live in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coefficient {
    Constant { value: f64 },
    /// `Σ c_k t^k`.
    Polynomial { coefficients: Vec<f64> },
    /// `amplitude · sin(frequency · t + phase)`.
    Sine {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "one")]
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `intercept + slope · x`.
    AffineInState { intercept: f64, slope: f64 },
}

fn one() -> f64 {
    1.0
}

impl Coefficient {
    pub fn eval(&self, t: f64, x: f64) -> f64 {
        match self {
            Coefficient::Constant { value } => *value,
            Coefficient::Polynomial { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
            }
            Coefficient::Sine { amplitude, frequency, phase } => amplitude * (frequency * t + phase).sin(),
            Coefficient::AffineInState { intercept, slope } => intercept + slope * x,
        }
    }
}

/// Euler–Maruyama: `X_{k+1} = X_k + φ(t_k, X_k) ΔB_k + ψ(t_k, X_k) h`.
///
/// The Brownian increments are drawn exactly as in [`simulate_brownian`].
pub fn simulate_ito(
    phi: impl Fn(f64, f64) -> f64,
    psi: impl Fn(f64, f64) -> f64,
    grid: Grid,
    rng: RngStream,
) -> Result<GridPath> {
    let mut r = rng.rng();
    let s = grid.h.sqrt();
    let mut values = Vec::with_capacity(grid.n + 1);
    let mut x = 0.0;
    values.push(x);
    for k in 0..grid.n {
        let t = grid.time(k);
        let (p, q) = (phi(t, x), psi(t, x));
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::SimulationFailure {
                node: k,
                reason: format!("coefficient is not finite (phi={p}, psi={q})"),
            });
        }
        let z: f64 = StandardNormal.sample(&mut r);
        x = x + p * (s * z) + q * grid.h;
        if !x.is_finite() {
            return Err(Error::SimulationFailure { node: k + 1, reason: "state overflowed".into() });
        }
        values.push(x);
    }
    Ok(GridPath { t0: grid.t0, h: grid.h, values })
}

/// Partial sums of `n` iid increments on the integer grid `0..=n`.
pub fn simulate_random_walk(law: &JumpLaw, n: usize, rng: RngStream) -> Result<GridPath> {
    if n == 0 {
        return Err(Error::InvalidParameter("a walk needs at least one step".into()));
    }
    let mut r = rng.rng();
    let mut values = Vec::with_capacity(n + 1);
    let mut x = 0.0;
    values.push(x);
    for _ in 0..n {
        x += law.sample(&mut r);
        values.push(x);
    }
    Ok(GridPath { t0: 0.0, h: 1.0, values })
}
