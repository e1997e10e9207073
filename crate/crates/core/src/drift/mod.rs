//! Deterministic drifts added to paths, and the results that depend on them:
//! exceeding times, isolation of extremal times and the convex-drift inclusion.

pub mod convex;
pub mod exceeding;
pub mod isolation;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{Path, SampledPath};

/// Interior samples per inter-node gap used by [`add_drift`] by default.
pub const DEFAULT_SAMPLES_PER_GAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DriftSpec {
    Zero,
    /// `a ↦ β a`.
    Linear { beta: f64 },
    /// `a ↦ γ a²`.
    Quadratic { gamma: f64 },
    /// `a ↦ −a² / (2t)`.
    ParabolicBurgers { t: f64 },
    /// Piecewise-linear interpolation of `f` and `f'` tables.
    UserSampled { times: Vec<f64>, values: Vec<f64>, derivatives: Vec<f64> },
}

fn interpolate(xs: &[f64], ys: &[f64], a: f64) -> f64 {
    let k = xs.partition_point(|&x| x <= a);
    if k == 0 {
        return ys[0];
    }
    if k == xs.len() {
        return ys[xs.len() - 1];
    }
    let w = (a - xs[k - 1]) / (xs[k] - xs[k - 1]);
    ys[k - 1] + w * (ys[k] - ys[k - 1])
}

impl DriftSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DriftSpec::Zero => Ok(()),
            DriftSpec::Linear { beta: c } | DriftSpec::Quadratic { gamma: c } if c.is_finite() => Ok(()),
            DriftSpec::ParabolicBurgers { t } if *t > 0.0 && t.is_finite() => Ok(()),
            DriftSpec::UserSampled { times, values, derivatives } => {
                if times.len() < 2 || values.len() != times.len() || derivatives.len() != times.len() {
                    return Err(Error::InvalidParameter("drift table needs matching arrays of length ≥ 2".into()));
                }
                if times.windows(2).any(|w| !(w[0] < w[1]))
                    || times.iter().chain(values).chain(derivatives).any(|v| !v.is_finite())
                {
                    return Err(Error::InvalidParameter("drift table must be finite and sorted".into()));
                }
                Ok(())
            }
            other => Err(Error::InvalidParameter(format!("drift {other:?} has invalid parameters"))),
        }
    }

    pub fn value(&self, a: f64) -> f64 {
        match self {
            DriftSpec::Zero => 0.0,
            DriftSpec::Linear { beta } => beta * a,
            DriftSpec::Quadratic { gamma } => gamma * a * a,
            DriftSpec::ParabolicBurgers { t } => -(a * a) / (2.0 * t),
            DriftSpec::UserSampled { times, values, .. } => interpolate(times, values, a),
        }
    }

    pub fn derivative(&self, a: f64) -> f64 {
        match self {
            DriftSpec::Zero => 0.0,
            DriftSpec::Linear { beta } => *beta,
            DriftSpec::Quadratic { gamma } => 2.0 * gamma * a,
            DriftSpec::ParabolicBurgers { t } => -a / t,
            DriftSpec::UserSampled { times, derivatives, .. } => interpolate(times, derivatives, a),
        }
    }

    /// Every built-in kind is `C¹`; tables are treated as such.
    pub fn is_differentiable(&self) -> bool {
        true
    }

    pub fn is_convex(&self) -> bool {
        match self {
            DriftSpec::Zero | DriftSpec::Linear { .. } => true,
            DriftSpec::Quadratic { gamma } => *gamma >= 0.0,
            DriftSpec::ParabolicBurgers { .. } => false,
            DriftSpec::UserSampled { derivatives, .. } => derivatives.windows(2).all(|w| w[1] >= w[0]),
        }
    }

    pub fn is_concave(&self) -> bool {
        match self {
            DriftSpec::Zero | DriftSpec::Linear { .. } | DriftSpec::ParabolicBurgers { .. } => true,
            DriftSpec::Quadratic { gamma } => *gamma <= 0.0,
            DriftSpec::UserSampled { derivatives, .. } => derivatives.windows(2).all(|w| w[1] <= w[0]),
        }
    }

    fn is_affine(&self) -> bool {
        matches!(self, DriftSpec::Zero | DriftSpec::Linear { .. })
    }
}

/// Skeleton of `path` refined by `per_gap` equally spaced interior samples.
pub fn refine(path: &Path, per_gap: usize) -> Result<SampledPath> {
    let sk = path.skeleton();
    let n = sk.len();
    let cap = n + (n - 1) * per_gap;
    let (mut times, mut left, mut value) = (Vec::with_capacity(cap), Vec::with_capacity(cap), Vec::with_capacity(cap));
    for i in 0..n {
        times.push(sk.times[i]);
        left.push(sk.left[i]);
        value.push(sk.value[i]);
        if i + 1 < n && per_gap > 0 {
            let (t0, t1) = (sk.times[i], sk.times[i + 1]);
            let (v0, v1) = (sk.value[i], sk.left[i + 1]);
            for j in 1..=per_gap {
                let w = j as f64 / (per_gap + 1) as f64;
                let t = t0 + w * (t1 - t0);
                if t <= t0 || t >= t1 {
                    continue;
                }
                let v = if v0 == v1 { v0 } else { v0 + w * (v1 - v0) };
                times.push(t);
                left.push(v);
                value.push(v);
            }
        }
    }
    SampledPath::new(times, left, value)
}

/// `Y = X + f`.
///
/// Grid paths are summed pointwise. Affine drifts keep jump paths exact.
/// Otherwise the result is sampled at every skeleton node (both sides of each
/// jump) and at `per_gap` interior points of each gap.
pub fn add_drift_with(path: &Path, f: &DriftSpec, per_gap: usize) -> Result<Path> {
    f.validate()?;
    match (path, f) {
        (_, DriftSpec::Zero) => Ok(path.clone()),
        (Path::Jump(p), DriftSpec::Linear { beta }) => {
            let mut q = p.clone();
            // f(a) = β a splits into the value β t0 and slope β from t0
            q.initial += beta * p.horizon.t0;
            q.drift += beta;
            Ok(Path::Jump(q))
        }
        (Path::Grid(g), _) => {
            let mut g = g.clone();
            for (k, v) in g.values.iter_mut().enumerate() {
                *v += f.value(g.t0 + k as f64 * g.h);
            }
            Ok(Path::Grid(g))
        }
        _ => {
            let mut s = refine(path, per_gap)?;
            for i in 0..s.times.len() {
                let fv = f.value(s.times[i]);
                s.left[i] += fv;
                s.value[i] += fv;
            }
            Ok(Path::Sampled(s))
        }
    }
}

pub fn add_drift(path: &Path, f: &DriftSpec) -> Result<Path> {
    add_drift_with(path, f, DEFAULT_SAMPLES_PER_GAP)
}

/// `X` and `X + f` on one common skeleton.
pub fn on_common_skeleton(path: &Path, f: &DriftSpec, per_gap: usize) -> Result<(Path, Path)> {
    if f.is_affine() || matches!(path, Path::Grid(_)) {
        return Ok((path.clone(), add_drift_with(path, f, per_gap)?));
    }
    let base = Path::Sampled(refine(path, per_gap)?);
    let drifted = add_drift_with(&base, f, 0)?;
    Ok((base, drifted))
}
