//! Càdlàg path carriers and the transforms used by the extremal-set theorems.
//!
//! Three concrete representations share one semantic: a path is piecewise
//! linear between the nodes of its [`Skeleton`], right-continuous, with an
//! explicit left limit at every node.
//!
//! * [`JumpPath`]: initial value, linear drift and a finite list of jumps.
//! * [`GridPath`]: continuous samples on a uniform grid.
//! * [`SampledPath`]: arbitrary nodes, each with a left limit and a value.

pub mod diffusion;
pub mod levy;
pub mod process;
pub mod regularity;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed time interval `[t0, t1]`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Horizon {
    pub t0: f64,
    pub t1: f64,
}

impl Horizon {
    pub fn new(t0: f64, t1: f64) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(Error::InvalidParameter(format!(
                "horizon [{t0}, {t1}] must be finite with t0 < t1"
            )));
        }
        Ok(Self { t0, t1 })
    }

    pub fn unit() -> Self {
        Self { t0: 0.0, t1: 1.0 }
    }

    pub fn length(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn contains(&self, a: f64) -> bool {
        a >= self.t0 && a <= self.t1
    }

    fn check(&self, a: f64) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::OutOfHorizon { time: a, t0: self.t0, t1: self.t1 })
        }
    }
}

impl TryFrom<[f64; 2]> for Horizon {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Horizon::new(v[0], v[1])
    }
}

impl From<Horizon> for [f64; 2] {
    fn from(h: Horizon) -> Self {
        [h.t0, h.t1]
    }
}

/// Node view of a path: strictly increasing times, left limits and values.
///
/// `left[0] == value[0]` always; the hull sees `max(left, value)` at each node.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton {
    pub times: Vec<f64>,
    pub left: Vec<f64>,
    pub value: Vec<f64>,
}

impl Skeleton {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `X*(a) = max(X(a-), X(a))` at node `i`.
    pub fn star(&self, i: usize) -> f64 {
        self.left[i].max(self.value[i])
    }

    /// `min(X(a-), X(a))` at node `i`, the point the lower hull sees.
    pub fn floor(&self, i: usize) -> f64 {
        self.left[i].min(self.value[i])
    }

    pub fn jump(&self, i: usize) -> f64 {
        self.value[i] - self.left[i]
    }

    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times.binary_search_by(|x| x.total_cmp(&t)).ok()
    }
}

/// Piecewise-constant (plus linear drift) path with finitely many jumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJumpPath")]
pub struct JumpPath {
    pub horizon: Horizon,
    pub times: Vec<f64>,
    pub sizes: Vec<f64>,
    pub initial: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub drift: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Deserialize)]
struct RawJumpPath {
    horizon: Horizon,
    times: Vec<f64>,
    sizes: Vec<f64>,
    initial: f64,
    #[serde(default)]
    drift: f64,
}

impl TryFrom<RawJumpPath> for JumpPath {
    type Error = Error;
    fn try_from(r: RawJumpPath) -> Result<Self> {
        JumpPath::with_drift(r.horizon, r.times, r.sizes, r.initial, r.drift)
    }
}

impl JumpPath {
    pub fn new(horizon: Horizon, times: Vec<f64>, sizes: Vec<f64>, initial: f64) -> Result<Self> {
        Self::with_drift(horizon, times, sizes, initial, 0.0)
    }

    /// Jump times must lie in `(t0, t1]` and increase strictly.
    pub fn with_drift(
        horizon: Horizon,
        times: Vec<f64>,
        sizes: Vec<f64>,
        initial: f64,
        drift: f64,
    ) -> Result<Self> {
        if times.len() != sizes.len() {
            return Err(Error::InvalidParameter(format!(
                "{} jump times but {} sizes",
                times.len(),
                sizes.len()
            )));
        }
        if !initial.is_finite() || !drift.is_finite() || sizes.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter("non-finite path data".into()));
        }
        let mut prev = horizon.t0;
        for &t in &times {
            if !(t > prev && t <= horizon.t1) {
                return Err(Error::InvalidParameter(format!(
                    "jump time {t} not strictly increasing inside ({}, {}]",
                    horizon.t0, horizon.t1
                )));
            }
            prev = t;
        }
        Ok(Self { horizon, times, sizes, initial, drift })
    }

    pub fn constant(horizon: Horizon, value: f64) -> Self {
        Self { horizon, times: vec![], sizes: vec![], initial: value, drift: 0.0 }
    }

    pub fn jump_count(&self) -> usize {
        self.times.len()
    }

    pub fn skeleton(&self) -> Skeleton {
        let Horizon { t0, t1 } = self.horizon;
        let n = self.times.len();
        let mut times = Vec::with_capacity(n + 2);
        let mut left = Vec::with_capacity(n + 2);
        let mut value = Vec::with_capacity(n + 2);
        times.push(t0);
        left.push(self.initial);
        value.push(self.initial);
        let mut level = self.initial;
        for (&t, &d) in self.times.iter().zip(&self.sizes) {
            let before = level + self.drift * (t - t0);
            times.push(t);
            left.push(before);
            level += d;
            value.push(level + self.drift * (t - t0));
        }
        if self.times.last().is_none_or(|&t| t < t1) {
            let end = level + self.drift * (t1 - t0);
            times.push(t1);
            left.push(end);
            value.push(end);
        }
        Skeleton { times, left, value }
    }

    fn level_before(&self, k: usize) -> f64 {
        self.initial + self.sizes[..k].iter().sum::<f64>()
    }

    pub fn value_at(&self, a: f64) -> Result<f64> {
        self.horizon.check(a)?;
        let k = self.times.partition_point(|&t| t <= a);
        Ok(self.level_before(k) + self.drift * (a - self.horizon.t0))
    }

    pub fn left_limit_at(&self, a: f64) -> Result<f64> {
        self.horizon.check(a)?;
        let k = self.times.partition_point(|&t| t < a);
        Ok(self.level_before(k) + self.drift * (a - self.horizon.t0))
    }

    pub fn terminal_value(&self) -> f64 {
        self.level_before(self.times.len()) + self.drift * self.horizon.length()
    }

    /// Total variation of the jump part plus `|b|·length`, summed in
    /// magnitude order so the result does not depend on jump order.
    pub fn total_variation(&self) -> f64 {
        let mut mags: Vec<f64> = self.sizes.iter().map(|s| s.abs()).collect();
        if self.drift != 0.0 {
            mags.push(self.drift.abs() * self.horizon.length());
        }
        mags.sort_by(f64::total_cmp);
        mags.iter().sum()
    }

    pub fn negate(&self) -> Self {
        Self {
            horizon: self.horizon,
            times: self.times.clone(),
            sizes: self.sizes.iter().map(|s| -s).collect(),
            initial: -self.initial,
            drift: -self.drift,
        }
    }

    /// `s ↦ X(a) − X((a−s)−)` on `[0, a − t0]`.
    pub fn reverse(&self, a: f64) -> Result<Self> {
        self.horizon.check(a)?;
        let t0 = self.horizon.t0;
        let horizon = Horizon::new(0.0, a - t0)?;
        let mut initial = 0.0;
        let mut times = Vec::new();
        let mut sizes = Vec::new();
        for (&t, &d) in self.times.iter().zip(&self.sizes).rev() {
            if t > a {
                continue;
            }
            if t == a {
                initial = d;
            } else {
                times.push(a - t);
                sizes.push(d);
            }
        }
        Self::with_drift(horizon, times, sizes, initial, self.drift)
    }

    /// `θ_T X (s) = X(T + s)` on the part of the horizon where both sides exist.
    pub fn translate(&self, shift: f64) -> Result<Self> {
        let horizon = translated_horizon(self.horizon, shift)?;
        let initial = self.value_at(horizon.t0 + shift)?
            - self.drift * (horizon.t0 + shift - self.horizon.t0);
        let mut times = Vec::new();
        let mut sizes = Vec::new();
        for (&t, &d) in self.times.iter().zip(&self.sizes) {
            let s = t - shift;
            if s > horizon.t0 && s <= horizon.t1 {
                times.push(s);
                sizes.push(d);
            }
        }
        Self::with_drift(horizon, times, sizes, initial, self.drift)
    }

    /// Exact primitive `Z(a) = ∫_{t0}^a X`, continuous and piecewise linear
    /// between jumps (quadratic pieces when the drift is non-zero are
    /// represented by their node values).
    pub fn integrate(&self) -> SampledPath {
        let sk = self.skeleton();
        let mut z = Vec::with_capacity(sk.len());
        z.push(0.0);
        for i in 1..sk.len() {
            let dt = sk.times[i] - sk.times[i - 1];
            // value[i-1] at the segment start, left[i] at its end; exact for linear pieces
            let area = 0.5 * (sk.value[i - 1] + sk.left[i]) * dt;
            z.push(z[i - 1] + area);
        }
        SampledPath { times: sk.times, left: z.clone(), value: z }
    }
}

fn translated_horizon(h: Horizon, shift: f64) -> Result<Horizon> {
    let t0 = h.t0.max(h.t0 - shift);
    let t1 = h.t1.min(h.t1 - shift);
    if !(t0 < t1) {
        return Err(Error::InvalidParameter(format!(
            "translation by {shift} leaves no common domain with [{}, {}]",
            h.t0, h.t1
        )));
    }
    Horizon::new(t0, t1)
}

/// Continuous path sampled on `t0 + k·h`, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGridPath")]
pub struct GridPath {
    pub t0: f64,
    pub h: f64,
    pub values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawGridPath {
    t0: f64,
    h: f64,
    values: Vec<f64>,
}

impl TryFrom<RawGridPath> for GridPath {
    type Error = Error;
    fn try_from(r: RawGridPath) -> Result<Self> {
        GridPath::new(r.t0, r.h, r.values)
    }
}

/// Uniform grid description: `n` steps of width `h` starting at `t0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t0: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(t0: f64, h: f64, n: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite() && t0.is_finite()) || n == 0 {
            return Err(Error::InvalidParameter(format!("grid t0={t0} h={h} n={n} is not valid")));
        }
        Ok(Self { t0, h, n })
    }

    /// `n` equal steps covering `horizon`.
    pub fn over(horizon: Horizon, n: usize) -> Result<Self> {
        Self::new(horizon.t0, horizon.length() / n as f64, n)
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }
}

impl GridPath {
    pub fn new(t0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite() && t0.is_finite()) {
            return Err(Error::InvalidParameter(format!("grid step {h} must be positive")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidParameter("a grid path needs at least two values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite grid value".into()));
        }
        Ok(Self { t0, h, values })
    }

    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn grid(&self) -> Grid {
        Grid { t0: self.t0, h: self.h, n: self.steps() }
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn horizon(&self) -> Horizon {
        Horizon { t0: self.t0, t1: self.time(self.steps()) }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.values.len()).map(|k| self.time(k)).collect()
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton { times: self.times(), left: self.values.clone(), value: self.values.clone() }
    }

    pub fn value_at(&self, a: f64) -> Result<f64> {
        self.horizon().check(a)?;
        let x = (a - self.t0) / self.h;
        let k = (x.floor() as usize).min(self.steps() - 1);
        let w = x - k as f64;
        if w == 0.0 {
            return Ok(self.values[k]);
        }
        Ok(self.values[k] + w * (self.values[k + 1] - self.values[k]))
    }

    pub fn negate(&self) -> Self {
        Self { t0: self.t0, h: self.h, values: self.values.iter().map(|v| -v).collect() }
    }

    /// Trapezoidal primitive with `Z(t0) = 0`.
    pub fn integrate(&self) -> Self {
        let mut z = Vec::with_capacity(self.values.len());
        z.push(0.0);
        for w in self.values.windows(2) {
            let last = *z.last().unwrap();
            z.push(last + 0.5 * (w[0] + w[1]) * self.h);
        }
        Self { t0: self.t0, h: self.h, values: z }
    }
}

/// Piecewise-linear càdlàg path on arbitrary nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSampledPath")]
pub struct SampledPath {
    pub times: Vec<f64>,
    pub left: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSampledPath {
    times: Vec<f64>,
    left: Vec<f64>,
    value: Vec<f64>,
}

impl TryFrom<RawSampledPath> for SampledPath {
    type Error = Error;
    fn try_from(r: RawSampledPath) -> Result<Self> {
        SampledPath::new(r.times, r.left, r.value)
    }
}

impl SampledPath {
    pub fn new(times: Vec<f64>, left: Vec<f64>, value: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || left.len() != times.len() || value.len() != times.len() {
            return Err(Error::InvalidParameter(
                "sampled path needs at least two nodes and matching value arrays".into(),
            ));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("sample times must increase strictly".into()));
        }
        if left.iter().chain(&value).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample value".into()));
        }
        if left[0] != value[0] {
            return Err(Error::InvalidParameter("left limit at t0 must equal the value".into()));
        }
        Ok(Self { times, left, value })
    }

    pub fn continuous(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(times, values.clone(), values)
    }

    pub fn from_skeleton(sk: Skeleton) -> Result<Self> {
        Self::new(sk.times, sk.left, sk.value)
    }

    pub fn horizon(&self) -> Horizon {
        Horizon { t0: self.times[0], t1: *self.times.last().unwrap() }
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton { times: self.times.clone(), left: self.left.clone(), value: self.value.clone() }
    }

    pub fn value_at(&self, a: f64) -> Result<f64> {
        self.horizon().check(a)?;
        let i = self.times.partition_point(|&t| t <= a) - 1;
        if self.times[i] == a {
            return Ok(self.value[i]);
        }
        let w = (a - self.times[i]) / (self.times[i + 1] - self.times[i]);
        Ok(self.value[i] + w * (self.left[i + 1] - self.value[i]))
    }

    pub fn left_limit_at(&self, a: f64) -> Result<f64> {
        self.horizon().check(a)?;
        match self.times.binary_search_by(|t| t.total_cmp(&a)) {
            Ok(i) => Ok(self.left[i]),
            Err(_) => self.value_at(a),
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            times: self.times.clone(),
            left: self.left.iter().map(|v| -v).collect(),
            value: self.value.iter().map(|v| -v).collect(),
        }
    }

    /// Trapezoidal primitive, exact on the linear pieces.
    pub fn integrate(&self) -> Self {
        let mut z = Vec::with_capacity(self.times.len());
        z.push(0.0);
        for i in 1..self.times.len() {
            let dt = self.times[i] - self.times[i - 1];
            z.push(z[i - 1] + 0.5 * (self.value[i - 1] + self.left[i]) * dt);
        }
        Self { times: self.times.clone(), left: z.clone(), value: z }
    }

    fn reverse(&self, a: f64) -> Result<Self> {
        let xa = self.value_at(a)?;
        let mut sk = self.skeleton();
        // make `a` a node
        if sk.index_of(a).is_none() {
            let k = sk.times.partition_point(|&t| t < a);
            let v = self.value_at(a)?;
            sk.times.insert(k, a);
            sk.left.insert(k, v);
            sk.value.insert(k, v);
        }
        let ka = sk.index_of(a).unwrap();
        let mut times = Vec::with_capacity(ka + 1);
        let mut left = Vec::with_capacity(ka + 1);
        let mut value = Vec::with_capacity(ka + 1);
        for i in (0..=ka).rev() {
            times.push(a - sk.times[i]);
            value.push(xa - sk.left[i]);
            left.push(if i == ka { xa - sk.left[i] } else { xa - sk.value[i] });
        }
        times[0] = 0.0;
        Self::new(times, left, value)
    }

    fn translate(&self, shift: f64) -> Result<Self> {
        let h = translated_horizon(self.horizon(), shift)?;
        let mut times = vec![h.t0];
        let v0 = self.value_at(h.t0 + shift)?;
        let mut left = vec![v0];
        let mut value = vec![v0];
        for i in 0..self.times.len() {
            let s = self.times[i] - shift;
            if s > h.t0 && s < h.t1 {
                times.push(s);
                left.push(self.left[i]);
                value.push(self.value[i]);
            }
        }
        let end = h.t1 + shift;
        times.push(h.t1);
        left.push(self.left_limit_at(end)?);
        value.push(self.value_at(end)?);
        Self::new(times, left, value)
    }
}

/// Any path the toolkit can analyse. Serialized with a `kind` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Path {
    Jump(JumpPath),
    Grid(GridPath),
    Sampled(SampledPath),
}

impl From<JumpPath> for Path {
    fn from(p: JumpPath) -> Self {
        Path::Jump(p)
    }
}

impl From<GridPath> for Path {
    fn from(p: GridPath) -> Self {
        Path::Grid(p)
    }
}

impl From<SampledPath> for Path {
    fn from(p: SampledPath) -> Self {
        Path::Sampled(p)
    }
}

impl Path {
    pub fn horizon(&self) -> Horizon {
        match self {
            Path::Jump(p) => p.horizon,
            Path::Grid(p) => p.horizon(),
            Path::Sampled(p) => p.horizon(),
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        match self {
            Path::Jump(p) => p.skeleton(),
            Path::Grid(p) => p.skeleton(),
            Path::Sampled(p) => p.skeleton(),
        }
    }

    pub fn is_jump(&self) -> bool {
        matches!(self, Path::Jump(_))
    }

    pub fn value_at(&self, a: f64) -> Result<f64> {
        match self {
            Path::Jump(p) => p.value_at(a),
            Path::Grid(p) => p.value_at(a),
            Path::Sampled(p) => p.value_at(a),
        }
    }

    pub fn left_limit_at(&self, a: f64) -> Result<f64> {
        match self {
            Path::Jump(p) => p.left_limit_at(a),
            Path::Grid(p) => p.value_at(a),
            Path::Sampled(p) => p.left_limit_at(a),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            Path::Jump(p) => Path::Jump(p.negate()),
            Path::Grid(p) => Path::Grid(p.negate()),
            Path::Sampled(p) => Path::Sampled(p.negate()),
        }
    }

    /// Primitive `Z` with `Z(t0) = 0`: exact on jump paths, trapezoidal on grids.
    pub fn integrate(&self) -> Path {
        match self {
            Path::Jump(p) => Path::Sampled(p.integrate()),
            Path::Grid(p) => Path::Grid(p.integrate()),
            Path::Sampled(p) => Path::Sampled(p.integrate()),
        }
    }

    /// Time reversal at `a`: `s ↦ X(a) − X((a−s)−)` on `[0, a − t0]`.
    pub fn reverse(&self, a: f64) -> Result<Path> {
        self.horizon().check(a)?;
        match self {
            Path::Jump(p) => Ok(Path::Jump(p.reverse(a)?)),
            Path::Grid(p) => {
                let sk = p.skeleton();
                let reversed = SampledPath::from_skeleton(sk)?.reverse(a)?;
                match grid_node(p, a) {
                    // reversed nodes are a − t_j for j = k..0, equally spaced
                    Some(k) if k >= 1 => Ok(Path::Grid(GridPath::new(0.0, p.h, reversed.value)?)),
                    _ => Ok(Path::Sampled(reversed)),
                }
            }
            Path::Sampled(p) => Ok(Path::Sampled(p.reverse(a)?)),
        }
    }

    /// Translation `θ_T`.
    pub fn translate(&self, shift: f64) -> Result<Path> {
        match self {
            Path::Jump(p) => Ok(Path::Jump(p.translate(shift)?)),
            Path::Grid(p) => {
                let k = (shift / p.h).round();
                if (k * p.h - shift).abs() <= 1e-9 * p.h {
                    let h = translated_horizon(p.horizon(), shift)?;
                    let start = ((h.t0 + shift - p.t0) / p.h).round() as usize;
                    let stop = ((h.t1 + shift - p.t0) / p.h).round() as usize;
                    let values = p.values[start..=stop].to_vec();
                    return Ok(Path::Grid(GridPath::new(h.t0, p.h, values)?));
                }
                Ok(Path::Sampled(SampledPath::from_skeleton(p.skeleton())?.translate(shift)?))
            }
            Path::Sampled(p) => Ok(Path::Sampled(p.translate(shift)?)),
        }
    }

    /// `X*(a) = max(X(a−), X(a))`.
    pub fn star_value(&self, a: f64) -> Result<f64> {
        Ok(self.left_limit_at(a)?.max(self.value_at(a)?))
    }
}

fn grid_node(p: &GridPath, a: f64) -> Option<usize> {
    let k = ((a - p.t0) / p.h).round();
    if k >= 0.0 && (p.t0 + k * p.h - a).abs() <= 1e-12 * p.h.max(a.abs()) {
        Some(k as usize)
    } else {
        None
    }
}

/// `X*(a)` for any path.
pub fn star_value(path: &Path, a: f64) -> Result<f64> {
    path.star_value(a)
}

pub fn reverse_path(path: &Path, a: f64) -> Result<Path> {
    path.reverse(a)
}

pub fn translate_path(path: &Path, shift: f64) -> Result<Path> {
    path.translate(shift)
}

pub fn integrate_path(path: &Path) -> Path {
    path.integrate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_jump(at: f64, size: f64) -> JumpPath {
        JumpPath::new(Horizon::unit(), vec![at], vec![size], 0.0).unwrap()
    }

    #[test]
    fn star_at_jumps() {
        let up = Path::Jump(JumpPath::new(Horizon::unit(), vec![0.2, 0.5], vec![1.0, 2.0], 0.0).unwrap());
        assert_eq!(up.star_value(0.5).unwrap(), 3.0);
        assert_eq!(up.star_value(0.4).unwrap(), 1.0);
        let down = Path::Jump(JumpPath::new(Horizon::unit(), vec![0.2, 0.5], vec![1.0, -2.0], 0.0).unwrap());
        assert_eq!(down.star_value(0.5).unwrap(), 1.0);
        assert!(down.star_value(1.5).is_err());
    }

    #[test]
    fn integrate_examples() {
        let c = Path::Jump(JumpPath::constant(Horizon::unit(), 2.5));
        let z = c.integrate();
        assert_eq!(z.value_at(1.0).unwrap(), 2.5);
        let z = Path::Jump(one_jump(0.5, 1.0)).integrate();
        assert_eq!(z.value_at(1.0).unwrap(), 0.5);
        assert_eq!(z.value_at(0.0).unwrap(), 0.0);
    }

    #[test]
    fn integrate_identity_grid() {
        let n = 1 << 20;
        let h = 1.0 / n as f64;
        let g = GridPath::new(0.0, h, (0..=n).map(|k| k as f64 * h).collect()).unwrap();
        let z = g.integrate();
        assert!((z.values[n] - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn reverse_mirrors_jump() {
        let p = one_jump(0.3, 2.0);
        let r = p.reverse(1.0).unwrap();
        assert_eq!(r.times.len(), 1);
        assert!((r.times[0] - 0.7).abs() < 1e-15);
        assert_eq!(r.sizes, vec![2.0]);
        assert_eq!(r.horizon, Horizon::new(0.0, 1.0).unwrap());
        // X̌(s) = X(1) − X((1−s)−) evaluated directly
        let x = Path::Jump(p.clone());
        for s in [0.1, 0.5, 0.69, 0.71, 0.9, 1.0] {
            let direct = x.value_at(1.0).unwrap() - x.left_limit_at(1.0 - s).unwrap();
            assert_eq!(r.value_at(s).unwrap(), direct, "s={s}");
        }
    }

    #[test]
    fn reverse_twice_is_identity() {
        let p = JumpPath::new(Horizon::unit(), vec![0.1, 0.4, 0.75], vec![1.0, -0.5, 0.25], 0.0).unwrap();
        let rr = p.reverse(1.0).unwrap().reverse(1.0).unwrap();
        for a in [0.0, 0.05, 0.1, 0.3, 0.4, 0.6, 0.75, 0.9, 1.0] {
            assert!((rr.value_at(a).unwrap() - p.value_at(a).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn reverse_at_jump_time_absorbs_jump() {
        let p = one_jump(0.5, 2.0);
        let r = p.reverse(0.5).unwrap();
        assert_eq!(r.initial, 2.0);
        assert!(r.times.is_empty());
    }

    #[test]
    fn reverse_outside_horizon_fails() {
        assert!(Path::Jump(one_jump(0.5, 1.0)).reverse(1.5).is_err());
    }

    #[test]
    fn sampled_reverse_matches_definition() {
        let s = SampledPath::new(
            vec![0.0, 0.25, 0.5, 1.0],
            vec![0.0, 1.0, 0.5, 2.0],
            vec![0.0, 0.0, 1.5, 2.0],
        )
        .unwrap();
        let x = Path::Sampled(s);
        let r = x.reverse(0.75).unwrap();
        for s in [0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75] {
            let direct = x.value_at(0.75).unwrap() - x.left_limit_at(0.75 - s).unwrap();
            assert!((r.value_at(s).unwrap() - direct).abs() < 1e-12, "s={s}");
        }
    }

    #[test]
    fn translate_examples() {
        let p = Path::Jump(one_jump(0.7, 1.0));
        assert_eq!(p.translate(0.0).unwrap(), p);
        let Path::Jump(q) = p.translate(0.5).unwrap() else { panic!() };
        assert_eq!(q.horizon, Horizon::new(0.0, 0.5).unwrap());
        assert!((q.times[0] - 0.2).abs() < 1e-15);
        assert!(p.translate(1.0).is_err());
        assert!(p.translate(-1.0).is_err());
    }

    #[test]
    fn translate_composes() {
        let p = Path::Jump(
            JumpPath::new(Horizon::new(0.0, 4.0).unwrap(), vec![0.5, 1.5, 2.5, 3.5], vec![1.0, -2.0, 0.5, 1.0], 0.25)
                .unwrap(),
        );
        let a = p.translate(0.75).unwrap().translate(1.0).unwrap();
        let b = p.translate(1.75).unwrap();
        assert_eq!(a.horizon(), b.horizon());
        for s in [0.0, 0.2, 0.75, 0.76, 1.0, 2.0, 2.25] {
            assert_eq!(a.value_at(s).unwrap(), b.value_at(s).unwrap(), "s={s}");
        }
    }

    #[test]
    fn grid_translate_and_reverse_stay_on_grid() {
        let g = Path::Grid(GridPath::new(0.0, 0.25, vec![0.0, 1.0, 3.0, 2.0, 5.0]).unwrap());
        let Path::Grid(t) = g.translate(0.5).unwrap() else { panic!() };
        assert_eq!(t.values, vec![3.0, 2.0, 5.0]);
        let Path::Grid(r) = g.reverse(1.0).unwrap() else { panic!() };
        assert_eq!(r.values, vec![0.0, 3.0, 2.0, 4.0, 5.0]);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let p = Path::Jump(JumpPath::new(Horizon::unit(), vec![0.25, 0.5], vec![1.5, -0.1], 0.3).unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"kind\":\"jump\""));
        assert_eq!(serde_json::from_str::<Path>(&s).unwrap(), p);
        let g = Path::Grid(GridPath::new(0.0, 0.1, vec![0.1, 0.2, 0.3]).unwrap());
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Path>(&s).unwrap(), g);
        let bad = r#"{"kind":"jump","horizon":[0,1],"times":[0.5,0.2],"sizes":[1,1],"initial":0}"#;
        assert!(serde_json::from_str::<Path>(bad).is_err());
        let bad = r#"{"kind":"grid","t0":0,"h":-1,"values":[0,1]}"#;
        assert!(serde_json::from_str::<Path>(bad).is_err());
    }

    #[test]
    fn skeleton_of_jump_path() {
        let p = JumpPath::new(Horizon::unit(), vec![0.5], vec![1.0], 0.0).unwrap();
        let sk = p.skeleton();
        assert_eq!(sk.times, vec![0.0, 0.5, 1.0]);
        assert_eq!(sk.left, vec![0.0, 0.0, 1.0]);
        assert_eq!(sk.value, vec![0.0, 1.0, 1.0]);
        let last = JumpPath::new(Horizon::unit(), vec![1.0], vec![-1.0], 0.0).unwrap().skeleton();
        assert_eq!(last.times, vec![0.0, 1.0]);
        assert_eq!(last.star(1), 0.0);
    }
}
