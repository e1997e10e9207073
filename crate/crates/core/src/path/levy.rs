//! Bounded-variation Lévy measures and their truncated simulation.
//!
//! Stable-like components are drawn in decreasing order of jump magnitude
//! from a unit-rate arrival sequence pushed through the inverse tail of the
//! measure. Lowering the cutoff only appends smaller jumps, so two
//! truncations of the same stream are nested.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Exp1, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Horizon, JumpPath};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Law of a single jump of a compound-Poisson component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum JumpLaw {
    PointMass { at: f64 },
    Uniform { lo: f64, hi: f64 },
    Normal { mean: f64, sd: f64 },
    /// `Exp(rate)`, mirrored to the negative half-line when `negative`.
    Exponential {
        rate: f64,
        #[serde(default)]
        negative: bool,
    },
    /// `Exp(rate) − 1/rate`.
    CenteredExponential { rate: f64 },
    Laplace { scale: f64 },
}

impl JumpLaw {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            JumpLaw::PointMass { at } => at.is_finite(),
            JumpLaw::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
            JumpLaw::Normal { mean, sd } => mean.is_finite() && sd > 0.0 && sd.is_finite(),
            JumpLaw::Exponential { rate, .. } | JumpLaw::CenteredExponential { rate } => {
                rate > 0.0 && rate.is_finite()
            }
            JumpLaw::Laplace { scale } => scale > 0.0 && scale.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("jump law {self:?} has invalid parameters")))
        }
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, JumpLaw::PointMass { .. })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            JumpLaw::PointMass { at } => at,
            JumpLaw::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            JumpLaw::Normal { mean, sd } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + sd * z
            }
            JumpLaw::Exponential { rate, negative } => {
                let e = Exp::new(rate).expect("validated rate").sample(rng);
                if negative {
                    -e
                } else {
                    e
                }
            }
            JumpLaw::CenteredExponential { rate } => {
                Exp::new(rate).expect("validated rate").sample(rng) - 1.0 / rate
            }
            JumpLaw::Laplace { scale } => {
                let e: f64 = Exp1.sample(rng);
                if rng.random::<bool>() {
                    scale * e
                } else {
                    -scale * e
                }
            }
        }
    }

    fn density(&self, x: f64) -> f64 {
        match *self {
            JumpLaw::PointMass { .. } => 0.0,
            JumpLaw::Uniform { lo, hi } => {
                if x >= lo && x <= hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            JumpLaw::Normal { mean, sd } => {
                let z = (x - mean) / sd;
                (-0.5 * z * z).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt())
            }
            JumpLaw::Exponential { rate, negative } => {
                let y = if negative { -x } else { x };
                if y >= 0.0 {
                    rate * (-rate * y).exp()
                } else {
                    0.0
                }
            }
            JumpLaw::CenteredExponential { rate } => {
                let y = x + 1.0 / rate;
                if y >= 0.0 {
                    rate * (-rate * y).exp()
                } else {
                    0.0
                }
            }
            JumpLaw::Laplace { scale } => (-x.abs() / scale).exp() / (2.0 * scale),
        }
    }

    /// Interval outside of which the density vanishes or is below `e^{-40}`.
    fn support(&self) -> (f64, f64) {
        match *self {
            JumpLaw::PointMass { at } => (at, at),
            JumpLaw::Uniform { lo, hi } => (lo, hi),
            JumpLaw::Normal { mean, sd } => (mean - 12.0 * sd, mean + 12.0 * sd),
            JumpLaw::Exponential { rate, negative: false } => (0.0, 40.0 / rate),
            JumpLaw::Exponential { rate, negative: true } => (-40.0 / rate, 0.0),
            JumpLaw::CenteredExponential { rate } => (-1.0 / rate, 39.0 / rate),
            JumpLaw::Laplace { scale } => (-40.0 * scale, 40.0 * scale),
        }
    }

    /// `E[g(X); lo < X < hi]` for `g` smooth away from `0` and `±1`.
    fn partial_expectation(&self, lo: f64, hi: f64, g: impl Fn(f64) -> f64) -> f64 {
        if let JumpLaw::PointMass { at } = *self {
            return if at > lo && at < hi { g(at) } else { 0.0 };
        }
        let (s0, s1) = self.support();
        let a = lo.max(s0);
        let b = hi.min(s1);
        if a >= b {
            return 0.0;
        }
        let f = |x: f64| g(x) * self.density(x);
        let mut cuts = vec![a];
        cuts.extend([-1.0, 0.0, 1.0].into_iter().filter(|&c| c > a && c < b));
        cuts.push(b);
        cuts.windows(2).map(|w| simpson(&f, w[0], w[1])).sum()
    }
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const PANELS: usize = 4096;
    let h = (b - a) / PANELS as f64;
    let mut acc = f(a) + f(b);
    for i in 1..PANELS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

fn default_cap() -> f64 {
    1.0
}

/// One additive piece of a Lévy measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LevyComponent {
    /// Finite measure `rate · law`.
    CompoundPoisson { rate: f64, law: JumpLaw },
    /// `c₊ x^{-1-α}` on `(0, R]` plus `c₋ |x|^{-1-α}` on `[-R, 0)`.
    StableLike {
        c_plus: f64,
        c_minus: f64,
        alpha: f64,
        #[serde(default = "default_cap")]
        cap: f64,
    },
    /// Finite atomic measure with the given masses.
    UserTable { sizes: Vec<f64>, masses: Vec<f64> },
}

impl LevyComponent {
    fn validate(&self) -> Result<()> {
        match self {
            LevyComponent::CompoundPoisson { rate, law } => {
                if !(*rate >= 0.0 && rate.is_finite()) {
                    return Err(Error::InvalidSpec(format!("rate {rate} must be non-negative")));
                }
                law.validate()
            }
            LevyComponent::StableLike { c_plus, c_minus, alpha, cap } => {
                if !(*c_plus >= 0.0 && *c_minus >= 0.0 && c_plus + c_minus > 0.0)
                    || !(c_plus + c_minus).is_finite()
                {
                    return Err(Error::InvalidSpec(format!(
                        "coefficients c+={c_plus}, c-={c_minus} must be non-negative with a positive sum"
                    )));
                }
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::InvalidSpec(format!(
                        "index {alpha} outside (0, 1) gives unbounded variation"
                    )));
                }
                if !(*cap > 0.0 && cap.is_finite()) {
                    return Err(Error::InvalidSpec(format!("support cap {cap} must be positive")));
                }
                Ok(())
            }
            LevyComponent::UserTable { sizes, masses } => {
                if sizes.len() != masses.len() {
                    return Err(Error::InvalidSpec("table sizes and masses differ in length".into()));
                }
                if sizes.iter().any(|s| !s.is_finite() || *s == 0.0)
                    || masses.iter().any(|m| !(*m >= 0.0 && m.is_finite()))
                {
                    return Err(Error::InvalidSpec(
                        "table needs finite non-zero sizes and non-negative masses".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// `∫ (1 ∧ |x|) ν(dx)` for this component.
    pub fn variation_integral(&self) -> f64 {
        match self {
            LevyComponent::CompoundPoisson { rate, law } => {
                rate * law.partial_expectation(f64::NEG_INFINITY, f64::INFINITY, |x| x.abs().min(1.0))
            }
            LevyComponent::StableLike { c_plus, c_minus, alpha, cap } => {
                let c = c_plus + c_minus;
                if *cap <= 1.0 {
                    c * cap.powf(1.0 - alpha) / (1.0 - alpha)
                } else {
                    c / (1.0 - alpha) + c * (1.0 - cap.powf(-alpha)) / alpha
                }
            }
            LevyComponent::UserTable { sizes, masses } => {
                sizes.iter().zip(masses).map(|(s, m)| m * s.abs().min(1.0)).sum()
            }
        }
    }

    /// `∫_{|x|<ε} |x| ν(dx)`.
    pub fn small_jump_variation(&self, eps: f64) -> f64 {
        match self {
            LevyComponent::CompoundPoisson { rate, law } => {
                rate * law.partial_expectation(-eps, eps, f64::abs)
            }
            LevyComponent::StableLike { c_plus, c_minus, alpha, cap } => {
                let m = eps.min(*cap);
                (c_plus + c_minus) * m.powf(1.0 - alpha) / (1.0 - alpha)
            }
            LevyComponent::UserTable { sizes, masses } => sizes
                .iter()
                .zip(masses)
                .filter(|(s, _)| s.abs() < eps)
                .map(|(s, m)| m * s.abs())
                .sum(),
        }
    }

    fn is_finite_measure(&self) -> bool {
        !matches!(self, LevyComponent::StableLike { .. })
    }

    /// All jumps of magnitude at least `eps` (every jump for finite components).
    fn simulate(&self, eps: f64, horizon: Horizon, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
        let len = horizon.length();
        let time = |rng: &mut ChaCha8Rng| horizon.t1 - len * rng.random::<f64>();
        let mut out = Vec::new();
        match self {
            LevyComponent::CompoundPoisson { rate, law } => {
                let n = poisson(rate * len, rng);
                for _ in 0..n {
                    let t = time(rng);
                    let x = law.sample(rng);
                    out.push((t, x));
                }
            }
            LevyComponent::UserTable { sizes, masses } => {
                let total: f64 = masses.iter().sum();
                let n = poisson(total * len, rng);
                for _ in 0..n {
                    let t = time(rng);
                    let mut u = rng.random::<f64>() * total;
                    let mut pick = sizes.len() - 1;
                    for (i, m) in masses.iter().enumerate() {
                        if u < *m {
                            pick = i;
                            break;
                        }
                        u -= m;
                    }
                    out.push((t, sizes[pick]));
                }
            }
            LevyComponent::StableLike { c_plus, c_minus, alpha, cap } => {
                let c = c_plus + c_minus;
                let floor = cap.powf(-alpha);
                let stop = len * c * (eps.powf(-alpha) - floor) / alpha;
                let mut gamma = 0.0;
                loop {
                    let e: f64 = Exp1.sample(rng);
                    gamma += e;
                    if gamma > stop {
                        break;
                    }
                    let mag = (alpha * gamma / (len * c) + floor).powf(-1.0 / alpha);
                    let positive = rng.random::<f64>() * c < *c_plus;
                    let t = time(rng);
                    out.push((t, if positive { mag } else { -mag }));
                }
            }
        }
        out.retain(|&(_, x)| x.abs() >= eps);
        out
    }
}

fn poisson(lambda: f64, rng: &mut ChaCha8Rng) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let n: f64 = Poisson::new(lambda).expect("finite positive intensity").sample(rng);
    n as u64
}

/// Sum of components plus a linear drift `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyMeasureSpec {
    pub components: Vec<LevyComponent>,
    #[serde(default)]
    pub drift: f64,
}

/// Truncated realization and the expected variation it leaves out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedPath {
    pub path: JumpPath,
    /// `length · ∫_{|x|<ε} |x| ν(dx)`.
    pub bias_bound: f64,
}

impl LevyMeasureSpec {
    pub fn new(components: Vec<LevyComponent>) -> Result<Self> {
        let s = Self { components, drift: 0.0 };
        s.validate()?;
        Ok(s)
    }

    pub fn compound_poisson(rate: f64, law: JumpLaw) -> Result<Self> {
        Self::new(vec![LevyComponent::CompoundPoisson { rate, law }])
    }

    pub fn stable_like(c_plus: f64, c_minus: f64, alpha: f64) -> Result<Self> {
        Self::new(vec![LevyComponent::StableLike { c_plus, c_minus, alpha, cap: 1.0 }])
    }

    pub fn with_component(mut self, c: LevyComponent) -> Result<Self> {
        self.components.push(c);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidSpec("Lévy measure has no components".into()));
        }
        if !self.drift.is_finite() {
            return Err(Error::InvalidSpec("drift must be finite".into()));
        }
        for c in &self.components {
            c.validate()?;
        }
        let v = self.variation_integral();
        if !v.is_finite() {
            return Err(Error::InvalidSpec(format!("∫(1∧|x|)ν(dx) = {v} is not finite")));
        }
        Ok(())
    }

    pub fn variation_integral(&self) -> f64 {
        self.components.iter().map(LevyComponent::variation_integral).sum()
    }

    pub fn small_jump_variation(&self, eps: f64) -> f64 {
        self.components.iter().map(|c| c.small_jump_variation(eps)).sum()
    }

    pub fn is_compound_poisson(&self) -> bool {
        self.components.iter().all(LevyComponent::is_finite_measure)
    }

    /// True when no component can produce a negative jump.
    pub fn is_positive_only(&self) -> bool {
        self.components.iter().all(|c| match c {
            LevyComponent::CompoundPoisson { law, rate } => {
                *rate == 0.0
                    || match *law {
                        JumpLaw::PointMass { at } => at > 0.0,
                        JumpLaw::Uniform { lo, .. } => lo >= 0.0,
                        JumpLaw::Exponential { negative, .. } => !negative,
                        _ => false,
                    }
            }
            LevyComponent::StableLike { c_minus, .. } => *c_minus == 0.0,
            LevyComponent::UserTable { sizes, masses } => {
                sizes.iter().zip(masses).all(|(s, m)| *s > 0.0 || *m == 0.0)
            }
        })
    }

    pub fn is_continuous_law(&self) -> bool {
        self.components.iter().all(|c| match c {
            LevyComponent::CompoundPoisson { law, .. } => law.is_continuous(),
            LevyComponent::StableLike { .. } => true,
            LevyComponent::UserTable { .. } => false,
        })
    }

    fn realize(&self, eps: f64, horizon: Horizon, stream: RngStream) -> Result<JumpPath> {
        let mut jumps = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let mut rng = stream.substream(k as u32);
            jumps.extend(c.simulate(eps, horizon, &mut rng));
        }
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut times: Vec<f64> = Vec::with_capacity(jumps.len());
        let mut sizes: Vec<f64> = Vec::with_capacity(jumps.len());
        for (t, x) in jumps {
            if times.last() == Some(&t) {
                *sizes.last_mut().unwrap() += x;
            } else {
                times.push(t);
                sizes.push(x);
            }
        }
        let keep: Vec<bool> = sizes.iter().map(|&x| x != 0.0).collect();
        let times = times.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(t, _)| t).collect();
        let sizes = sizes.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(x, _)| x).collect();
        JumpPath::with_drift(horizon, times, sizes, 0.0, self.drift)
    }
}

/// Realization of a finite Lévy measure (every jump is kept).
pub fn simulate_compound_poisson(
    spec: &LevyMeasureSpec,
    horizon: Horizon,
    rng: RngStream,
) -> Result<JumpPath> {
    spec.validate()?;
    if !spec.is_compound_poisson() {
        return Err(Error::InvalidSpec("measure has infinite mass; use a truncation".into()));
    }
    spec.realize(0.0, horizon, rng)
}

/// Realization of `ν` restricted to `{|x| ≥ ε}`.
///
/// The returned `bias_bound` is the expected total variation of the discarded
/// jumps, `length · ∫_{|x|<ε} |x| ν(dx)`: closed form for stable-like pieces,
/// exact sums for atoms and Simpson quadrature for continuous jump laws.
pub fn simulate_bv_levy(
    spec: &LevyMeasureSpec,
    eps: f64,
    horizon: Horizon,
    rng: RngStream,
) -> Result<TruncatedPath> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("truncation {eps} must be positive")));
    }
    spec.validate()?;
    let path = spec.realize(eps, horizon, rng)?;
    Ok(TruncatedPath { path, bias_bound: horizon.length() * spec.small_jump_variation(eps) })
}
