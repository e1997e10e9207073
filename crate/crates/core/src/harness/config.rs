//! Experiment configuration. Every threshold has a default equal to the
//! acceptance value, so an empty parameter block reproduces the reference run.

use serde::{Deserialize, Serialize};

use crate::drift::DriftSpec;
use crate::error::{Error, Result};
use crate::path::diffusion::Coefficient;
use crate::path::levy::{JumpLaw, LevyComponent, LevyMeasureSpec};
use crate::path::Horizon;

pub const EXPERIMENT_IDS: [&str; 12] = [
    "negligibility_bm",
    "negligibility_integrated",
    "negligibility_ito",
    "bv_extremal_structure",
    "accumulation_at_T",
    "isolation_vs_dissymmetry",
    "unique_argmax",
    "exceeding_times",
    "convex_inclusion",
    "burgers_shocks",
    "shock_convergence",
    "sticky_theorem",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment")]
pub enum Experiment {
    #[serde(rename = "negligibility_bm")]
    NegligibilityBm(NegligibilityParams),
    #[serde(rename = "negligibility_integrated")]
    NegligibilityIntegrated(NegligibilityParams),
    #[serde(rename = "negligibility_ito")]
    NegligibilityIto(ItoParams),
    #[serde(rename = "bv_extremal_structure")]
    BvExtremalStructure(BvStructureParams),
    #[serde(rename = "accumulation_at_T")]
    AccumulationAtT(AccumulationParams),
    #[serde(rename = "isolation_vs_dissymmetry")]
    IsolationVsDissymmetry(IsolationParams),
    #[serde(rename = "unique_argmax")]
    UniqueArgmax(BvStructureParams),
    #[serde(rename = "exceeding_times")]
    ExceedingTimes(ExceedingParams),
    #[serde(rename = "convex_inclusion")]
    ConvexInclusion(ConvexParams),
    #[serde(rename = "burgers_shocks")]
    BurgersShocks(BurgersParams),
    #[serde(rename = "shock_convergence")]
    ShockConvergence(ConvergenceParams),
    #[serde(rename = "sticky_theorem")]
    StickyTheorem(StickyParams),
}

/// Compound-Poisson `Normal(0, 1)` jumps at rate 5 plus symmetric stable-like
/// jumps with `α = 1/2`.
pub fn default_bv_measure() -> LevyMeasureSpec {
    LevyMeasureSpec {
        components: vec![
            LevyComponent::CompoundPoisson { rate: 5.0, law: JumpLaw::Normal { mean: 0.0, sd: 1.0 } },
            LevyComponent::StableLike { c_plus: 1.0, c_minus: 1.0, alpha: 0.5, cap: 1.0 },
        ],
        drift: 0.0,
    }
}

pub fn symmetric_measure() -> LevyMeasureSpec {
    LevyMeasureSpec {
        components: vec![LevyComponent::StableLike { c_plus: 1.0, c_minus: 1.0, alpha: 0.5, cap: 1.0 }],
        drift: 0.0,
    }
}

/// Positive small jumps only, with large negative compound-Poisson jumps.
pub fn one_sided_measure() -> LevyMeasureSpec {
    LevyMeasureSpec {
        components: vec![
            LevyComponent::StableLike { c_plus: 1.0, c_minus: 0.0, alpha: 0.5, cap: 1.0 },
            LevyComponent::CompoundPoisson { rate: 4.0, law: JumpLaw::Uniform { lo: -1.0, hi: 0.0 } },
        ],
        drift: 0.0,
    }
}

fn unit() -> Horizon {
    Horizon::unit()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NegligibilityParams {
    pub replicas: usize,
    pub grid_sizes: Vec<usize>,
    pub horizon: Horizon,
    /// Share of replicas whose extremal fraction must decrease strictly.
    pub min_pass_fraction: f64,
}

impl Default for NegligibilityParams {
    fn default() -> Self {
        Self { replicas: 50, grid_sizes: vec![1 << 10, 1 << 14, 1 << 18], horizon: unit(), min_pass_fraction: 0.95 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ItoParams {
    #[serde(flatten)]
    pub base: NegligibilityParams,
    pub phi: Coefficient,
    pub psi: Coefficient,
}

impl Default for ItoParams {
    fn default() -> Self {
        Self {
            base: NegligibilityParams::default(),
            phi: Coefficient::Polynomial { coefficients: vec![1.0, 0.0, 1.0] },
            psi: Coefficient::Sine { amplitude: 1.0, frequency: 1.0, phase: 0.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BvStructureParams {
    pub replicas: usize,
    pub measure: LevyMeasureSpec,
    pub epsilon: f64,
    pub horizon: Horizon,
    pub min_pass_fraction: f64,
}

impl Default for BvStructureParams {
    fn default() -> Self {
        Self { replicas: 200, measure: default_bv_measure(), epsilon: 1e-3, horizon: unit(), min_pass_fraction: 1.0 }
    }
}

impl BvStructureParams {
    pub fn argmax_default() -> Self {
        Self { replicas: 500, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AccumulationParams {
    pub replicas: usize,
    pub measure: LevyMeasureSpec,
    pub epsilons: Vec<f64>,
    pub horizon: Horizon,
    pub delta: f64,
    /// Largest allowed change of the median count outside the δ-neighbourhood.
    pub max_outside_change: f64,
    pub significance: f64,
}

impl Default for AccumulationParams {
    fn default() -> Self {
        Self {
            replicas: 100,
            measure: symmetric_measure(),
            epsilons: vec![1e-2, 1e-3, 1e-4],
            horizon: unit(),
            delta: 0.05,
            max_outside_change: 1.0,
            significance: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IsolationParams {
    pub replicas: usize,
    pub one_sided: LevyMeasureSpec,
    pub symmetric: LevyMeasureSpec,
    pub epsilons: Vec<f64>,
    pub horizon: Horizon,
    /// Required share of one-sided replicas where `T` is entered by a positive jump.
    pub min_positive_entry: f64,
    /// One-sided right gaps: the finest-to-coarsest median ratio must stay above this.
    pub min_right_gap_ratio: f64,
    pub significance: f64,
    pub regularity_replicas: usize,
    pub regularity_window: f64,
}

impl Default for IsolationParams {
    fn default() -> Self {
        Self {
            replicas: 100,
            one_sided: one_sided_measure(),
            symmetric: symmetric_measure(),
            epsilons: vec![1e-2, 1e-3, 1e-4],
            horizon: unit(),
            min_positive_entry: 0.95,
            min_right_gap_ratio: 0.5,
            significance: 0.05,
            regularity_replicas: 400,
            regularity_window: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExceedingParams {
    pub replicas: usize,
    pub measure: LevyMeasureSpec,
    pub epsilon: f64,
    pub horizon: Horizon,
    pub drift: DriftSpec,
    pub mus: Vec<f64>,
    pub us: Vec<f64>,
    pub min_fraction: f64,
}

impl Default for ExceedingParams {
    fn default() -> Self {
        Self {
            replicas: 200,
            measure: default_bv_measure(),
            epsilon: 1e-3,
            horizon: unit(),
            drift: DriftSpec::ParabolicBurgers { t: 1.0 },
            mus: vec![0.5, 1.0, 2.0],
            us: vec![0.0, 0.25, 0.5],
            min_fraction: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConvexParams {
    pub replicas: usize,
    pub steps: usize,
    pub gamma_range: (f64, f64),
    pub min_pass_fraction: f64,
}

impl Default for ConvexParams {
    fn default() -> Self {
        Self { replicas: 500, steps: 256, gamma_range: (0.1, 10.0), min_pass_fraction: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BurgersParams {
    pub replicas: usize,
    pub steps: usize,
    pub ts: Vec<f64>,
    /// Points on the x-grid per unit of the skeleton spacing.
    pub x_points: usize,
    pub max_abs_error: f64,
    pub convexity_tol: f64,
}

impl Default for BurgersParams {
    fn default() -> Self {
        Self { replicas: 100, steps: 64, ts: vec![0.1, 1.0, 10.0], x_points: 513, max_abs_error: 1e-9, convexity_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConvergenceParams {
    pub replicas: usize,
    pub measure: LevyMeasureSpec,
    pub epsilon: f64,
    pub horizon: Horizon,
    pub ts: Vec<f64>,
    pub max_inversions: usize,
    pub min_pass_fraction: f64,
}

impl Default for ConvergenceParams {
    fn default() -> Self {
        Self {
            replicas: 100,
            measure: default_bv_measure(),
            epsilon: 1e-3,
            horizon: unit(),
            ts: vec![1.0, 10.0, 100.0, 1e3, 1e4],
            max_inversions: 1,
            min_pass_fraction: 0.9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StickyParams {
    pub replicas: usize,
    pub max_particles: usize,
    pub momentum_tol: f64,
    pub min_pass_fraction: f64,
}

impl Default for StickyParams {
    fn default() -> Self {
        Self { replicas: 500, max_particles: 10, momentum_tol: 1e-12, min_pass_fraction: 1.0 }
    }
}

impl Experiment {
    pub fn id(&self) -> &'static str {
        match self {
            Experiment::NegligibilityBm(_) => EXPERIMENT_IDS[0],
            Experiment::NegligibilityIntegrated(_) => EXPERIMENT_IDS[1],
            Experiment::NegligibilityIto(_) => EXPERIMENT_IDS[2],
            Experiment::BvExtremalStructure(_) => EXPERIMENT_IDS[3],
            Experiment::AccumulationAtT(_) => EXPERIMENT_IDS[4],
            Experiment::IsolationVsDissymmetry(_) => EXPERIMENT_IDS[5],
            Experiment::UniqueArgmax(_) => EXPERIMENT_IDS[6],
            Experiment::ExceedingTimes(_) => EXPERIMENT_IDS[7],
            Experiment::ConvexInclusion(_) => EXPERIMENT_IDS[8],
            Experiment::BurgersShocks(_) => EXPERIMENT_IDS[9],
            Experiment::ShockConvergence(_) => EXPERIMENT_IDS[10],
            Experiment::StickyTheorem(_) => EXPERIMENT_IDS[11],
        }
    }

    /// Reference parameters for an experiment id.
    pub fn default_for(id: &str) -> Result<Self> {
        Ok(match id {
            "negligibility_bm" => Experiment::NegligibilityBm(Default::default()),
            "negligibility_integrated" => Experiment::NegligibilityIntegrated(Default::default()),
            "negligibility_ito" => Experiment::NegligibilityIto(Default::default()),
            "bv_extremal_structure" => Experiment::BvExtremalStructure(Default::default()),
            "accumulation_at_T" => Experiment::AccumulationAtT(Default::default()),
            "isolation_vs_dissymmetry" => Experiment::IsolationVsDissymmetry(Default::default()),
            "unique_argmax" => Experiment::UniqueArgmax(BvStructureParams::argmax_default()),
            "exceeding_times" => Experiment::ExceedingTimes(Default::default()),
            "convex_inclusion" => Experiment::ConvexInclusion(Default::default()),
            "burgers_shocks" => Experiment::BurgersShocks(Default::default()),
            "shock_convergence" => Experiment::ShockConvergence(Default::default()),
            "sticky_theorem" => Experiment::StickyTheorem(Default::default()),
            other => return Err(Error::UnknownExperiment(other.to_string())),
        })
    }

    pub fn replicas(&self) -> usize {
        match self {
            Experiment::NegligibilityBm(p) | Experiment::NegligibilityIntegrated(p) => p.replicas,
            Experiment::NegligibilityIto(p) => p.base.replicas,
            Experiment::BvExtremalStructure(p) | Experiment::UniqueArgmax(p) => p.replicas,
            Experiment::AccumulationAtT(p) => p.replicas,
            Experiment::IsolationVsDissymmetry(p) => p.replicas,
            Experiment::ExceedingTimes(p) => p.replicas,
            Experiment::ConvexInclusion(p) => p.replicas,
            Experiment::BurgersShocks(p) => p.replicas,
            Experiment::ShockConvergence(p) => p.replicas,
            Experiment::StickyTheorem(p) => p.replicas,
        }
    }

    pub fn set_replicas(&mut self, n: usize) {
        match self {
            Experiment::NegligibilityBm(p) | Experiment::NegligibilityIntegrated(p) => p.replicas = n,
            Experiment::NegligibilityIto(p) => p.base.replicas = n,
            Experiment::BvExtremalStructure(p) | Experiment::UniqueArgmax(p) => p.replicas = n,
            Experiment::AccumulationAtT(p) => p.replicas = n,
            Experiment::IsolationVsDissymmetry(p) => p.replicas = n,
            Experiment::ExceedingTimes(p) => p.replicas = n,
            Experiment::ConvexInclusion(p) => p.replicas = n,
            Experiment::BurgersShocks(p) => p.replicas = n,
            Experiment::ShockConvergence(p) => p.replicas = n,
            Experiment::StickyTheorem(p) => p.replicas = n,
        }
    }
}

fn monotone(xs: &[f64], increasing: bool) -> bool {
    xs.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] })
}

impl ExperimentConfig {
    pub fn new(seed: u64, experiment: Experiment) -> Self {
        Self { seed, experiment }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::MalformedConfig(m.to_string()));
        if self.experiment.replicas() == 0 {
            return bad("replicas must be at least 1");
        }
        match &self.experiment {
            Experiment::NegligibilityBm(p) | Experiment::NegligibilityIntegrated(p) => check_grid_ladder(p),
            Experiment::NegligibilityIto(p) => check_grid_ladder(&p.base),
            Experiment::BvExtremalStructure(p) | Experiment::UniqueArgmax(p) => {
                p.measure.validate()?;
                if p.epsilon > 0.0 { Ok(()) } else { bad("epsilon must be positive") }
            }
            Experiment::AccumulationAtT(p) => {
                p.measure.validate()?;
                if p.epsilons.is_empty() || !monotone(&p.epsilons, false) || p.epsilons.iter().any(|e| *e <= 0.0) {
                    return bad("epsilons must be positive and strictly decreasing");
                }
                if p.delta > 0.0 { Ok(()) } else { bad("delta must be positive") }
            }
            Experiment::IsolationVsDissymmetry(p) => {
                p.one_sided.validate()?;
                p.symmetric.validate()?;
                if p.epsilons.len() < 2 || !monotone(&p.epsilons, false) || p.epsilons.iter().any(|e| *e <= 0.0) {
                    return bad("epsilons must be positive, strictly decreasing, at least two");
                }
                if p.regularity_replicas < 100 {
                    return bad("regularity_replicas must be at least 100");
                }
                Ok(())
            }
            Experiment::ExceedingTimes(p) => {
                p.measure.validate()?;
                p.drift.validate()?;
                if p.mus.is_empty() || p.us.is_empty() || p.mus.iter().any(|m| *m <= 0.0) {
                    return bad("mus must be positive and both grids non-empty");
                }
                Ok(())
            }
            Experiment::ConvexInclusion(p) => {
                let (lo, hi) = p.gamma_range;
                if p.steps == 0 || !(lo > 0.0 && lo <= hi) {
                    return bad("steps must be positive and gamma_range positive and ordered");
                }
                Ok(())
            }
            Experiment::BurgersShocks(p) => {
                if p.steps == 0 || p.x_points < 2 || p.ts.is_empty() || p.ts.iter().any(|t| *t <= 0.0) {
                    return bad("steps, x_points and positive times are required");
                }
                Ok(())
            }
            Experiment::ShockConvergence(p) => {
                p.measure.validate()?;
                if p.ts.is_empty() || !monotone(&p.ts, true) || p.ts[0] <= 0.0 {
                    return bad("ts must be positive and strictly increasing");
                }
                Ok(())
            }
            Experiment::StickyTheorem(p) => {
                if p.max_particles == 0 { bad("max_particles must be at least 1") } else { Ok(()) }
            }
        }
    }
}

fn check_grid_ladder(p: &NegligibilityParams) -> Result<()> {
    let g = &p.grid_sizes;
    if g.is_empty() || g.windows(2).any(|w| !(w[1] > w[0] && w[1] % w[0] == 0)) || g[0] == 0 {
        return Err(Error::MalformedConfig(
            "grid_sizes must increase, each dividing the next".into(),
        ));
    }
    Ok(())
}

/// Parses one config object or an array of them.
pub fn parse_configs(text: &str) -> Result<Vec<ExperimentConfig>> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let list = match v {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    let mut out = Vec::with_capacity(list.len());
    for item in list {
        let id = item.get("experiment").and_then(|e| e.as_str()).map(str::to_owned);
        let cfg: ExperimentConfig = serde_json::from_value(item).map_err(|e| match id {
            Some(id) if !EXPERIMENT_IDS.contains(&id.as_str()) => Error::UnknownExperiment(id),
            _ => Error::MalformedConfig(e.to_string()),
        })?;
        cfg.validate()?;
        out.push(cfg);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        for id in EXPERIMENT_IDS {
            let cfg = ExperimentConfig::new(7, Experiment::default_for(id).unwrap());
            cfg.validate().unwrap();
            let s = serde_json::to_string(&cfg).unwrap();
            assert!(s.contains(&format!("\"experiment\":\"{id}\"")));
            let back = parse_configs(&s).unwrap();
            assert_eq!(back, vec![cfg]);
            assert_eq!(back[0].experiment.id(), id);
        }
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let c = parse_configs(r#"{"experiment":"sticky_theorem","seed":3}"#).unwrap();
        assert_eq!(c[0].experiment, Experiment::StickyTheorem(StickyParams::default()));
        let c = parse_configs(r#"[{"experiment":"burgers_shocks","replicas":5},{"experiment":"unique_argmax"}]"#).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].experiment.replicas(), 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_configs(r#"{"experiment":"nope"}"#), Err(Error::UnknownExperiment(_))));
        assert!(matches!(parse_configs("{"), Err(Error::MalformedConfig(_))));
        assert!(matches!(
            parse_configs(r#"{"experiment":"sticky_theorem","replicas":0}"#),
            Err(Error::MalformedConfig(_))
        ));
        assert!(parse_configs(r#"{"experiment":"accumulation_at_T","epsilons":[0.001,0.01]}"#).is_err());
    }
}
