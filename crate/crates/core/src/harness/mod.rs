//! Seeded Monte Carlo experiments with versioned reports.
//!
//! Replica `i` of a run with seed `s` draws from `RngStream::new(s, 0).split(i)`,
//! so results do not depend on thread scheduling.

pub mod config;
pub mod experiments;
pub mod report;

use std::time::Instant;

pub use config::{parse_configs, Experiment, ExperimentConfig, EXPERIMENT_IDS};
pub use report::{emit_plot_data, emit_report, Format, Report};

use crate::error::Result;
use crate::rng::RngStream;
use experiments as ex;

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let rng = RngStream::new(config.seed, 0);
    let out = match &config.experiment {
        Experiment::NegligibilityBm(p) => ex::negligibility_bm(p, rng),
        Experiment::NegligibilityIntegrated(p) => ex::negligibility_integrated(p, rng),
        Experiment::NegligibilityIto(p) => ex::negligibility_ito(p, rng),
        Experiment::BvExtremalStructure(p) => ex::bv_extremal_structure(p, rng),
        Experiment::AccumulationAtT(p) => ex::accumulation_at_t(p, rng),
        Experiment::IsolationVsDissymmetry(p) => ex::isolation_vs_dissymmetry(p, rng),
        Experiment::UniqueArgmax(p) => ex::unique_argmax(p, rng),
        Experiment::ExceedingTimes(p) => ex::exceeding_times(p, rng),
        Experiment::ConvexInclusion(p) => ex::convex_inclusion(p, rng),
        Experiment::BurgersShocks(p) => ex::burgers_shocks(p, rng),
        Experiment::ShockConvergence(p) => ex::shock_convergence(p, rng),
        Experiment::StickyTheorem(p) => ex::sticky_theorem(p, rng),
    }?;
    let mut report = Report::new(config.clone(), out.per_replica, out.summary, out.verdicts, out.plots);
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Runs configs in order; the first failure aborts the batch.
pub fn run_batch(configs: &[ExperimentConfig]) -> Result<Vec<Report>> {
    configs.iter().map(run_experiment).collect()
}
