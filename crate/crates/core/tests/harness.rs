//! Experiment runner: determinism, emitted files and config handling.

use std::fs;

use extremal::harness::report::{parse_plot_csv, parse_report, report_json};
use extremal::harness::{emit_plot_data, emit_report, parse_configs, run_batch, run_experiment, Experiment, ExperimentConfig, Format, EXPERIMENT_IDS};
use extremal::Error;

fn small(id: &str, seed: u64) -> ExperimentConfig {
    let mut e = Experiment::default_for(id).unwrap();
    e.set_replicas(8);
    ExperimentConfig::new(seed, e)
}

#[test]
fn small_runs_are_reproducible() {
    for id in EXPERIMENT_IDS {
        if id.starts_with("negligibility") {
            continue;
        }
        let a = run_experiment(&small(id, 9)).unwrap();
        let b = run_experiment(&small(id, 9)).unwrap();
        assert_eq!(report_json(&a.without_clock()).unwrap(), report_json(&b.without_clock()).unwrap(), "{id}");
        assert_eq!(a.per_replica.len(), 8);
        assert_eq!(a.experiment, id);
    }
}

#[test]
fn seeds_change_results() {
    let a = run_experiment(&small("unique_argmax", 1)).unwrap();
    let b = run_experiment(&small("unique_argmax", 2)).unwrap();
    assert_ne!(a.per_replica, b.per_replica);
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_experiment(&small("shock_convergence", 4)).unwrap();
    let json = emit_report(&r, Format::Json, dir.path()).unwrap();
    assert_eq!(parse_report(&fs::read_to_string(&json[0]).unwrap()).unwrap(), r);
    let csv = emit_report(&r, Format::Csv, dir.path()).unwrap();
    let table = fs::read_to_string(&csv[0]).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next().unwrap(), "schema_version,replica,distances,final_distance,inversions,non_increasing");
    assert_eq!(lines.count(), 8);
    let plots = emit_plot_data(&r, dir.path()).unwrap();
    assert_eq!(plots.len(), r.plots.len());
    for (p, s) in plots.iter().zip(&r.plots) {
        assert_eq!(parse_plot_csv(&fs::read_to_string(p).unwrap()).unwrap(), s.points);
    }
}

#[test]
fn batch_configs() {
    let cfgs = parse_configs(
        r#"[{"experiment":"sticky_theorem","seed":1,"replicas":5},
            {"experiment":"convex_inclusion","seed":2,"replicas":5,"steps":32}]"#,
    )
    .unwrap();
    let reports = run_batch(&cfgs).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.passed));
    assert_eq!(reports[1].config, cfgs[1]);
}

#[test]
fn failing_threshold_is_reported() {
    let cfg = parse_configs(r#"{"experiment":"shock_convergence","seed":3,"replicas":10,"max_inversions":0,"min_pass_fraction":1.01}"#)
        .unwrap()
        .remove(0);
    let r = run_experiment(&cfg).unwrap();
    assert!(!r.passed);
    assert!(!r.verdicts[0].passed);
}

#[test]
fn config_errors() {
    assert!(matches!(parse_configs(r#"{"experiment":"bogus"}"#), Err(Error::UnknownExperiment(_))));
    assert!(matches!(parse_configs(r#"{"experiment":"convex_inclusion","gamma_range":[2,1]}"#), Err(Error::MalformedConfig(_))));
    assert!(matches!(parse_configs(r#"{"experiment":"shock_convergence","ts":[10,1]}"#), Err(Error::MalformedConfig(_))));
    assert!(matches!(parse_configs(r#"{"seed":1}"#), Err(Error::MalformedConfig(_))));
}
