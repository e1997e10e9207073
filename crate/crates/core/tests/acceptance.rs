//! Acceptance suite: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use extremal::harness::report::{report_json, Report};
use extremal::harness::{run_experiment, Experiment, ExperimentConfig, EXPERIMENT_IDS};
use extremal::hull::upper_hull_indices;
use extremal::path::diffusion::simulate_random_walk;
use extremal::path::levy::JumpLaw;
use extremal::stats::{mean_ci95, Interval};
use extremal::RngStream;
use rand::Rng;
use rayon::prelude::*;

const SEED: u64 = 0;

struct Line {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
    seconds: f64,
    limit: f64,
}

fn reference(id: &str) -> Report {
    run_experiment(&ExperimentConfig::new(SEED, Experiment::default_for(id).unwrap())).unwrap()
}

fn verdicts(r: &Report, names: &[&str]) -> (bool, String) {
    let picked: Vec<_> = r.verdicts.iter().filter(|v| names.is_empty() || names.iter().any(|n| v.name.starts_with(n))).collect();
    let ok = !picked.is_empty() && picked.iter().all(|v| v.passed);
    let detail = picked
        .iter()
        .map(|v| format!("{}={}", v.name, v.statistic.map_or("n/a".into(), |s| format!("{s:.4e}"))))
        .collect::<Vec<_>>()
        .join(", ");
    (ok, detail)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64())
}

fn hull_oracle() -> (bool, String) {
    let mut rng = RngStream::new(SEED, 1).rng();
    let mut agree = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=12);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let ys: Vec<f64> = xs.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        agree += (upper_hull_indices(&xs, &ys, 0.0).unwrap() == brute_upper_vertices(&xs, &ys)) as usize;
    }
    (agree == 1000, format!("{agree}/1000 agree"))
}

fn face_counts(law: &JumpLaw, n: usize, walks: u64, stream: u64) -> Interval {
    let xs: Vec<f64> = (0..n as f64 as usize + 1).map(|k| k as f64).collect();
    let counts: Vec<f64> = (0..walks)
        .into_par_iter()
        .map(|i| {
            let w = simulate_random_walk(law, n, RngStream::new(SEED, stream).split(i)).unwrap();
            (upper_hull_indices(&xs, &w.values, 0.0).unwrap().len() - 1) as f64
        })
        .collect();
    mean_ci95(&counts).unwrap()
}

fn random_walk_faces() -> (bool, String) {
    let gauss = JumpLaw::Normal { mean: 0.0, sd: 1.0 };
    let expo = JumpLaw::CenteredExponential { rate: 1.0 };
    let g = face_counts(&gauss, 256, 2000, 2);
    let e = face_counts(&expo, 256, 2000, 3);
    let mut ok = g.overlaps(&e) && g.contains(H_256) && e.contains(H_256);
    // the enumeration oracle fixes E[faces] = H_n at n ≤ 6; both laws must agree with it there too
    let mut enum_ok = true;
    let mut rng = RngStream::new(SEED, 4).rng();
    for n in 1..=6 {
        let inc: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        enum_ok &= (enumerated_face_mean(&inc) - HARMONIC[n - 1]).abs() < 1e-12;
        for (k, law) in [&gauss, &expo].into_iter().enumerate() {
            let ci = face_counts(law, n, 2000, 10 + 2 * n as u64 + k as u64);
            enum_ok &= ci.contains(HARMONIC[n - 1]);
        }
    }
    ok &= enum_ok;
    let detail = format!(
        "gaussian CI [{:.4}, {:.4}], exponential CI [{:.4}, {:.4}], H_256 = {:.4}, small-n oracle agreement = {enum_ok}",
        g.lo, g.hi, e.lo, e.hi, H_256
    );
    (ok, detail)
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut reports: BTreeMap<&str, Report> = BTreeMap::new();
    let mut run = |id: &'static str| {
        let (r, s) = timed(|| reference(id));
        reports.insert(id, r.clone());
        (r, s)
    };

    let ((ok, detail), s) = timed(hull_oracle);
    lines.push(Line { id: 1, name: "hull oracle equivalence", passed: ok, detail, seconds: s, limit: 1.0 });

    let (r, s) = run("sticky_theorem");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 2, name: "sticky-particle theorem", passed: ok, detail, seconds: s, limit: 5.0 });

    let (r, s) = run("convex_inclusion");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 3, name: "convex drift inclusion", passed: ok, detail, seconds: s, limit: 5.0 });

    let (r, s) = run("bv_extremal_structure");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 4, name: "BV extremal structure", passed: ok, detail, seconds: s, limit: 10.0 });

    let (r, s) = run("accumulation_at_T");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 5, name: "accumulation at T", passed: ok, detail, seconds: s, limit: 60.0 });

    let (r, s) = run("isolation_vs_dissymmetry");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 6, name: "isolation vs dissymmetry", passed: ok, detail, seconds: s, limit: 120.0 });

    let mut ok7 = true;
    let mut details = Vec::new();
    let mut s7 = 0.0;
    for id in ["negligibility_bm", "negligibility_integrated", "negligibility_ito"] {
        let (r, s) = run(id);
        let (ok, d) = verdicts(&r, &[]);
        ok7 &= ok;
        s7 += s;
        details.push(format!("{id}: {d}"));
    }
    lines.push(Line { id: 7, name: "negligibility", passed: ok7, detail: details.join("; "), seconds: s7, limit: 120.0 });

    let ((ok, detail), s) = timed(random_walk_faces);
    lines.push(Line { id: 8, name: "random-walk face count", passed: ok, detail, seconds: s, limit: 30.0 });

    let (r, s) = run("burgers_shocks");
    let (ok, detail) = verdicts(&r, &["max_abs_error", "min_dominance", "min_second_difference"]);
    lines.push(Line { id: 9, name: "Hopf-Cole exactness", passed: ok, detail, seconds: s, limit: 5.0 });
    let (ok, detail) = verdicts(&r, &["faces_match_share", "monotone_share"]);
    lines.push(Line { id: 10, name: "shock/Lagrangian consistency", passed: ok, detail, seconds: s, limit: 10.0 });

    let (r, s) = run("shock_convergence");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 11, name: "Hausdorff convergence", passed: ok, detail, seconds: s, limit: 120.0 });

    let (r, s) = run("unique_argmax");
    let (ok, detail) = verdicts(&r, &[]);
    lines.push(Line { id: 12, name: "unique argmax", passed: ok, detail, seconds: s, limit: 10.0 });

    let (mismatches, s) = timed(|| {
        EXPERIMENT_IDS
            .iter()
            .filter(|id| {
                let first = reports.get(**id).cloned().unwrap_or_else(|| reference(id));
                let again = reference(id);
                report_json(&again.without_clock()).unwrap() != report_json(&first.without_clock()).unwrap()
            })
            .map(|id| id.to_string())
            .collect::<Vec<_>>()
    });
    lines.push(Line {
        id: 13,
        name: "determinism",
        passed: mismatches.is_empty(),
        detail: format!("{} experiment ids re-run, mismatches: {mismatches:?}", EXPERIMENT_IDS.len()),
        seconds: s,
        limit: f64::INFINITY,
    });

    let mut all = true;
    for l in &lines {
        let in_time = l.seconds < l.limit;
        let ok = l.passed && in_time;
        all &= ok;
        let limit = if l.limit.is_finite() { format!(" < {} s", l.limit) } else { String::new() };
        println!(
            "criterion {:>2} {}: {} ({}; {:.2} s{limit}{})",
            l.id,
            l.name,
            if ok { "PASS" } else { "FAIL" },
            l.detail,
            l.seconds,
            if in_time { "" } else { ", over time budget" }
        );
    }
    assert_eq!(lines.len(), 13);
    assert!(all, "at least one acceptance criterion failed");
}
