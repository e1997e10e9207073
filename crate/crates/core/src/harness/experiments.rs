//! One function per experiment id. Each returns per-replica records, summary
//! values, verdicts against the configured thresholds and plot series.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::config::*;
use super::report::{Comparison, PlotSeries, Record, RecordBuilder, Verdict};
use crate::burgers::{drifted_potential, hopf_cole_potential, inverse_lagrangian, shock_convergence_experiment, shock_intervals, PotentialField};
use crate::drift::convex::convex_drift_inclusion_check;
use crate::drift::exceeding::exceeding_time;
use crate::drift::{add_drift, DriftSpec};
use crate::error::{Error, Result};
use crate::hull::extremal::{extremal_superior_times, sup_achievers, sup_components, ExtremalSet};
use crate::path::diffusion::{simulate_brownian, simulate_ito};
use crate::path::levy::{simulate_bv_levy, LevyMeasureSpec};
use crate::path::regularity::estimate_half_line_regularity;
use crate::path::{Grid, GridPath, Horizon, Path};
use crate::rng::RngStream;
use crate::stats::{median, sign_test_p};
use crate::sticky::oracle::verify_discrete_theorem;

pub struct Outcome {
    pub per_replica: Vec<Record>,
    pub summary: Record,
    pub verdicts: Vec<Verdict>,
    pub plots: Vec<PlotSeries>,
}

fn replicas<T: Send>(n: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..n).into_par_iter().map(f).collect()
}

fn fraction(flags: impl IntoIterator<Item = bool>) -> Option<f64> {
    let (mut k, mut n) = (0usize, 0usize);
    for b in flags {
        n += 1;
        k += b as usize;
    }
    (n > 0).then(|| k as f64 / n as f64)
}

fn flag(r: &Record, key: &str) -> bool {
    matches!(r.get(key), Some(super::report::Field::Flag(true)))
}

fn num(r: &Record, key: &str) -> Option<f64> {
    r.get(key).and_then(|f| f.as_f64())
}

fn column(rs: &[Record], key: &str) -> Vec<f64> {
    rs.iter().filter_map(|r| num(r, key)).collect()
}

fn bv_path(spec: &LevyMeasureSpec, eps: f64, horizon: Horizon, rng: RngStream) -> Result<Path> {
    Ok(Path::Jump(simulate_bv_levy(spec, eps, horizon, rng)?.path))
}

// ---------------------------------------------------------------- negligibility

#[derive(Clone, Copy)]
enum Continuous {
    Brownian,
    Integrated,
}

fn subsample(fine: &GridPath, n: usize) -> Result<GridPath> {
    let stride = fine.steps() / n;
    let values = fine.values.iter().step_by(stride).copied().collect();
    GridPath::new(fine.t0, fine.h * stride as f64, values)
}

fn negligibility(p: &NegligibilityParams, base: RngStream, sim: impl Fn(Grid, RngStream) -> Result<GridPath> + Sync) -> Result<Outcome> {
    let finest = *p.grid_sizes.last().unwrap();
    let grid = Grid::over(p.horizon, finest)?;
    let per_replica = replicas(p.replicas, |i| {
        let fine = sim(grid, base.split(i as u64))?;
        let mut r = RecordBuilder::new();
        let mut fr = Vec::with_capacity(p.grid_sizes.len());
        for (k, &n) in p.grid_sizes.iter().enumerate() {
            let path = Path::Grid(subsample(&fine, n)?);
            let e = extremal_superior_times(&path);
            let f = e.len() as f64 / (n + 1) as f64;
            r.set(format!("vertices_{k}"), e.len());
            r.set(format!("fraction_{k}"), f);
            fr.push(f);
        }
        r.set("strictly_decreasing", fr.windows(2).all(|w| w[1] < w[0]));
        Ok(r.build())
    })?;
    let pass = fraction(per_replica.iter().map(|r| flag(r, "strictly_decreasing")));
    let plot = p
        .grid_sizes
        .iter()
        .enumerate()
        .filter_map(|(k, &n)| Some((n as f64, median(&column(&per_replica, &format!("fraction_{k}")))?)))
        .collect();
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts: vec![Verdict::new("strictly_decreasing_fraction", pass, Comparison::AtLeast, p.min_pass_fraction)],
        plots: vec![PlotSeries::new("extremal_fraction", "grid_size", "median_fraction", plot)],
    })
}

fn continuous(kind: Continuous) -> impl Fn(Grid, RngStream) -> Result<GridPath> + Sync {
    move |g, rng| {
        let b = simulate_brownian(g, rng);
        Ok(match kind {
            Continuous::Brownian => b,
            Continuous::Integrated => b.integrate(),
        })
    }
}

pub fn negligibility_bm(p: &NegligibilityParams, rng: RngStream) -> Result<Outcome> {
    negligibility(p, rng, continuous(Continuous::Brownian))
}

pub fn negligibility_integrated(p: &NegligibilityParams, rng: RngStream) -> Result<Outcome> {
    negligibility(p, rng, continuous(Continuous::Integrated))
}

pub fn negligibility_ito(p: &ItoParams, rng: RngStream) -> Result<Outcome> {
    let (phi, psi) = (p.phi.clone(), p.psi.clone());
    negligibility(&p.base, rng, move |g, r| simulate_ito(|t, x| phi.eval(t, x), |t, x| psi.eval(t, x), g, r))
}

// ---------------------------------------------------------------- jump structure

pub fn bv_extremal_structure(p: &BvStructureParams, base: RngStream) -> Result<Outcome> {
    let per_replica = replicas(p.replicas, |i| {
        let path = bv_path(&p.measure, p.epsilon, p.horizon, base.split(i as u64))?;
        let e = extremal_superior_times(&path);
        let t = e.entries[e.argmax().expect("T is a vertex")].0;
        let others: Vec<_> = e.interior().iter().filter(|(_, f)| !f.is_t).collect();
        let positive = others.iter().filter(|(_, f)| f.jump > 0.0).count();
        let consistent = others.iter().filter(|(a, f)| if *a < t { f.jump > 0.0 } else { f.jump < 0.0 }).count();
        let jumps = others.iter().filter(|(_, f)| f.is_jump).count();
        Ok(RecordBuilder::new()
            .with("extremal_times", e.len())
            .with("checked", others.len())
            .with("jump_times", jumps)
            .with("positive_jump_times", positive)
            .with("side_consistent_jumps", consistent)
            .with("all_jump_times", jumps == others.len())
            .with("all_side_consistent", consistent == others.len())
            .build())
    })?;
    let checked: f64 = column(&per_replica, "checked").iter().sum();
    let positive: f64 = column(&per_replica, "positive_jump_times").iter().sum();
    let summary = RecordBuilder::new()
        .with("checked_times", checked as usize)
        .with("positive_jump_share", (checked > 0.0).then(|| positive / checked))
        .build();
    let all_jumps = fraction(per_replica.iter().map(|r| flag(r, "all_jump_times")));
    let consistent = fraction(per_replica.iter().map(|r| flag(r, "all_side_consistent")));
    let hist = histogram(&column(&per_replica, "checked"));
    Ok(Outcome {
        per_replica,
        summary,
        verdicts: vec![
            Verdict::new("replicas_all_jump_times", all_jumps, Comparison::AtLeast, p.min_pass_fraction),
            Verdict::new("replicas_all_side_consistent", consistent, Comparison::AtLeast, p.min_pass_fraction),
        ],
        plots: vec![PlotSeries::new("checked_times_histogram", "count", "replicas", hist)],
    })
}

fn histogram(xs: &[f64]) -> Vec<(f64, f64)> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, f64)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 += 1.0,
            _ => out.push((x, 1.0)),
        }
    }
    out
}

fn sign_test(pairs: impl Iterator<Item = (f64, f64)>, greater: bool) -> Option<f64> {
    let (mut succ, mut trials) = (0, 0);
    for (a, b) in pairs {
        if a != b {
            trials += 1;
            succ += ((b > a) == greater) as usize;
        }
    }
    (trials > 0).then(|| sign_test_p(succ, trials))
}

pub fn accumulation_at_t(p: &AccumulationParams, base: RngStream) -> Result<Outcome> {
    let per_replica = replicas(p.replicas, |i| {
        let rng = base.split(i as u64);
        let mut r = RecordBuilder::new();
        for (k, &eps) in p.epsilons.iter().enumerate() {
            let e = extremal_superior_times(&bv_path(&p.measure, eps, p.horizon, rng)?);
            let t = e.entries[e.argmax().expect("T is a vertex")].0;
            let inside = e.times().iter().filter(|&&a| a != t && (a - t).abs() <= p.delta).count();
            r.set(format!("inside_{k}"), inside);
            r.set(format!("outside_{k}"), e.len() - 1 - inside);
            r.set(format!("T_{k}"), t);
        }
        Ok(r.build())
    })?;
    let med = |key: String| median(&column(&per_replica, &key));
    let mut verdicts = Vec::new();
    let mut plot = Vec::new();
    for k in 0..p.epsilons.len() {
        if let Some(m) = med(format!("inside_{k}")) {
            plot.push((p.epsilons[k], m));
        }
        if k + 1 == p.epsilons.len() {
            break;
        }
        let (a, b) = (format!("inside_{k}"), format!("inside_{}", k + 1));
        let diff = med(b.clone()).zip(med(a.clone())).map(|(y, x)| y - x);
        verdicts.push(Verdict::new(&format!("median_inside_increase_{k}"), diff, Comparison::Above, 0.0));
        let (oa, ob) = (format!("outside_{k}"), format!("outside_{}", k + 1));
        let change = med(ob).zip(med(oa)).map(|(y, x)| (y - x).abs());
        verdicts.push(Verdict::new(&format!("median_outside_change_{k}"), change, Comparison::AtMost, p.max_outside_change));
        let pv = sign_test(per_replica.iter().filter_map(|r| Some((num(r, &a)?, num(r, &b)?))), true);
        verdicts.push(Verdict::new(&format!("inside_sign_test_p_{k}"), pv, Comparison::Below, p.significance));
    }
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts,
        plots: vec![PlotSeries::new("median_inside_count", "epsilon", "median_count", plot)],
    })
}

/// Gaps at the sup plateau `[T_entry, T_exit]` of a truncated path.
struct Gaps {
    left: Option<f64>,
    right: Option<f64>,
    entry_positive: bool,
    plateau: f64,
}

fn gaps_at_t(path: &Path) -> Gaps {
    let e: ExtremalSet = extremal_superior_times(path);
    let ach = sup_achievers(path);
    let exit = e.argmax().expect("T is a vertex");
    let entry = e.position(ach.first).expect("first achiever is a vertex");
    let ts = e.times();
    Gaps {
        left: (entry > 0).then(|| ts[entry] - ts[entry - 1]),
        right: (exit + 1 < ts.len()).then(|| ts[exit + 1] - ts[exit]),
        entry_positive: e.entries[entry].1.jump > 0.0,
        plateau: ach.last - ach.first,
    }
}

pub fn isolation_vs_dissymmetry(p: &IsolationParams, base: RngStream) -> Result<Outcome> {
    let specs = [("one_sided", &p.one_sided), ("symmetric", &p.symmetric)];
    let per_replica = replicas(p.replicas, |i| {
        let mut r = RecordBuilder::new();
        for (j, (name, spec)) in specs.iter().enumerate() {
            let rng = base.split(i as u64).child(j as u64);
            for (k, &eps) in p.epsilons.iter().enumerate() {
                let g = gaps_at_t(&bv_path(spec, eps, p.horizon, rng)?);
                r.set(format!("{name}_left_gap_{k}"), g.left);
                r.set(format!("{name}_right_gap_{k}"), g.right);
                r.set(format!("{name}_entry_positive_{k}"), g.entry_positive);
                r.set(format!("{name}_plateau_{k}"), g.plateau);
            }
        }
        Ok(r.build())
    })?;
    let last = p.epsilons.len() - 1;
    let pair = |name: &str, side: &str| -> Vec<(f64, f64)> {
        per_replica
            .iter()
            .filter_map(|r| Some((num(r, &format!("{name}_{side}_gap_0"))?, num(r, &format!("{name}_{side}_gap_{last}"))?)))
            .collect()
    };
    let positive_entry = fraction(per_replica.iter().map(|r| flag(r, &format!("one_sided_entry_positive_{last}"))));
    let ratios: Vec<f64> = pair("one_sided", "right").into_iter().map(|(a, b)| b / a).collect();
    let verdicts = vec![
        Verdict::new("one_sided_positive_entry", positive_entry, Comparison::AtLeast, p.min_positive_entry),
        Verdict::new("one_sided_right_gap_median_ratio", median(&ratios), Comparison::AtLeast, p.min_right_gap_ratio),
        Verdict::new("symmetric_left_gap_shrink_p", sign_test(pair("symmetric", "left").into_iter(), false), Comparison::Below, p.significance),
        Verdict::new("symmetric_right_gap_shrink_p", sign_test(pair("symmetric", "right").into_iter(), false), Comparison::Below, p.significance),
    ];
    let mut summary = RecordBuilder::new()
        .with("one_sided_right_gap_shrink_p", sign_test(pair("one_sided", "right").into_iter(), false))
        .with("one_sided_left_gap_shrink_p", sign_test(pair("one_sided", "left").into_iter(), false));
    for (j, (name, spec)) in specs.iter().enumerate() {
        let est = estimate_half_line_regularity(spec, &p.epsilons, p.regularity_replicas, p.regularity_window, base.child(1 << 15).child(j as u64))?;
        let v = serde_json::to_value(est.verdict)?;
        summary.set(format!("{name}_regularity"), v.as_str().unwrap_or_default());
        summary.set(format!("{name}_p_positive"), est.ladder.last().map(|l| l.p_positive));
    }
    let mut plots = Vec::new();
    for (name, _) in specs {
        for side in ["left", "right"] {
            let pts = (0..p.epsilons.len())
                .filter_map(|k| Some((p.epsilons[k], median(&column(&per_replica, &format!("{name}_{side}_gap_{k}")))?)))
                .collect();
            plots.push(PlotSeries::new(&format!("{name}_{side}_gap"), "epsilon", "median_gap", pts));
        }
    }
    Ok(Outcome { per_replica, summary: summary.build(), verdicts, plots })
}

pub fn unique_argmax(p: &BvStructureParams, base: RngStream) -> Result<Outcome> {
    let per_replica = replicas(p.replicas, |i| {
        let path = bv_path(&p.measure, p.epsilon, p.horizon, base.split(i as u64))?;
        let comps = sup_components(&path);
        let a = sup_achievers(&path);
        Ok(RecordBuilder::new()
            .with("first", comps[0].0)
            .with("last", comps[comps.len() - 1].1)
            .with("components", comps.len())
            .with("unique", comps.len() == 1)
            .with("first_node_equals_last_node", a.first == a.last)
            .build())
    })?;
    let unique = fraction(per_replica.iter().map(|r| flag(r, "unique")));
    let literal = fraction(per_replica.iter().map(|r| flag(r, "first_node_equals_last_node")));
    let hist = histogram(&column(&per_replica, "components"));
    Ok(Outcome {
        per_replica,
        summary: RecordBuilder::new().with("first_node_equals_last_node_share", literal).build(),
        verdicts: vec![Verdict::new("unique_argmax_share", unique, Comparison::AtLeast, p.min_pass_fraction)],
        plots: vec![PlotSeries::new("components_histogram", "components", "replicas", hist)],
    })
}

// ---------------------------------------------------------------- drift

pub fn exceeding_times(p: &ExceedingParams, base: RngStream) -> Result<Outcome> {
    let cells: Vec<(f64, f64)> = p.mus.iter().flat_map(|&m| p.us.iter().map(move |&u| (m, u))).collect();
    let per_replica = replicas(p.replicas, |i| {
        let x = bv_path(&p.measure, p.epsilon, p.horizon, base.split(i as u64))?;
        let y = add_drift(&x, &p.drift)?;
        let sk = y.skeleton();
        let (mut finite, mut positive) = (0usize, 0usize);
        for &(mu, u) in &cells {
            if let Some(s) = exceeding_time(&y, &p.drift, mu, u)? {
                finite += 1;
                let k = sk.index_of(s).ok_or_else(|| Error::ContractViolation(format!("{s} is not a node")))?;
                positive += (sk.jump(k) > 0.0) as usize;
            }
        }
        Ok(RecordBuilder::new()
            .with("finite", finite)
            .with("at_positive_jump", positive)
            .with("all_at_positive_jumps", positive == finite)
            .build())
    })?;
    let finite: f64 = column(&per_replica, "finite").iter().sum();
    let positive: f64 = column(&per_replica, "at_positive_jump").iter().sum();
    let share = (finite > 0.0).then(|| positive / finite);
    Ok(Outcome {
        per_replica,
        summary: RecordBuilder::new().with("finite_total", finite as usize).build(),
        verdicts: vec![Verdict::new("positive_jump_share", share, Comparison::AtLeast, p.min_fraction)],
        plots: vec![],
    })
}

pub fn convex_inclusion(p: &ConvexParams, base: RngStream) -> Result<Outcome> {
    let grid = Grid::over(Horizon::unit(), p.steps)?;
    let (lo, hi) = p.gamma_range;
    let per_replica = replicas(p.replicas, |i| {
        let rng = base.split(i as u64);
        let x = Path::Grid(simulate_brownian(grid, rng.child(0)));
        let gamma = if hi > lo { rng.child(1).rng().random_range(lo..hi) } else { lo };
        let c = convex_drift_inclusion_check(&x, &DriftSpec::Quadratic { gamma })?;
        Ok(RecordBuilder::new()
            .with("gamma", gamma)
            .with("base_vertices", c.base.len())
            .with("drifted_vertices", c.drifted.len())
            .with("holds", c.holds)
            .build())
    })?;
    let share = fraction(per_replica.iter().map(|r| flag(r, "holds")));
    let plot = per_replica.iter().filter_map(|r| Some((num(r, "gamma")?, num(r, "drifted_vertices")?))).collect();
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts: vec![Verdict::new("inclusion_share", share, Comparison::AtLeast, p.min_pass_fraction)],
        plots: vec![PlotSeries::new("drifted_vertices_vs_gamma", "gamma", "vertices", plot)],
    })
}

// ---------------------------------------------------------------- burgers

/// Brute-force sup and its largest maximizer over the skeleton.
fn brute_sup(field: &PotentialField, x: f64) -> (f64, f64) {
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for (a, v) in field.times.iter().zip(&field.initial) {
        let val = v - (x - a) * (x - a) / (2.0 * field.t);
        if val >= best.0 {
            best = (val, *a);
        }
    }
    best
}

struct BurgersCheck {
    max_error: f64,
    min_dominance: f64,
    min_second_difference: f64,
    faces_match: bool,
    monotone: bool,
    shocks: usize,
}

fn burgers_check(psi0: &Path, t: f64, x_points: usize) -> Result<BurgersCheck> {
    let field = drifted_potential(psi0, t)?;
    let h = psi0.horizon();
    let (lo, hi) = (h.t0 - h.length(), h.t1 + h.length());
    let dx = (hi - lo) / (x_points - 1) as f64;
    let xs: Vec<f64> = (0..x_points).map(|k| lo + k as f64 * dx).collect();
    let psi = hopf_cole_potential(&field, &xs)?;
    let max_error = xs.iter().zip(&psi).map(|(x, v)| (v - brute_sup(&field, *x).0).abs()).fold(0.0, f64::max);

    let at_nodes = hopf_cole_potential(&field, &field.times)?;
    let min_dominance = at_nodes.iter().zip(&field.initial).map(|(a, b)| a - b).fold(f64::INFINITY, f64::min);

    let g: Vec<f64> = xs.iter().zip(&psi).map(|(x, v)| v + x * x / (2.0 * t)).collect();
    let min_second_difference = g.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).fold(f64::INFINITY, f64::min);

    // each face [a_k, a_{k+1}] of slope s_k is a jump of a(·) at x_k = −t s_k
    let vt = field.vertex_times();
    let jumps: Vec<f64> = field.majorant().slopes().iter().map(|s| -(t * s)).collect();
    let mut faces_match = jumps.windows(2).all(|w| w[0] < w[1]);
    let mut probes = Vec::with_capacity(jumps.len() + 1);
    probes.push(jumps.first().map_or(0.0, |x| x - 1.0));
    probes.extend(jumps.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    if let Some(x) = jumps.last() {
        probes.push(x + 1.0);
    }
    for (k, &x) in probes.iter().enumerate() {
        faces_match &= inverse_lagrangian(&field, x)? == vt[k] && brute_sup(&field, x).1 == vt[k];
    }
    for (k, &x) in jumps.iter().enumerate() {
        faces_match &= inverse_lagrangian(&field, x)? == vt[k + 1];
    }
    let s = shock_intervals(&field);
    faces_match &= s.shocks.iter().all(|sh| {
        let k = vt.partition_point(|&a| a < sh.a_left);
        k + 1 < vt.len() && vt[k] == sh.a_left && vt[k + 1] == sh.a_right
    });
    let mut monotone = true;
    let mut prev = f64::NEG_INFINITY;
    for &x in &xs {
        let a = inverse_lagrangian(&field, x)?;
        monotone &= a >= prev;
        prev = a;
    }
    Ok(BurgersCheck { max_error, min_dominance, min_second_difference, faces_match, monotone, shocks: s.shocks.len() })
}

pub fn burgers_shocks(p: &BurgersParams, base: RngStream) -> Result<Outcome> {
    let grid = Grid::over(Horizon::unit(), p.steps)?;
    let per_replica = replicas(p.replicas, |i| {
        let psi0 = Path::Grid(simulate_brownian(grid, base.split(i as u64)));
        let mut r = RecordBuilder::new();
        let (mut err, mut dom, mut conv, mut faces, mut mono) = (0.0f64, f64::INFINITY, f64::INFINITY, true, true);
        for (k, &t) in p.ts.iter().enumerate() {
            let c = burgers_check(&psi0, t, p.x_points)?;
            err = err.max(c.max_error);
            dom = dom.min(c.min_dominance);
            conv = conv.min(c.min_second_difference);
            faces &= c.faces_match;
            mono &= c.monotone;
            r.set(format!("shocks_{k}"), c.shocks);
        }
        Ok(r.with("max_abs_error", err)
            .with("min_dominance", dom)
            .with("min_second_difference", conv)
            .with("faces_match", faces)
            .with("inverse_lagrangian_monotone", mono)
            .build())
    })?;
    let worst = |key: &str, max: bool| {
        let c = column(&per_replica, key);
        (!c.is_empty()).then(|| if max { c.iter().copied().fold(f64::NEG_INFINITY, f64::max) } else { c.iter().copied().fold(f64::INFINITY, f64::min) })
    };
    let verdicts = vec![
        Verdict::new("max_abs_error", worst("max_abs_error", true), Comparison::AtMost, p.max_abs_error),
        Verdict::new("min_dominance", worst("min_dominance", false), Comparison::AtLeast, -p.convexity_tol),
        Verdict::new("min_second_difference", worst("min_second_difference", false), Comparison::AtLeast, -p.convexity_tol),
        Verdict::new("faces_match_share", fraction(per_replica.iter().map(|r| flag(r, "faces_match"))), Comparison::AtLeast, 1.0),
        Verdict::new("monotone_share", fraction(per_replica.iter().map(|r| flag(r, "inverse_lagrangian_monotone"))), Comparison::AtLeast, 1.0),
    ];
    let plot = p.ts.iter().enumerate().filter_map(|(k, &t)| Some((t, median(&column(&per_replica, &format!("shocks_{k}")))?))).collect();
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts,
        plots: vec![PlotSeries::new("median_shock_count", "t", "shocks", plot)],
    })
}

pub fn shock_convergence(p: &ConvergenceParams, base: RngStream) -> Result<Outcome> {
    let per_replica = replicas(p.replicas, |i| {
        let psi0 = bv_path(&p.measure, p.epsilon, p.horizon, base.split(i as u64))?;
        let c = shock_convergence_experiment(&psi0, &p.ts)?;
        Ok(RecordBuilder::new()
            .with("distances", c.distances.clone())
            .with("final_distance", c.distances.last().copied())
            .with("inversions", c.inversions)
            .with("non_increasing", c.inversions <= p.max_inversions)
            .build())
    })?;
    let share = fraction(per_replica.iter().map(|r| flag(r, "non_increasing")));
    let plot = p
        .ts
        .iter()
        .enumerate()
        .filter_map(|(k, &t)| {
            let d: Vec<f64> = per_replica
                .iter()
                .filter_map(|r| match r.get("distances") {
                    Some(super::report::Field::Series(xs)) => xs.get(k).copied(),
                    _ => None,
                })
                .collect();
            Some((t, median(&d)?))
        })
        .collect();
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts: vec![Verdict::new("non_increasing_share", share, Comparison::AtLeast, p.min_pass_fraction)],
        plots: vec![PlotSeries::new("median_hausdorff", "t", "distance", plot)],
    })
}

// ---------------------------------------------------------------- sticky

pub fn sticky_theorem(p: &StickyParams, base: RngStream) -> Result<Outcome> {
    let per_replica = replicas(p.replicas, |i| {
        let mut r = base.split(i as u64).rng();
        let n = r.random_range(1..=p.max_particles);
        let vs: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut r)).collect();
        let c = verify_discrete_theorem(&vs)?;
        let ok = c.agrees && c.mass_error <= p.momentum_tol && c.momentum_error <= p.momentum_tol && c.events < n.max(1);
        Ok(RecordBuilder::new()
            .with("particles", n)
            .with("events", c.events)
            .with("clumps", c.simulated.len())
            .with("agrees", c.agrees)
            .with("mass_error", c.mass_error)
            .with("momentum_error", c.momentum_error)
            .with("stable", c.stable)
            .with("ok", ok)
            .build())
    })?;
    let max_of = |key: &str| column(&per_replica, key).into_iter().reduce(f64::max);
    let events_excess = per_replica
        .iter()
        .filter_map(|r| Some(num(r, "events")? - (num(r, "particles")? - 1.0)))
        .reduce(f64::max);
    let verdicts = vec![
        Verdict::new("agreement_share", fraction(per_replica.iter().map(|r| flag(r, "agrees"))), Comparison::AtLeast, p.min_pass_fraction),
        Verdict::new("max_mass_error", max_of("mass_error"), Comparison::AtMost, p.momentum_tol),
        Verdict::new("max_momentum_error", max_of("momentum_error"), Comparison::AtMost, p.momentum_tol),
        Verdict::new("max_events_minus_bound", events_excess, Comparison::AtMost, 0.0),
    ];
    let plot = per_replica.iter().filter_map(|r| Some((num(r, "particles")?, num(r, "clumps")?))).collect();
    Ok(Outcome {
        per_replica,
        summary: Record::new(),
        verdicts,
        plots: vec![PlotSeries::new("clumps_vs_particles", "particles", "clumps", plot)],
    })
}
