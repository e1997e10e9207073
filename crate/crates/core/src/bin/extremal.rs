use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand_distr::{Distribution, StandardNormal};

use extremal::burgers::{drifted_potential, hopf_cole_potential, lagrangian, shock_intervals};
use extremal::drift::isolation::classify_isolation;
use extremal::drift::{add_drift, DriftSpec};
use extremal::harness::report::{
    events_csv, extremal_csv, lagrangian_csv, majorant_csv, partition_json, potential_csv, shocks_csv,
};
use extremal::harness::{
    emit_plot_data, emit_report, parse_configs, run_experiment, Experiment, ExperimentConfig, Format, Report,
    EXPERIMENT_IDS,
};
use extremal::hull::concave_majorant_of_path;
use extremal::hull::extremal::{extremal_inferior_times, extremal_superior_times};
use extremal::path::process::ProcessSpec;
use extremal::path::Path;
use extremal::sticky::oracle::verify_discrete_theorem;
use extremal::sticky::{init_system, run_to_completion, unit_positions};
use extremal::{Error, Result, RngStream};

const OUT_ENV: &str = "EXTREMAL_OUT_DIR";

#[derive(Parser)]
#[command(name = "extremal", version, about = "Concave majorants, extremal times, Burgers shocks and sticky particles")]
struct Cli {
    /// JSON input for the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; defaults to $EXTREMAL_OUT_DIR, else stdout where possible.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a path from a process spec (`--config`).
    Simulate,
    /// Concave majorant and extremal times of a path (`--config`).
    Hull,
    /// Add a drift to a path and classify isolation of its extremal times.
    Drift(DriftArgs),
    /// Hopf–Cole solution for an initial potential path (`--config`).
    Burgers(BurgersArgs),
    /// Run a sticky-particle system and compare with the majorant prediction.
    Sticky(StickyArgs),
    /// Run experiments and report verdicts; exit status 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DriftArgs {
    /// Drift spec as inline JSON.
    #[arg(long, default_value = r#"{"kind":"zero"}"#)]
    drift: String,
}

#[derive(Args)]
struct BurgersArgs {
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Number of x points spanning the horizon widened by its length on both sides.
    #[arg(long, default_value_t = 257)]
    points: usize,
}

#[derive(Args)]
struct StickyArgs {
    /// Comma-separated initial velocities.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    velocities: Option<Vec<f64>>,
    /// Number of particles with standard normal velocities when none are given.
    #[arg(long, default_value_t = 10)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Experiment ids to run with reference parameters (all when omitted and no config is given).
    #[arg(long = "experiment")]
    experiments: Vec<String>,
    /// Override the replica count of every experiment.
    #[arg(long)]
    replicas: Option<usize>,
}

fn read_config(cli: &Cli) -> Result<String> {
    let p = cli.config.as_ref().ok_or_else(|| Error::MalformedConfig("--config is required".into()))?;
    Ok(fs::read_to_string(p)?)
}

fn out_dir(cli: &Cli) -> Option<PathBuf> {
    cli.out.clone().or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
}

/// Writes named artifacts to the output directory, or prints them.
fn emit(cli: &Cli, files: &[(String, String)]) -> Result<()> {
    match out_dir(cli) {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            for (name, body) in files {
                let p = dir.join(name);
                fs::write(&p, body)?;
                eprintln!("wrote {}", p.display());
            }
        }
        None => {
            for (name, body) in files {
                if files.len() > 1 {
                    println!("# {name}");
                }
                print!("{body}");
                if !body.ends_with('\n') {
                    println!();
                }
            }
        }
    }
    Ok(())
}

fn json(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_path(cli: &Cli) -> Result<Path> {
    Ok(serde_json::from_str(&read_config(cli)?)?)
}

fn simulate(cli: &Cli) -> Result<()> {
    let spec: ProcessSpec = serde_json::from_str(&read_config(cli)?)?;
    let path = spec.simulate(RngStream::new(cli.seed.unwrap_or(0), 0))?;
    emit(cli, &[("path.json".into(), json(&path)?)])
}

fn hull(cli: &Cli) -> Result<()> {
    let path = read_path(cli)?;
    let (m, _) = concave_majorant_of_path(&path);
    let sup = extremal_superior_times(&path);
    let inf = extremal_inferior_times(&path);
    let files = match cli.format {
        Format::Json => vec![(
            "hull.json".into(),
            json(&serde_json::json!({ "majorant": m, "superior": sup, "inferior": inf }))?,
        )],
        Format::Csv => vec![
            ("majorant.csv".into(), majorant_csv(&m)),
            ("extremal_superior.csv".into(), extremal_csv(&sup)),
            ("extremal_inferior.csv".into(), extremal_csv(&inf)),
        ],
    };
    emit(cli, &files)
}

fn drift(cli: &Cli, args: &DriftArgs) -> Result<()> {
    let path = read_path(cli)?;
    let f: DriftSpec = serde_json::from_str(&args.drift).map_err(|e| Error::MalformedConfig(e.to_string()))?;
    let y = add_drift(&path, &f)?;
    let e = extremal_superior_times(&y);
    let verdicts = if f.is_differentiable() { Some(classify_isolation(&y, &f, &e, None)?) } else { None };
    let files = match cli.format {
        Format::Json => vec![(
            "drift.json".into(),
            json(&serde_json::json!({ "path": y, "superior": e, "isolation": verdicts }))?,
        )],
        Format::Csv => vec![("extremal_superior.csv".into(), extremal_csv(&e))],
    };
    emit(cli, &files)
}

fn burgers(cli: &Cli, args: &BurgersArgs) -> Result<()> {
    let psi0 = read_path(cli)?;
    if args.points < 2 {
        return Err(Error::InvalidParameter("--points must be at least 2".into()));
    }
    let field = drifted_potential(&psi0, args.t)?;
    let h = psi0.horizon();
    let (lo, hi) = (h.t0 - h.length(), h.t1 + h.length());
    let xs: Vec<f64> = (0..args.points).map(|k| lo + (hi - lo) * k as f64 / (args.points - 1) as f64).collect();
    let psi = hopf_cole_potential(&field, &xs)?;
    let lag: Vec<(f64, f64)> =
        field.times.iter().map(|&a| Ok((a, lagrangian(&field, a)?))).collect::<Result<_>>().unwrap_or_default();
    let shocks = shock_intervals(&field);
    let files = match cli.format {
        Format::Json => vec![(
            "burgers.json".into(),
            json(&serde_json::json!({ "t": args.t, "x": xs, "psi": psi, "lagrangian": lag, "shocks": shocks }))?,
        )],
        Format::Csv => vec![
            ("potential.csv".into(), potential_csv(&xs, &psi)),
            ("lagrangian.csv".into(), lagrangian_csv(&lag)),
            ("shocks.csv".into(), shocks_csv(&shocks)),
        ],
    };
    emit(cli, &files)
}

fn sticky(cli: &Cli, args: &StickyArgs) -> Result<bool> {
    let vs = match &args.velocities {
        Some(v) => v.clone(),
        None => {
            let mut r = RngStream::new(cli.seed.unwrap_or(0), 0).rng();
            (0..args.n).map(|_| StandardNormal.sample(&mut r)).collect()
        }
    };
    let check = verify_discrete_theorem(&vs)?;
    let (_, events) = run_to_completion(&init_system(&unit_positions(vs.len()), &vs)?)?;
    let files = match cli.format {
        Format::Json => vec![("sticky.json".into(), json(&serde_json::json!({ "check": check, "events": events }))?)],
        Format::Csv => vec![
            ("events.csv".into(), events_csv(&events)),
            ("partition.json".into(), partition_json(&check.simulated)? + "\n"),
        ],
    };
    emit(cli, &files)?;
    Ok(check.agrees)
}

fn print_verdicts(r: &Report) {
    for v in &r.verdicts {
        let stat = v.statistic.map_or("n/a".to_string(), |s| format!("{s:e}"));
        let cmp = serde_json::to_value(v.comparison).ok().and_then(|c| c.as_str().map(str::to_owned)).unwrap_or_default();
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!("{mark} {}: {} = {stat} (required {cmp} {:e})", r.experiment, v.name, v.threshold);
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let mut configs = if cli.config.is_some() {
        parse_configs(&read_config(cli)?)?
    } else {
        let ids: Vec<&str> =
            if args.experiments.is_empty() { EXPERIMENT_IDS.to_vec() } else { args.experiments.iter().map(String::as_str).collect() };
        ids.iter().map(|id| Ok(ExperimentConfig::new(0, Experiment::default_for(id)?))).collect::<Result<_>>()?
    };
    for c in &mut configs {
        if let Some(s) = cli.seed {
            c.seed = s;
        }
        if let Some(n) = args.replicas {
            c.experiment.set_replicas(n);
        }
    }
    let dir = out_dir(cli);
    let mut all = true;
    for c in &configs {
        let r = run_experiment(c)?;
        print_verdicts(&r);
        println!("{} {} in {:.2}s", if r.passed { "PASS" } else { "FAIL" }, r.experiment, r.wall_clock_seconds);
        if let Some(d) = &dir {
            write_report(&r, cli.format, d)?;
        }
        all &= r.passed;
    }
    Ok(all)
}

fn write_report(r: &Report, format: Format, dir: &FsPath) -> Result<()> {
    for p in emit_report(r, format, dir)?.into_iter().chain(emit_plot_data(r, dir)?) {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Simulate => simulate(cli).map(|_| true),
        Command::Hull => hull(cli).map(|_| true),
        Command::Drift(a) => drift(cli, a).map(|_| true),
        Command::Burgers(a) => burgers(cli, a).map(|_| true),
        Command::Sticky(a) => sticky(cli, a),
        Command::Verify(a) => verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
