//! Versioned experiment reports and their JSON/CSV encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::burgers::ShockStructure;
use crate::error::{Error, Result};
use crate::hull::extremal::ExtremalSet;
use crate::hull::MajorantPL;
use crate::sticky::EventRecord;
use crate::stats::{mean, mean_ci95, median, Interval};

pub const SCHEMA_VERSION: u32 = 1;

/// One value in a per-replica record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Flag(bool),
    Count(u64),
    Num(f64),
    Series(Vec<f64>),
    Text(String),
    Missing,
}

impl Field {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Field::Flag(b) => Some(if *b { 1.0 } else { 0.0 }),
            Field::Count(c) => Some(*c as f64),
            Field::Num(x) => Some(*x),
            _ => None,
        }
    }

    fn csv_cell(&self) -> String {
        match self {
            Field::Flag(b) => b.to_string(),
            Field::Count(c) => c.to_string(),
            Field::Num(x) => x.to_string(),
            Field::Series(xs) => xs.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Flag(b)
    }
}

impl From<usize> for Field {
    fn from(c: usize) -> Self {
        Field::Count(c as u64)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Field::Num(x)
        } else {
            Field::Missing
        }
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Missing, Field::from)
    }
}

impl From<Vec<f64>> for Field {
    fn from(xs: Vec<f64>) -> Self {
        Field::Series(xs)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

pub type Record = BTreeMap<String, Field>;

/// Builder for a per-replica record.
#[derive(Debug, Default)]
pub struct RecordBuilder(Record);

impl RecordBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Field>) -> Self {
        self.0.insert(key.into(), value.into());
        self
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<Field>) {
        self.0.insert(key.into(), value.into());
    }

    pub fn build(self) -> Record {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub ci95: Option<Interval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
}

impl Comparison {
    pub fn holds(self, statistic: f64, threshold: f64) -> bool {
        match self {
            Comparison::AtLeast => statistic >= threshold,
            Comparison::AtMost => statistic <= threshold,
            Comparison::Below => statistic < threshold,
            Comparison::Above => statistic > threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    /// `None` when the statistic could not be computed; the verdict then fails.
    pub statistic: Option<f64>,
    pub comparison: Comparison,
    pub threshold: f64,
    pub passed: bool,
}

impl Verdict {
    pub fn new(name: &str, statistic: Option<f64>, comparison: Comparison, threshold: f64) -> Self {
        let statistic = statistic.filter(|s| s.is_finite());
        let passed = statistic.is_some_and(|s| comparison.holds(s, threshold));
        Self { name: name.to_string(), statistic, comparison, threshold, passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl PlotSeries {
    pub fn new(name: &str, x_label: &str, y_label: &str, points: Vec<(f64, f64)>) -> Self {
        let points = points.into_iter().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
        Self { name: name.into(), x_label: x_label.into(), y_label: y_label.into(), points }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub per_replica: Vec<Record>,
    /// Absent when there are no replica records.
    pub aggregates: Option<BTreeMap<String, Aggregate>>,
    /// Experiment-level values that are not per replica.
    #[serde(default)]
    pub summary: Record,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
    pub plots: Vec<PlotSeries>,
    pub wall_clock_seconds: f64,
}

impl Report {
    pub fn new(
        config: ExperimentConfig,
        per_replica: Vec<Record>,
        summary: Record,
        verdicts: Vec<Verdict>,
        plots: Vec<PlotSeries>,
    ) -> Self {
        let aggregates = aggregate(&per_replica);
        let passed = verdicts.iter().all(|v| v.passed);
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: config.experiment.id().to_string(),
            config,
            per_replica,
            aggregates,
            summary,
            verdicts,
            passed,
            plots,
            wall_clock_seconds: 0.0,
        }
    }

    /// Copy with the wall-clock field zeroed, for determinism comparisons.
    pub fn without_clock(&self) -> Self {
        Self { wall_clock_seconds: 0.0, ..self.clone() }
    }
}

/// Mean, median and 95% CI of every scalar field across replicas.
pub fn aggregate(records: &[Record]) -> Option<BTreeMap<String, Aggregate>> {
    if records.is_empty() {
        return None;
    }
    let mut columns: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in records {
        for (k, v) in r {
            if let Some(x) = v.as_f64() {
                columns.entry(k).or_default().push(x);
            }
        }
    }
    Some(
        columns
            .into_iter()
            .map(|(k, xs)| {
                (k.to_string(), Aggregate { n: xs.len(), mean: mean(&xs), median: median(&xs), ci95: mean_ci95(&xs) })
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

pub fn report_json(report: &Report) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

pub fn parse_report(text: &str) -> Result<Report> {
    Ok(serde_json::from_str(text)?)
}

/// Per-replica table. Columns: `schema_version,replica`, then the union of
/// record keys in lexicographic order.
pub fn replicas_csv(report: &Report) -> String {
    let mut keys: Vec<&String> = report.per_replica.iter().flat_map(|r| r.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = String::from("schema_version,replica");
    for k in &keys {
        out.push(',');
        out.push_str(k);
    }
    out.push('\n');
    for (i, r) in report.per_replica.iter().enumerate() {
        let _ = write!(out, "{},{}", report.schema_version, i);
        for k in &keys {
            out.push(',');
            out.push_str(&r.get(*k).map(Field::csv_cell).unwrap_or_default());
        }
        out.push('\n');
    }
    out
}

pub fn verdicts_csv(report: &Report) -> String {
    let mut out = String::from("schema_version,name,statistic,comparison,threshold,passed\n");
    for v in &report.verdicts {
        let stat = v.statistic.map(|s| s.to_string()).unwrap_or_default();
        let cmp = serde_json::to_value(v.comparison).ok().and_then(|c| c.as_str().map(str::to_owned)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{},{}", report.schema_version, v.name, stat, cmp, v.threshold, v.passed);
    }
    out
}

fn write(dir: &FsPath, name: String, body: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    let p = dir.join(name);
    fs::write(&p, body)?;
    written.push(p);
    Ok(())
}

/// Writes `<id>.json`, or `<id>_replicas.csv` and `<id>_verdicts.csv`.
pub fn emit_report(report: &Report, format: Format, dir: &FsPath) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let id = &report.experiment;
    match format {
        Format::Json => write(dir, format!("{id}.json"), &report_json(report)?, &mut written)?,
        Format::Csv => {
            write(dir, format!("{id}_replicas.csv"), &replicas_csv(report), &mut written)?;
            write(dir, format!("{id}_verdicts.csv"), &verdicts_csv(report), &mut written)?;
        }
    }
    Ok(written)
}

pub fn plot_csv(series: &PlotSeries) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in &series.points {
        let _ = writeln!(out, "{x},{y}");
    }
    out
}

pub fn parse_plot_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines();
    if lines.next() != Some("x,y") {
        return Err(Error::MalformedConfig("plot CSV must start with the header x,y".into()));
    }
    lines
        .map(|l| {
            let (x, y) = l.split_once(',').ok_or_else(|| Error::MalformedConfig(format!("bad row {l:?}")))?;
            let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::MalformedConfig(e.to_string()));
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

/// Writes one `<id>_<plot>.csv` per declared plot.
pub fn emit_plot_data(report: &Report, dir: &FsPath) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for s in &report.plots {
        write(dir, format!("{}_{}.csv", report.experiment, s.name), &plot_csv(s), &mut written)?;
    }
    Ok(written)
}

pub fn majorant_csv(m: &MajorantPL) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in m.vertices() {
        let _ = writeln!(out, "{t},{v}");
    }
    out
}

pub fn extremal_csv(e: &ExtremalSet) -> String {
    let mut out = String::from("t,is_jump,is_T\n");
    for (t, f) in &e.entries {
        let _ = writeln!(out, "{t},{},{}", f.is_jump, f.is_t);
    }
    out
}

pub fn potential_csv(xs: &[f64], psi: &[f64]) -> String {
    let mut out = String::from("x,psi\n");
    for (x, p) in xs.iter().zip(psi) {
        let _ = writeln!(out, "{x},{p}");
    }
    out
}

pub fn lagrangian_csv(pairs: &[(f64, f64)]) -> String {
    let mut out = String::from("a,x\n");
    for (a, x) in pairs {
        let _ = writeln!(out, "{a},{x}");
    }
    out
}

pub fn shocks_csv(s: &ShockStructure) -> String {
    let mut out = String::from("a_left,a_right,x,mass\n");
    for k in &s.shocks {
        let _ = writeln!(out, "{},{},{},{}", k.a_left, k.a_right, k.x, k.mass);
    }
    out
}

pub fn events_csv(events: &[EventRecord]) -> String {
    let mut out = String::from("t,left_index,x,mass_new,v_new\n");
    for e in events {
        let _ = writeln!(out, "{},{},{},{},{}", e.t, e.left_index, e.x, e.mass_new, e.v_new);
    }
    out
}

pub fn partition_json(blocks: &[(usize, usize)]) -> Result<String> {
    Ok(serde_json::to_string(blocks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Experiment, StickyParams};

    fn sample(records: Vec<Record>) -> Report {
        let cfg = ExperimentConfig::new(1, Experiment::StickyTheorem(StickyParams::default()));
        let v = vec![Verdict::new("agree", Some(1.0), Comparison::AtLeast, 1.0)];
        let plots = vec![PlotSeries::new("curve", "n", "y", vec![(1.0, 0.1), (2.0, 1.0 / 3.0)])];
        Report::new(cfg, records, Record::new(), v, plots)
    }

    #[test]
    fn empty_report_has_no_aggregates() {
        let r = sample(vec![]);
        assert!(r.aggregates.is_none());
        assert!(r.passed);
        let back = parse_report(&report_json(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(replicas_csv(&r), "schema_version,replica\n");
    }

    #[test]
    fn json_round_trip_is_exact() {
        let recs = vec![
            RecordBuilder::new().with("x", 0.1 + 0.2).with("ok", true).with("n", 3usize).with("s", vec![1.5, -2.0]).build(),
            RecordBuilder::new().with("x", 3.0).with("ok", false).with("n", 0usize).with("gap", None).build(),
        ];
        let r = sample(recs);
        let text = report_json(&r).unwrap();
        let back = parse_report(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(report_json(&back).unwrap(), text);
        let agg = r.aggregates.as_ref().unwrap();
        assert_eq!(agg["n"].mean, Some(1.5));
        assert_eq!(agg["x"].n, 2);
        assert!(!agg.contains_key("s"));
    }

    #[test]
    fn csv_column_order() {
        let recs = vec![RecordBuilder::new().with("b", 1.0).with("a", 2usize).build()];
        let csv = replicas_csv(&sample(recs));
        assert_eq!(csv, "schema_version,replica,a,b\n1,0,2,1\n");
    }

    #[test]
    fn failed_verdict_on_missing_statistic() {
        let v = Verdict::new("x", Some(f64::NAN), Comparison::AtLeast, 0.0);
        assert!(!v.passed);
        assert_eq!(v.statistic, None);
        assert!(Verdict::new("y", Some(0.01), Comparison::Below, 0.05).passed);
    }

    #[test]
    fn plot_files_round_trip() {
        let r = sample(vec![]);
        let dir = tempfile::tempdir().unwrap();
        let files = emit_plot_data(&r, dir.path()).unwrap();
        assert_eq!(files.len(), 1);
        let text = fs::read_to_string(&files[0]).unwrap();
        assert_eq!(parse_plot_csv(&text).unwrap(), r.plots[0].points);
        let files = emit_report(&r, Format::Csv, dir.path()).unwrap();
        assert_eq!(files.len(), 2);
        let files = emit_report(&r, Format::Json, dir.path()).unwrap();
        let once = fs::read(&files[0]).unwrap();
        emit_report(&r, Format::Json, dir.path()).unwrap();
        assert_eq!(fs::read(&files[0]).unwrap(), once);
    }

    #[test]
    fn fixed_headers() {
        let m = MajorantPL::from_vertices(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.5]).unwrap();
        assert_eq!(majorant_csv(&m), "t,value\n0,0\n0.5,1\n1,0.5\n");
        assert_eq!(partition_json(&[(0, 1), (2, 2)]).unwrap(), "[[0,1],[2,2]]");
        assert!(events_csv(&[]).starts_with("t,left_index,x,mass_new,v_new"));
        assert_eq!(lagrangian_csv(&[(0.25, -1.0)]), "a,x\n0.25,-1\n");
    }
}
