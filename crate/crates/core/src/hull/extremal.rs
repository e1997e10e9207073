//! Extremal times: abscissae of the majorant (or minorant) vertices.

use serde::{Deserialize, Serialize};

use super::upper_hull_indices;
use crate::error::{Error, Result};
use crate::path::{Path, Skeleton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalSide {
    Superior,
    Inferior,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub is_jump: bool,
    #[serde(rename = "is_T")]
    pub is_t: bool,
    /// `X(a) − X(a−)`, zero at continuity points.
    pub jump: f64,
}

/// Sorted extremal times; serialized entries are `[t, flags]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSet {
    pub side: ExtremalSide,
    pub entries: Vec<(f64, Flags)>,
}

impl ExtremalSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.position(t).is_some()
    }

    pub fn position(&self, t: f64) -> Option<usize> {
        self.entries.binary_search_by(|e| e.0.total_cmp(&t)).ok()
    }

    /// Index of the entry flagged as `T`.
    pub fn argmax(&self) -> Option<usize> {
        self.entries.iter().position(|e| e.1.is_t)
    }

    /// Entries other than the two horizon endpoints.
    pub fn interior(&self) -> &[(f64, Flags)] {
        match self.entries.len() {
            0..=2 => &[],
            n => &self.entries[1..n - 1],
        }
    }
}

/// Supremum of `X*` with its first and last achievers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Achievers {
    pub sup: f64,
    pub first: f64,
    pub last: f64,
}

pub fn sup_achievers(path: &Path) -> Achievers {
    achievers(&path.skeleton())
}

fn achievers(sk: &Skeleton) -> Achievers {
    let sup = (0..sk.len()).map(|i| sk.star(i)).fold(f64::NEG_INFINITY, f64::max);
    let first = (0..sk.len()).find(|&i| sk.star(i) == sup).unwrap();
    let last = (0..sk.len()).rev().find(|&i| sk.star(i) == sup).unwrap();
    Achievers { sup, first: sk.times[first], last: sk.times[last] }
}

/// Connected pieces `[first, last]` of the level set `{X* = sup X*}`.
///
/// Two consecutive achieving nodes belong to one piece when the path stays at
/// the sup level on the segment between them.
pub fn sup_components(path: &Path) -> Vec<(f64, f64)> {
    let sk = path.skeleton();
    let sup = achievers(&sk).sup;
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut open = false;
    for i in 0..sk.len() {
        if sk.star(i) != sup {
            open = false;
            continue;
        }
        let joined = open && i > 0 && sk.value[i - 1] == sup && sk.left[i] == sup;
        match out.last_mut() {
            Some(last) if joined => last.1 = sk.times[i],
            _ => out.push((sk.times[i], sk.times[i])),
        }
        open = true;
    }
    out
}

/// Vertices of the concave majorant of `X*`; `T` is the last achiever of `sup X*`.
pub fn extremal_superior_times(path: &Path) -> ExtremalSet {
    superior_with(path, 0.0).expect("path skeletons are valid hull input")
}

pub fn superior_with(path: &Path, eps: f64) -> Result<ExtremalSet> {
    let sk = path.skeleton();
    let ys: Vec<f64> = (0..sk.len()).map(|i| sk.star(i)).collect();
    let idx = upper_hull_indices(&sk.times, &ys, eps)?;
    let t = achievers(&sk).last;
    let entries = idx
        .into_iter()
        .map(|i| {
            let jump = sk.jump(i);
            (sk.times[i], Flags { is_jump: jump != 0.0, is_t: sk.times[i] == t, jump })
        })
        .collect();
    Ok(ExtremalSet { side: ExtremalSide::Superior, entries })
}

/// `E⁻(X)`, computed as `E⁺(−X)`.
pub fn extremal_inferior_times(path: &Path) -> ExtremalSet {
    let mut e = extremal_superior_times(&path.negate());
    e.side = ExtremalSide::Inferior;
    for (_, f) in &mut e.entries {
        f.jump = -f.jump;
    }
    e
}

/// Number of distinct cells `[k w, (k+1) w)` holding a time, times `w`.
pub fn lebesgue_estimate(times: &[f64], w: f64) -> Result<f64> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidParameter(format!("cell width {w} must be positive")));
    }
    let mut cells: Vec<i64> = times.iter().map(|t| (t / w).floor() as i64).collect();
    cells.sort_unstable();
    cells.dedup();
    Ok(cells.len() as f64 * w)
}
