//! Exact piecewise-linear concave majorants.
//!
//! The upper hull is built by a monotone chain over sorted abscissae. A
//! middle point of a collinear triple is never a vertex, so consecutive
//! slopes of the resulting chain decrease strictly.

pub mod extremal;
pub mod hausdorff;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{Path, Skeleton};

/// Where a hull input point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    GridSample,
    /// `X*(a) = X(a−)`: the jump at `a` is negative.
    PreJump,
    /// `X*(a) = X(a)`: the jump at `a` is non-negative.
    PostJump,
    Endpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSequence {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub tags: Vec<Provenance>,
}

impl PointSequence {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Upper-hull input of a path: one point `(a, X*(a))` per skeleton node.
    pub fn upper_of(path: &Path) -> Self {
        let sk = path.skeleton();
        let ys = (0..sk.len()).map(|i| sk.star(i)).collect();
        Self { tags: tags(path, &sk), xs: sk.times, ys }
    }

    /// Lower-hull input: `(a, min(X(a−), X(a)))` per node.
    pub fn lower_of(path: &Path) -> Self {
        let sk = path.skeleton();
        let ys = (0..sk.len()).map(|i| sk.floor(i)).collect();
        Self { tags: tags(path, &sk), xs: sk.times, ys }
    }
}

fn tags(path: &Path, sk: &Skeleton) -> Vec<Provenance> {
    let n = sk.len();
    (0..n)
        .map(|i| {
            let jump = sk.jump(i);
            if jump > 0.0 {
                Provenance::PostJump
            } else if jump < 0.0 {
                Provenance::PreJump
            } else if i == 0 || i == n - 1 {
                Provenance::Endpoint
            } else if matches!(path, Path::Jump(_)) {
                Provenance::PostJump
            } else {
                Provenance::GridSample
            }
        })
        .collect()
}

/// Concave chain given by its vertices; serialized as `[[t, value], ...]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<[f64; 2]>", try_from = "Vec<[f64; 2]>")]
pub struct MajorantPL {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl From<MajorantPL> for Vec<[f64; 2]> {
    fn from(m: MajorantPL) -> Self {
        m.xs.iter().zip(&m.ys).map(|(&x, &y)| [x, y]).collect()
    }
}

impl TryFrom<Vec<[f64; 2]>> for MajorantPL {
    type Error = Error;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        let xs = v.iter().map(|p| p[0]).collect();
        let ys = v.iter().map(|p| p[1]).collect();
        MajorantPL::from_vertices(xs, ys)
    }
}

/// Which one-sided slope to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

fn slope(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    (y1 - y0) / (x1 - x0)
}

impl MajorantPL {
    /// Validates that the chain is strictly concave.
    pub fn from_vertices(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::ContractViolation("majorant needs matching, non-empty vertex arrays".into()));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::ContractViolation("vertex abscissae must increase strictly".into()));
        }
        let slopes: Vec<f64> = (1..xs.len()).map(|i| slope(xs[i - 1], ys[i - 1], xs[i], ys[i])).collect();
        if slopes.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::ContractViolation("vertex slopes must decrease strictly".into()));
        }
        Ok(Self { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Slope of segment `k`, between vertices `k` and `k + 1`.
    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn vertex_count(&self) -> usize {
        self.xs.len()
    }

    pub fn face_count(&self) -> usize {
        self.slopes.len()
    }

    pub fn vertices(&self) -> Vec<(f64, f64)> {
        self.xs.iter().copied().zip(self.ys.iter().copied()).collect()
    }

    pub fn first(&self) -> f64 {
        self.xs[0]
    }

    pub fn last(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    pub fn vertex_index(&self, a: f64) -> Option<usize> {
        self.xs.binary_search_by(|x| x.total_cmp(&a)).ok()
    }

    /// Segment containing `a` (the one to its right at interior vertices).
    fn segment(&self, a: f64) -> usize {
        let k = self.xs.partition_point(|&x| x <= a);
        k.saturating_sub(1).min(self.slopes.len().saturating_sub(1))
    }

    pub fn eval(&self, a: f64) -> Result<f64> {
        if !(a >= self.first() && a <= self.last()) {
            return Err(Error::OutOfHorizon { time: a, t0: self.first(), t1: self.last() });
        }
        if let Some(i) = self.vertex_index(a) {
            return Ok(self.ys[i]);
        }
        let k = self.segment(a);
        let w = (a - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        Ok(self.ys[k] + w * (self.ys[k + 1] - self.ys[k]))
    }

    /// One-sided slope at `a`.
    pub fn slope_at(&self, a: f64, side: Side) -> Result<f64> {
        let out = || Error::OutOfHorizon { time: a, t0: self.first(), t1: self.last() };
        if !(a >= self.first() && a <= self.last()) || self.slopes.is_empty() {
            return Err(out());
        }
        match (side, self.vertex_index(a)) {
            (Side::Left, Some(0)) => Err(Error::InvalidParameter(format!(
                "no left slope at the first vertex {a}"
            ))),
            (Side::Right, Some(i)) if i == self.xs.len() - 1 => Err(Error::InvalidParameter(format!(
                "no right slope at the last vertex {a}"
            ))),
            (Side::Left, Some(i)) => Ok(self.slopes[i - 1]),
            (Side::Right, Some(i)) => Ok(self.slopes[i]),
            (_, None) => Ok(self.slopes[self.segment(a)]),
        }
    }
}

pub fn majorant_slope(m: &MajorantPL, a: f64, side: Side) -> Result<f64> {
    m.slope_at(a, side)
}

fn check_sorted(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(Error::ContractViolation("hull needs at least one point and matching arrays".into()));
    }
    if let Some(i) = xs.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::ContractViolation(format!(
            "abscissae not strictly increasing at position {}",
            i + 1
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::ContractViolation("non-finite hull input".into()));
    }
    Ok(())
}

/// Indices of the upper-hull vertices. A point is dropped when it lies on or
/// below the chord of its neighbours (`cross ≥ −eps`).
pub fn upper_hull_indices(xs: &[f64], ys: &[f64], eps: f64) -> Result<Vec<usize>> {
    check_sorted(xs, ys)?;
    let mut st: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while st.len() >= 2 {
            let (o, a) = (st[st.len() - 2], st[st.len() - 1]);
            let cross = (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o]);
            if cross >= -eps {
                st.pop();
            } else {
                break;
            }
        }
        st.push(i);
    }
    // rounding can leave a non-decreasing slope pair the cross test accepted
    let mut out: Vec<usize> = Vec::with_capacity(st.len());
    for i in st {
        while out.len() >= 2 {
            let (o, a) = (out[out.len() - 2], out[out.len() - 1]);
            if slope(xs[a], ys[a], xs[i], ys[i]) >= slope(xs[o], ys[o], xs[a], ys[a]) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// Least concave piecewise-linear function dominating the points.
pub fn upper_hull(xs: &[f64], ys: &[f64]) -> Result<MajorantPL> {
    upper_hull_with(xs, ys, 0.0)
}

pub fn upper_hull_with(xs: &[f64], ys: &[f64], eps: f64) -> Result<MajorantPL> {
    let idx = upper_hull_indices(xs, ys, eps)?;
    MajorantPL::from_vertices(idx.iter().map(|&i| xs[i]).collect(), idx.iter().map(|&i| ys[i]).collect())
}

/// Indices of the lower-hull vertices, computed on negated ordinates.
pub fn lower_hull_indices(xs: &[f64], ys: &[f64], eps: f64) -> Result<Vec<usize>> {
    let neg: Vec<f64> = ys.iter().map(|y| -y).collect();
    upper_hull_indices(xs, &neg, eps)
}

pub fn upper_hull_points(points: &PointSequence) -> Result<MajorantPL> {
    upper_hull(&points.xs, &points.ys)
}

/// Concave majorant of a path together with the points it was built from.
pub fn concave_majorant_of_path(path: &Path) -> (MajorantPL, PointSequence) {
    let pts = PointSequence::upper_of(path);
    let m = upper_hull_points(&pts).expect("path skeletons are sorted and finite");
    (m, pts)
}

/// True when every non-vertex point sits more than `tol` below the majorant.
pub fn check_clear_condition(path: &Path, tol: f64) -> bool {
    let pts = PointSequence::upper_of(path);
    clear_condition(&pts.xs, &pts.ys, tol)
}

pub fn clear_condition(xs: &[f64], ys: &[f64], tol: f64) -> bool {
    let Ok(idx) = upper_hull_indices(xs, ys, 0.0) else {
        return false;
    };
    let m = MajorantPL::from_vertices(idx.iter().map(|&i| xs[i]).collect(), idx.iter().map(|&i| ys[i]).collect())
        .expect("hull output is concave");
    let mut v = idx.iter().peekable();
    for i in 0..xs.len() {
        if v.peek() == Some(&&i) {
            v.next();
            continue;
        }
        if m.eval(xs[i]).unwrap() - ys[i] <= tol {
            return false;
        }
    }
    true
}
