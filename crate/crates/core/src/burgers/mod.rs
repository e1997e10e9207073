//! Inviscid Burgers equation through the Hopf–Cole variational formula
//!
//! `ψ(x, t) = sup_a [ψ(a, 0) − (x − a)² / (2t)]`.
//!
//! Expanding the square, the sup runs over `ψ_t(a) + x a / t` with
//! `ψ_t(a) = ψ(a, 0) − a² / (2t)`, an affine perturbation of `ψ_t`. It is
//! therefore attained at a vertex of the concave majorant of `ψ_t`, and the
//! maximizing vertex is the first one whose right slope `s` satisfies
//! `t s + x < 0`. Everything below works on that vertex list.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::drift::refine;
use crate::error::{Error, Result};
use crate::hull::extremal::extremal_superior_times;
use crate::hull::hausdorff::hausdorff_distance;
use crate::hull::{upper_hull_indices, MajorantPL, Side};
use crate::path::Path;

/// Relative slope difference under which adjacent segments form one face.
pub const FACE_MERGE_RTOL: f64 = 1e-12;

/// Drifted potential `ψ_t` materialized on a skeleton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialField {
    pub t: f64,
    pub times: Vec<f64>,
    /// `ψ*(a, 0)` at each skeleton point.
    pub initial: Vec<f64>,
    /// `ψ_t(a)`.
    pub drifted: Vec<f64>,
    /// Skeleton indices of the majorant vertices of `ψ_t`.
    pub vertices: Vec<usize>,
    majorant: MajorantPL,
}

impl PotentialField {
    pub fn majorant(&self) -> &MajorantPL {
        &self.majorant
    }

    pub fn vertex_times(&self) -> &[f64] {
        self.majorant.xs()
    }

    fn vertex_values(&self) -> &[f64] {
        self.majorant.ys()
    }

    /// Index of the largest maximizing vertex for `x`.
    fn argmax_vertex(&self, x: f64) -> usize {
        let t = self.t;
        self.majorant.slopes().partition_point(|&s| t * s + x >= 0.0)
    }

    fn value_at_vertex(&self, k: usize, x: f64) -> f64 {
        let a = self.vertex_times()[k];
        let y = self.vertex_values()[k];
        -(x * x) / (2.0 * self.t) + y + x * a / self.t
    }
}

/// `ψ_t` on the skeleton of `ψ0` refined by `per_gap` samples per gap.
pub fn drifted_potential_with(psi0: &Path, t: f64, per_gap: usize) -> Result<PotentialField> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} must be positive")));
    }
    let sk = if per_gap == 0 { psi0.skeleton() } else { refine(psi0, per_gap)?.skeleton() };
    let initial: Vec<f64> = (0..sk.len()).map(|i| sk.star(i)).collect();
    let drifted: Vec<f64> = sk.times.iter().zip(&initial).map(|(a, v)| v - a * a / (2.0 * t)).collect();
    let vertices = upper_hull_indices(&sk.times, &drifted, 0.0)?;
    let majorant = MajorantPL::from_vertices(
        vertices.iter().map(|&i| sk.times[i]).collect(),
        vertices.iter().map(|&i| drifted[i]).collect(),
    )?;
    Ok(PotentialField { t, times: sk.times, initial, drifted, vertices, majorant })
}

/// `ψ_t` on the skeleton of `ψ0` as given.
pub fn drifted_potential(psi0: &Path, t: f64) -> Result<PotentialField> {
    drifted_potential_with(psi0, t, 0)
}

/// `ψ(x, t)` on a sorted x-grid by one monotone sweep over the vertices.
pub fn hopf_cole_potential(field: &PotentialField, xs: &[f64]) -> Result<Vec<f64>> {
    check_grid(xs)?;
    let slopes = field.majorant.slopes();
    let mut k = 0;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        while k < slopes.len() && field.t * slopes[k] + x >= 0.0 {
            k += 1;
        }
        out.push(field.value_at_vertex(k, x));
    }
    Ok(out)
}

/// Same values as [`hopf_cole_potential`], computed on chunks in parallel;
/// each chunk re-anchors its starting vertex by bisection.
pub fn hopf_cole_potential_par(field: &PotentialField, xs: &[f64]) -> Result<Vec<f64>> {
    check_grid(xs)?;
    const CHUNK: usize = 4096;
    Ok(xs
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut k = field.argmax_vertex(chunk[0]);
            let slopes = field.majorant.slopes();
            chunk.iter().map(move |&x| {
                while k < slopes.len() && field.t * slopes[k] + x >= 0.0 {
                    k += 1;
                }
                field.value_at_vertex(k, x)
            })
        })
        .collect())
}

fn check_grid(xs: &[f64]) -> Result<()> {
    if xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::ContractViolation("x-grid must be sorted".into()));
    }
    Ok(())
}

/// `a(x, t)`: the largest maximizing skeleton abscissa.
pub fn inverse_lagrangian(field: &PotentialField, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("x = {x} must be finite")));
    }
    Ok(field.vertex_times()[field.argmax_vertex(x)])
}

/// `x(a, t) = −t · ψ̄_t'(a+)`, using the left slope at the last vertex.
pub fn lagrangian(field: &PotentialField, a: f64) -> Result<f64> {
    let m = &field.majorant;
    if m.face_count() == 0 {
        return Err(Error::DegenerateInput("majorant has a single vertex".into()));
    }
    let side = if a == m.last() { Side::Left } else { Side::Right };
    Ok(-field.t * m.slope_at(a, side)?)
}

/// `v = −∂ψ/∂x` by forward differences, reported at interval midpoints.
pub fn velocity_field(xs: &[f64], psi: &[f64]) -> Vec<(f64, f64)> {
    xs.windows(2)
        .zip(psi.windows(2))
        .map(|(x, p)| (0.5 * (x[0] + x[1]), -(p[1] - p[0]) / (x[1] - x[0])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shock {
    pub a_left: f64,
    pub a_right: f64,
    /// Position of the clump at time `t`.
    pub x: f64,
    /// Interval length (unit density).
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockStructure {
    pub t: f64,
    pub shocks: Vec<Shock>,
    /// Faces spanning a single skeleton cell.
    pub regular_cells: Vec<(f64, f64)>,
}

impl ShockStructure {
    pub fn shock_mass(&self) -> f64 {
        self.shocks.iter().map(|s| s.mass).sum()
    }

    pub fn regular_mass(&self) -> f64 {
        self.regular_cells.iter().map(|c| c.1 - c.0).sum()
    }
}

/// A face of the majorant: maximal run of segments with one slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Face {
    /// Skeleton indices of the endpoints.
    pub lo: usize,
    pub hi: usize,
    pub slope: f64,
}

pub fn faces(field: &PotentialField) -> Vec<Face> {
    let slopes = field.majorant.slopes();
    let mut out: Vec<Face> = Vec::new();
    for (k, &s) in slopes.iter().enumerate() {
        let (lo, hi) = (field.vertices[k], field.vertices[k + 1]);
        if let Some(last) = out.last_mut() {
            if (last.slope - s).abs() <= FACE_MERGE_RTOL * last.slope.abs().max(s.abs()) {
                last.hi = hi;
                continue;
            }
        }
        out.push(Face { lo, hi, slope: s });
    }
    out
}

pub fn shock_intervals(field: &PotentialField) -> ShockStructure {
    let mut shocks = Vec::new();
    let mut regular_cells = Vec::new();
    for f in faces(field) {
        let (a, b) = (field.times[f.lo], field.times[f.hi]);
        if f.hi - f.lo > 1 {
            shocks.push(Shock { a_left: a, a_right: b, x: -(field.t * f.slope), mass: b - a });
        } else {
            regular_cells.push((a, b));
        }
    }
    ShockStructure { t: field.t, shocks, regular_cells }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShockConvergence {
    pub ts: Vec<f64>,
    pub distances: Vec<f64>,
    /// Count of consecutive increases along the ladder.
    pub inversions: usize,
}

/// `d_H(E⁺(ψ_t), E⁺(ψ))` along an increasing ladder of times, both sets on
/// the skeleton of `ψ0`.
pub fn shock_convergence_experiment(psi0: &Path, ts: &[f64]) -> Result<ShockConvergence> {
    if ts.is_empty() || ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("t-ladder must be non-empty and increasing".into()));
    }
    let limit = extremal_superior_times(psi0).times();
    let mut distances = Vec::with_capacity(ts.len());
    for &t in ts {
        let field = drifted_potential(psi0, t)?;
        distances.push(hausdorff_distance(field.vertex_times(), &limit)?);
    }
    let inversions = distances.windows(2).filter(|w| w[1] > w[0]).count();
    Ok(ShockConvergence { ts: ts.to_vec(), distances, inversions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{GridPath, Horizon, JumpPath};

    fn flat(n: usize) -> Path {
        Path::Grid(GridPath::new(0.0, 1.0 / n as f64, vec![0.0; n + 1]).unwrap())
    }

    fn brute(field: &PotentialField, x: f64) -> (f64, f64) {
        let mut best = (f64::NEG_INFINITY, f64::NAN);
        for (a, v) in field.times.iter().zip(&field.initial) {
            let val = v - (x - a) * (x - a) / (2.0 * field.t);
            if val >= best.0 {
                best = (val, *a);
            }
        }
        best
    }

    #[test]
    fn flat_potential_at_rest() {
        let p = flat(16);
        let f = drifted_potential(&p, 1.0).unwrap();
        assert_eq!(f.drifted[8], -0.125);
        let xs: Vec<f64> = (0..=16).map(|k| k as f64 / 16.0).collect();
        for (x, v) in xs.iter().zip(hopf_cole_potential(&f, &xs).unwrap()) {
            assert!(v.abs() < 1e-15, "x={x} v={v}");
            assert_eq!(inverse_lagrangian(&f, *x).unwrap(), *x);
        }
        assert!(shock_intervals(&f).shocks.is_empty());
    }

    #[test]
    fn invalid_time() {
        assert!(drifted_potential(&flat(4), 0.0).is_err());
        assert!(drifted_potential(&flat(4), -1.0).is_err());
    }

    #[test]
    fn large_time_limit() {
        let p = flat(8);
        let f = drifted_potential(&p, 1e9).unwrap();
        assert!(f.drifted.iter().all(|v| v.abs() <= 0.5e-9));
    }

    #[test]
    fn shift_by_constant() {
        let p = flat(8);
        let shifted = Path::Grid(GridPath::new(0.0, 0.125, vec![1.5; 9]).unwrap());
        let a = drifted_potential(&p, 2.0).unwrap();
        let b = drifted_potential(&shifted, 2.0).unwrap();
        for (x, y) in a.drifted.iter().zip(&b.drifted) {
            assert_eq!(x + 1.5, *y);
        }
    }

    #[test]
    fn linear_potential() {
        // ψ0(a) = c a gives ψ(x, t) = c x + c² t / 2 and x(a, t) = a − c t
        let n = 1 << 12;
        let h = 4.0 / n as f64;
        let c = 0.5;
        let p = Path::Grid(GridPath::new(-2.0, h, (0..=n).map(|k| c * (-2.0 + k as f64 * h)).collect()).unwrap());
        let t = 1.0;
        let f = drifted_potential(&p, t).unwrap();
        let xs = [-1.0, -0.5, 0.0, 0.5, 1.0];
        for (x, v) in xs.iter().zip(hopf_cole_potential(&f, &xs).unwrap()) {
            assert!((v - (c * x + c * c * t / 2.0)).abs() < 1e-12, "x={x}");
        }
        for a in [-1.0, 0.0, 0.75] {
            let x = lagrangian(&f, a).unwrap();
            assert!((x - (a - c * t)).abs() <= h, "a={a} x={x}");
            assert!((inverse_lagrangian(&f, x).unwrap() - a).abs() <= h);
        }
    }

    #[test]
    fn sweep_matches_brute_force() {
        let vals: Vec<f64> = (0..=64).map(|k| ((k as f64) * 0.7).sin() + 0.1 * (k as f64 * 2.3).cos()).collect();
        let p = Path::Grid(GridPath::new(0.0, 1.0 / 64.0, vals).unwrap());
        for t in [0.1, 1.0, 10.0] {
            let f = drifted_potential(&p, t).unwrap();
            let xs: Vec<f64> = (0..400).map(|i| -1.0 + i as f64 * 0.0075).collect();
            let sweep = hopf_cole_potential(&f, &xs).unwrap();
            assert_eq!(sweep, hopf_cole_potential_par(&f, &xs).unwrap());
            for (x, v) in xs.iter().zip(&sweep) {
                let (b, arg) = brute(&f, *x);
                assert!((v - b).abs() <= 1e-9);
                assert_eq!(inverse_lagrangian(&f, *x).unwrap(), arg);
            }
        }
    }

    #[test]
    fn single_jump_single_shock() {
        let p = Path::Jump(JumpPath::new(Horizon::unit(), vec![0.5], vec![1.0], 0.0).unwrap());
        let f = drifted_potential_with(&p, 1.0, 16).unwrap();
        let s = shock_intervals(&f);
        assert_eq!(s.shocks.len(), 1);
        assert_eq!((s.shocks[0].a_left, s.shocks[0].a_right), (0.0, 0.5));
        assert!((s.shock_mass() + s.regular_mass() - 1.0).abs() < 1e-12);
        // the inverse Lagrangian jumps across the whole face at the shock
        let x = s.shocks[0].x;
        assert_eq!(inverse_lagrangian(&f, x).unwrap(), 0.5);
        assert_eq!(inverse_lagrangian(&f, x - 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn convergence_on_single_jump() {
        let p = Path::Jump(JumpPath::new(Horizon::unit(), vec![0.5], vec![1.0], 0.0).unwrap());
        let c = shock_convergence_experiment(&p, &[1.0, 10.0, 100.0]).unwrap();
        assert!(c.distances.iter().all(|d| *d == 0.0));
        let flat = Path::Jump(JumpPath::constant(Horizon::unit(), 0.0));
        let c = shock_convergence_experiment(&flat, &[1.0, 10.0]).unwrap();
        assert_eq!(c.distances, vec![0.0, 0.0]);
        assert!(shock_convergence_experiment(&flat, &[10.0, 1.0]).is_err());
    }

    #[test]
    fn velocity_differences() {
        let v = velocity_field(&[0.0, 1.0, 3.0], &[0.0, -1.0, -1.0]);
        assert_eq!(v, vec![(0.5, 1.0), (2.0, 0.0)]);
    }
}
