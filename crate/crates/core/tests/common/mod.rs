//! Independent oracles shared by the integration tests. Nothing here calls the
//! hull code under test.
#![allow(dead_code)]

use extremal::path::Path;

/// Frozen harmonic numbers `H_1..H_6`, the expected face counts of random-walk
/// majorants with exchangeable continuous increments.
pub const HARMONIC: [f64; 6] = [1.0, 1.5, 11.0 / 6.0, 25.0 / 12.0, 137.0 / 60.0, 49.0 / 20.0];

/// `H_256`, from the exact rational sum.
pub const H_256: f64 = 6.124_344_962_817_281;

/// Indices of upper-hull extreme points by the O(n³) chord test: an interior
/// point is extremal iff it lies strictly above every chord through a point on
/// each side of it. Endpoints are always extremal.
pub fn brute_upper_vertices(xs: &[f64], ys: &[f64]) -> Vec<usize> {
    let n = xs.len();
    (0..n)
        .filter(|&i| {
            if i == 0 || i + 1 == n {
                return true;
            }
            for j in 0..i {
                for k in i + 1..n {
                    let chord = ys[j] + (ys[k] - ys[j]) * (xs[i] - xs[j]) / (xs[k] - xs[j]);
                    if ys[i] <= chord {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

/// Same oracle in exact rational arithmetic for integer inputs.
pub fn brute_upper_vertices_exact(xs: &[i64], ys: &[i64]) -> Vec<usize> {
    let n = xs.len();
    (0..n)
        .filter(|&i| {
            if i == 0 || i + 1 == n {
                return true;
            }
            !(0..i).any(|j| {
                (i + 1..n).any(|k| {
                    // y_i <= chord  <=>  (y_i - y_j)(x_k - x_j) <= (y_k - y_j)(x_i - x_j)
                    (ys[i] - ys[j]) as i128 * (xs[k] - xs[j]) as i128
                        <= (ys[k] - ys[j]) as i128 * (xs[i] - xs[j]) as i128
                })
            })
        })
        .collect()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Mean face count of the walk majorant over all orderings of `increments`.
pub fn enumerated_face_mean(increments: &[f64]) -> f64 {
    let n = increments.len();
    let perms = permutations(n);
    let xs: Vec<f64> = (0..=n).map(|k| k as f64).collect();
    let total: usize = perms
        .iter()
        .map(|p| {
            let mut ys = vec![0.0];
            for &i in p {
                ys.push(ys.last().unwrap() + increments[i]);
            }
            brute_upper_vertices(&xs, &ys).len() - 1
        })
        .sum();
    total as f64 / perms.len() as f64
}

/// Largest maximizer of `ψ0*(a) − (x − a)²/(2t)` over the skeleton of `psi0`.
pub fn brute_hopf_cole(psi0: &Path, t: f64, x: f64) -> (f64, f64) {
    let sk = psi0.skeleton();
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for i in 0..sk.len() {
        let a = sk.times[i];
        let v = sk.star(i) - (x - a) * (x - a) / (2.0 * t);
        if v >= best.0 {
            best = (v, a);
        }
    }
    best
}

/// Time of the first (and last) maximum of `X*` by direct scan.
pub fn brute_argmax(psi0: &Path) -> (f64, f64, f64) {
    let sk = psi0.skeleton();
    let mut sup = f64::NEG_INFINITY;
    for i in 0..sk.len() {
        sup = sup.max(sk.star(i));
    }
    let first = (0..sk.len()).find(|&i| sk.star(i) == sup).unwrap();
    let last = (0..sk.len()).rev().find(|&i| sk.star(i) == sup).unwrap();
    (sup, sk.times[first], sk.times[last])
}
