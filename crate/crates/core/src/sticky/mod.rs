//! Sticky-particle (adhesion) dynamics on the line.
//!
//! Clumps move freely and merge on contact, conserving mass and momentum.
//! Events are processed one at a time in time order; simultaneous impacts are
//! taken left to right.

pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use oracle::{partition_oracle, verify_discrete_theorem, TheoremCheck};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clump {
    pub mass: f64,
    pub velocity: f64,
    /// Position at the system clock.
    pub position: f64,
    /// Constituent particle indices `lo..=hi`.
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClumpSystem {
    pub clumps: Vec<Clump>,
    pub clock: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionEvent {
    /// Index of the left clump of the colliding pair.
    pub left: usize,
    pub time: f64,
    pub position: f64,
}

/// One row of the event log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub t: f64,
    pub left_index: usize,
    pub x: f64,
    pub mass_new: f64,
    pub v_new: f64,
}

/// Unit masses at strictly increasing positions, clock 0.
pub fn init_system(positions: &[f64], velocities: &[f64]) -> Result<ClumpSystem> {
    if positions.len() != velocities.len() || positions.is_empty() {
        return Err(Error::InvalidParameter("need matching, non-empty positions and velocities".into()));
    }
    if positions.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::ContractViolation("positions must increase strictly".into()));
    }
    if positions.iter().chain(velocities).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("positions and velocities must be finite".into()));
    }
    let clumps = positions
        .iter()
        .zip(velocities)
        .enumerate()
        .map(|(k, (&x, &v))| Clump { mass: 1.0, velocity: v, position: x, lo: k, hi: k })
        .collect();
    Ok(ClumpSystem { clumps, clock: 0.0 })
}

/// Unit spacing `x_k = k`.
pub fn unit_positions(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64).collect()
}

impl ClumpSystem {
    pub fn total_mass(&self) -> f64 {
        self.clumps.iter().map(|c| c.mass).sum()
    }

    pub fn total_momentum(&self) -> f64 {
        self.clumps.iter().map(|c| c.mass * c.velocity).sum()
    }

    pub fn partition(&self) -> Vec<(usize, usize)> {
        self.clumps.iter().map(|c| (c.lo, c.hi)).collect()
    }

    fn impact(&self, i: usize) -> Option<(f64, f64)> {
        let (a, b) = (&self.clumps[i], &self.clumps[i + 1]);
        if a.velocity <= b.velocity {
            return None;
        }
        let dt = (b.position - a.position) / (a.velocity - b.velocity);
        Some((self.clock + dt, a.position + a.velocity * dt))
    }
}

/// Earliest impact between adjacent clumps; ties go to the smaller left index.
pub fn next_collision(system: &ClumpSystem) -> Option<CollisionEvent> {
    let mut best: Option<CollisionEvent> = None;
    for i in 0..system.clumps.len().saturating_sub(1) {
        if let Some((time, position)) = system.impact(i) {
            if best.is_none_or(|b| time < b.time) {
                best = Some(CollisionEvent { left: i, time, position });
            }
        }
    }
    best
}

/// Applies `event`, advancing every clump to the impact time.
pub fn merge(system: &ClumpSystem, event: &CollisionEvent) -> Result<ClumpSystem> {
    let i = event.left;
    if i + 1 >= system.clumps.len() {
        return Err(Error::StaleEvent(format!("no clump pair at index {i}")));
    }
    let Some((time, position)) = system.impact(i) else {
        return Err(Error::StaleEvent(format!(
            "clumps {i} and {} are not approaching",
            i + 1
        )));
    };
    let scale = time.abs().max(1.0);
    if (time - event.time).abs() > 1e-12 * scale || event.time < system.clock {
        return Err(Error::StaleEvent(format!(
            "event at {} does not match predicted impact at {time}",
            event.time
        )));
    }
    let dt = time - system.clock;
    let mut clumps = Vec::with_capacity(system.clumps.len() - 1);
    for (k, c) in system.clumps.iter().enumerate() {
        if k == i + 1 {
            continue;
        }
        if k == i {
            let d = &system.clumps[i + 1];
            let mass = c.mass + d.mass;
            clumps.push(Clump {
                mass,
                velocity: (c.mass * c.velocity + d.mass * d.velocity) / mass,
                position,
                lo: c.lo,
                hi: d.hi,
            });
        } else {
            clumps.push(Clump { position: c.position + c.velocity * dt, ..c.clone() });
        }
    }
    Ok(ClumpSystem { clumps, clock: time })
}

/// Runs until no pair approaches; at most `N − 1` events.
pub fn run_to_completion(system: &ClumpSystem) -> Result<(ClumpSystem, Vec<EventRecord>)> {
    let mut s = system.clone();
    let mut log = Vec::new();
    while let Some(ev) = next_collision(&s) {
        s = merge(&s, &ev)?;
        let c = &s.clumps[ev.left];
        log.push(EventRecord { t: ev.time, left_index: ev.left, x: ev.position, mass_new: c.mass, v_new: c.velocity });
    }
    Ok((s, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_contracts() {
        let s = init_system(&[0.0], &[1.0]).unwrap();
        assert!(next_collision(&s).is_none());
        let s = init_system(&[0.0, 1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(s.clumps.len(), 2);
        assert!(init_system(&[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn prediction() {
        let s = init_system(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert!(next_collision(&s).is_none());
        let s = init_system(&[0.0, 1.0], &[1.0, 0.0]).unwrap();
        let e = next_collision(&s).unwrap();
        assert_eq!((e.left, e.time, e.position), (0, 1.0, 1.0));
    }

    #[test]
    fn simultaneous_tie_takes_left_pair() {
        let s = init_system(&[0.0, 1.0, 2.0, 3.0], &[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(next_collision(&s).unwrap().left, 0);
    }

    #[test]
    fn merge_formula() {
        let s = init_system(&[0.0, 1.0], &[2.0, 0.0]).unwrap();
        let e = next_collision(&s).unwrap();
        let m = merge(&s, &e).unwrap();
        assert_eq!(m.clumps.len(), 1);
        assert_eq!((m.clumps[0].mass, m.clumps[0].velocity), (2.0, 1.0));
        assert_eq!(m.clock, 0.5);
    }

    #[test]
    fn equal_velocities_never_merge() {
        let s = init_system(&[0.0, 1.0], &[1.0, 1.0]).unwrap();
        let fake = CollisionEvent { left: 0, time: 1.0, position: 1.0 };
        assert!(matches!(merge(&s, &fake), Err(Error::StaleEvent(_))));
    }

    #[test]
    fn stale_time_rejected() {
        let s = init_system(&[0.0, 1.0], &[1.0, 0.0]).unwrap();
        let e = CollisionEvent { left: 0, time: 2.0, position: 2.0 };
        assert!(matches!(merge(&s, &e), Err(Error::StaleEvent(_))));
    }

    #[test]
    fn three_particle_trace() {
        let s = init_system(&[0.0, 1.0, 2.0], &[0.6, 1.0, 0.0]).unwrap();
        let (end, log) = run_to_completion(&s).unwrap();
        assert_eq!(log.len(), 2);
        assert_eq!((log[0].t, log[0].x, log[0].v_new), (1.0, 2.0, 0.5));
        assert_eq!(end.partition(), vec![(0, 2)]);
        assert!((end.clumps[0].velocity - 1.6 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn increasing_and_equal_velocities_do_nothing() {
        for v in [[0.0, 0.5, 2.0], [1.0, 1.0, 1.0]] {
            let (end, log) = run_to_completion(&init_system(&unit_positions(3), &v).unwrap()).unwrap();
            assert!(log.is_empty());
            assert_eq!(end.partition(), vec![(0, 0), (1, 1), (2, 2)]);
        }
    }
}
