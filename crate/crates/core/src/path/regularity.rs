//! Empirical test of half-line regularity for truncated BV Lévy paths.
//!
//! A replica is informative when its truncated path on `[0, δ]` jumps at
//! least once. It counts as *staying positive* when the path is strictly
//! positive from its first jump up to `δ`, and as *staying negative*
//! symmetrically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::levy::{simulate_bv_levy, LevyMeasureSpec};
use super::Horizon;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::stats::{wilson, Interval};

/// Probability level the confidence bounds are compared against.
pub const DECISIVE: f64 = 0.9;
/// Informative replicas needed before ruling out dissymmetry.
pub const MIN_INFORMATIVE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityVerdict {
    /// Immediately positive to the right of 0.
    LikelyDownwards,
    /// Immediately negative to the right of 0.
    LikelyUpwards,
    LikelyNonDissymmetric,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub eps: f64,
    pub informative: usize,
    pub p_positive: f64,
    pub ci_positive: Option<Interval>,
    pub p_negative: f64,
    pub ci_negative: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityEstimate {
    pub window: f64,
    pub ladder: Vec<LadderPoint>,
    /// `p_positive` at the finest level minus at the coarsest.
    pub trend: f64,
    pub verdict: RegularityVerdict,
}

#[derive(Clone, Copy)]
enum Sign {
    None,
    Positive,
    Negative,
    Mixed,
}

fn classify(spec: &LevyMeasureSpec, eps: f64, window: f64, rng: RngStream) -> Result<Sign> {
    let path = simulate_bv_levy(spec, eps, Horizon::new(0.0, window)?, rng)?.path;
    let Some(&first) = path.times.first() else {
        return Ok(Sign::None);
    };
    let sk = path.skeleton();
    let start = sk.index_of(first).expect("jump time is a node");
    let (mut pos, mut neg) = (true, true);
    for i in start..sk.len() {
        let lo = if i == start { sk.value[i] } else { sk.floor(i) };
        let hi = if i == start { sk.value[i] } else { sk.star(i) };
        pos &= lo > 0.0;
        neg &= hi < 0.0;
    }
    Ok(match (pos, neg) {
        (true, _) => Sign::Positive,
        (_, true) => Sign::Negative,
        _ => Sign::Mixed,
    })
}

/// Probe window defaults to `0.01` (a hundredth of a unit horizon).
pub fn estimate_half_line_regularity(
    spec: &LevyMeasureSpec,
    ladder: &[f64],
    replicas: usize,
    window: f64,
    rng: RngStream,
) -> Result<RegularityEstimate> {
    if ladder.is_empty() || ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter("ε ladder must be non-empty and strictly decreasing".into()));
    }
    if replicas < 100 {
        return Err(Error::InvalidParameter(format!("{replicas} replicas; at least 100 required")));
    }
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::InvalidParameter(format!("probe window {window} must be positive")));
    }
    spec.validate()?;
    let mut points = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let signs: Vec<Sign> = (0..replicas as u64)
            .into_par_iter()
            .map(|i| classify(spec, eps, window, rng.split(i)))
            .collect::<Result<_>>()?;
        let informative = signs.iter().filter(|s| !matches!(s, Sign::None)).count();
        let pos = signs.iter().filter(|s| matches!(s, Sign::Positive)).count();
        let neg = signs.iter().filter(|s| matches!(s, Sign::Negative)).count();
        let frac = |k: usize| if informative == 0 { 0.0 } else { k as f64 / informative as f64 };
        points.push(LadderPoint {
            eps,
            informative,
            p_positive: frac(pos),
            ci_positive: wilson(pos, informative),
            p_negative: frac(neg),
            ci_negative: wilson(neg, informative),
        });
    }
    let last = points.last().unwrap();
    let verdict = match (last.ci_positive, last.ci_negative) {
        (Some(p), _) if p.lo >= DECISIVE => RegularityVerdict::LikelyDownwards,
        (_, Some(n)) if n.lo >= DECISIVE => RegularityVerdict::LikelyUpwards,
        (Some(p), Some(n)) if p.hi < DECISIVE && n.hi < DECISIVE && last.informative >= MIN_INFORMATIVE => {
            RegularityVerdict::LikelyNonDissymmetric
        }
        _ => RegularityVerdict::Inconclusive,
    };
    let trend = last.p_positive - points[0].p_positive;
    Ok(RegularityEstimate { window, ladder: points, trend, verdict })
}
