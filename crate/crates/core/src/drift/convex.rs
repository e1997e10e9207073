//! Adding a convex drift can only remove extremal superior times.

use serde::{Deserialize, Serialize};

use super::{on_common_skeleton, DriftSpec, DEFAULT_SAMPLES_PER_GAP};
use crate::error::{Error, Result};
use crate::hull::extremal::extremal_superior_times;
use crate::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionCheck {
    pub holds: bool,
    /// First time of `E⁺(X + f)` missing from `E⁺(X)`.
    pub violation: Option<f64>,
    pub drifted: Vec<f64>,
    pub base: Vec<f64>,
}

/// Checks `E⁺(X + f) ⊆ E⁺(X)` with both sets taken on the same skeleton.
pub fn convex_drift_inclusion_check(x: &Path, f: &DriftSpec) -> Result<InclusionCheck> {
    f.validate()?;
    if !f.is_convex() {
        return Err(Error::InvalidParameter("drift must be convex".into()));
    }
    let (base, drifted) = on_common_skeleton(x, f, DEFAULT_SAMPLES_PER_GAP)?;
    let e_base = extremal_superior_times(&base).times();
    let e_drift = extremal_superior_times(&drifted).times();
    let violation = e_drift.iter().copied().find(|t| e_base.binary_search_by(|s| s.total_cmp(t)).is_err());
    Ok(InclusionCheck { holds: violation.is_none(), violation, drifted: e_drift, base: e_base })
}
