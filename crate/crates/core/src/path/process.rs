//! Serializable description of every process the toolkit can sample.

use serde::{Deserialize, Serialize};

use super::diffusion::{simulate_brownian, simulate_ito, simulate_random_walk, Coefficient};
use super::levy::{simulate_bv_levy, simulate_compound_poisson, JumpLaw, LevyMeasureSpec};
use super::{Grid, Horizon, Path};
use crate::error::Result;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "process", rename_all = "snake_case")]
pub enum ProcessSpec {
    /// Lévy path; `epsilon` is required when the measure is infinite.
    Levy {
        measure: LevyMeasureSpec,
        #[serde(default)]
        epsilon: Option<f64>,
        horizon: Horizon,
    },
    Brownian { horizon: Horizon, steps: usize },
    IntegratedBrownian { horizon: Horizon, steps: usize },
    Ito { phi: Coefficient, psi: Coefficient, horizon: Horizon, steps: usize },
    RandomWalk { law: JumpLaw, steps: usize },
}

impl ProcessSpec {
    pub fn simulate(&self, rng: RngStream) -> Result<Path> {
        Ok(match self {
            ProcessSpec::Levy { measure, epsilon: Some(eps), horizon } => {
                simulate_bv_levy(measure, *eps, *horizon, rng)?.path.into()
            }
            ProcessSpec::Levy { measure, epsilon: None, horizon } => {
                simulate_compound_poisson(measure, *horizon, rng)?.into()
            }
            ProcessSpec::Brownian { horizon, steps } => simulate_brownian(Grid::over(*horizon, *steps)?, rng).into(),
            ProcessSpec::IntegratedBrownian { horizon, steps } => {
                simulate_brownian(Grid::over(*horizon, *steps)?, rng).integrate().into()
            }
            ProcessSpec::Ito { phi, psi, horizon, steps } => simulate_ito(
                |t, x| phi.eval(t, x),
                |t, x| psi.eval(t, x),
                Grid::over(*horizon, *steps)?,
                rng,
            )?
            .into(),
            ProcessSpec::RandomWalk { law, steps } => simulate_random_walk(law, *steps, rng)?.into(),
        })
    }
}
