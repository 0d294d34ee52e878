//! Bounded global dimension from resolutions of the simple modules.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cover::{minimal_resolution, ResolutionOptions, ResolutionStatus};
use super::LeftModule;
use crate::algebra::FdAlgebra;
use crate::error::ModuleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjectiveDimension {
    Exact { value: usize },
    /// The resolution did not terminate within the computed degrees.
    AtLeast { value: usize },
    /// A syzygy is isomorphic to an earlier one.
    Infinite { start: usize, period: usize },
}

impl ProjectiveDimension {
    fn rank(self) -> (u8, usize) {
        match self {
            ProjectiveDimension::Exact { value } => (0, value),
            ProjectiveDimension::AtLeast { value } => (1, value),
            ProjectiveDimension::Infinite { .. } => (2, 0),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ProjectiveDimension::Exact { .. })
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ProjectiveDimension::Infinite { .. })
    }
}

impl std::fmt::Display for ProjectiveDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveDimension::Exact { value } => write!(f, "{value}"),
            ProjectiveDimension::AtLeast { value } => write!(f, ">= {value}"),
            ProjectiveDimension::Infinite { start, period } => {
                write!(f, "infinite (syzygy {} isomorphic to syzygy {start})", start + period)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlDimReport {
    /// `(vertex label, projective dimension of the simple)`.
    pub simples: Vec<(String, ProjectiveDimension)>,
    pub overall: ProjectiveDimension,
}

/// Resolves every simple module, in parallel, up to `opts.max_degree`.
pub fn global_dimension_bound(alg: &Arc<FdAlgebra>, opts: &ResolutionOptions) -> Result<GlDimReport, ModuleError> {
    let simples = (0..alg.rank())
        .into_par_iter()
        .map(|v| {
            let res = minimal_resolution(&LeftModule::simple(alg.clone(), v), opts)?;
            let pd = match res.status {
                ResolutionStatus::Terminated { length } => ProjectiveDimension::Exact { value: length },
                ResolutionStatus::Truncated { degree } => ProjectiveDimension::AtLeast { value: degree + 1 },
                ResolutionStatus::Periodic { start, period } => ProjectiveDimension::Infinite { start, period },
            };
            Ok((alg.vertices()[v].clone(), pd))
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    let overall = simples
        .iter()
        .map(|(_, pd)| *pd)
        .max_by_key(|pd| pd.rank())
        .unwrap_or(ProjectiveDimension::Exact { value: 0 });
    Ok(GlDimReport { simples, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::dual_numbers;

    #[test]
    fn dual_numbers_have_infinite_global_dimension() {
        let a = Arc::new(dual_numbers());
        let r = global_dimension_bound(&a, &ResolutionOptions::default()).unwrap();
        assert_eq!(r.overall, ProjectiveDimension::Infinite { start: 0, period: 1 });
    }

    #[test]
    fn truncation_gives_lower_bound() {
        let a = Arc::new(dual_numbers());
        let opts = ResolutionOptions {
            detect_period: false,
            ..ResolutionOptions::to_degree(2)
        };
        let r = global_dimension_bound(&a, &opts).unwrap();
        assert_eq!(r.overall, ProjectiveDimension::AtLeast { value: 3 });
    }
}
