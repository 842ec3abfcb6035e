//! Run configuration: tolerances and limits shared by the command-line
//! front end, loadable from JSON with per-field defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::FrameNormalization;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Largest accepted eigenpair defect, per vertex.
    pub eig_residual: f64,
    /// Slack of the `λ ≤ ω` band membership test.
    pub eps_eig: f64,
    /// Target accuracy of iterative reconstruction.
    pub recon_tol: f64,
    /// Relative cutoff for rank and frame decisions.
    pub rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_residual: 1e-9,
            eps_eig: 1e-9,
            recon_tol: 1e-8,
            rank_tol: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub cheeger_max_n: usize,
    pub exhaustive_max_n: usize,
    pub neumann_max_iter: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            cheeger_max_n: 20,
            exhaustive_max_n: 12,
            neumann_max_iter: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub limits: Limits,
    pub frame_normalization: FrameNormalization,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, value) in [
            ("eig_residual", t.eig_residual),
            ("eps_eig", t.eps_eig),
            ("recon_tol", t.recon_tol),
            ("rank_tol", t.rank_tol),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive"
                )));
            }
        }
        let l = &self.limits;
        for (name, value) in [
            ("cheeger_max_n", l.cheeger_max_n),
            ("exhaustive_max_n", l.exhaustive_max_n),
            ("neumann_max_iter", l.neumann_max_iter),
        ] {
            if value == 0 {
                return Err(Error::InvalidParameter(format!(
                    "limit {name} must be positive"
                )));
            }
        }
        Ok(())
    }
}
