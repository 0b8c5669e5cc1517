use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::DEFAULT_WALK_K;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    /// Lowest walk-count members of each orbit.
    MuGuided,
    /// Uniformly random members of each orbit.
    UniformRandom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RewireConfig {
    /// Number of relational levels `L`.
    pub snapshots: usize,
    /// Fraction `ρ` of each orbit to connect. Zero disables rewiring.
    pub rho_density: f64,
    pub walk_k: u32,
    pub seed: u64,
    /// Scale of the Gaussian tie-break noise added to walk counts.
    pub tie_sigma: f64,
    /// Connect at least one orbit member when the rounded count is zero.
    pub min_one: bool,
    pub mode: SelectionMode,
}

impl Default for RewireConfig {
    fn default() -> Self {
        RewireConfig {
            snapshots: 1,
            rho_density: 0.5,
            walk_k: DEFAULT_WALK_K,
            seed: 0,
            tie_sigma: 1e-9,
            min_one: true,
            mode: SelectionMode::MuGuided,
        }
    }
}

impl RewireConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.rho_density) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in [0, 1], got {}",
                self.rho_density
            )));
        }
        if self.walk_k < 1 {
            return Err(Error::InvalidParameter("walk_k must be >= 1".into()));
        }
        if !(self.tie_sigma > 0.0 && self.tie_sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tie_sigma must be positive, got {}",
                self.tie_sigma
            )));
        }
        Ok(())
    }

    /// True when the configuration adds no relational levels.
    pub fn is_disabled(&self) -> bool {
        self.snapshots == 0 || self.rho_density == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RewireConfig::default().validate().is_ok());
        for bad in [
            RewireConfig {
                rho_density: 1.2,
                ..Default::default()
            },
            RewireConfig {
                rho_density: -0.1,
                ..Default::default()
            },
            RewireConfig {
                tie_sigma: 0.0,
                ..Default::default()
            },
            RewireConfig {
                walk_k: 0,
                ..Default::default()
            },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn serde_names() {
        let json = serde_json::to_value(RewireConfig::default()).unwrap();
        assert_eq!(json["mode"], "mu_guided");
        assert_eq!(json["walk_k"], 8);
    }
}
