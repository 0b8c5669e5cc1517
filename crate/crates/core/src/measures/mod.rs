//! Connectivity and locality measures, plus the evaluation metrics used to
//! judge a rewiring: effective resistance, spectral gap and distance-matrix
//! deviation.

mod deviation;
mod mu_nu;
mod report;
mod resistance;
mod spectral;

pub use deviation::frobenius_deviation;
pub use mu_nu::{compute_mu_nu, MeasurePair, DEFAULT_WALK_K};
pub use report::{evaluate, round_sig, MetricsReport};
pub use resistance::{
    effective_resistance, total_effective_resistance, LaplacianPseudoinverse, Resistance,
    NULL_SPACE_CUTOFF,
};
pub use spectral::{normalized_laplacian_spectrum, spectral_gap};
