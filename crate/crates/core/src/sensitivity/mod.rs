//! Relational GCN over a snapshot sequence and its Jacobian instrumentation.
//!
//! The forward pass aggregates the input graph with the usual self-loop
//! normalization and every relational level with its own weight matrix,
//! normalized by the realized relational out-degrees. Jacobians are available
//! exactly (propagating derivative masks) and by central finite differences.
//! The closed-form expected Jacobians under the Bernoulli ReLU model back the
//! over-squashing bound in [`shortcut_bound_check`].

mod jacobian;
mod model;
mod shortcut;

pub use jacobian::{exact_jacobian, jacobian_fd, spectral_norm, JacobianCheck, FD_STEP};
pub use model::{
    gcn_forward, laser_gcn_forward, Activation, FeatureMatrix, ModelWeights, RelationalDegrees,
};
pub use shortcut::{
    expected_jacobian_norm, plain_normalized_adjacency, shortcut_bound_check, SensitivityConfig,
    ShortcutBound,
};
