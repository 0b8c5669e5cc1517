use nalgebra::DMatrix;

use super::model::{forward_trace, propagators, FeatureMatrix, ModelWeights};
use crate::error::{Error, Result};
use crate::snapshot::SnapshotSequence;

/// Central-difference step.
pub const FD_STEP: f64 = 1e-5;

/// `∂x_v^{(T)} / ∂x_u^{(0)}` by both routes.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianCheck {
    pub finite_difference: DMatrix<f64>,
    pub exact: DMatrix<f64>,
}

impl JacobianCheck {
    pub fn max_abs_diff(&self) -> f64 {
        (&self.finite_difference - &self.exact).amax()
    }

    /// Max-entry difference over the max entry of the exact Jacobian; zero
    /// when both vanish.
    pub fn relative_error(&self) -> f64 {
        let diff = self.max_abs_diff();
        if diff == 0.0 {
            return 0.0;
        }
        diff / self.exact.amax().max(f64::MIN_POSITIVE)
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

fn check_nodes(seq: &SnapshotSequence, v: usize, u: usize) -> Result<()> {
    let n = seq.base().node_count();
    for node in [v, u] {
        if node >= n {
            return Err(Error::NodeOutOfRange { node, n });
        }
    }
    Ok(())
}

/// Exact Jacobian, propagating `diag(act'(pre)) Σ_l P_l W_l J` layer by layer
/// from `J^{(0)}_w = δ_{wu} I`. For ReLU this is the derivative almost
/// everywhere (at kinks the right derivative is not used).
pub fn exact_jacobian(
    seq: &SnapshotSequence,
    x: &FeatureMatrix,
    w: &ModelWeights,
    v: usize,
    u: usize,
) -> Result<DMatrix<f64>> {
    check_nodes(seq, v, u)?;
    let (pre_acts, _) = forward_trace(seq, x, w)?;
    let ops = propagators(seq);
    let n = seq.base().node_count();
    let width = x.width();
    let mut jac: Vec<Option<DMatrix<f64>>> = vec![None; n];
    jac[u] = Some(DMatrix::identity(width, width));
    for (layer, pre) in w.layers.iter().zip(&pre_acts) {
        let mut next: Vec<Option<DMatrix<f64>>> = vec![None; n];
        for (op, weight) in ops.iter().zip(layer) {
            for (node, row) in op.rows.iter().enumerate() {
                let mut acc: Option<DMatrix<f64>> = None;
                for &(src, c) in row {
                    if let Some(j) = &jac[src] {
                        let term = j * c;
                        acc = Some(match acc {
                            Some(a) => a + term,
                            None => term,
                        });
                    }
                }
                if let Some(sum) = acc {
                    let contrib = weight * sum;
                    next[node] = Some(match next[node].take() {
                        Some(a) => a + contrib,
                        None => contrib,
                    });
                }
            }
        }
        for (node, entry) in next.iter_mut().enumerate() {
            if let Some(j) = entry {
                for r in 0..width {
                    let d = w.activation.derivative(pre[(node, r)]);
                    for c in 0..width {
                        j[(r, c)] *= d;
                    }
                }
            }
        }
        jac = next;
    }
    Ok(jac[v]
        .take()
        .unwrap_or_else(|| DMatrix::zeros(width, width)))
}

/// Central finite differences with step [`FD_STEP`], alongside the exact
/// Jacobian. The two agree when no pre-activation sits within `FD_STEP` of a
/// ReLU kink.
pub fn jacobian_fd(
    seq: &SnapshotSequence,
    x: &FeatureMatrix,
    w: &ModelWeights,
    v: usize,
    u: usize,
) -> Result<JacobianCheck> {
    check_nodes(seq, v, u)?;
    let exact = exact_jacobian(seq, x, w, v, u)?;
    let width = x.width();
    let mut fd = DMatrix::<f64>::zeros(width, width);
    for c in 0..width {
        let mut plus = x.clone();
        plus.0[(u, c)] += FD_STEP;
        let mut minus = x.clone();
        minus.0[(u, c)] -= FD_STEP;
        let (_, fp) = forward_trace(seq, &plus, w)?;
        let (_, fm) = forward_trace(seq, &minus, w)?;
        for r in 0..width {
            fd[(r, c)] = (fp[(v, r)] - fm[(v, r)]) / (2.0 * FD_STEP);
        }
    }
    Ok(JacobianCheck {
        finite_difference: fd,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rewire::RewireConfig;
    use crate::sensitivity::Activation;
    use crate::snapshot::RelationalEdgeSet;

    fn path3_seq(extra: Option<(usize, usize)>) -> SnapshotSequence {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        match extra {
            None => SnapshotSequence::identity(g, RewireConfig::default()),
            Some((a, b)) => {
                let mut targets = vec![vec![]; 3];
                targets[a].push(b as u32);
                let set = RelationalEdgeSet::new(1, targets).unwrap();
                SnapshotSequence::new(g, vec![set], RewireConfig::default()).unwrap()
            }
        }
    }

    #[test]
    fn two_hop_entry_on_path() {
        let seq = path3_seq(None);
        let x = FeatureMatrix::random(3, 2, 1);
        let w = ModelWeights::identity(2, 1, 2, Activation::Identity);
        let check = jacobian_fd(&seq, &x, &w, 0, 2).unwrap();
        // (Â²)_{02} = Â_{01} Â_{12} = 1/6 with self-loop degrees (2, 3, 2).
        let expected = DMatrix::<f64>::identity(2, 2) / 6.0;
        assert!((&check.exact - &expected).amax() < 1e-14);
        assert!(check.relative_error() < 1e-6);
        assert!((spectral_norm(&check.exact) - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn one_layer_non_adjacent_is_zero() {
        let seq = path3_seq(None);
        let x = FeatureMatrix::random(3, 2, 1);
        let w = ModelWeights::identity(1, 1, 2, Activation::Identity);
        let check = jacobian_fd(&seq, &x, &w, 0, 2).unwrap();
        assert_eq!(check.finite_difference.amax(), 0.0);
        assert_eq!(check.exact.amax(), 0.0);
    }

    #[test]
    fn relational_shortcut_is_felt_after_one_layer() {
        let seq = path3_seq(Some((0, 2)));
        let x = FeatureMatrix::random(3, 2, 1);
        let w = ModelWeights::identity(1, 2, 2, Activation::Identity);
        let check = jacobian_fd(&seq, &x, &w, 0, 2).unwrap();
        assert!(check.exact.amax() > 0.0);
        assert!(check.relative_error() < 1e-6);
    }

    #[test]
    fn relu_masks_match_fd_away_from_kinks() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let seq = SnapshotSequence::identity(g, RewireConfig::default());
        let x = FeatureMatrix::random(4, 3, 5);
        let w = ModelWeights::seeded_uniform(2, 1, 3, 5, Activation::Relu);
        let check = jacobian_fd(&seq, &x, &w, 0, 2).unwrap();
        assert!(check.max_abs_diff() < 1e-8, "{}", check.max_abs_diff());
    }
}
