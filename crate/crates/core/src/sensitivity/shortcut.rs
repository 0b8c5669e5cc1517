//! Expected Jacobians under the Bernoulli ReLU model, and the bound comparing
//! a relational shortcut against plain message passing along a unique path.
//!
//! With every ReLU derivative an independent Bernoulli(`ρ_relu`) variable and
//! all weight products of unit norm, the expected GCN Jacobian after `m`
//! layers has norm `ρ_relu (Â^m)_{vu}` with `Â = D^{-1/2} A D^{-1/2}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::model::RelationalDegrees;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::RewireConfig;
use crate::snapshot::{RelationalEdgeSet, SnapshotSequence};
use crate::traversal::{shortest_path_counts, UNREACHED};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityConfig {
    /// Success probability of each ReLU derivative.
    pub rho_relu: f64,
    pub source: usize,
    pub target: usize,
    pub layers: usize,
}

impl SensitivityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho_relu > 0.0 && self.rho_relu <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho_relu must lie in (0, 1], got {}",
                self.rho_relu
            )));
        }
        Ok(())
    }
}

/// Dense `D^{-1/2} A D^{-1/2}`; isolated nodes get zero rows.
pub fn plain_normalized_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| match g.degree(v) {
            0 => 0.0,
            d => 1.0 / (d as f64).sqrt(),
        })
        .collect();
    let mut a = DMatrix::zeros(n, n);
    for v in 0..n {
        for &u in g.neighbors(v) {
            a[(v, u as usize)] = inv_sqrt[v] * inv_sqrt[u as usize];
        }
    }
    a
}

fn matrix_power(a: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let mut p = DMatrix::identity(a.nrows(), a.ncols());
    for _ in 0..m {
        p = &p * a;
    }
    p
}

/// `ρ_relu (Â^m)_{vu}`.
pub fn expected_jacobian_norm(
    g: &Graph,
    v: usize,
    u: usize,
    m: usize,
    rho_relu: f64,
) -> Result<f64> {
    let n = g.node_count();
    for node in [v, u] {
        if node >= n {
            return Err(Error::NodeOutOfRange { node, n });
        }
    }
    if !(0.0..=1.0).contains(&rho_relu) {
        return Err(Error::InvalidParameter(format!(
            "rho_relu must lie in [0, 1], got {rho_relu}"
        )));
    }
    Ok(rho_relu * matrix_power(&plain_normalized_adjacency(g), m)[(v, u)])
}

/// Both sides of the shortcut bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortcutBound {
    /// Distance `r = d(v, u)`.
    pub distance: usize,
    /// Shortcut endpoint `j` on the path, at distance `shortcut` from `v`.
    pub shortcut_node: usize,
    pub shortcut: usize,
    pub d_min: usize,
    /// `‖E[J̃^{(r-l+1)}(v,u)]‖` through the shortcut.
    pub lhs: f64,
    /// Largest right-hand side over `m = 1..=r`.
    pub rhs: f64,
    /// Right-hand side for each `m = 1..=r`.
    pub rhs_per_layers: Vec<f64>,
    pub holds: bool,
}

/// Installs a shortcut `v -> j` at relational level `l - 1`, where `j` is the
/// node at distance `l` on the unique shortest `v`-`u` path, and evaluates
///
/// `‖E[J̃^{(r-l+1)}(v,u)]‖ >= d_min^l / sqrt(d_{v,l-1} d_{j,l-1}) · ‖E[J^{(m)}(v,u)]‖`
///
/// for every `m <= r`. The left side keeps the shortcut term
/// `ρ (Â_{l-1})_{vj} (Â^{r-l})_{ju}`. For `l = 1` the "shortcut" is the
/// existing edge and level-0 degrees are the plain graph degrees.
pub fn shortcut_bound_check(
    g: &Graph,
    v: usize,
    u: usize,
    shortcut: usize,
    rho_relu: f64,
) -> Result<ShortcutBound> {
    let n = g.node_count();
    for node in [v, u] {
        if node >= n {
            return Err(Error::NodeOutOfRange { node, n });
        }
    }
    let (dist, counts) = shortest_path_counts(g, v);
    if dist[u] == UNREACHED {
        return Err(Error::PremiseViolated(format!(
            "{u} is unreachable from {v}"
        )));
    }
    if counts[u] != 1 {
        return Err(Error::PremiseViolated(format!(
            "{} shortest paths join {v} and {u}",
            counts[u]
        )));
    }
    let r = dist[u] as usize;
    if shortcut == 0 || shortcut >= r {
        return Err(Error::InvalidParameter(format!(
            "shortcut distance must lie in 1..{r}, got {shortcut}"
        )));
    }
    // Walk back along the unique path until reaching distance `shortcut`.
    let mut j = u;
    while dist[j] as usize > shortcut {
        j = g
            .neighbors(j)
            .iter()
            .map(|&w| w as usize)
            .find(|&w| dist[w] + 1 == dist[j])
            .expect("reachable node has a predecessor");
    }

    let (d_vj, d_jj) = if shortcut == 1 {
        (g.degree(v) as f64, g.degree(j) as f64)
    } else {
        let level = shortcut - 1;
        let mut levels = Vec::with_capacity(level);
        for l in 1..=level {
            let mut targets = vec![Vec::new(); n];
            if l == level {
                targets[v].push(j as u32);
            }
            levels.push(RelationalEdgeSet::new(l, targets)?);
        }
        let seq = SnapshotSequence::new(g.clone(), levels, RewireConfig::default())?;
        let deg = RelationalDegrees::from_sequence(&seq);
        (deg.get(v, level), deg.get(j, level))
    };
    let coupling = 1.0 / (d_vj * d_jj).sqrt();

    let a_hat = plain_normalized_adjacency(g);
    let lhs = rho_relu * coupling * matrix_power(&a_hat, r - shortcut)[(j, u)];

    let d_min = g.min_degree();
    let factor = (d_min as f64).powi(shortcut as i32) * coupling;
    let mut power = DMatrix::identity(n, n);
    let mut rhs_per_layers = Vec::with_capacity(r);
    for _ in 1..=r {
        power = &power * &a_hat;
        rhs_per_layers.push(factor * rho_relu * power[(v, u)]);
    }
    let rhs = rhs_per_layers.iter().copied().fold(0.0, f64::max);
    Ok(ShortcutBound {
        distance: r,
        shortcut_node: j,
        shortcut,
        d_min,
        lhs,
        rhs,
        rhs_per_layers,
        holds: lhs >= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn path_three_expected_norm() {
        let g = path(3);
        assert!((expected_jacobian_norm(&g, 0, 2, 2, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(expected_jacobian_norm(&g, 0, 2, 1, 1.0).unwrap(), 0.0);
        assert_eq!(expected_jacobian_norm(&g, 0, 2, 2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn seven_node_path_shortcut_three() {
        let out = shortcut_bound_check(&path(7), 0, 6, 3, 1.0).unwrap();
        assert_eq!(out.distance, 6);
        assert_eq!(out.shortcut_node, 3);
        assert!(out.holds);
        assert!(out.lhs > out.rhs);
        // Only m = r reaches u.
        assert!(out.rhs_per_layers[..5].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn neighbor_shortcut() {
        let out = shortcut_bound_check(&path(6), 0, 5, 1, 1.0).unwrap();
        assert_eq!(out.d_min, 1);
        assert!(out.holds);
    }

    #[test]
    fn multiple_paths_rejected() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            shortcut_bound_check(&c4, 0, 2, 1, 1.0),
            Err(Error::PremiseViolated(_))
        ));
        assert!(shortcut_bound_check(&path(5), 0, 4, 4, 1.0).is_err());
    }
}
