use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::traversal::is_connected;

/// Eigenvalues of the combinatorial Laplacian below this are treated as the
/// null space when forming the pseudoinverse.
pub const NULL_SPACE_CUTOFF: f64 = 1e-10;

/// Dense pseudoinverse `L⁺` of the combinatorial Laplacian `L = D - A`.
#[derive(Clone, Debug)]
pub struct LaplacianPseudoinverse {
    pinv: DMatrix<f64>,
    edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resistance {
    pub resistance: f64,
    /// `2 |E| R(u, v)`.
    pub commute_time: f64,
}

impl LaplacianPseudoinverse {
    pub fn new(g: &Graph) -> Result<Self> {
        if !is_connected(g) {
            return Err(Error::Disconnected);
        }
        let n = g.node_count();
        let mut lap = DMatrix::<f64>::zeros(n, n);
        for v in 0..n {
            lap[(v, v)] = g.degree(v) as f64;
            for &u in g.neighbors(v) {
                lap[(v, u as usize)] = -1.0;
            }
        }
        let eig = SymmetricEigen::new(lap);
        let inv = eig.eigenvalues.map(|lambda| {
            if lambda.abs() > NULL_SPACE_CUTOFF {
                1.0 / lambda
            } else {
                0.0
            }
        });
        let q = &eig.eigenvectors;
        let scaled = DMatrix::from_fn(n, n, |i, j| q[(i, j)] * inv[j]);
        Ok(LaplacianPseudoinverse {
            pinv: scaled * q.transpose(),
            edges: g.edge_count(),
        })
    }

    pub fn dim(&self) -> usize {
        self.pinv.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.pinv
    }

    /// `(e_u - e_v)ᵀ L⁺ (e_u - e_v)`.
    pub fn resistance(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        let p = &self.pinv;
        p[(u, u)] + p[(v, v)] - 2.0 * p[(u, v)]
    }

    pub fn commute_time(&self, u: usize, v: usize) -> f64 {
        2.0 * self.edges as f64 * self.resistance(u, v)
    }

    /// `Σ_{u<v} R(u, v) = n · trace(L⁺)`.
    pub fn total_via_trace(&self) -> f64 {
        self.dim() as f64 * self.pinv.trace()
    }

    /// `Σ_{u<v} R(u, v)` summed pair by pair.
    pub fn total_pairwise(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| self.resistance(u, v))
            .sum()
    }
}

fn check_node(g: &Graph, v: usize) -> Result<()> {
    if v >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: v,
            n: g.node_count(),
        });
    }
    Ok(())
}

pub fn effective_resistance(g: &Graph, u: usize, v: usize) -> Result<Resistance> {
    check_node(g, u)?;
    check_node(g, v)?;
    let pinv = LaplacianPseudoinverse::new(g)?;
    Ok(Resistance {
        resistance: pinv.resistance(u, v),
        commute_time: pinv.commute_time(u, v),
    })
}

/// Total effective resistance `n · trace(L⁺)`.
pub fn total_effective_resistance(g: &Graph) -> Result<f64> {
    Ok(LaplacianPseudoinverse::new(g)?.total_via_trace())
}
