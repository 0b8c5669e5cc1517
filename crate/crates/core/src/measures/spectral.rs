use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ascending eigenvalues of `I - D^{-1/2} A D^{-1/2}`.
pub fn normalized_laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedNode(v));
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut delta = DMatrix::<f64>::identity(n, n);
    for v in 0..n {
        for &u in g.neighbors(v) {
            let u = u as usize;
            delta[(v, u)] = -inv_sqrt[v] * inv_sqrt[u];
        }
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(delta)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Second-smallest eigenvalue of the normalized Laplacian, clamped to `[0, 2]`.
pub fn spectral_gap(g: &Graph) -> Result<f64> {
    if g.node_count() < 2 {
        return Err(Error::InvalidParameter(
            "spectral gap needs at least two nodes".into(),
        ));
    }
    let eig = normalized_laplacian_spectrum(g)?;
    Ok(eig[1].clamp(0.0, 2.0))
}
