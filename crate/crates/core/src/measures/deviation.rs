use crate::error::{Error, Result};
use crate::traversal::{DistanceMatrix, UNREACHED};

/// Frobenius norm of `a - b`. Both matrices must be complete (no horizon, no
/// disconnected pairs).
pub fn frobenius_deviation(a: &DistanceMatrix, b: &DistanceMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for (j, (&x, &y)) in a.row(i).iter().zip(b.row(i)).enumerate() {
            if x == UNREACHED || y == UNREACHED {
                return Err(Error::Unreached(i, j));
            }
            let diff = x as f64 - y as f64;
            sum += diff * diff;
        }
    }
    Ok(sum.sqrt())
}
