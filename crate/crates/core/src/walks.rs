//! Walk counts on the self-loop augmented adjacency `A + I`.
//!
//! `((A + I)^k)[v][u]` counts walks of length at most `k` from `v` to `u`.
//! Counts are carried as `f64`: they grow exponentially in `k` and only their
//! relative order is consumed by the rewiring.

use rayon::prelude::*;

use crate::graph::Graph;

/// Dense `n x n` matrix of walk counts.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl ConnectivityMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

/// One multiplication `x <- (A + I) x`, writing into `out`.
#[inline]
pub(crate) fn step_walks(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (w, slot) in out.iter_mut().enumerate() {
        let mut acc = x[w];
        for &nb in g.neighbors(w) {
            acc += x[nb as usize];
        }
        *slot = acc;
    }
}

/// Row `v` of `(A + I)^k`, by `k` repeated multiplications of the unit vector.
pub fn walk_count_row(g: &Graph, v: usize, k: u32) -> Vec<f64> {
    let n = g.node_count();
    let mut cur = vec![0.0; n];
    let mut next = vec![0.0; n];
    cur[v] = 1.0;
    for _ in 0..k {
        step_walks(g, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// `(A + I)^k` built row by row; rows are independent so the result does not
/// depend on the thread count.
pub fn walk_count_matrix(g: &Graph, k: u32) -> ConnectivityMatrix {
    let n = g.node_count();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|v| walk_count_row(g, v, k))
        .collect();
    ConnectivityMatrix {
        n,
        data: rows.into_iter().flatten().collect(),
    }
}
