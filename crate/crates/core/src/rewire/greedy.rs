//! Spectral baseline: repeatedly connect the non-adjacent pair with the
//! largest effective resistance.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::LaplacianPseudoinverse;

// Relative slack under which two resistances count as tied.
const TIE_RTOL: f64 = 1e-12;

/// Edges added by `num_edges` greedy steps, in insertion order. Ties go to
/// the lexicographically smallest pair.
pub fn spectral_greedy_edges(g: &Graph, num_edges: usize) -> Result<Vec<(usize, usize)>> {
    if num_edges == 0 {
        return Err(Error::InvalidParameter("num_edges must be >= 1".into()));
    }
    let mut current = g.clone();
    let mut added = Vec::with_capacity(num_edges);
    for _ in 0..num_edges {
        if current.is_complete() {
            return Err(Error::AlreadyComplete);
        }
        let pinv = LaplacianPseudoinverse::new(&current)?;
        let n = current.node_count();
        let mut best: Option<(f64, usize, usize)> = None;
        for u in 0..n {
            for v in u + 1..n {
                if current.has_edge(u, v) {
                    continue;
                }
                let r = pinv.resistance(u, v);
                let better = match best {
                    None => true,
                    Some((b, _, _)) => r > b + TIE_RTOL * b.abs().max(1.0),
                };
                if better {
                    best = Some((r, u, v));
                }
            }
        }
        let (_, u, v) = best.expect("incomplete graph has a non-adjacent pair");
        added.push((u, v));
        current = current.with_added_edges([(u, v)])?;
    }
    Ok(added)
}

pub fn spectral_greedy_add(g: &Graph, num_edges: usize) -> Result<Graph> {
    let edges = spectral_greedy_edges(g, num_edges)?;
    g.with_added_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_gets_its_only_missing_edge() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(spectral_greedy_edges(&g, 1).unwrap(), vec![(0, 2)]);
        assert!(spectral_greedy_add(&g, 1).unwrap().is_complete());
    }

    #[test]
    fn complete_graph_rejected() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(
            spectral_greedy_add(&k4, 1),
            Err(Error::AlreadyComplete)
        ));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            spectral_greedy_add(&p3, 2),
            Err(Error::AlreadyComplete)
        ));
    }

    #[test]
    fn longest_path_closes_into_cycle() {
        let g = Graph::from_edges(6, (1..6).map(|i| (i - 1, i))).unwrap();
        assert_eq!(spectral_greedy_edges(&g, 1).unwrap(), vec![(0, 5)]);
    }
}
