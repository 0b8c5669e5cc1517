//! Deterministic test-graph families.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{keyed, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Path {
        nodes: usize,
    },
    Cycle {
        nodes: usize,
    },
    Clique {
        nodes: usize,
    },
    /// Chain `0..chain` whose last node attaches to clique node `chain`
    /// (the junction); the clique occupies `chain..chain + clique_size`.
    Lollipop {
        chain: usize,
        clique_size: usize,
    },
    ErdosRenyi {
        nodes: usize,
        p: f64,
        seed: u64,
    },
}

impl GeneratorSpec {
    /// Erdős–Rényi with edge probability `avg_degree / nodes`.
    pub fn erdos_renyi_avg_degree(nodes: usize, avg_degree: f64, seed: u64) -> Self {
        GeneratorSpec::ErdosRenyi {
            nodes,
            p: if nodes == 0 {
                0.0
            } else {
                avg_degree / nodes as f64
            },
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            GeneratorSpec::Path { nodes } | GeneratorSpec::Clique { nodes } if nodes == 0 => {
                bad("graph needs at least one node".into())
            }
            GeneratorSpec::Cycle { nodes } if nodes < 3 => {
                bad(format!("cycle needs at least 3 nodes, got {nodes}"))
            }
            GeneratorSpec::Lollipop { chain, clique_size } if chain < 1 || clique_size < 3 => bad(
                format!("lollipop needs chain >= 1 and clique >= 3, got {chain} and {clique_size}"),
            ),
            GeneratorSpec::ErdosRenyi { nodes, p, .. } if nodes == 0 || !(p > 0.0 && p <= 1.0) => {
                bad(format!(
                    "erdos-renyi needs nodes >= 1 and 0 < p <= 1, got {nodes} and {p}"
                ))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    match *spec {
        GeneratorSpec::Path { nodes } => path(nodes),
        GeneratorSpec::Cycle { nodes } => {
            Graph::from_edges(nodes, (0..nodes).map(|i| (i, (i + 1) % nodes)))
        }
        GeneratorSpec::Clique { nodes } => Graph::from_edges(nodes, clique_edges(0, nodes)),
        GeneratorSpec::Lollipop { chain, clique_size } => {
            let chain_edges = (0..chain).map(|i| (i, i + 1));
            Graph::from_edges(
                chain + clique_size,
                chain_edges.chain(clique_edges(chain, clique_size)),
            )
        }
        GeneratorSpec::ErdosRenyi { nodes, p, seed } => Ok(erdos_renyi(nodes, p, seed)),
    }
}

fn path(nodes: usize) -> Result<Graph> {
    Graph::from_edges(nodes, (1..nodes).map(|i| (i - 1, i)))
}

fn clique_edges(start: usize, size: usize) -> impl Iterator<Item = (usize, usize)> {
    (start..start + size).flat_map(move |i| (i + 1..start + size).map(move |j| (i, j)))
}

/// Each pair `i < j` is an edge iff the `(j - i)`-th draw of the stream keyed
/// on `(seed, i)` falls below `p`.
fn erdos_renyi(nodes: usize, p: f64, seed: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..nodes {
        let mut rng = keyed(seed, Stream::ErdosRenyi, i as u64, 0);
        for j in i + 1..nodes {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(nodes, edges).expect("generated edges are in range")
}

/// Index of the node shared by the chain and the clique.
pub fn lollipop_junction(chain: usize) -> usize {
    chain
}
