//! Independent oracles shared by the integration suites. Nothing here calls
//! into the measure or rewiring code paths it is used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use laser_core::{generate, GeneratorSpec, Graph};
use nalgebra::DMatrix;

pub const INF: u32 = u32::MAX;

/// All-pairs hop distances by Floyd–Warshall over the adjacency matrix.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Counts sequences `v = w_0, w_1, …, w_k = u` where each step stays put or
/// follows an edge, by explicit recursion.
pub fn enumerate_lazy_walks(g: &Graph, v: usize, u: usize, k: usize) -> u64 {
    fn rec(g: &Graph, at: usize, target: usize, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == target);
        }
        let mut total = rec(g, at, target, left - 1);
        for w in 0..g.node_count() {
            if g.has_edge(at, w) {
                total += rec(g, w, target, left - 1);
            }
        }
        total
    }
    rec(g, v, u, k)
}

/// Effective resistance by grounding node `u` and solving `L_red x = e_v`;
/// then `R(u, v) = x_v`.
pub fn grounded_resistance(g: &Graph, u: usize, v: usize) -> f64 {
    if u == v {
        return 0.0;
    }
    let n = g.node_count();
    let keep: Vec<usize> = (0..n).filter(|&i| i != u).collect();
    let idx = |i: usize| keep.iter().position(|&k| k == i).unwrap();
    let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
    for (a, &i) in keep.iter().enumerate() {
        lap[(a, a)] = g.degree(i) as f64;
        for (b, &j) in keep.iter().enumerate() {
            if i != j && g.has_edge(i, j) {
                lap[(a, b)] = -1.0;
            }
        }
    }
    let mut rhs = DMatrix::<f64>::zeros(n - 1, 1);
    rhs[(idx(v), 0)] = 1.0;
    let x = lap
        .lu()
        .solve(&rhs)
        .expect("grounded Laplacian is invertible");
    x[(idx(v), 0)]
}

pub fn path(n: usize) -> Graph {
    generate(&GeneratorSpec::Path { nodes: n }).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    generate(&GeneratorSpec::Cycle { nodes: n }).unwrap()
}

pub fn clique(n: usize) -> Graph {
    generate(&GeneratorSpec::Clique { nodes: n }).unwrap()
}

pub fn lollipop(chain: usize, clique_size: usize) -> Graph {
    generate(&GeneratorSpec::Lollipop { chain, clique_size }).unwrap()
}

pub fn er(n: usize, avg_degree: f64, seed: u64) -> Graph {
    generate(&GeneratorSpec::erdos_renyi_avg_degree(n, avg_degree, seed)).unwrap()
}

/// Every generator family at a few sizes.
pub fn generator_zoo() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [1, 2, 5, 9] {
        out.push((format!("path{n}"), path(n)));
    }
    for n in [3, 6, 11] {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for n in [1, 4, 7] {
        out.push((format!("clique{n}"), clique(n)));
    }
    for (l, c) in [(1, 3), (3, 4), (9, 12), (12, 20)] {
        out.push((format!("lollipop{l}_{c}"), lollipop(l, c)));
    }
    for seed in 0..3 {
        out.push((format!("er40_{seed}"), er(40, 3.0, seed)));
    }
    out
}

/// All pairs at exact distance `d`, as `(a, b)` with `a < b`.
pub fn pairs_at_distance(dist: &[Vec<u32>], d: u32) -> Vec<(usize, usize)> {
    let n = dist.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if dist[a][b] == d {
                out.push((a, b));
            }
        }
    }
    out
}
