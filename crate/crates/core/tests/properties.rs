#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use laser_core::measures::{compute_mu_nu, total_effective_resistance, LaplacianPseudoinverse};
use laser_core::rewire::{
    laser_rewire, laser_rewire_via, orbit_of, selection_count, MeasureRoute, RewireConfig,
    SelectionMode,
};
use laser_core::{distance_matrix, is_connected, walk_count_matrix, Graph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            Graph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    // A random spanning tree plus extra edges.
    (3..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<u32>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..n),
        )
            .prop_map(move |(parents, extra)| {
                let tree = (1..n).map(|v| (v, parents[v - 1] as usize % v));
                let extra = extra.into_iter().filter(|(a, b)| a != b);
                Graph::from_edges(n, tree.chain(extra)).unwrap()
            })
    })
}

fn arb_config() -> impl Strategy<Value = RewireConfig> {
    (
        1usize..=3,
        0u32..=10,
        1u32..=8,
        any::<u64>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(
            |(snapshots, rho_tenths, walk_k, seed, min_one, random)| RewireConfig {
                snapshots,
                rho_density: f64::from(rho_tenths) / 10.0,
                walk_k,
                seed,
                min_one,
                mode: if random {
                    SelectionMode::UniformRandom
                } else {
                    SelectionMode::MuGuided
                },
                ..Default::default()
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        let text = g.to_edge_list();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn distance_matrix_is_a_metric(g in arb_graph(25)) {
        let d = distance_matrix(&g, None);
        let fw = floyd_warshall(&g);
        for v in 0..g.node_count() {
            prop_assert_eq!(d.get(v, v), 0);
            for u in 0..g.node_count() {
                prop_assert_eq!(d.get(v, u), d.get(u, v));
                prop_assert_eq!(d.get(v, u), fw[v][u]);
                prop_assert_eq!(d.get(v, u) == 1, g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn walk_counts_symmetric_and_monotone(g in arb_graph(15), k in 1u32..6) {
        let a = walk_count_matrix(&g, k);
        let b = walk_count_matrix(&g, k + 1);
        for v in 0..g.node_count() {
            for u in 0..g.node_count() {
                prop_assert_eq!(a.get(v, u), a.get(u, v));
                prop_assert!(b.get(v, u) >= a.get(v, u));
            }
        }
    }

    #[test]
    fn locality_and_nesting(g in arb_graph(30), config in arb_config()) {
        let seq = laser_rewire(&g, &config).unwrap();
        let fw = floyd_warshall(&g);
        for set in seq.levels() {
            for (v, u) in set.directed_records() {
                prop_assert_eq!(fw[v][u] as usize, set.level() + 1);
            }
        }
        let mut prev = seq.flatten(0).unwrap();
        prop_assert_eq!(&prev, &g);
        for l in 1..=seq.num_levels() {
            let next = seq.flatten(l).unwrap();
            for (a, b) in prev.edges() {
                prop_assert!(next.has_edge(a, b));
            }
            prev = next;
        }
    }

    #[test]
    fn per_node_budget(g in arb_graph(30), config in arb_config()) {
        let seq = laser_rewire(&g, &config).unwrap();
        let d = distance_matrix(&g, None);
        for set in seq.levels() {
            let r = set.level() as u32 + 1;
            for v in 0..g.node_count() {
                let size = orbit_of(&d, v, r).len();
                let expected = selection_count(size, config.rho_density, config.min_one);
                prop_assert_eq!(set.out_degree(v), expected);
                if !config.min_one {
                    let exact = (config.rho_density * size as f64).round() as usize;
                    prop_assert_eq!(set.out_degree(v), exact);
                } else if size > 0 {
                    prop_assert!(set.out_degree(v) >= 1);
                }
            }
        }
    }

    #[test]
    fn mu_guided_selection_is_optimal(g in arb_connected(30), config in arb_config()) {
        let config = RewireConfig { mode: SelectionMode::MuGuided, ..config };
        let seq = laser_rewire(&g, &config).unwrap();
        let pair = compute_mu_nu(&g, config.snapshots as u32 + 1, config.walk_k).unwrap();
        for set in seq.levels() {
            let r = set.level() as u32 + 1;
            for v in 0..g.node_count() {
                let orbit = orbit_of(&pair.locality, v, r);
                let chosen = set.targets(v);
                let (mut sel, mut rest) = (Vec::new(), Vec::new());
                for &u in &orbit.members {
                    let mu = pair.connectivity.get(v, u);
                    if chosen.contains(&(u as u32)) { sel.push(mu) } else { rest.push(mu) }
                }
                let max_sel = sel.iter().cloned().fold(f64::MIN, f64::max);
                let min_rest = rest.iter().cloned().fold(f64::MAX, f64::min);
                // Every strictly cheaper member is selected.
                prop_assert!(max_sel <= min_rest, "v={} sel={:?} rest={:?}", v, sel, rest);
            }
        }
    }

    #[test]
    fn full_density_reproduces_distance_pairs(g in arb_graph(40), snapshots in 1usize..=3) {
        let config = RewireConfig { snapshots, rho_density: 1.0, min_one: false, ..Default::default() };
        let seq = laser_rewire(&g, &config).unwrap();
        let fw = floyd_warshall(&g);
        for set in seq.levels() {
            prop_assert_eq!(set.symmetrized(), pairs_at_distance(&fw, set.level() as u32 + 1));
        }
    }

    #[test]
    fn dense_and_streaming_routes_agree(g in arb_graph(40), config in arb_config()) {
        let a = laser_rewire_via(&g, &config, MeasureRoute::Dense).unwrap();
        let b = laser_rewire_via(&g, &config, MeasureRoute::Streaming).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rayleigh_monotonicity(g in arb_connected(20), config in arb_config()) {
        let seq = laser_rewire(&g, &config).unwrap();
        let mut prev = total_effective_resistance(&g).unwrap();
        for l in 1..=seq.num_levels() {
            let flat = seq.flatten(l).unwrap();
            let cur = total_effective_resistance(&flat).unwrap();
            prop_assert!(cur <= prev * (1.0 + 1e-9));
            if seq.level(l).unwrap().directed_count() > 0 {
                prop_assert!(cur < prev);
            }
            prev = cur;
        }
    }

    #[test]
    fn commute_time_identity(g in arb_connected(20)) {
        let pinv = LaplacianPseudoinverse::new(&g).unwrap();
        let two_m = 2.0 * g.edge_count() as f64;
        for u in 0..g.node_count() {
            for v in 0..g.node_count() {
                let ct = pinv.commute_time(u, v);
                let expected = two_m * pinv.resistance(u, v);
                prop_assert!((ct - expected).abs() <= 1e-9 * expected.max(1.0));
            }
        }
        let (a, b) = (pinv.total_via_trace(), pinv.total_pairwise());
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let config = RewireConfig {
        snapshots: 2,
        rho_density: 0.3,
        seed: 11,
        ..Default::default()
    };
    for (name, g) in generator_zoo() {
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    (
                        laser_rewire_via(&g, &config, MeasureRoute::Dense).unwrap(),
                        laser_rewire_via(&g, &config, MeasureRoute::Streaming).unwrap(),
                        distance_matrix(&g, None),
                    )
                })
        };
        assert_eq!(run(1), run(4), "{name}");
    }
}

#[test]
fn generators_are_connected_and_reproducible() {
    for (name, g) in generator_zoo() {
        if !name.starts_with("er") {
            assert!(is_connected(&g), "{name}");
        }
    }
    assert_eq!(
        er(300, 6.0, 9).to_edge_list(),
        er(300, 6.0, 9).to_edge_list()
    );
    assert_ne!(er(300, 6.0, 9), er(300, 6.0, 10));
}
