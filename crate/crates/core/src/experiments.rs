//! Experiment drivers shared by the command-line tool and the test suites.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorSpec};
use crate::graph::Graph;
use crate::io::sha256_hex;
use crate::measures::{frobenius_deviation, round_sig};
use crate::rewire::{spectral_greedy_edges, MeasureRoute, RewireConfig, SelectionMode};
use crate::sensitivity::{
    expected_jacobian_norm, jacobian_fd, shortcut_bound_check, spectral_norm, Activation,
    FeatureMatrix, ModelWeights,
};
use crate::snapshot::{RelationalEdgeSet, SnapshotSequence};
use crate::traversal::distance_matrix;

/// Locality damage of one max-resistance edge versus a single sparse LASER
/// snapshot on a lollipop graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LollipopAblation {
    pub chain: usize,
    pub clique_size: usize,
    pub rho: f64,
    pub seeds: usize,
    pub spectral_edge: (usize, usize),
    pub spectral_deviation: f64,
    /// `sqrt((n - 1)(L - 1)^2 + (L - 2)^2)`.
    pub spectral_lower_bound: f64,
    pub laser_deviation_mean: f64,
    pub laser_deviation_std: f64,
    pub laser_deviations: Vec<f64>,
    pub laser_added_edges_mean: f64,
    pub laser_preserves_locality_better: bool,
    pub spectral_bound_holds: bool,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// LASER runs use one snapshot with `min_one = false` and seeds `0..seeds`.
pub fn ablate_lollipop(
    chain: usize,
    clique_size: usize,
    rho: f64,
    seeds: usize,
) -> Result<LollipopAblation> {
    if seeds == 0 {
        return Err(Error::InvalidParameter("seeds must be >= 1".into()));
    }
    let g = generate(&GeneratorSpec::Lollipop { chain, clique_size })?;
    let base = distance_matrix(&g, None);

    let spectral_edge = spectral_greedy_edges(&g, 1)?[0];
    let spectral = g.with_added_edges([spectral_edge])?;
    let spectral_deviation = frobenius_deviation(&base, &distance_matrix(&spectral, None))?;
    let (l, n) = (chain as f64, clique_size as f64);
    let spectral_lower_bound = ((n - 1.0) * (l - 1.0).powi(2) + (l - 2.0).powi(2)).sqrt();

    let mut deviations = Vec::with_capacity(seeds);
    let mut added = Vec::with_capacity(seeds);
    for seed in 0..seeds as u64 {
        let config = RewireConfig {
            snapshots: 1,
            rho_density: rho,
            seed,
            min_one: false,
            mode: SelectionMode::MuGuided,
            ..Default::default()
        };
        let seq = crate::rewire::laser_rewire(&g, &config)?;
        let rewired = seq.flatten(seq.num_levels())?;
        deviations.push(frobenius_deviation(
            &base,
            &distance_matrix(&rewired, None),
        )?);
        added.push(seq.undirected_added_per_level().iter().sum::<usize>() as f64);
    }
    let (mean, std) = mean_std(&deviations);
    let (added_mean, _) = mean_std(&added);
    Ok(LollipopAblation {
        chain,
        clique_size,
        rho,
        seeds,
        spectral_edge,
        spectral_deviation,
        spectral_lower_bound,
        laser_deviation_mean: mean,
        laser_deviation_std: std,
        laser_deviations: deviations,
        laser_added_edges_mean: added_mean,
        laser_preserves_locality_better: mean < spectral_deviation,
        spectral_bound_holds: spectral_deviation >= spectral_lower_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub seed: u64,
    pub config: RewireConfig,
    pub directed_added_per_level: Vec<usize>,
    pub undirected_added_per_level: Vec<usize>,
    /// SHA-256 of the directed records of every level.
    pub edges_digest: String,
    pub timings_ms: std::collections::BTreeMap<String, f64>,
}

/// Generates an Erdős–Rényi graph and rewires it, timing the measure and
/// selection phases separately.
pub fn bench_erdos_renyi(
    nodes: usize,
    avg_degree: f64,
    seed: u64,
    config: &RewireConfig,
) -> Result<(BenchReport, SnapshotSequence)> {
    config.validate()?;
    let mut timings = std::collections::BTreeMap::new();
    let ms = |t: Instant| round_sig(t.elapsed().as_secs_f64() * 1e3, 12);
    let total = Instant::now();

    let t = Instant::now();
    let g = generate(&GeneratorSpec::erdos_renyi_avg_degree(
        nodes, avg_degree, seed,
    ))?;
    timings.insert("generate".to_string(), ms(t));

    let seq = if config.is_disabled() {
        timings.insert("measures".to_string(), 0.0);
        timings.insert("selection".to_string(), 0.0);
        SnapshotSequence::identity(g.clone(), config.clone())
    } else {
        let max_radius = config.snapshots as u32 + 1;
        let t = Instant::now();
        let table = crate::rewire::laser::build_table(&g, config, MeasureRoute::Auto, max_radius)?;
        timings.insert("measures".to_string(), ms(t));
        let t = Instant::now();
        let levels = (2..=max_radius)
            .map(|r| table.select(r, config))
            .collect::<Result<Vec<RelationalEdgeSet>>>()?;
        timings.insert("selection".to_string(), ms(t));
        SnapshotSequence::new(g.clone(), levels, config.clone())?
    };
    timings.insert("total".to_string(), ms(total));

    let records: String = seq.levels().iter().map(crate::io::format_level).collect();
    let report = BenchReport {
        n: g.node_count(),
        m: g.edge_count(),
        avg_degree,
        seed,
        config: config.clone(),
        directed_added_per_level: seq.levels().iter().map(|s| s.directed_count()).collect(),
        undirected_added_per_level: seq.undirected_added_per_level(),
        edges_digest: sha256_hex(records.as_bytes()),
        timings_ms: timings,
    };
    Ok((report, seq))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortcutSummary {
    pub shortcut: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub source: usize,
    pub target: usize,
    pub layers: usize,
    /// Spectral norm of the exact Jacobian of the relational GCN (identity
    /// activation and weights).
    pub jacobian_norm: f64,
    pub fd_relative_error: f64,
    /// `ρ_relu (Â^m)_{vu}` on the input graph.
    pub expected_norm: f64,
    /// Shortcut bound, present when a shortcut distance was given.
    pub prop1: Option<ShortcutSummary>,
}

pub fn sensitivity_report(
    seq: &SnapshotSequence,
    source: usize,
    target: usize,
    layers: usize,
    rho_relu: f64,
    shortcut: Option<usize>,
    width: usize,
) -> Result<SensitivityReport> {
    if width == 0 || layers == 0 {
        return Err(Error::InvalidParameter(
            "width and layers must be >= 1".into(),
        ));
    }
    let g: &Graph = seq.base();
    let x = FeatureMatrix::random(g.node_count(), width, 0);
    let w = ModelWeights::identity(layers, seq.num_levels() + 1, width, Activation::Identity);
    let check = jacobian_fd(seq, &x, &w, source, target)?;
    let prop1 = match shortcut {
        Some(l) => {
            let out = shortcut_bound_check(g, source, target, l, rho_relu)?;
            Some(ShortcutSummary {
                shortcut: l,
                lhs: round_sig(out.lhs, 12),
                rhs: round_sig(out.rhs, 12),
                holds: out.holds,
            })
        }
        None => None,
    };
    Ok(SensitivityReport {
        source,
        target,
        layers,
        jacobian_norm: round_sig(spectral_norm(&check.exact), 12),
        fd_relative_error: round_sig(check.relative_error(), 12),
        expected_norm: round_sig(
            expected_jacobian_norm(g, source, target, layers, rho_relu)?,
            12,
        ),
        prop1,
    })
}
