use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{frobenius_deviation, spectral_gap, total_effective_resistance};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::snapshot::SnapshotSequence;
use crate::traversal::distance_matrix;

/// Metrics for a graph and, optionally, every snapshot of a rewiring.
///
/// Per-level arrays are indexed by snapshot level starting at 0 (the input
/// graph), except `added_edges_per_level` which starts at level 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub spectral_gap: Option<f64>,
    pub total_er: Option<f64>,
    pub total_er_per_level: Vec<Option<f64>>,
    pub frobenius_per_level: Vec<Option<f64>>,
    pub added_edges_per_level: Vec<usize>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn sig(x: Option<f64>) -> Option<f64> {
    x.map(|v| round_sig(v, 12))
}

fn elapsed_ms(start: Instant) -> f64 {
    round_sig(start.elapsed().as_secs_f64() * 1e3, 12)
}

fn note(warnings: &mut Vec<String>, err: &Error, what: &str) {
    let msg = format!("{what}: {err}");
    if !warnings.contains(&msg) {
        warnings.push(msg);
    }
}

pub fn evaluate(base: &Graph, seq: Option<&SnapshotSequence>) -> Result<MetricsReport> {
    if let Some(s) = seq {
        if s.base() != base {
            return Err(Error::Snapshot(
                "snapshot sequence was built on a different graph".into(),
            ));
        }
    }
    let mut report = MetricsReport {
        n: base.node_count(),
        m: base.edge_count(),
        ..Default::default()
    };
    let mut warnings = Vec::new();

    let t = Instant::now();
    report.spectral_gap = match spectral_gap(base) {
        Ok(gap) => Some(gap),
        Err(e) => {
            note(&mut warnings, &e, "spectral_gap");
            None
        }
    };
    report
        .timings_ms
        .insert("spectral_gap".into(), elapsed_ms(t));

    let levels = seq.map_or(0, |s| s.num_levels());
    let t = Instant::now();
    let base_dist = distance_matrix(base, None);
    for level in 0..=levels {
        let g = match seq {
            Some(s) => s.flatten(level)?,
            None => base.clone(),
        };
        let er = match total_effective_resistance(&g) {
            Ok(v) => Some(v),
            Err(e) => {
                note(&mut warnings, &e, "total_er");
                None
            }
        };
        let dev = match frobenius_deviation(&base_dist, &distance_matrix(&g, None)) {
            Ok(v) => Some(v),
            Err(e) => {
                note(&mut warnings, &e, "frobenius");
                None
            }
        };
        report.total_er_per_level.push(sig(er));
        report.frobenius_per_level.push(sig(dev));
    }
    report
        .timings_ms
        .insert("per_level_metrics".into(), elapsed_ms(t));

    report.spectral_gap = sig(report.spectral_gap);
    report.total_er = report.total_er_per_level[0];
    report.added_edges_per_level = seq.map_or_else(Vec::new, |s| s.undirected_added_per_level());
    report.warnings = warnings;
    Ok(report)
}
