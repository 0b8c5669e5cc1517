use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{keyed, Stream};
use crate::snapshot::SnapshotSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Identity,
}

impl Activation {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Identity => x,
        }
    }

    #[inline]
    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Activation::Relu => f64::from(u8::from(x > 0.0)),
            Activation::Identity => 1.0,
        }
    }
}

/// Normalizing degrees `d_{i,l}` per level.
///
/// Level 0 uses `1 + deg(i)` on the input graph (self-loop augmented);
/// level `l >= 1` uses the number of level-`l` targets selected by `i`,
/// floored at 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationalDegrees {
    per_level: Vec<Vec<f64>>,
}

impl RelationalDegrees {
    pub fn from_sequence(seq: &SnapshotSequence) -> Self {
        let g = seq.base();
        let n = g.node_count();
        let mut per_level = vec![(0..n).map(|v| 1.0 + g.degree(v) as f64).collect()];
        for set in seq.levels() {
            per_level.push((0..n).map(|v| set.out_degree(v).max(1) as f64).collect());
        }
        RelationalDegrees { per_level }
    }

    pub fn get(&self, node: usize, level: usize) -> f64 {
        self.per_level[level][node]
    }

    pub fn levels(&self) -> usize {
        self.per_level.len()
    }
}

/// `n x width` node features, one row per node.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix(pub DMatrix<f64>);

impl FeatureMatrix {
    pub fn new(data: DMatrix<f64>) -> Self {
        FeatureMatrix(data)
    }

    /// Entries uniform in `[-1, 1)`.
    pub fn random(n: usize, width: usize, seed: u64) -> Self {
        let mut rng = keyed(seed, Stream::Features, n as u64, width as u64);
        FeatureMatrix(DMatrix::from_fn(n, width, |_, _| {
            rng.random_range(-1.0..1.0)
        }))
    }

    pub fn nrows(&self) -> usize {
        self.0.nrows()
    }

    pub fn width(&self) -> usize {
        self.0.ncols()
    }
}

/// `layers[t][l]` is the `width x width` matrix applied to level-`l`
/// messages in layer `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelWeights {
    pub layers: Vec<Vec<DMatrix<f64>>>,
    pub activation: Activation,
}

impl ModelWeights {
    pub fn identity(layers: usize, levels: usize, width: usize, activation: Activation) -> Self {
        ModelWeights {
            layers: vec![vec![DMatrix::identity(width, width); levels]; layers],
            activation,
        }
    }

    /// Entries uniform in `(-a, a)` with `a = sqrt(3 / width)`.
    pub fn seeded_uniform(
        layers: usize,
        levels: usize,
        width: usize,
        seed: u64,
        activation: Activation,
    ) -> Self {
        let a = (3.0 / width as f64).sqrt();
        let layers = (0..layers)
            .map(|t| {
                (0..levels)
                    .map(|l| {
                        let mut rng = keyed(seed, Stream::Weights, t as u64, l as u64);
                        DMatrix::from_fn(width, width, |_, _| rng.random_range(-a..a))
                    })
                    .collect()
            })
            .collect();
        ModelWeights { layers, activation }
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn num_levels(&self) -> usize {
        self.layers.first().map_or(0, Vec::len)
    }

    pub fn width(&self) -> usize {
        self.layers
            .first()
            .and_then(|l| l.first())
            .map_or(0, |w| w.nrows())
    }

    fn check(&self, levels: usize, width: usize) -> Result<()> {
        for (t, layer) in self.layers.iter().enumerate() {
            if layer.len() != levels {
                return Err(Error::ShapeMismatch(format!(
                    "layer {t} has {} level matrices, sequence needs {levels}",
                    layer.len()
                )));
            }
            if let Some(w) = layer
                .iter()
                .find(|w| w.nrows() != width || w.ncols() != width)
            {
                return Err(Error::ShapeMismatch(format!(
                    "layer {t} weight is {}x{}, features have width {width}",
                    w.nrows(),
                    w.ncols()
                )));
            }
        }
        Ok(())
    }
}

/// Sparse propagation operator of one level: `rows[v] = [(u, coeff)]`.
pub(crate) struct Propagator {
    pub rows: Vec<Vec<(usize, f64)>>,
}

pub(crate) fn propagators(seq: &SnapshotSequence) -> Vec<Propagator> {
    let g = seq.base();
    let n = g.node_count();
    let deg = RelationalDegrees::from_sequence(seq);
    let mut ops = Vec::with_capacity(seq.num_levels() + 1);
    ops.push(Propagator {
        rows: (0..n)
            .map(|v| {
                let dv = deg.get(v, 0);
                std::iter::once(v)
                    .chain(g.neighbors(v).iter().map(|&u| u as usize))
                    .map(|u| (u, 1.0 / (dv * deg.get(u, 0)).sqrt()))
                    .collect()
            })
            .collect(),
    });
    for set in seq.levels() {
        let l = set.level();
        ops.push(Propagator {
            rows: (0..n)
                .map(|v| {
                    set.targets(v)
                        .iter()
                        .map(|&u| {
                            let u = u as usize;
                            (u, 1.0 / (deg.get(v, l) * deg.get(u, l)).sqrt())
                        })
                        .collect()
                })
                .collect(),
        });
    }
    ops
}

/// Pre-activations of every layer plus the final output.
pub(crate) fn forward_trace(
    seq: &SnapshotSequence,
    x: &FeatureMatrix,
    w: &ModelWeights,
) -> Result<(Vec<DMatrix<f64>>, DMatrix<f64>)> {
    let n = seq.base().node_count();
    if x.nrows() != n {
        return Err(Error::ShapeMismatch(format!(
            "features have {} rows, graph has {n} nodes",
            x.nrows()
        )));
    }
    w.check(seq.num_levels() + 1, x.width())?;
    let ops = propagators(seq);
    let width = x.width();
    let mut h = x.0.clone();
    let mut pre_acts = Vec::with_capacity(w.num_layers());
    for layer in &w.layers {
        let mut pre = DMatrix::<f64>::zeros(n, width);
        for (op, weight) in ops.iter().zip(layer) {
            let mut agg = DMatrix::<f64>::zeros(n, width);
            for (v, row) in op.rows.iter().enumerate() {
                for &(u, c) in row {
                    for k in 0..width {
                        agg[(v, k)] += c * h[(u, k)];
                    }
                }
            }
            pre += agg * weight.transpose();
        }
        h = pre.map(|z| w.activation.apply(z));
        pre_acts.push(pre);
    }
    Ok((pre_acts, h))
}

/// Relational GCN layer stack:
/// `x_v <- act( Σ_{u ∈ N(v) ∪ {v}} (d_v d_u)^{-1/2} W_0 x_u
///            + Σ_l Σ_{u selected by v at level l} (d_{v,l} d_{u,l})^{-1/2} W_l x_u )`.
pub fn laser_gcn_forward(
    seq: &SnapshotSequence,
    x: &FeatureMatrix,
    w: &ModelWeights,
) -> Result<FeatureMatrix> {
    forward_trace(seq, x, w).map(|(_, out)| FeatureMatrix(out))
}

/// Plain GCN with dense `Â = D̃^{-1/2} (A + I) D̃^{-1/2}`, using only the
/// level-0 weights of each layer.
pub fn gcn_forward(g: &Graph, x: &FeatureMatrix, w: &ModelWeights) -> Result<FeatureMatrix> {
    let n = g.node_count();
    if x.nrows() != n {
        return Err(Error::ShapeMismatch(format!(
            "features have {} rows, graph has {n} nodes",
            x.nrows()
        )));
    }
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| 1.0 / (1.0 + g.degree(v) as f64).sqrt())
        .collect();
    let mut a_hat = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        a_hat[(v, v)] = inv_sqrt[v] * inv_sqrt[v];
        for &u in g.neighbors(v) {
            a_hat[(v, u as usize)] = inv_sqrt[v] * inv_sqrt[u as usize];
        }
    }
    let mut h = x.0.clone();
    for layer in &w.layers {
        let w0 = layer
            .first()
            .ok_or_else(|| Error::ShapeMismatch("layer without weights".into()))?;
        if w0.nrows() != h.ncols() || w0.ncols() != h.ncols() {
            return Err(Error::ShapeMismatch(
                "weight width differs from features".into(),
            ));
        }
        h = (&a_hat * &h * w0.transpose()).map(|z| w.activation.apply(z));
    }
    Ok(FeatureMatrix(h))
}
