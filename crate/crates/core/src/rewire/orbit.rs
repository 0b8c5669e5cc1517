use rand_distr::{Distribution, StandardNormal};

use crate::rng::{keyed, Stream};
use crate::traversal::DistanceMatrix;

/// Nodes at distance exactly `radius` from `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub center: usize,
    pub radius: u32,
    /// Ascending node ids.
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn orbit_of(locality: &DistanceMatrix, v: usize, r: u32) -> Orbit {
    Orbit {
        center: v,
        radius: r,
        members: locality
            .row(v)
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == r)
            .map(|(u, _)| u)
            .collect(),
    }
}

/// `round(ρ · size)` with halves rounded away from zero, raised to one when
/// `min_one` is set and capped at `size`.
pub fn selection_count(size: usize, rho: f64, min_one: bool) -> usize {
    if size == 0 {
        return 0;
    }
    let mut count = (rho * size as f64).round() as usize;
    if min_one {
        count = count.max(1);
    }
    count.min(size)
}

/// Per-candidate Gaussian noise keyed on `(seed, level, center, candidate)`.
#[derive(Clone, Copy, Debug)]
pub struct TieBreaker {
    pub seed: u64,
    pub level: usize,
    pub sigma: f64,
}

impl TieBreaker {
    pub fn noise(&self, center: usize, candidate: usize) -> f64 {
        let a = ((self.level as u64) << 32) | center as u64;
        let mut rng = keyed(self.seed, Stream::TieBreak, a, candidate as u64);
        StandardNormal.sample(&mut rng)
    }
}

/// Picks the `selection_count` members with the lowest scores.
///
/// Scores are perturbed by `σ ξ` with `ξ` standard normal per candidate; the
/// raw `ξ` is kept as a secondary key so exact ties are split uniformly even
/// when `σ ξ` is below the floating-point resolution of the score.
/// Returns ascending node ids.
pub fn select_from_orbit(
    orbit: &Orbit,
    scores: &[f64],
    rho: f64,
    min_one: bool,
    tie: &TieBreaker,
) -> Vec<usize> {
    assert_eq!(
        orbit.len(),
        scores.len(),
        "scores must align with orbit members"
    );
    let count = selection_count(orbit.len(), rho, min_one);
    if count == 0 {
        return Vec::new();
    }
    if count == orbit.len() {
        return orbit.members.clone();
    }
    let mut keyed: Vec<(f64, f64, usize)> = orbit
        .members
        .iter()
        .zip(scores)
        .map(|(&u, &s)| {
            let xi = tie.noise(orbit.center, u);
            (s + tie.sigma * xi, xi, u)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.total_cmp(&b.1)));
    let mut chosen: Vec<usize> = keyed[..count].iter().map(|&(_, _, u)| u).collect();
    chosen.sort_unstable();
    chosen
}
