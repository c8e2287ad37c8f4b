//! Deterministic graph families and seeded random corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::angle::GainAngle;
use crate::graph::GainGraph;

/// Denominators used for random gains: roots of unity of order dividing 12.
pub const RANDOM_GAIN_DENOMINATORS: [i64; 5] = [1, 2, 3, 4, 6];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a cycle needs n >= 3, got {0}")]
    CycleTooSmall(usize),
    #[error("part sizes must be positive, got {0} and {1}")]
    EmptyPart(usize, usize),
    #[error("cannot build a connected graph on {n} vertices with maximum degree {max_deg}")]
    InfeasibleDegreeCap { n: usize, max_deg: usize },
    #[error("a random connected graph needs n >= 2, got {0}")]
    TooFewVertices(usize),
}

/// How the edges of a generated graph get their gains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainPolicy {
    AllOnes,
    /// Gain -1 on the first edge, 1 elsewhere.
    OneFlipped,
    /// Independent random gains from [`RANDOM_GAIN_DENOMINATORS`].
    Seeded(u64),
}

/// A family member described by its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle {
        n: usize,
        gain: GainAngle,
    },
    Complete {
        n: usize,
        policy: GainPolicy,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
        policy: GainPolicy,
    },
    Path {
        n: usize,
    },
    RandomConnected {
        n: usize,
        max_deg: usize,
        seed: u64,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<GainGraph, FamilyError> {
        match *self {
            FamilySpec::Cycle { n, gain } => gen_cycle(n, gain),
            FamilySpec::Complete { n, policy } => Ok(gen_complete(n, policy)),
            FamilySpec::CompleteBipartite { a, b, policy } => gen_complete_bipartite(a, b, policy),
            FamilySpec::Path { n } => Ok(gen_path(n)),
            FamilySpec::RandomConnected { n, max_deg, seed } => {
                gen_random_connected(n, max_deg, seed)
            }
        }
    }

    /// Short identifier, e.g. `cycle-6-1/1` or `kab-3-3-ones`.
    pub fn label(&self) -> String {
        let policy = |p: &GainPolicy| match p {
            GainPolicy::AllOnes => "ones".to_string(),
            GainPolicy::OneFlipped => "flip".to_string(),
            GainPolicy::Seeded(s) => format!("seed{s}"),
        };
        match self {
            FamilySpec::Cycle { n, gain } => format!("cycle-{n}-{gain}"),
            FamilySpec::Complete { n, policy: p } => format!("kn-{n}-{}", policy(p)),
            FamilySpec::CompleteBipartite { a, b, policy: p } => {
                format!("kab-{a}-{b}-{}", policy(p))
            }
            FamilySpec::Path { n } => format!("path-{n}"),
            FamilySpec::RandomConnected { n, max_deg, seed } => {
                format!("random-{n}-{max_deg}-{seed}")
            }
        }
    }
}

fn random_gain(rng: &mut SplitMix64) -> GainAngle {
    let den = *RANDOM_GAIN_DENOMINATORS.choose(rng).unwrap();
    GainAngle::new(rng.gen_range(0..2 * den), den).unwrap()
}

fn assign_gains(pairs: Vec<(usize, usize)>, policy: GainPolicy) -> Vec<(usize, usize, GainAngle)> {
    let mut rng = match policy {
        GainPolicy::Seeded(seed) => Some(SplitMix64::seed_from_u64(seed)),
        _ => None,
    };
    pairs
        .into_iter()
        .enumerate()
        .map(|(k, (u, v))| {
            let gain = match policy {
                GainPolicy::AllOnes => GainAngle::ONE,
                GainPolicy::OneFlipped if k == 0 => GainAngle::MINUS_ONE,
                GainPolicy::OneFlipped => GainAngle::ONE,
                GainPolicy::Seeded(_) => random_gain(rng.as_mut().unwrap()),
            };
            (u, v, gain)
        })
        .collect()
}

/// `v0 − v1 − … − v(n-1) − v0` with all gains 1 except the closing edge
/// `v(n-1) → v0`, which carries `total_gain`.
pub fn gen_cycle(n: usize, total_gain: GainAngle) -> Result<GainGraph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::CycleTooSmall(n));
    }
    let edges = (0..n - 1)
        .map(|i| (i, i + 1, GainAngle::ONE))
        .chain([(n - 1, 0, total_gain)]);
    Ok(GainGraph::new(n, edges).expect("cycle is simple"))
}

pub fn gen_complete(n: usize, policy: GainPolicy) -> GainGraph {
    let pairs = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    GainGraph::new(n, assign_gains(pairs, policy)).expect("complete graph is simple")
}

/// Parts `{0..a}` and `{a..a+b}`.
pub fn gen_complete_bipartite(
    a: usize,
    b: usize,
    policy: GainPolicy,
) -> Result<GainGraph, FamilyError> {
    if a == 0 || b == 0 {
        return Err(FamilyError::EmptyPart(a, b));
    }
    let pairs = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    Ok(GainGraph::new(a + b, assign_gains(pairs, policy))
        .expect("complete bipartite graph is simple"))
}

/// Path `v0 − v1 − … − v(n-1)` with unit gains.
pub fn gen_path(n: usize) -> GainGraph {
    let edges = (1..n).map(|i| (i - 1, i, GainAngle::ONE));
    GainGraph::new(n, edges).expect("path is simple")
}

/// Connected graph with `Δ <= max_deg`: a random spanning tree grown under
/// the cap, then up to `n` random extra edges that respect it. Gains are random.
pub fn gen_random_connected(n: usize, max_deg: usize, seed: u64) -> Result<GainGraph, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooFewVertices(n));
    }
    if max_deg == 0 || (max_deg == 1 && n > 2) {
        return Err(FamilyError::InfeasibleDegreeCap { n, max_deg });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for k in 1..n {
        // the most recently attached vertex is a leaf, so `open` is never empty
        let open: Vec<usize> = order[..k]
            .iter()
            .copied()
            .filter(|&v| degree[v] < max_deg)
            .collect();
        let parent = *open.choose(&mut rng).unwrap();
        let child = order[k];
        degree[parent] += 1;
        degree[child] += 1;
        pairs.push((parent.min(child), parent.max(child)));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let (u, v) = (u.min(v), u.max(v));
        if u == v || degree[u] >= max_deg || degree[v] >= max_deg || pairs.contains(&(u, v)) {
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
        pairs.push((u, v));
    }
    pairs.sort_unstable();
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, random_gain(&mut rng)))
        .collect();
    Ok(GainGraph::new(n, edges).expect("generated graph is simple"))
}
