//! Cycle gains, cycle types, balance and switching.
//!
//! All decisions here are made in exact angle arithmetic. Floating point only
//! appears when sampling matrices of type Φ.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;
use thiserror::Error;

use crate::angle::{AngleError, GainAngle};
use crate::graph::GainGraph;
use crate::spectral::HermitianMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GainError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} repeated in cycle")]
    RepeatedVertex(usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("underlying graph is not a cycle")]
    NotACycle,
    #[error("switching function has {got} values for {n} vertices")]
    SwitchingLength { got: usize, n: usize },
    #[error(transparent)]
    Angle(#[from] AngleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleType {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type {:?}", self)
    }
}

/// Gain of the closed walk `cycle[0] → cycle[1] → … → cycle[0]`.
pub fn cycle_gain(g: &GainGraph, cycle: &[usize]) -> Result<GainAngle, GainError> {
    if cycle.len() < 3 {
        return Err(GainError::CycleTooShort(cycle.len()));
    }
    let mut seen = vec![false; g.order()];
    for &v in cycle {
        if v >= g.order() {
            return Err(GainError::NotAnEdge(v, v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(GainError::RepeatedVertex(v));
        }
    }
    let mut total = GainAngle::ONE;
    for (k, &a) in cycle.iter().enumerate() {
        let b = cycle[(k + 1) % cycle.len()];
        let step = g.gain(a, b).ok_or(GainError::NotAnEdge(a, b))?;
        total = total.checked_add(step)?;
    }
    Ok(total)
}

/// Type of an `n`-cycle with gain `gain`.
pub fn cycle_type(n: usize, gain: GainAngle) -> CycleType {
    let half = (n / 2) as u64;
    if n % 2 == 0 {
        if gain == GainAngle::ONE.times_sign_power(half) {
            CycleType::A
        } else {
            CycleType::B
        }
    } else {
        match gain.times_sign_power(half).real_part_sign() {
            Ordering::Greater => CycleType::C,
            Ordering::Less => CycleType::D,
            Ordering::Equal => CycleType::E,
        }
    }
}

/// Classifies a gain graph whose underlying graph is a single cycle.
pub fn classify_cycle(g: &GainGraph) -> Result<CycleType, GainError> {
    let order = g.cycle_order().ok_or(GainError::NotACycle)?;
    Ok(cycle_type(g.order(), cycle_gain(g, &order)?))
}

/// Rank of `A(C_n, φ)` for a cycle of the given type.
pub fn cycle_rank_formula(t: CycleType, n: usize) -> usize {
    match t {
        CycleType::A => n - 2,
        CycleType::B | CycleType::C | CycleType::D => n,
        CycleType::E => n - 1,
    }
}

/// A unit value `ζ(v)` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchingFunction {
    pub zeta: Vec<GainAngle>,
}

impl SwitchingFunction {
    pub fn identity(n: usize) -> Self {
        SwitchingFunction {
            zeta: vec![GainAngle::ONE; n],
        }
    }
}

/// `φ'(e_{i,j}) = ζ(v_i)^{-1} φ(e_{i,j}) ζ(v_j)`.
pub fn switch(g: &GainGraph, zeta: &SwitchingFunction) -> Result<GainGraph, GainError> {
    if zeta.zeta.len() != g.order() {
        return Err(GainError::SwitchingLength {
            got: zeta.zeta.len(),
            n: g.order(),
        });
    }
    let mut gains = Vec::with_capacity(g.size());
    for e in g.edges() {
        gains.push(
            e.gain
                .checked_add(zeta.zeta[e.v])?
                .checked_sub(zeta.zeta[e.u])?,
        );
    }
    let mut it = gains.into_iter();
    Ok(g.map_gains(|_| it.next().unwrap()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceVerdict {
    pub balanced: bool,
    /// When balanced, switching by this function turns every gain into 1.
    pub witness: Option<SwitchingFunction>,
}

/// Balance test by gauge fixing on a BFS spanning forest: tree edges are
/// switched to gain 1, then every remaining edge must already have gain 1.
pub fn is_balanced(g: &GainGraph) -> Result<BalanceVerdict, GainError> {
    let n = g.order();
    let mut zeta: Vec<Option<GainAngle>> = vec![None; n];
    for root in 0..n {
        if zeta[root].is_some() {
            continue;
        }
        zeta[root] = Some(GainAngle::ONE);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let zu = zeta[u].unwrap();
            for &v in g.neighbors(u) {
                if zeta[v].is_none() {
                    // ζ(u)^{-1} φ(u→v) ζ(v) = 1
                    let step = g.gain(u, v).unwrap();
                    zeta[v] = Some(zu.checked_sub(step)?);
                    queue.push_back(v);
                }
            }
        }
    }
    let zeta = SwitchingFunction {
        zeta: zeta.into_iter().map(Option::unwrap).collect(),
    };
    let switched = switch(g, &zeta)?;
    let balanced = switched.edges().iter().all(|e| e.gain.is_one());
    Ok(BalanceVerdict {
        balanced,
        witness: balanced.then_some(zeta),
    })
}

/// A random Hermitian matrix whose off-diagonal phase pattern is `A(Φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypePhiSample {
    pub matrix: HermitianMatrix,
    pub seed: u64,
}

/// Draws `B ∈ H(Φ)`.
///
/// The generator is SplitMix64 seeded with `seed`; each uniform draw is
/// `(next_u64 >> 11)·2^-53`. Diagonal entries `B_vv ∈ [-2, 2)` are drawn
/// first for `v = 0..n`, then magnitudes `r ∈ [0.5, 2)` for the edges in
/// `(u, v)` order, giving `B_uv = r·φ(e_{u,v})`.
pub fn sample_type_phi(g: &GainGraph, seed: u64) -> TypePhiSample {
    let n = g.order();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let diag: Vec<f64> = (0..n).map(|_| -2.0 + 4.0 * rng.gen::<f64>()).collect();
    let mut off = vec![Complex64::new(0.0, 0.0); n * n];
    for e in g.edges() {
        let r = 0.5 + 1.5 * rng.gen::<f64>();
        off[e.u * n + e.v] = e.gain.to_complex() * r;
    }
    let matrix = HermitianMatrix::from_upper(n, |i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            off[i * n + j]
        }
    });
    TypePhiSample { matrix, seed }
}
