//! Zero forcing on the underlying graph Γ(Φ).
//!
//! A black vertex with exactly one white neighbor forces that neighbor
//! black. The derived coloring is the fixed point of this rule, and Z(G) is
//! the smallest initial black set whose derived coloring is all black.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::GainGraph;

/// Largest order accepted by the exact search.
pub const MAX_SEARCH_ORDER: usize = 24;
/// Closure evaluations allowed per exact search.
pub const CLOSURE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZfError {
    #[error("exact zero forcing search limited to n <= {MAX_SEARCH_ORDER}, got {0}")]
    TooLarge(usize),
    #[error("exact zero forcing search exceeded {CLOSURE_BUDGET} closure evaluations")]
    BudgetExceeded,
    #[error("bound needs maximum degree >= {need}, got {got}")]
    DegreeTooSmall { need: usize, got: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// A black/white coloring of the vertices of a graph.
#[derive(Debug, Clone)]
pub struct ColoringState<'g> {
    graph: &'g GainGraph,
    black: Vec<bool>,
}

impl<'g> ColoringState<'g> {
    pub fn new(graph: &'g GainGraph, initial: &[usize]) -> Result<Self, ZfError> {
        let mut black = vec![false; graph.order()];
        for &v in initial {
            *black.get_mut(v).ok_or(ZfError::VertexOutOfRange(v))? = true;
        }
        Ok(ColoringState { graph, black })
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black[v]
    }

    pub fn black_set(&self) -> Vec<usize> {
        (0..self.black.len()).filter(|&v| self.black[v]).collect()
    }

    pub fn all_black(&self) -> bool {
        self.black.iter().all(|&b| b)
    }

    /// Applies the color-change rule until nothing changes. Returns the
    /// number of forces performed.
    pub fn derive(&mut self) -> usize {
        let g = self.graph;
        let n = g.order();
        let mut white: Vec<usize> = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&w| !self.black[w]).count())
            .collect();
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| self.black[v] && white[v] == 1).collect();
        let mut forces = 0;
        while let Some(v) = queue.pop_front() {
            if white[v] != 1 {
                continue;
            }
            let w = *g
                .neighbors(v)
                .iter()
                .find(|&&w| !self.black[w])
                .expect("one white neighbor");
            self.black[w] = true;
            forces += 1;
            for &x in g.neighbors(w) {
                white[x] -= 1;
                if self.black[x] && white[x] == 1 {
                    queue.push_back(x);
                }
            }
            if white[w] == 1 {
                queue.push_back(w);
            }
        }
        forces
    }
}

/// Black set of the derived coloring of `initial`, sorted.
pub fn closure(g: &GainGraph, initial: &[usize]) -> Result<Vec<usize>, ZfError> {
    let mut state = ColoringState::new(g, initial)?;
    state.derive();
    Ok(state.black_set())
}

pub fn is_zero_forcing_set(g: &GainGraph, z: &[usize]) -> Result<bool, ZfError> {
    let mut state = ColoringState::new(g, z)?;
    state.derive();
    Ok(state.all_black())
}

/// Exact zero forcing number with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZfResult {
    pub number: usize,
    pub witness: Vec<usize>,
    pub nodes_searched: u64,
}

fn closure_mask(nbr: &[u32], mut black: u32) -> u32 {
    loop {
        let mut next = black;
        let mut bits = black;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let white = nbr[v] & !next;
            if white.count_ones() == 1 {
                next |= white;
            }
        }
        if next == black {
            return black;
        }
        black = next;
    }
}

/// Advances `c` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Z(Γ(g)) by exhaustive search over sets of increasing size.
///
/// Sizes below the minimum degree are skipped: no vertex of such a set can
/// have fewer than two white neighbors. Within a size, sets are tried in
/// lexicographic order, so the witness is the lexicographically smallest
/// minimum zero forcing set.
pub fn zero_forcing_number(g: &GainGraph) -> Result<ZfResult, ZfError> {
    let n = g.order();
    if n > MAX_SEARCH_ORDER {
        return Err(ZfError::TooLarge(n));
    }
    if n == 0 {
        return Ok(ZfResult {
            number: 0,
            witness: Vec::new(),
            nodes_searched: 0,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let min_degree = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut searched = 0u64;
    for k in min_degree.max(1)..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let mask = combo.iter().fold(0u32, |m, &v| m | (1 << v));
            searched += 1;
            if searched > CLOSURE_BUDGET {
                return Err(ZfError::BudgetExceeded);
            }
            // some vertex must be able to force before the closure can grow
            let can_start =
                mask == full || combo.iter().any(|&v| (nbr[v] & !mask).count_ones() == 1);
            if can_start && closure_mask(&nbr, mask) == full {
                return Ok(ZfResult {
                    number: k,
                    witness: combo,
                    nodes_searched: searched,
                });
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is zero forcing")
}

fn require_degree(delta: usize, need: usize) -> Result<(), ZfError> {
    if delta < need {
        return Err(ZfError::DegreeTooSmall { need, got: delta });
    }
    Ok(())
}

/// `((Δ-2)n + 2)/(Δ-1)`, valid for connected graphs with Δ >= 2.
pub fn zf_bound_general(n: usize, delta: usize) -> Result<Ratio<i64>, ZfError> {
    require_degree(delta, 2)?;
    let (n, d) = (n as i64, delta as i64);
    Ok(Ratio::new((d - 2) * n + 2, d - 1))
}

/// `(Δ-2)n/(Δ-1)`, valid for connected graphs with Δ >= 3 other than `K_n`,
/// `K_{n/2,n/2}`, `K_{(n+1)/2,(n-1)/2}` and two small sporadic graphs.
pub fn zf_bound_strict(n: usize, delta: usize) -> Result<Ratio<i64>, ZfError> {
    require_degree(delta, 3)?;
    let (n, d) = (n as i64, delta as i64);
    Ok(Ratio::new((d - 2) * n, d - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::GainAngle;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::SplitMix64;

    fn graph(n: usize, edges: &[(usize, usize)]) -> GainGraph {
        GainGraph::new(n, edges.iter().map(|&(u, v)| (u, v, GainAngle::ONE))).unwrap()
    }

    fn cycle(n: usize) -> GainGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &e)
    }

    fn complete(n: usize) -> GainGraph {
        let e: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        graph(n, &e)
    }

    fn bipartite(a: usize, b: usize) -> GainGraph {
        let e: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        graph(a + b, &e)
    }

    /// Applies one randomly chosen available force at a time.
    fn closure_random_order(g: &GainGraph, initial: &[usize], rng: &mut SplitMix64) -> Vec<usize> {
        let mut black = vec![false; g.order()];
        for &v in initial {
            black[v] = true;
        }
        loop {
            let forces: Vec<usize> = (0..g.order())
                .filter(|&v| black[v])
                .filter_map(|v| {
                    let white: Vec<usize> = g
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&w| !black[w])
                        .collect();
                    (white.len() == 1).then(|| white[0])
                })
                .collect();
            match forces.choose(rng) {
                Some(&w) => black[w] = true,
                None => break,
            }
        }
        (0..g.order()).filter(|&v| black[v]).collect()
    }

    /// Z by trying every subset, smallest first.
    fn brute_force_z(g: &GainGraph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&m| {
                let set: Vec<usize> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
                closure_random_order(g, &set, &mut SplitMix64::seed_from_u64(0)).len() == n
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn closure_examples() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(closure(&p4, &[0]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(closure(&cycle(4), &[0]).unwrap(), vec![0]);
        let k5 = complete(5);
        assert_eq!(closure(&k5, &[0, 1, 2, 3, 4]).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(closure(&k5, &[7]), Err(ZfError::VertexOutOfRange(7)));
    }

    #[test]
    fn zero_forcing_set_examples() {
        assert!(is_zero_forcing_set(&cycle(5), &[0, 1]).unwrap());
        assert!(!is_zero_forcing_set(&cycle(5), &[0]).unwrap());
        let k4 = complete(4);
        for skip in 0..4 {
            let z: Vec<usize> = (0..4).filter(|&v| v != skip).collect();
            assert!(is_zero_forcing_set(&k4, &z).unwrap());
        }
    }

    #[test]
    fn exact_numbers_for_equality_families() {
        assert_eq!(zero_forcing_number(&cycle(6)).unwrap().number, 2);
        assert_eq!(zero_forcing_number(&complete(5)).unwrap().number, 4);
        assert_eq!(zero_forcing_number(&bipartite(3, 3)).unwrap().number, 4);
        let r = zero_forcing_number(&cycle(6)).unwrap();
        assert_eq!(r.witness, vec![0, 1]);
        assert_eq!(zero_forcing_number(&GainGraph::empty(1)).unwrap().number, 1);
        assert_eq!(zero_forcing_number(&GainGraph::empty(3)).unwrap().number, 3);
        assert_eq!(zero_forcing_number(&GainGraph::empty(0)).unwrap().number, 0);
        assert_eq!(
            zero_forcing_number(&GainGraph::empty(25)),
            Err(ZfError::TooLarge(25))
        );
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // star K_{1,3} with center 0: Z = 2; {0, 1} leaves the center with two
        // white leaves, {1, 2} lets a leaf force the center first
        let star = bipartite(1, 3);
        let r = zero_forcing_number(&star).unwrap();
        assert_eq!((r.number, r.witness), (2, vec![1, 2]));
        // path 0-2-3-1: endpoint 0 forces everything
        let p = graph(4, &[(0, 2), (2, 3), (3, 1)]);
        assert_eq!(zero_forcing_number(&p).unwrap().witness, vec![0]);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(zf_bound_general(6, 2).unwrap(), Ratio::from_integer(2));
        assert_eq!(zf_bound_general(5, 4).unwrap(), Ratio::new(12, 3));
        assert_eq!(zf_bound_general(6, 3).unwrap(), Ratio::from_integer(4));
        assert_eq!(zf_bound_strict(7, 4).unwrap(), Ratio::new(14, 3));
        assert_eq!(zf_bound_strict(6, 3).unwrap(), Ratio::from_integer(3));
        assert_eq!(zf_bound_strict(8, 4).unwrap(), Ratio::new(16, 3));
        assert_eq!(
            zf_bound_general(4, 1),
            Err(ZfError::DegreeTooSmall { need: 2, got: 1 })
        );
        assert_eq!(
            zf_bound_strict(4, 2),
            Err(ZfError::DegreeTooSmall { need: 3, got: 2 })
        );
    }

    fn random_graph(n: usize, p: f64, rng: &mut SplitMix64) -> GainGraph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        graph(n, &edges)
    }

    #[test]
    fn closure_is_order_independent() {
        let mut rng = SplitMix64::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(1..12);
            let g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
            let init: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
            let want = closure(&g, &init).unwrap();
            for _ in 0..3 {
                assert_eq!(closure_random_order(&g, &init, &mut rng), want);
            }
        }
    }

    #[test]
    fn exact_search_matches_brute_force() {
        let mut rng = SplitMix64::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..9);
            let g = random_graph(n, rng.gen_range(0.2..0.8), &mut rng);
            let r = zero_forcing_number(&g).unwrap();
            assert_eq!(r.number, brute_force_z(&g));
            assert_eq!(r.witness.len(), r.number);
            assert!(is_zero_forcing_set(&g, &r.witness).unwrap());
        }
    }

    proptest! {
        #[test]
        fn closure_monotone_and_idempotent(
            n in 1usize..12,
            seed in any::<u64>(),
            p in 0.1f64..0.8,
        ) {
            let mut rng = SplitMix64::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng);
            let init: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            let c = closure(&g, &init).unwrap();
            prop_assert!(init.iter().all(|v| c.contains(v)));
            prop_assert_eq!(closure(&g, &c).unwrap(), c);
        }
    }
}
