//! Gain graphs: a simple graph with a unit gain on every oriented edge.
//!
//! Only `φ(e_{u,v})` with `u < v` is stored; the reverse orientation is its
//! conjugate. The text format (`.ggr`) is line oriented:
//!
//! ```text
//! # comment
//! n 3
//! e 0 1 0/1
//! e 1 2 1/2
//! ```
//!
//! where `e u v num/den` sets `φ(e_{u,v}) = exp(iπ·num/den)`.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::angle::{AngleError, GainAngle};

/// Largest vertex count the parser accepts.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Angle { line: usize, source: AngleError },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("vertex count {0} exceeds limit {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("induced subgraph needs at least one vertex")]
    EmptySelection,
}

/// An undirected edge `u < v` carrying `φ(e_{u,v})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub gain: GainAngle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

/// Vertex degrees and the maximum degree Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
}

impl GainGraph {
    /// Builds a validated graph. Edges may be given in either orientation;
    /// a pair `(v, u, g)` with `v > u` is stored as `(u, v, -g)`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, GainAngle)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut stored = Vec::new();
        for (a, b, gain) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v, gain) = if a < b { (a, b, gain) } else { (b, a, -gain) };
            stored.push(Edge { u, v, gain });
        }
        stored.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = stored
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &stored {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(GainGraph {
            n,
            edges: stored,
            adj,
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        GainGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// `φ(e_{a,b})` for the orientation `a → b`, or `None` if not adjacent.
    pub fn gain(&self, a: usize, b: usize) -> Option<GainAngle> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let idx = self
            .edges
            .binary_search_by_key(&(u, v), |e| (e.u, e.v))
            .ok()?;
        let g = self.edges[idx].gain;
        Some(if a < b { g } else { -g })
    }

    /// Same graph with every gain replaced by `f(edge)`.
    pub fn map_gains<F>(&self, mut f: F) -> GainGraph
    where
        F: FnMut(&Edge) -> GainAngle,
    {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { gain: f(e), ..*e })
            .collect();
        GainGraph {
            n: self.n,
            edges,
            adj: self.adj.clone(),
        }
    }

    /// Γ(Φ): the same graph with all gains set to 1.
    pub fn underlying(&self) -> GainGraph {
        self.map_gains(|_| GainAngle::ONE)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            degrees,
            max_degree,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components, each listed in BFS order from its smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff the underlying graph is connected. The empty graph on zero
    /// vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Proper 2-coloring of the underlying graph, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].unwrap();
                for &y in &self.adj[x] {
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Subgraph induced by `keep`, reindexed in ascending original order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<GainGraph, GraphError> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        if let Some(&vertex) = keep.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| (index[e.u], index[e.v], e.gain));
        GainGraph::new(keep.len(), edges)
    }

    /// True iff the underlying graph is `C_n` for some `n >= 3`.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && self.edges.len() == self.n
            && self.adj.iter().all(|a| a.len() == 2)
            && self.is_connected()
    }

    /// Vertex order `v0, v1, …` around the cycle starting at 0 toward its
    /// smaller neighbor. `None` unless the underlying graph is a cycle.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if !self.is_cycle() {
            return None;
        }
        let mut order = vec![0, self.adj[0][0]];
        while order.len() < self.n {
            let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
            let next = if self.adj[cur][0] == prev {
                self.adj[cur][1]
            } else {
                self.adj[cur][0]
            };
            order.push(next);
        }
        Some(order)
    }

    /// True iff the underlying graph is `K_n`.
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Part sizes `(a, b)` with `a >= b >= 1` if the underlying graph is `K_{a,b}`.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        let side = self.bipartition()?;
        let a = side.iter().filter(|&&s| !s).count();
        let b = self.n - a;
        if a == 0 || b == 0 || !self.is_connected() || self.edges.len() != a * b {
            return None;
        }
        Some((a.max(b), a.min(b)))
    }

    /// Serializes to `.ggr`: normalized angles, edges sorted by `(u, v)`.
    pub fn to_ggr(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        for e in &self.edges {
            writeln!(out, "e {} {} {}", e.u, e.v, e.gain).unwrap();
        }
        out
    }
}

impl fmt::Display for GainGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ggr())
    }
}

/// Parses the `.ggr` text format.
pub fn parse_gain_graph(text: &str) -> Result<GainGraph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| GraphError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "n" => {
                if n.is_some() {
                    return Err(syntax("repeated `n` header"));
                }
                if fields.len() != 2 {
                    return Err(syntax("expected `n <count>`"));
                }
                let count: usize = fields[1].parse().map_err(|_| syntax("bad vertex count"))?;
                if count > MAX_VERTICES {
                    return Err(GraphError::TooLarge(count));
                }
                n = Some(count);
            }
            "e" => {
                let count = n.ok_or(GraphError::MissingHeader)?;
                if fields.len() != 4 {
                    return Err(syntax("expected `e <u> <v> <num>/<den>`"));
                }
                let u: usize = fields[1].parse().map_err(|_| syntax("bad vertex index"))?;
                let v: usize = fields[2].parse().map_err(|_| syntax("bad vertex index"))?;
                let gain: GainAngle = fields[3]
                    .parse()
                    .map_err(|source| GraphError::Angle { line, source })?;
                for vertex in [u, v] {
                    if vertex >= count {
                        return Err(GraphError::VertexOutOfRange { vertex, n: count });
                    }
                }
                edges.push((u, v, gain));
            }
            other => return Err(syntax(&format!("unknown directive {other:?}"))),
        }
    }
    GainGraph::new(n.ok_or(GraphError::MissingHeader)?, edges)
}
