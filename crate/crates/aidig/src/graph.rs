//! Reflexive digraph data model: construction, edge-list parsing and
//! serialization, and seeded random instance generation.
//!
//! Vertices are dense 0-based indices. Adjacency is stored as a dense
//! boolean matrix so edge membership is O(1); the recognition pipeline
//! is cubic anyway, so the O(n^2) memory is acceptable.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("not reflexive: vertex {v} has no loop")]
    NotReflexive { v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

/// A reflexive digraph on vertices `0..n`. Immutable after construction;
/// every constructor enforces a loop on every vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>, // row-major n*n
    m: usize,       // non-loop edge count
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, m={}, edges={:?})", self.n, self.m, self.non_loop_edges().collect::<Vec<_>>())
    }
}

impl Digraph {
    /// Loops-only digraph on `n` vertices.
    pub fn loops_only(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut adj = vec![false; n * n];
        for v in 0..n {
            adj[v * n + v] = true;
        }
        Ok(Digraph { n, adj, m: 0 })
    }

    /// Builds a digraph from explicit directed edges. Loops for all
    /// vertices are implied when `add_loops` is set; otherwise every
    /// vertex must carry an explicit loop.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        add_loops: bool,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut adj = vec![false; n * n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n || v >= n {
                let w = if u >= n { u } else { v };
                return Err(GraphError::VertexOutOfRange { line: 0, v: w, n });
            }
            if adj[u * n + v] {
                return Err(GraphError::DuplicateEdge { line: 0, u, v });
            }
            adj[u * n + v] = true;
            if u != v {
                m += 1;
            }
        }
        if add_loops {
            for v in 0..n {
                adj[v * n + v] = true;
            }
        } else {
            for v in 0..n {
                if !adj[v * n + v] {
                    return Err(GraphError::NotReflexive { v });
                }
            }
        }
        Ok(Digraph { n, adj, m })
    }

    /// Builds from a bitmask over the n(n-1) non-loop positions in
    /// lexicographic (u, v) order. Drives exhaustive enumeration.
    pub fn from_nonloop_mask(n: usize, mask: u64) -> Self {
        assert!(n >= 1 && n * (n - 1) <= 64);
        let mut adj = vec![false; n * n];
        let mut bit = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    adj[u * n + v] = true;
                } else {
                    adj[u * n + v] = mask >> bit & 1 == 1;
                    bit += 1;
                }
            }
        }
        let m = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && adj[u * n + v])
            .count();
        Digraph { n, adj, m }
    }

    /// Each of the n(n-1) ordered non-loop pairs becomes an edge
    /// independently with probability `p`, drawn from a ChaCha stream so
    /// the result is reproducible across platforms.
    pub fn random_reflexive(n: usize, p: f64, seed: u64) -> Result<Self, GraphError> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(GraphError::InvalidProbability(p));
        }
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut adj = vec![false; n * n];
        let mut m = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    adj[u * n + v] = true;
                } else if rng.gen::<f64>() < p {
                    adj[u * n + v] = true;
                    m += 1;
                }
            }
        }
        Ok(Digraph { n, adj, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Non-loop directed edge count.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Non-loop edges in lexicographic order.
    pub fn non_loop_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (0..n).map(move |v| (u, v)))
            .filter(move |&(u, v)| u != v && self.has_edge(u, v))
    }

    /// All edges including loops, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (0..n).map(move |v| (u, v)))
            .filter(move |&(u, v)| self.has_edge(u, v))
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * (self.n - 1)
    }

    /// Parses the edge-list text format: header "n m", then m lines
    /// "u v"; '#' starts a comment line; trailing whitespace tolerated.
    pub fn parse(text: &str, add_loops: bool) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let a = fields.next();
            let b = fields.next();
            if fields.next().is_some() {
                return Err(GraphError::Malformed {
                    line: line_no,
                    msg: format!("expected two fields, got {line:?}"),
                });
            }
            let parse_num = |s: Option<&str>| -> Result<usize, GraphError> {
                s.and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| GraphError::Malformed {
                        line: line_no,
                        msg: format!("expected two non-negative integers, got {line:?}"),
                    })
            };
            let a = parse_num(a)?;
            let b = parse_num(b)?;
            if header.is_none() {
                header = Some((a, b));
            } else {
                edges.push((a, b));
                edge_lines.push(line_no);
            }
        }
        let (n, declared_m) = header.ok_or(GraphError::Malformed {
            line: 0,
            msg: "missing header line".into(),
        })?;
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if edges.len() != declared_m {
            return Err(GraphError::EdgeCountMismatch {
                declared: declared_m,
                found: edges.len(),
            });
        }
        Self::from_edges(n, &edges, add_loops).map_err(|e| match e {
            // Rewrite positions recorded by from_edges with source lines.
            GraphError::VertexOutOfRange { v, n, .. } => {
                let line = edges
                    .iter()
                    .position(|&(a, b)| a == v || b == v)
                    .map(|i| edge_lines[i])
                    .unwrap_or(0);
                GraphError::VertexOutOfRange { line, v, n }
            }
            GraphError::DuplicateEdge { u, v, .. } => {
                let line = edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &e)| e == (u, v))
                    .nth(1)
                    .map(|(i, _)| edge_lines[i])
                    .unwrap_or(0);
                GraphError::DuplicateEdge { line, u, v }
            }
            other => other,
        })
    }

    /// Emits the edge-list format; edges in lexicographic order.
    /// Round-trips with `parse`.
    pub fn serialize(&self, include_loops: bool) -> String {
        let mut out = String::new();
        let count = if include_loops { self.m + self.n } else { self.m };
        let _ = writeln!(out, "{} {}", self.n, count);
        for (u, v) in self.edges() {
            if u == v && !include_loops {
                continue;
            }
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// An ordered pair of distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    pub u: usize,
    pub v: usize,
}

impl VertexPair {
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "vertex pair coordinates must be distinct");
        VertexPair { u, v }
    }

    pub fn swapped(self) -> Self {
        VertexPair { u: self.v, v: self.u }
    }
}

/// Fixed reference instances used across the test suites.
pub mod samples {
    use super::Digraph;

    /// n=2, loops only.
    pub fn loops_only_2() -> Digraph {
        Digraph::loops_only(2).unwrap()
    }

    /// Reflexive directed 3-cycle 0→1→2→0.
    pub fn directed_cycle_3() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap()
    }

    /// Reflexive transitive tournament on 3 vertices.
    pub fn transitive_tournament_3() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)], true).unwrap()
    }

    /// Reflexive symmetric 4-cycle.
    pub fn symmetric_cycle_4() -> Digraph {
        Digraph::from_edges(
            4,
            &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (0, 3)],
            true,
        )
        .unwrap()
    }
}
