//! Auxiliary digraphs on ordered vertex pairs: the implication graph of a
//! reflexive digraph and the coarser pair digraph, strong components over
//! them, invertible-pair detection and walk certificates.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Digraph, VertexPair};

/// Canonical index of the ordered pair (u, v), u != v, among the
/// n(n-1) pair nodes: id = u*(n-1) + (v if v < u else v - 1).
#[inline(always)]
pub fn pair_id(n: usize, u: usize, v: usize) -> usize {
    debug_assert_ne!(u, v);
    u * (n - 1) + if v < u { v } else { v - 1 }
}

/// Inverse of `pair_id`.
#[inline(always)]
pub fn pair_from_id(n: usize, id: usize) -> VertexPair {
    let u = id / (n - 1);
    let r = id % (n - 1);
    let v = if r < u { r } else { r + 1 };
    VertexPair { u, v }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairGraphKind {
    Implication,
    PairDigraph,
}

/// A digraph whose nodes are the n(n-1) ordered pairs of distinct
/// vertices, in CSR form.
#[derive(Debug, Clone)]
pub struct PairGraph {
    n: usize,
    kind: PairGraphKind,
    start: Vec<usize>, // len n(n-1)+1
    targets: Vec<u32>,
}

impl PairGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PairGraphKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.n * (self.n - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    #[inline(always)]
    pub fn out_neighbors(&self, node: usize) -> &[u32] {
        &self.targets[self.start[node]..self.start[node + 1]]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out_neighbors(from).contains(&(to as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |s| self.out_neighbors(s).iter().map(move |&t| (s, t as usize)))
    }

    fn from_edge_list(n: usize, kind: PairGraphKind, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let nodes = n * (n - 1);
        let mut start = vec![0usize; nodes + 1];
        for &(s, _) in &edges {
            start[s as usize + 1] += 1;
        }
        for i in 0..nodes {
            start[i + 1] += start[i];
        }
        let targets = edges.into_iter().map(|(_, t)| t).collect();
        PairGraph { n, kind, start, targets }
    }
}

/// Builds the implication graph: for distinct u, v, w, the edges
/// (u,v)→(w,v) and (v,w)→(v,u) exist iff (u,w) ∈ E and (u,v) ∉ E,
/// or (w,u) ∈ E and (v,u) ∉ E.
pub fn build_implication_graph(h: &Digraph) -> PairGraph {
    let n = h.n();
    let nodes = n * (n - 1);
    // Two passes over the triples: count out-degrees, then fill. Each
    // triple contributes at most one edge per form and the two forms
    // change different coordinates, so no duplicates arise.
    let mut start = vec![0usize; nodes + 1];
    triple_scan(h, |u, v, w| {
        start[pair_id(n, u, v) + 1] += 1;
        start[pair_id(n, v, w) + 1] += 1;
    });
    for i in 0..nodes {
        start[i + 1] += start[i];
    }
    let mut targets = vec![0u32; start[nodes]];
    let mut cursor = start.clone();
    triple_scan(h, |u, v, w| {
        let a = pair_id(n, u, v);
        targets[cursor[a]] = pair_id(n, w, v) as u32;
        cursor[a] += 1;
        let b = pair_id(n, v, w);
        targets[cursor[b]] = pair_id(n, v, u) as u32;
        cursor[b] += 1;
    });
    // Fill order leaves each adjacency list sorted by triple scan order;
    // normalize for determinism of downstream traversals.
    for i in 0..nodes {
        targets[start[i]..start[i + 1]].sort_unstable();
    }
    PairGraph { n, kind: PairGraphKind::Implication, start, targets }
}

#[inline(always)]
fn triple_scan(h: &Digraph, mut emit: impl FnMut(usize, usize, usize)) {
    let n = h.n();
    for u in 0..n {
        for w in 0..n {
            if w == u {
                continue;
            }
            let uw = h.has_edge(u, w);
            let wu = h.has_edge(w, u);
            if !uw && !wu {
                continue;
            }
            for v in 0..n {
                if v == u || v == w {
                    continue;
                }
                if (uw && !h.has_edge(u, v)) || (wu && !h.has_edge(v, u)) {
                    emit(u, v, w);
                }
            }
        }
    }
}

/// Builds the pair digraph: for edges (u,v), (u',v') of H with
/// (u,v') ∉ E, the pair edges (u,u')→(v,v') and (v',v)→(u',u), with any
/// edge touching a diagonal pair discarded. Loops of H participate.
/// Quadratic in the edge count; used for cross-validation only.
pub fn build_pair_digraph(h: &Digraph) -> PairGraph {
    let n = h.n();
    let all_edges: Vec<(usize, usize)> = h.edges().collect();
    let mut set: HashSet<(u32, u32)> = HashSet::new();
    for &(u, v) in &all_edges {
        for &(u2, v2) in &all_edges {
            if h.has_edge(u, v2) {
                continue;
            }
            if u != u2 && v != v2 {
                let a = (pair_id(n, u, u2) as u32, pair_id(n, v, v2) as u32);
                let b = (pair_id(n, v2, v) as u32, pair_id(n, u2, u) as u32);
                // self-loops (from two loops of H) say nothing about
                // reachability; drop them
                if a.0 != a.1 {
                    set.insert(a);
                    set.insert(b);
                }
            }
        }
    }
    PairGraph::from_edge_list(n, PairGraphKind::PairDigraph, set.into_iter().collect())
}

/// Strong component labeling; component ids are assigned in reverse
/// topological order of the condensation (a component's id is smaller
/// than the id of any component that reaches it).
#[derive(Debug, Clone)]
pub struct SccLabeling {
    pub comp: Vec<u32>,
    pub count: usize,
}

impl SccLabeling {
    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.comp[a] == self.comp[b]
    }
}

/// Iterative Tarjan over a CSR pair graph. Roots are taken in node
/// order; iterative so n(n-1) ≈ 10^6 nodes do not overflow the stack.
pub fn strong_components(g: &PairGraph) -> SccLabeling {
    scc_csr(g.node_count(), |v| g.out_neighbors(v), 0..g.node_count())
}

/// Tarjan with an explicit root visit order. Component ids respect
/// reverse topological order regardless of the order chosen; the order
/// only breaks ties between mutually unreachable components.
pub(crate) fn scc_csr<'a, F>(n: usize, out: F, roots: impl Iterator<Item = usize>) -> SccLabeling
where
    F: Fn(usize) -> &'a [u32],
{
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    // (node, next edge offset)
    let mut call: Vec<(u32, u32)> = Vec::new();
    let mut next_index = 0u32;
    let mut count = 0u32;

    for root in roots {
        if index[root] != UNSET {
            continue;
        }
        call.push((root as u32, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            let v = v as usize;
            if *ei == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v as u32);
                on_stack[v] = true;
            }
            let succs = out(v);
            let mut advanced = false;
            while (*ei as usize) < succs.len() {
                let w = succs[*ei as usize] as usize;
                *ei += 1;
                if index[w] == UNSET {
                    call.push((w as u32, 0));
                    advanced = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if advanced {
                continue;
            }
            // v is done
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap() as usize;
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                let p = p as usize;
                low[p] = low[p].min(low[v]);
            }
        }
    }
    SccLabeling { comp, count: count as usize }
}

/// Smallest invertible pair by canonical pair-id, if any: a pair (u, v)
/// with (u, v) and (v, u) in one strong component of the implication
/// graph.
pub fn find_invertible_pair(h: &Digraph) -> Option<VertexPair> {
    let g = build_implication_graph(h);
    find_invertible_pair_in(&g)
}

pub fn find_invertible_pair_in(g: &PairGraph) -> Option<VertexPair> {
    let scc = strong_components(g);
    find_invertible_pair_scc(g.n(), &scc)
}

pub fn find_invertible_pair_scc(n: usize, scc: &SccLabeling) -> Option<VertexPair> {
    for id in 0..n * (n - 1) {
        let p = pair_from_id(n, id);
        if scc.same_component(id, pair_id(n, p.v, p.u)) {
            return Some(p);
        }
    }
    None
}

/// All invertible pairs of `g` (both orientations), sorted.
pub fn invertible_pairs_in(g: &PairGraph) -> Vec<VertexPair> {
    let scc = strong_components(g);
    let n = g.n();
    (0..n * (n - 1))
        .filter(|&id| {
            let p = pair_from_id(n, id);
            scc.same_component(id, pair_id(n, p.v, p.u))
        })
        .map(|id| pair_from_id(n, id))
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("pair ({0}, {1}) is not invertible")]
    NotInvertible(usize, usize),
    #[error("line {line}: malformed certificate: {msg}")]
    Malformed { line: usize, msg: String },
}

/// Witness that (u, v) and (v, u) are mutually reachable in the
/// implication graph: two walks, each a node sequence whose every step
/// can be re-derived from the host digraph's adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertiblePairCertificate {
    pub u: usize,
    pub v: usize,
    pub walk_forward: Vec<VertexPair>,
    pub walk_back: Vec<VertexPair>,
}

/// BFS-shortest walks (u,v) ⇝ (v,u) and back inside the implication
/// graph of `h`.
pub fn extract_certificate(
    h: &Digraph,
    p: VertexPair,
) -> Result<InvertiblePairCertificate, CertificateError> {
    let g = build_implication_graph(h);
    extract_certificate_in(&g, p)
}

pub fn extract_certificate_in(
    g: &PairGraph,
    p: VertexPair,
) -> Result<InvertiblePairCertificate, CertificateError> {
    let n = g.n();
    let a = pair_id(n, p.u, p.v);
    let b = pair_id(n, p.v, p.u);
    let fwd = bfs_walk(g, a, b).ok_or(CertificateError::NotInvertible(p.u, p.v))?;
    let back = bfs_walk(g, b, a).ok_or(CertificateError::NotInvertible(p.u, p.v))?;
    Ok(InvertiblePairCertificate {
        u: p.u,
        v: p.v,
        walk_forward: fwd.into_iter().map(|id| pair_from_id(n, id)).collect(),
        walk_back: back.into_iter().map(|id| pair_from_id(n, id)).collect(),
    })
}

fn bfs_walk(g: &PairGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    const UNSET: u32 = u32::MAX;
    let mut parent = vec![UNSET; g.node_count()];
    let mut queue = std::collections::VecDeque::new();
    parent[from] = from as u32;
    queue.push_back(from);
    'outer: while let Some(x) = queue.pop_front() {
        for &y in g.out_neighbors(x) {
            let y = y as usize;
            if parent[y] == UNSET {
                parent[y] = x as u32;
                if y == to {
                    break 'outer;
                }
                queue.push_back(y);
            }
        }
    }
    if parent[to] == UNSET {
        return None;
    }
    let mut walk = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur] as usize;
        walk.push(cur);
    }
    walk.reverse();
    Some(walk)
}

impl InvertiblePairCertificate {
    /// Three-line certificate text:
    /// `INVERTIBLE-PAIR u v` / `FORWARD (a,b) ...` / `BACK (c,d) ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "INVERTIBLE-PAIR {} {}", self.u, self.v);
        for (label, walk) in [("FORWARD", &self.walk_forward), ("BACK", &self.walk_back)] {
            let _ = write!(out, "{label}");
            for p in walk {
                let _ = write!(out, " ({},{})", p.u, p.v);
            }
            let _ = writeln!(out);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines.next().ok_or(CertificateError::Malformed {
            line: 0,
            msg: "empty certificate".into(),
        })?;
        let mut fields = head.split_whitespace();
        if fields.next() != Some("INVERTIBLE-PAIR") {
            return Err(CertificateError::Malformed {
                line: ln,
                msg: "expected INVERTIBLE-PAIR header".into(),
            });
        }
        let parse_num = |s: Option<&str>, line: usize| {
            s.and_then(|s| s.parse::<usize>().ok())
                .ok_or(CertificateError::Malformed { line, msg: "expected integer".into() })
        };
        let u = parse_num(fields.next(), ln)?;
        let v = parse_num(fields.next(), ln)?;
        if u == v {
            return Err(CertificateError::Malformed { line: ln, msg: "pair coordinates equal".into() });
        }
        let mut walks = Vec::new();
        for expect in ["FORWARD", "BACK"] {
            let (ln, line) = lines.next().ok_or(CertificateError::Malformed {
                line: 0,
                msg: format!("missing {expect} line"),
            })?;
            let rest = line.strip_prefix(expect).ok_or(CertificateError::Malformed {
                line: ln,
                msg: format!("expected {expect} line"),
            })?;
            let mut walk = Vec::new();
            for token in rest.split_whitespace() {
                let inner = token
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or(CertificateError::Malformed {
                        line: ln,
                        msg: format!("bad walk node {token:?}"),
                    })?;
                let (a, b) = inner.split_once(',').ok_or(CertificateError::Malformed {
                    line: ln,
                    msg: format!("bad walk node {token:?}"),
                })?;
                let a = parse_num(Some(a), ln)?;
                let b = parse_num(Some(b), ln)?;
                if a == b {
                    return Err(CertificateError::Malformed {
                        line: ln,
                        msg: format!("diagonal walk node {token:?}"),
                    });
                }
                walk.push(VertexPair { u: a, v: b });
            }
            walks.push(walk);
        }
        let walk_back = walks.pop().unwrap();
        let walk_forward = walks.pop().unwrap();
        Ok(InvertiblePairCertificate { u, v, walk_forward, walk_back })
    }
}
