//! Certifying checkers, written directly against the defining
//! conditions and sharing no code with the producers: forbidden-pattern
//! verification of orderings and step-by-step walk verification of
//! invertible-pair certificates.

use crate::graph::Digraph;
use crate::implication::InvertiblePairCertificate;
use crate::orientation::MinOrdering;

/// Why an ordering or certificate was rejected; rendered as the CLI's
/// one-line reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    NotPermutation,
    ForbiddenTriple { u: usize, v: usize, w: usize },
    EdgePairViolation { u: usize, v: usize, u2: usize, v2: usize },
    BadEndpoints { which: &'static str },
    BadWalkStep { which: &'static str, index: usize },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::NotPermutation => write!(f, "ordering is not a permutation of 0..n"),
            Rejection::ForbiddenTriple { u, v, w } => {
                write!(f, "forbidden pattern at triple {u} < {v} < {w}")
            }
            Rejection::EdgePairViolation { u, v, u2, v2 } => {
                write!(f, "edge pair (({u},{v}), ({u2},{v2})) violates the min ordering condition")
            }
            Rejection::BadEndpoints { which } => write!(f, "{which} walk has wrong endpoints"),
            Rejection::BadWalkStep { which, index } => {
                write!(f, "{which} walk step {index} is not an implication edge")
            }
        }
    }
}

fn positions(n: usize, ord: &MinOrdering) -> Option<Vec<usize>> {
    if ord.order.len() != n {
        return None;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ord.order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return None;
        }
        pos[v] = i;
    }
    Some(pos)
}

/// Forbidden-pattern check for reflexive digraphs: for every u ≺ v ≺ w,
/// (u,w) ∈ E must imply (u,v) ∈ E and (w,u) ∈ E must imply (v,u) ∈ E.
pub fn check_min_ordering(h: &Digraph, ord: &MinOrdering) -> Result<(), Rejection> {
    let n = h.n();
    positions(n, ord).ok_or(Rejection::NotPermutation)?;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (u, v, w) = (ord.order[i], ord.order[j], ord.order[k]);
                if (h.has_edge(u, w) && !h.has_edge(u, v))
                    || (h.has_edge(w, u) && !h.has_edge(v, u))
                {
                    return Err(Rejection::ForbiddenTriple { u, v, w });
                }
            }
        }
    }
    Ok(())
}

pub fn verify_min_ordering(h: &Digraph, ord: &MinOrdering) -> bool {
    check_min_ordering(h, ord).is_ok()
}

/// The original min ordering condition over all edge pairs, loops
/// included: for edges (u,v), (u',v') with u ≺ u' and v' ≺ v the edge
/// (u,v') must be present. Agrees with the forbidden-pattern form on
/// reflexive digraphs; kept as an independent cross-check.
pub fn check_full_min_ordering(h: &Digraph, ord: &MinOrdering) -> Result<(), Rejection> {
    let n = h.n();
    let pos = positions(n, ord).ok_or(Rejection::NotPermutation)?;
    let edges: Vec<(usize, usize)> = h.edges().collect();
    for &(u, v) in &edges {
        for &(u2, v2) in &edges {
            if pos[u] < pos[u2] && pos[v2] < pos[v] && !h.has_edge(u, v2) {
                return Err(Rejection::EdgePairViolation { u, v, u2, v2 });
            }
        }
    }
    Ok(())
}

pub fn verify_full_min_ordering(h: &Digraph, ord: &MinOrdering) -> bool {
    check_full_min_ordering(h, ord).is_ok()
}

/// Walk verification: endpoints must be (u,v)/(v,u), and every
/// consecutive step must be an implication edge re-derived from H's
/// adjacency. No prebuilt implication graph is consulted.
pub fn check_invertible_pair(
    h: &Digraph,
    cert: &InvertiblePairCertificate,
) -> Result<(), Rejection> {
    let n = h.n();
    if cert.u >= n || cert.v >= n || cert.u == cert.v {
        return Err(Rejection::BadEndpoints { which: "certificate" });
    }
    for (which, walk, from, to) in [
        ("forward", &cert.walk_forward, (cert.u, cert.v), (cert.v, cert.u)),
        ("back", &cert.walk_back, (cert.v, cert.u), (cert.u, cert.v)),
    ] {
        let ok_ends = walk.first().map(|p| (p.u, p.v)) == Some(from)
            && walk.last().map(|p| (p.u, p.v)) == Some(to);
        if !ok_ends {
            return Err(Rejection::BadEndpoints { which });
        }
        for (i, step) in walk.windows(2).enumerate() {
            let (a, b) = (step[0], step[1]);
            if a.u >= n || a.v >= n || b.u >= n || b.v >= n || !implication_edge(h, a.u, a.v, b.u, b.v)
            {
                return Err(Rejection::BadWalkStep { which, index: i });
            }
        }
    }
    Ok(())
}

pub fn verify_invertible_pair(h: &Digraph, cert: &InvertiblePairCertificate) -> bool {
    check_invertible_pair(h, cert).is_ok()
}

// (a,b)→(c,d) is an implication edge iff it matches one of the two edge
// forms of the defining rule for some triple of distinct vertices.
fn implication_edge(h: &Digraph, a: usize, b: usize, c: usize, d: usize) -> bool {
    if a == b || c == d {
        return false;
    }
    if b == d && a != c {
        // (u,v)→(w,v): u=a, v=b, w=c
        forcing_condition(h, a, b, c)
    } else if a == c && b != d {
        // (v,w)→(v,u): v=a, w=b, u=d
        forcing_condition(h, d, a, b)
    } else {
        false
    }
}

fn forcing_condition(h: &Digraph, u: usize, v: usize, w: usize) -> bool {
    (h.has_edge(u, w) && !h.has_edge(u, v)) || (h.has_edge(w, u) && !h.has_edge(v, u))
}
