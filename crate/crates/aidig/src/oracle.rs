//! Brute-force ground truth for desk-scale validation: permutation
//! search for min orderings, transitive-closure invertible-pair
//! detection on an independently built pair digraph, and an exhaustive
//! small-instance driver that cross-checks every component.

use thiserror::Error;

use crate::graph::{Digraph, VertexPair};
use crate::implication::{
    build_implication_graph, build_pair_digraph, invertible_pairs_in,
};
use crate::recognize::{recognize, Outcome};
use crate::twosat::{build_formula, solve_2sat};
use crate::verify;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {0} too large for {1} (limit {2})")]
    TooLarge(usize, &'static str, usize),
}

/// First permutation in lexicographic order that passes the
/// forbidden-pattern check, or None. Explores permutations as a
/// lexicographic prefix tree; a prefix already containing a forbidden
/// pattern is skipped wholesale, which cannot change the answer since
/// forbidden patterns only involve already-placed vertices.
pub fn brute_force_min_ordering(
    h: &Digraph,
) -> Result<Option<crate::orientation::MinOrdering>, OracleError> {
    let n = h.n();
    if n > 10 {
        return Err(OracleError::TooLarge(n, "permutation search", 10));
    }
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let found = search(h, &mut prefix, &mut used);
    Ok(found.map(|order| crate::orientation::MinOrdering { order }))
}

fn search(h: &Digraph, prefix: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<usize>> {
    let n = h.n();
    if prefix.len() == n {
        return Some(prefix.clone());
    }
    for next in 0..n {
        if used[next] {
            continue;
        }
        // check the new triples (u, v, next) with u ≺ v already placed
        let ok = (0..prefix.len()).all(|i| {
            (i + 1..prefix.len()).all(|j| {
                let (u, v, w) = (prefix[i], prefix[j], next);
                !((h.has_edge(u, w) && !h.has_edge(u, v))
                    || (h.has_edge(w, u) && !h.has_edge(v, u)))
            })
        });
        if !ok {
            continue;
        }
        used[next] = true;
        prefix.push(next);
        if let Some(hit) = search(h, prefix, used) {
            return Some(hit);
        }
        prefix.pop();
        used[next] = false;
    }
    None
}

/// All invertible pairs via Floyd-Warshall reachability on a pair
/// digraph matrix built directly from the definition; shares nothing
/// with the SCC-based detection.
pub fn brute_force_invertible_pairs(h: &Digraph) -> Result<Vec<VertexPair>, OracleError> {
    let n = h.n();
    if n > 12 {
        return Err(OracleError::TooLarge(n, "pair digraph closure", 12));
    }
    let nodes = n * (n - 1);
    let id = |u: usize, v: usize| crate::implication::pair_id(n, u, v);
    let mut reach = vec![vec![false; nodes]; nodes.max(1)];
    for i in 0..nodes {
        reach[i][i] = true;
    }
    // (u,u')→(v,v') and (v',v)→(u',u) whenever (u,v), (u',v') are edges
    // of H (loops included) and (u,v') is not
    for u in 0..n {
        for v in 0..n {
            if !h.has_edge(u, v) {
                continue;
            }
            for u2 in 0..n {
                for v2 in 0..n {
                    if !h.has_edge(u2, v2) || h.has_edge(u, v2) {
                        continue;
                    }
                    if u != u2 && v != v2 {
                        reach[id(u, u2)][id(v, v2)] = true;
                        reach[id(v2, v)][id(u2, u)] = true;
                    }
                }
            }
        }
    }
    for k in 0..nodes {
        for i in 0..nodes {
            if reach[i][k] {
                for j in 0..nodes {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && reach[id(u, v)][id(v, u)] && reach[id(v, u)][id(u, v)] {
                out.push(VertexPair { u, v });
            }
        }
    }
    Ok(out)
}

/// Counts from one exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DriverReport {
    pub instances: u64,
    pub yes: u64,
    pub no: u64,
}

/// Runs every reflexive digraph on `n` vertices through the full
/// pipeline and all cross-checks; panics with the offending instance
/// serialized on any disagreement.
pub fn exhaustive_driver(n: usize) -> Result<DriverReport, OracleError> {
    if n > 4 {
        return Err(OracleError::TooLarge(n, "exhaustive enumeration", 4));
    }
    let mut report = DriverReport { instances: 0, yes: 0, no: 0 };
    for mask in 0..1u64 << (n * (n - 1)) {
        let h = Digraph::from_nonloop_mask(n, mask);
        check_instance(&h);
        report.instances += 1;
        if recognize(&h).is_adjusted_interval() {
            report.yes += 1;
        } else {
            report.no += 1;
        }
    }
    Ok(report)
}

/// One-instance cross-check used by the driver and the randomized
/// suites: pipeline vs oracle class, verified witnesses, the
/// SAT ⟺ no-invertible-pair ⟺ min-ordering-exists equivalence, and
/// agreement of the two pair-graph routes.
pub fn check_instance(h: &Digraph) {
    let fail = |msg: &str| -> ! {
        panic!("{msg}\noffending instance:\n{}", h.serialize(true));
    };
    let result = recognize(h);
    let oracle_order = brute_force_min_ordering(h).unwrap();
    match &result.outcome {
        Outcome::MinOrdering(ord) => {
            if oracle_order.is_none() {
                fail("pipeline found a min ordering but the oracle found none");
            }
            if !verify::verify_min_ordering(h, ord) || !verify::verify_full_min_ordering(h, ord) {
                fail("produced min ordering failed verification");
            }
        }
        Outcome::InvertiblePair(cert) => {
            if oracle_order.is_some() {
                fail("pipeline reported an invertible pair but the oracle found a min ordering");
            }
            if !verify::verify_invertible_pair(h, cert) {
                fail("produced certificate failed verification");
            }
        }
    }
    let sat = solve_2sat(&build_formula(h)).is_some();
    let closure_pairs = brute_force_invertible_pairs(h).unwrap();
    let scc_pairs = invertible_pairs_in(&build_implication_graph(h));
    if scc_pairs != closure_pairs {
        fail("implication-graph and pair-digraph invertible pairs disagree");
    }
    let pair_digraph_pairs = invertible_pairs_in(&build_pair_digraph(h));
    if pair_digraph_pairs != closure_pairs {
        fail("pair-digraph SCC detection disagrees with the closure oracle");
    }
    if sat != closure_pairs.is_empty() {
        fail("satisfiability does not match absence of invertible pairs");
    }
    if sat != oracle_order.is_some() {
        fail("satisfiability does not match existence of a min ordering");
    }
}
