//! End-to-end recognition: 2-SAT for a consistent orientation, repair to
//! an acyclic tournament and read off the min ordering; on UNSAT, find
//! an invertible pair in the implication graph and extract its walk
//! certificate. Every output is re-verified by the independent checkers
//! before being returned.

use std::time::{Duration, Instant};

use crate::graph::Digraph;
use crate::implication::{
    build_implication_graph, extract_certificate_in, find_invertible_pair_in,
    InvertiblePairCertificate,
};
use crate::orientation::{make_acyclic, topological_order, MinOrdering, Tournament};
use crate::twosat::{build_formula, solve_2sat};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    MinOrdering(MinOrdering),
    InvertiblePair(InvertiblePairCertificate),
}

/// Per-step timings and the sizes attained by the constructions,
/// reported against the worst-case bounds by the CLI.
#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub t_formula: Duration,
    pub t_solve: Duration,
    pub t_orient: Duration,
    pub t_certificate: Duration,
    pub clause_count: usize,
    pub var_count: usize,
    pub implication_edges: Option<usize>,
}

impl Stats {
    pub fn total(&self) -> Duration {
        self.t_formula + self.t_solve + self.t_orient + self.t_certificate
    }
}

#[derive(Debug, Clone)]
pub struct RecognitionResult {
    pub outcome: Outcome,
    pub stats: Stats,
}

impl RecognitionResult {
    pub fn is_adjusted_interval(&self) -> bool {
        matches!(self.outcome, Outcome::MinOrdering(_))
    }
}

/// Runs the four-step recognition. The implication graph is built only
/// on the UNSAT branch, so yes-instances never pay for it.
///
/// Panics if an internal re-verification fails; that signals an
/// implementation bug, never a property of the input.
pub fn recognize(h: &Digraph) -> RecognitionResult {
    let mut stats = Stats::default();

    let t0 = Instant::now();
    let phi = build_formula(h);
    stats.t_formula = t0.elapsed();
    stats.clause_count = phi.clauses.len();
    stats.var_count = phi.n_vars;

    let t0 = Instant::now();
    let tau = solve_2sat(&phi);
    stats.t_solve = t0.elapsed();

    match tau {
        Some(tau) => {
            let t0 = Instant::now();
            drop(phi);
            let t = Tournament::from_assignment(&tau, h.n());
            let ordering = topological_order(&make_acyclic(&t, h))
                .expect("repaired tournament must be acyclic");
            stats.t_orient = t0.elapsed();
            assert!(
                verify::verify_min_ordering(h, &ordering),
                "internal error: produced ordering failed verification"
            );
            RecognitionResult { outcome: Outcome::MinOrdering(ordering), stats }
        }
        None => {
            let t0 = Instant::now();
            drop(phi);
            let hstar = build_implication_graph(h);
            stats.implication_edges = Some(hstar.edge_count());
            let pair = find_invertible_pair_in(&hstar)
                .expect("UNSAT formula must come with an invertible pair");
            let cert = extract_certificate_in(&hstar, pair)
                .expect("invertible pair must admit walks");
            stats.t_certificate = t0.elapsed();
            assert!(
                verify::verify_invertible_pair(h, &cert),
                "internal error: produced certificate failed verification"
            );
            RecognitionResult { outcome: Outcome::InvertiblePair(cert), stats }
        }
    }
}
