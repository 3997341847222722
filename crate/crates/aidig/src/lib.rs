//! Certifying recognition of adjusted interval digraphs.
//!
//! A reflexive digraph is an adjusted interval digraph exactly when it
//! admits a min ordering. This crate decides the question in O(n^3):
//! it reduces the search for a consistent orientation of the complete
//! graph to 2-SAT, repairs the resulting tournament into an acyclic one
//! and reads off a min ordering; when the formula is unsatisfiable it
//! produces an invertible pair together with walk certificates inside
//! the implication graph on ordered vertex pairs. Both kinds of answer
//! are re-checked by independent verifiers, and a brute-force oracle
//! covers small instances exhaustively.

pub mod graph;
pub mod implication;
pub mod oracle;
pub mod orientation;
pub mod recognize;
pub mod twosat;
pub mod verify;

pub use graph::{Digraph, GraphError, VertexPair};
pub use implication::{InvertiblePairCertificate, PairGraph};
pub use orientation::{MinOrdering, Tournament};
pub use recognize::{recognize, Outcome, RecognitionResult};

/// Parses an ordering file: whitespace-separated vertex indices, with
/// '#' comments; a leading "MIN-ORDERING:" tag is tolerated so
/// `recognize` output can be fed back in directly.
pub fn parse_ordering(text: &str) -> Result<MinOrdering, GraphError> {
    let mut order = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line = line.strip_prefix("MIN-ORDERING:").unwrap_or(line).trim();
        for tok in line.split_whitespace() {
            let v = tok.parse::<usize>().map_err(|_| GraphError::Malformed {
                line: idx + 1,
                msg: format!("expected a vertex index, got {tok:?}"),
            })?;
            order.push(v);
        }
    }
    Ok(MinOrdering { order })
}
