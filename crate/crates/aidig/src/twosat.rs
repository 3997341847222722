//! The 2-CNF formula over pair variables associated with a reflexive
//! digraph, and a strong-component 2-SAT solver.
//!
//! A variable exists for each unordered pair {lo, hi} with lo < hi; its
//! positive literal is the pair variable for the ordered reading
//! (lo, hi), and the reading (hi, lo) is its negation. The base linear
//! order of the vertices is the index order.

use std::fmt::Write as _;

use crate::graph::Digraph;
use crate::implication::{build_implication_graph, pair_id, scc_csr};

/// Canonical index of the unordered pair {lo, hi}, lo < hi.
#[inline(always)]
pub fn var_index(n: usize, lo: usize, hi: usize) -> usize {
    debug_assert!(lo < hi && hi < n);
    lo * n - lo * (lo + 1) / 2 + (hi - lo - 1)
}

pub fn var_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// A literal: variable index plus polarity. The literal for the ordered
/// pair (u, v) is positive iff u < v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(pub u32);

impl Lit {
    pub fn new(var: usize, negated: bool) -> Self {
        Lit((var as u32) << 1 | negated as u32)
    }

    /// Literal asserting the ordered reading x_(u,v) for distinct u, v.
    pub fn from_ordered_pair(n: usize, u: usize, v: usize) -> Self {
        if u < v {
            Lit::new(var_index(n, u, v), false)
        } else {
            Lit::new(var_index(n, v, u), true)
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negation(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

/// A 2-CNF formula; every clause has exactly two literals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoCnf {
    pub n_vars: usize,
    pub clauses: Vec<(Lit, Lit)>,
}

/// Total truth assignment, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn satisfies_lit(&self, l: Lit) -> bool {
        self.values[l.var()] != l.negated()
    }

    pub fn satisfies(&self, phi: &TwoCnf) -> bool {
        phi.clauses.iter().all(|&(a, b)| self.satisfies_lit(a) || self.satisfies_lit(b))
    }
}

/// Builds the formula with one clause (x_(u,v) ∨ x_(v,w)) per ordered
/// triple of distinct u, v, w with (u,w) ∈ E and (u,v) ∉ E, or
/// (w,u) ∈ E and (v,u) ∉ E. Triples are scanned in lexicographic order;
/// distinct triples yield distinct clauses, so no merging is needed.
pub fn build_formula(h: &Digraph) -> TwoCnf {
    let n = h.n();
    let mut clauses = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if v == u {
                continue;
            }
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                if (h.has_edge(u, w) && !h.has_edge(u, v))
                    || (h.has_edge(w, u) && !h.has_edge(v, u))
                {
                    clauses.push((
                        Lit::from_ordered_pair(n, u, v),
                        Lit::from_ordered_pair(n, v, w),
                    ));
                }
            }
        }
    }
    TwoCnf { n_vars: var_count(n), clauses }
}

/// Strong-component 2-SAT: build the clause implication graph, compute
/// its SCCs, reject when a variable meets its negation in one component,
/// otherwise read the assignment off the reverse topological numbering.
///
/// Tautological clauses (l ∨ ¬l) are skipped; a degenerate (l ∨ l)
/// behaves as the unit clause l. Unconstrained variables come out false.
pub fn solve_2sat(phi: &TwoCnf) -> Option<Assignment> {
    let nodes = 2 * phi.n_vars;
    // literal node id: var*2 + negated
    let node = |l: Lit| l.var() * 2 + l.negated() as usize;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * phi.clauses.len());
    for &(a, b) in &phi.clauses {
        if a == b.negation() {
            continue; // tautology
        }
        edges.push((node(a.negation()) as u32, node(b) as u32));
        edges.push((node(b.negation()) as u32, node(a) as u32));
    }
    edges.sort_unstable();
    edges.dedup();
    let mut start = vec![0usize; nodes + 1];
    for &(s, _) in &edges {
        start[s as usize + 1] += 1;
    }
    for i in 0..nodes {
        start[i + 1] += start[i];
    }
    let targets: Vec<u32> = edges.iter().map(|&(_, t)| t).collect();

    // Visit the negative literal of each variable first so that an
    // unconstrained variable's negation lands in an earlier (reverse
    // topologically later) component and the variable reads as false.
    let scc = scc_csr(
        nodes,
        |v| &targets[start[v]..start[v + 1]],
        (0..phi.n_vars).flat_map(|v| [2 * v + 1, 2 * v]),
    );

    let mut values = Vec::with_capacity(phi.n_vars);
    for v in 0..phi.n_vars {
        let pos = scc.comp[2 * v];
        let neg = scc.comp[2 * v + 1];
        if pos == neg {
            return None;
        }
        // reverse topological numbering: smaller id = later in topo order
        values.push(pos < neg);
    }
    let tau = Assignment { values };
    debug_assert!(tau.satisfies(phi));
    Some(tau)
}

/// Checks that the clause implication graph of φ_H coincides with the
/// implication graph of H (isolated nodes aside). The literal reading
/// (u, v) is mapped to the pair node (v, u): a false x_(u,v) orients
/// u→v, so the pair node asserting "u precedes v" is the negation's.
pub fn formula_graph_matches_implication_graph(h: &Digraph) -> bool {
    let n = h.n();
    let phi = build_formula(h);
    let lit_pair = |l: Lit| {
        let (lo, hi) = var_pair(n, l.var());
        if l.negated() {
            pair_id(n, lo, hi)
        } else {
            pair_id(n, hi, lo)
        }
    };
    let mut formula_edges: Vec<(usize, usize)> = Vec::with_capacity(2 * phi.clauses.len());
    for &(a, b) in &phi.clauses {
        formula_edges.push((lit_pair(a.negation()), lit_pair(b)));
        formula_edges.push((lit_pair(b.negation()), lit_pair(a)));
    }
    formula_edges.sort_unstable();
    formula_edges.dedup();
    let hstar = build_implication_graph(h);
    let mut hstar_edges: Vec<(usize, usize)> = hstar.edges().collect();
    hstar_edges.sort_unstable();
    formula_edges == hstar_edges
}

/// Inverse of `var_index`.
pub fn var_pair(n: usize, var: usize) -> (usize, usize) {
    let mut lo = 0;
    let mut var = var;
    loop {
        let row = n - lo - 1;
        if var < row {
            return (lo, lo + 1 + var);
        }
        var -= row;
        lo += 1;
    }
}

/// DIMACS CNF: variable k+1 is the canonical pair variable k; a positive
/// integer is the literal x_(lo,hi).
pub fn to_dimacs(phi: &TwoCnf) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", phi.n_vars, phi.clauses.len());
    for &(a, b) in &phi.clauses {
        let num = |l: Lit| {
            let v = l.var() as i64 + 1;
            if l.negated() {
                -v
            } else {
                v
            }
        };
        let _ = writeln!(out, "{} {} 0", num(a), num(b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{samples, Digraph};

    #[test]
    fn var_index_roundtrip() {
        for n in 2..9 {
            let mut seen = 0;
            for lo in 0..n {
                for hi in lo + 1..n {
                    let idx = var_index(n, lo, hi);
                    assert_eq!(idx, seen);
                    assert_eq!(var_pair(n, idx), (lo, hi));
                    seen += 1;
                }
            }
            assert_eq!(seen, var_count(n));
        }
    }

    #[test]
    fn formula_of_loops_only_is_empty() {
        let phi = build_formula(&samples::loops_only_2());
        assert!(phi.clauses.is_empty());
        assert_eq!(phi.n_vars, 1);
    }

    #[test]
    fn formula_of_directed_cycle_has_forced_clause() {
        // triple u=0, v=2, w=1 with (0,1) ∈ E, (0,2) ∉ E forces
        // (x_(0,2) ∨ x_(2,1))
        let phi = build_formula(&samples::directed_cycle_3());
        let want = (Lit::from_ordered_pair(3, 0, 2), Lit::from_ordered_pair(3, 2, 1));
        assert!(phi.clauses.contains(&want));
    }

    #[test]
    fn formula_size_bounds_random() {
        for i in 0..500u64 {
            let n = 1 + (i as usize * 6151) % 30;
            let p = (i % 11) as f64 / 10.0;
            let h = Digraph::random_reflexive(n, p, 1000 + i).unwrap();
            let phi = build_formula(&h);
            // at most two clauses per vertex-edge incidence of H, one
            // per side of the middle vertex
            assert!(phi.clauses.len() <= 2 * h.n() * h.m(), "n={n} p={p}");
            assert_eq!(phi.n_vars, var_count(n));
            // distinct triples give distinct clauses
            let mut c = phi.clauses.clone();
            c.sort_unstable();
            c.dedup();
            assert_eq!(c.len(), phi.clauses.len());
        }
    }

    #[test]
    fn empty_formula_is_sat_all_false() {
        let phi = TwoCnf { n_vars: 3, clauses: vec![] };
        let tau = solve_2sat(&phi).unwrap();
        assert_eq!(tau.values, vec![false; 3]);
    }

    #[test]
    fn contradictory_units_unsat() {
        let a = Lit::new(0, false);
        let phi = TwoCnf { n_vars: 1, clauses: vec![(a, a), (a.negation(), a.negation())] };
        assert_eq!(solve_2sat(&phi), None);
    }

    #[test]
    fn unit_clause_forced() {
        let a = Lit::new(0, true);
        let phi = TwoCnf { n_vars: 2, clauses: vec![(a, a)] };
        let tau = solve_2sat(&phi).unwrap();
        assert!(tau.satisfies_lit(a));
        assert!(!tau.values[1], "unconstrained variable defaults to false");
    }

    #[test]
    fn tautology_skipped() {
        let a = Lit::new(0, false);
        let phi = TwoCnf { n_vars: 1, clauses: vec![(a, a.negation())] };
        let tau = solve_2sat(&phi).unwrap();
        assert!(!tau.values[0]);
    }

    #[test]
    fn solver_agrees_with_truth_table() {
        // random small formulas vs exhaustive satisfiability
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n_vars = rng.gen_range(1..=6);
            let n_clauses = rng.gen_range(0..=10);
            let clauses: Vec<(Lit, Lit)> = (0..n_clauses)
                .map(|_| {
                    (
                        Lit::new(rng.gen_range(0..n_vars), rng.gen()),
                        Lit::new(rng.gen_range(0..n_vars), rng.gen()),
                    )
                })
                .collect();
            let phi = TwoCnf { n_vars, clauses };
            let brute = (0..1u32 << n_vars).any(|bits| {
                let tau = Assignment {
                    values: (0..n_vars).map(|i| bits >> i & 1 == 1).collect(),
                };
                tau.satisfies(&phi)
            });
            match solve_2sat(&phi) {
                Some(tau) => {
                    assert!(brute);
                    assert!(tau.satisfies(&phi));
                }
                None => assert!(!brute),
            }
        }
    }

    #[test]
    fn formula_graph_isomorphism_reference() {
        assert!(formula_graph_matches_implication_graph(&samples::loops_only_2()));
        assert!(formula_graph_matches_implication_graph(&samples::directed_cycle_3()));
        assert!(formula_graph_matches_implication_graph(&samples::transitive_tournament_3()));
        assert!(formula_graph_matches_implication_graph(&samples::symmetric_cycle_4()));
    }

    #[test]
    fn formula_graph_isomorphism_random() {
        for i in 0..500u64 {
            let n = 2 + (i as usize * 4093) % 11;
            let p = (i % 11) as f64 / 10.0;
            let h = Digraph::random_reflexive(n, p, 2000 + i).unwrap();
            assert!(formula_graph_matches_implication_graph(&h), "n={n} seed={}", 2000 + i);
        }
    }

    #[test]
    fn formula_graph_skew_symmetry() {
        let h = Digraph::random_reflexive(7, 0.4, 17).unwrap();
        let phi = build_formula(&h);
        let mut edges: Vec<(Lit, Lit)> = Vec::new();
        for &(a, b) in &phi.clauses {
            edges.push((a.negation(), b));
            edges.push((b.negation(), a));
        }
        for &(s, t) in &edges {
            assert!(edges.contains(&(t.negation(), s.negation())));
        }
    }

    #[test]
    fn dimacs_export_shape() {
        let phi = build_formula(&samples::directed_cycle_3());
        let text = to_dimacs(&phi);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(format!("p cnf 3 {}", phi.clauses.len()).as_str()));
        for line in lines {
            assert!(line.ends_with(" 0"));
        }
    }
}
