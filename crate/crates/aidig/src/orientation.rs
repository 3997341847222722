//! Tournaments over the vertex set: the orientation induced by a truth
//! assignment, consistency with the host digraph's forcing relation,
//! and the triangle-reversal repair that turns a consistent tournament
//! into an acyclic one, i.e. a min ordering.

use thiserror::Error;

use crate::graph::Digraph;
use crate::twosat::{var_index, Assignment};

/// A complete orientation of the vertex set: exactly one of u→v, v→u
/// per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    beats: Vec<bool>, // beats[u*n+v] ⟺ u→v
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("tournament is cyclic: directed triangle {0}→{1}→{2}→{0}")]
    Cyclic(usize, usize, usize),
}

impl Tournament {
    /// Builds from an explicit direction predicate.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Tournament { n, beats: vec![false; n * n] };
        for u in 0..n {
            for v in u + 1..n {
                if beats(u, v) {
                    t.beats[u * n + v] = true;
                } else {
                    t.beats[v * n + u] = true;
                }
            }
        }
        t
    }

    /// The orientation associated with a truth assignment: u→v exactly
    /// when the pair literal reading (u, v) is false under tau.
    pub fn from_assignment(tau: &Assignment, n: usize) -> Self {
        assert_eq!(tau.values.len(), n * (n - 1) / 2);
        Tournament::from_fn(n, |u, v| !tau.values[var_index(n, u, v)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.beats[u * self.n + v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| v != u && self.beats(u, v)).count()
    }

    fn reverse_edge(&mut self, v: usize, w: usize) {
        debug_assert!(self.beats(v, w));
        self.beats[v * self.n + w] = false;
        self.beats[w * self.n + v] = true;
    }
}

/// A tournament is consistent with H when no implication-graph edge
/// forces a direction it violates: there must be no distinct u, v, w
/// with u→v and v→w in T while the triple satisfies the forcing
/// condition (u,w) ∈ E, (u,v) ∉ E or (w,u) ∈ E, (v,u) ∉ E. The two edge
/// forms of the forcing rule collapse to the same triple test, and
/// edge-wise closure implies closure under walks.
pub fn is_consistent(t: &Tournament, h: &Digraph) -> bool {
    first_violation(t, h).is_none()
}

pub fn first_violation(t: &Tournament, h: &Digraph) -> Option<(usize, usize, usize)> {
    let n = h.n();
    for u in 0..n {
        for v in 0..n {
            if v == u || !t.beats(u, v) {
                continue;
            }
            for w in 0..n {
                if w == u || w == v || !t.beats(v, w) {
                    continue;
                }
                if (h.has_edge(u, w) && !h.has_edge(u, v))
                    || (h.has_edge(w, u) && !h.has_edge(v, u))
                {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// First directed triangle x→y→z→x in lexicographic scan order, if any.
pub fn find_directed_triangle(t: &Tournament) -> Option<(usize, usize, usize)> {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            if y == x || !t.beats(x, y) {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                if t.beats(y, z) && t.beats(z, x) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Reverses every edge (v, w) lying on a directed triangle u→v→w→u.
/// The edge set to reverse is collected fully before any flip. For a
/// consistent tournament this removes all triangles through `u`,
/// creates none elsewhere, and preserves consistency.
pub fn repair_vertex(t: &Tournament, u: usize) -> Tournament {
    let n = t.n();
    let mut reversals = Vec::new();
    for v in 0..n {
        if v == u || !t.beats(u, v) {
            continue;
        }
        for w in 0..n {
            if w == u || w == v {
                continue;
            }
            if t.beats(v, w) && t.beats(w, u) {
                reversals.push((v, w));
            }
        }
    }
    let mut out = t.clone();
    for (v, w) in reversals {
        out.reverse_edge(v, w);
    }
    out
}

/// One repair pass in ascending vertex order. Since a repair kills all
/// triangles through the repaired vertex and creates none, one pass
/// leaves the tournament acyclic.
pub fn make_acyclic(t: &Tournament, h: &Digraph) -> Tournament {
    debug_assert!(is_consistent(t, h), "make_acyclic requires a consistent tournament");
    let mut cur = t.clone();
    for u in 0..t.n() {
        let next = repair_vertex(&cur, u);
        debug_assert!(is_consistent(&next, h));
        cur = next;
    }
    debug_assert_eq!(find_directed_triangle(&cur), None);
    cur
}

/// The linear ordering where u precedes v iff u→v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinOrdering {
    pub order: Vec<usize>,
}

/// In an acyclic tournament the out-degrees are a permutation of
/// 0..n; sorting by descending out-degree is the topological order.
pub fn topological_order(t: &Tournament) -> Result<MinOrdering, OrientationError> {
    let n = t.n();
    let mut order = vec![usize::MAX; n];
    for u in 0..n {
        let d = t.out_degree(u);
        let pos = n - 1 - d;
        if order[pos] != usize::MAX {
            let (x, y, z) = find_directed_triangle(t).expect("repeated out-degree implies a triangle");
            return Err(OrientationError::Cyclic(x, y, z));
        }
        order[pos] = u;
    }
    // out-degrees were a permutation; the order realizes the tournament
    debug_assert!((0..n).all(|i| (i + 1..n).all(|j| t.beats(order[i], order[j]))));
    Ok(MinOrdering { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{samples, Digraph};
    use crate::twosat::{build_formula, solve_2sat, var_count, Assignment};

    fn all_tournaments(n: usize) -> Vec<Tournament> {
        let pairs = n * (n - 1) / 2;
        (0..1u32 << pairs)
            .map(|bits| {
                let mut k = 0;
                Tournament::from_fn(n, |_, _| {
                    let b = bits >> k & 1 == 1;
                    k += 1;
                    b
                })
            })
            .collect()
    }

    fn triangles(t: &Tournament) -> Vec<(usize, usize, usize)> {
        let n = t.n();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x != y && y != z && x != z && t.beats(x, y) && t.beats(y, z) && t.beats(z, x)
                    {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn all_false_assignment_gives_index_order() {
        let tau = Assignment { values: vec![false; var_count(3)] };
        let t = Tournament::from_assignment(&tau, 3);
        assert!(t.beats(0, 1) && t.beats(0, 2) && t.beats(1, 2));
        assert_eq!(topological_order(&t).unwrap().order, vec![0, 1, 2]);
    }

    #[test]
    fn flipping_one_variable_flips_one_pair() {
        let n = 5;
        let tau = Assignment { values: vec![false; var_count(n)] };
        let base = Tournament::from_assignment(&tau, n);
        for k in 0..var_count(n) {
            let mut tau2 = tau.clone();
            tau2.values[k] = true;
            let t2 = Tournament::from_assignment(&tau2, n);
            let diffs: usize = (0..n)
                .map(|u| (u + 1..n).filter(|&v| base.beats(u, v) != t2.beats(u, v)).count())
                .sum();
            assert_eq!(diffs, 1);
        }
    }

    #[test]
    fn consistency_vacuous_without_forcing_edges() {
        let h = samples::loops_only_2();
        for t in all_tournaments(2) {
            assert!(is_consistent(&t, &h));
        }
    }

    #[test]
    fn transitive_tournament_consistent_with_its_source() {
        let h = samples::transitive_tournament_3();
        let t = Tournament::from_fn(3, |_, _| true); // 0→1→2, 0→2
        assert!(is_consistent(&t, &h));
    }

    #[test]
    fn directed_cycle_admits_no_consistent_tournament() {
        // the reflexive directed 3-cycle has an unsatisfiable formula,
        // so no orientation at all is consistent with it
        let h = samples::directed_cycle_3();
        assert!(solve_2sat(&build_formula(&h)).is_none());
        for t in all_tournaments(3) {
            assert!(!is_consistent(&t, &h));
        }
    }

    #[test]
    fn consistency_iff_satisfying_exhaustive() {
        // T_tau consistent ⟺ tau satisfies the formula, for all H and
        // all assignments, n ≤ 4
        for n in 2..=4usize {
            for mask in 0..1u64 << (n * (n - 1)) {
                let h = Digraph::from_nonloop_mask(n, mask);
                let phi = build_formula(&h);
                for bits in 0..1u32 << var_count(n) {
                    let tau = Assignment {
                        values: (0..var_count(n)).map(|i| bits >> i & 1 == 1).collect(),
                    };
                    let t = Tournament::from_assignment(&tau, n);
                    assert_eq!(
                        is_consistent(&t, &h),
                        tau.satisfies(&phi),
                        "n={n} mask={mask} bits={bits}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_detection() {
        let transitive = Tournament::from_fn(3, |_, _| true);
        assert_eq!(find_directed_triangle(&transitive), None);
        let cycle = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        assert_eq!(find_directed_triangle(&cycle), Some((0, 1, 2)));
    }

    #[test]
    fn acyclic_iff_topological_order_succeeds() {
        for t in all_tournaments(4) {
            assert_eq!(find_directed_triangle(&t).is_none(), topological_order(&t).is_ok());
        }
    }

    #[test]
    fn repair_of_acyclic_is_identity() {
        let t = Tournament::from_fn(4, |_, _| true);
        for u in 0..4 {
            assert_eq!(repair_vertex(&t, u), t);
        }
    }

    #[test]
    fn repair_three_cycle() {
        // u=0: 0→1→2→0 becomes transitive with (1,2) reversed
        let cycle = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        let repaired = repair_vertex(&cycle, 0);
        assert!(repaired.beats(0, 1) && repaired.beats(2, 1) && repaired.beats(2, 0));
        assert_eq!(find_directed_triangle(&repaired), None);
    }

    #[test]
    fn repair_properties_random() {
        // sample satisfying assignments by rejection to reach cyclic
        // consistent tournaments, then check the repair contract
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);
        let mut checked = 0;
        while checked < 1000 {
            let n = rng.gen_range(4..8);
            let h = Digraph::random_reflexive(n, 0.15, rng.gen()).unwrap();
            let phi = build_formula(&h);
            let tau = Assignment { values: (0..var_count(n)).map(|_| rng.gen()).collect() };
            if !tau.satisfies(&phi) {
                continue;
            }
            let t = Tournament::from_assignment(&tau, n);
            assert!(is_consistent(&t, &h));
            let before = triangles(&t);
            let u = rng.gen_range(0..n);
            let after_t = repair_vertex(&t, u);
            let after = triangles(&after_t);
            assert!(after.iter().all(|tri| before.contains(tri)), "repair created a triangle");
            assert!(after.iter().all(|&(x, y, z)| x != u && y != u && z != u));
            assert!(is_consistent(&after_t, &h));
            let acyclic = make_acyclic(&t, &h);
            assert_eq!(find_directed_triangle(&acyclic), None);
            assert!(is_consistent(&acyclic, &h));
            checked += 1;
        }
    }

    #[test]
    fn triangle_closure_lemma() {
        // in a consistent tournament, each triangle's vertex set is
        // complete or independent in H, and forcing edges into a
        // triangle edge keep the triangle through u
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(777);
        let mut seen_triangle = false;
        for _ in 0..4000 {
            let n = rng.gen_range(4..7);
            let h = Digraph::random_reflexive(n, 0.15, rng.gen()).unwrap();
            let phi = build_formula(&h);
            let tau = Assignment { values: (0..var_count(n)).map(|_| rng.gen()).collect() };
            if !tau.satisfies(&phi) {
                continue;
            }
            let t = Tournament::from_assignment(&tau, n);
            for (u, v, w) in triangles(&t) {
                seen_triangle = true;
                let complete = [(u, v), (v, u), (u, w), (w, u), (v, w), (w, v)]
                    .iter()
                    .all(|&(a, b)| h.has_edge(a, b));
                let independent = [(u, v), (v, u), (u, w), (w, u), (v, w), (w, v)]
                    .iter()
                    .all(|&(a, b)| !h.has_edge(a, b));
                assert!(complete || independent, "mixed triangle in consistent tournament");
                // every forcing predecessor (v', w') of (v, w) with
                // v'→w' in T closes a triangle through u
                for vp in 0..n {
                    for wp in 0..n {
                        if vp == wp || !t.beats(vp, wp) {
                            continue;
                        }
                        if hstar_edge(&h, vp, wp, v, w) {
                            assert!(
                                t.beats(u, vp) && t.beats(wp, u),
                                "forcing predecessor does not extend the triangle"
                            );
                        }
                    }
                }
            }
        }
        assert!(seen_triangle);
    }

    // H* edge (a,b)→(c,d) test from first principles, both edge forms.
    fn hstar_edge(h: &Digraph, a: usize, b: usize, c: usize, d: usize) -> bool {
        if a == b || c == d {
            return false;
        }
        if b == d && a != c {
            // (u,v)→(w,v) with u=a, v=b, w=c
            let (u, v, w) = (a, b, c);
            (h.has_edge(u, w) && !h.has_edge(u, v)) || (h.has_edge(w, u) && !h.has_edge(v, u))
        } else if a == c && b != d {
            // (v,w)→(v,u) with v=a, w=b, u=d
            let (u, v, w) = (d, a, b);
            (h.has_edge(u, w) && !h.has_edge(u, v)) || (h.has_edge(w, u) && !h.has_edge(v, u))
        } else {
            false
        }
    }

    #[test]
    fn make_acyclic_exhaustive_small() {
        for n in 2..=4usize {
            for mask in 0..1u64 << (n * (n - 1)) {
                let h = Digraph::from_nonloop_mask(n, mask);
                for t in all_tournaments(n) {
                    if !is_consistent(&t, &h) {
                        continue;
                    }
                    let fixed = make_acyclic(&t, &h);
                    assert_eq!(find_directed_triangle(&fixed), None);
                    assert!(is_consistent(&fixed, &h));
                }
            }
        }
    }

    #[test]
    fn reversed_tournament_reverses_ordering() {
        let t = Tournament::from_fn(4, |_, _| true);
        let rev = Tournament::from_fn(4, |_, _| false);
        let a = topological_order(&t).unwrap().order;
        let b = topological_order(&rev).unwrap().order;
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(b, vec![3, 2, 1, 0]);
    }

    #[test]
    fn acyclic_out_degrees_are_permutation() {
        let t = Tournament::from_fn(5, |u, v| (u + v) % 2 == 0);
        if topological_order(&t).is_ok() {
            let mut degs: Vec<_> = (0..5).map(|u| t.out_degree(u)).collect();
            degs.sort_unstable();
            assert_eq!(degs, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn sat_pipeline_yields_min_ordering() {
        let h = samples::transitive_tournament_3();
        let tau = solve_2sat(&build_formula(&h)).unwrap();
        let t = Tournament::from_assignment(&tau, 3);
        let ord = topological_order(&make_acyclic(&t, &h)).unwrap();
        assert!(crate::verify::verify_min_ordering(&h, &ord));
    }
}
