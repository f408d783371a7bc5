//! Resolving-set semantics: resolved pairs, distinguished vertices, legal
//! and consistent sets.

use std::collections::BTreeMap;

use crate::error::SolveError;
use crate::graph::{Dist, FrozenGraph, VertexId};
use crate::instance::KmrsInstance;
use crate::label::Label;

/// Which pairs a query ranges over.
#[derive(Debug, Clone, Copy)]
pub enum PairScope<'a> {
    /// A prescribed pair list (the critical pairs `P`).
    Listed(&'a [(VertexId, VertexId)]),
    /// All unordered vertex pairs, streamed without materializing them.
    All,
}

/// Whether `w` sees `u` and `v` at different distances. `u == v` is a query
/// error, not `false`.
pub fn resolves(
    g: &FrozenGraph,
    w: VertexId,
    u: VertexId,
    v: VertexId,
) -> Result<bool, SolveError> {
    if u == v {
        return Err(SolveError::BadQuery(format!(
            "pair with identical vertices {u}"
        )));
    }
    Ok(g.dist(w, u) != g.dist(w, v))
}

fn pair_resolved(g: &FrozenGraph, set: &[VertexId], u: VertexId, v: VertexId) -> bool {
    set.iter().any(|&w| g.dist(w, u) != g.dist(w, v))
}

/// The distance vector of every vertex to `set`, in set order. Two vertices
/// are resolved by `set` exactly when their signatures differ.
fn signatures(g: &FrozenGraph, set: &[VertexId]) -> Vec<Vec<Dist>> {
    g.vertices()
        .map(|v| set.iter().map(|&w| g.dist(w, v)).collect())
        .collect()
}

fn signature_groups(g: &FrozenGraph, set: &[VertexId]) -> BTreeMap<Vec<Dist>, Vec<VertexId>> {
    let mut groups: BTreeMap<Vec<Dist>, Vec<VertexId>> = BTreeMap::new();
    for (v, sig) in signatures(g, set).into_iter().enumerate() {
        groups.entry(sig).or_default().push(v);
    }
    groups
}

/// The pairs of `scope` not resolved by `set`.
pub fn unresolved_pairs(
    g: &FrozenGraph,
    set: &[VertexId],
    scope: PairScope<'_>,
) -> Vec<(VertexId, VertexId)> {
    match scope {
        PairScope::Listed(pairs) => pairs
            .iter()
            .copied()
            .filter(|&(u, v)| !pair_resolved(g, set, u, v))
            .collect(),
        PairScope::All => {
            let mut out = Vec::new();
            for group in signature_groups(g, set).values() {
                for (idx, &u) in group.iter().enumerate() {
                    for &v in &group[idx + 1..] {
                        out.push((u, v));
                    }
                }
            }
            out.sort_unstable();
            out
        }
    }
}

/// Exhaustive check over all vertex pairs.
pub fn is_resolving_set(g: &FrozenGraph, set: &[VertexId]) -> bool {
    signature_groups(g, set).values().all(|group| group.len() == 1)
}

/// Per-vertex distinguished flags: `v` is distinguished when no other vertex
/// shares its distance vector to `set`.
pub fn distinguished(g: &FrozenGraph, set: &[VertexId]) -> Vec<bool> {
    let mut flags = vec![false; g.n()];
    for group in signature_groups(g, set).values() {
        if group.len() == 1 {
            flags[group[0]] = true;
        }
    }
    flags
}

/// Full query result for one candidate set.
#[derive(Debug, Clone)]
pub struct ResolutionReport {
    pub set: Vec<VertexId>,
    pub unresolved: Vec<(VertexId, VertexId)>,
    pub distinguished: Vec<bool>,
}

pub fn resolution_report(
    g: &FrozenGraph,
    set: &[VertexId],
    scope: PairScope<'_>,
) -> ResolutionReport {
    ResolutionReport {
        set: set.to_vec(),
        unresolved: unresolved_pairs(g, set, scope),
        distinguished: distinguished(g, set),
    }
}

/// Legal: exactly one vertex of every set of `X`, and nothing else counted
/// twice (the sets are disjoint by instance invariant).
pub fn is_legal_set(set: &[VertexId], x: &[Vec<VertexId>]) -> bool {
    if set.len() != x.len() {
        return false;
    }
    x.iter()
        .all(|xs| set.iter().filter(|v| xs.contains(v)).count() == 1)
}

/// Consistent: legal, and the selected index is the same in every column of
/// a row.
pub fn is_consistent_set(inst: &KmrsInstance, set: &[VertexId]) -> bool {
    if !is_legal_set(set, &inst.x) {
        return false;
    }
    let mut row_gamma: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in set {
        if let Label::Sel { i, g, .. } = *inst.graph.label(v) {
            match row_gamma.get(&i) {
                Some(&prev) if prev != g => return false,
                Some(_) => {}
                None => {
                    row_gamma.insert(i, g);
                }
            }
        } else {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn named_graph(n: usize, edges: &[(usize, usize)]) -> FrozenGraph {
        let mut g = LabeledGraph::new();
        for i in 0..n {
            g.add_vertex(Label::name(format!("v{i}"))).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g.freeze()
    }

    #[test]
    fn p3_endpoint_resolves_everything() {
        let g = named_graph(3, &[(0, 1), (1, 2)]);
        assert!(is_resolving_set(&g, &[0]));
        assert!(unresolved_pairs(&g, &[0], PairScope::All).is_empty());
        assert!(distinguished(&g, &[0]).iter().all(|&d| d));
    }

    #[test]
    fn k4_two_vertices_leave_twins() {
        let g = named_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let unresolved = unresolved_pairs(&g, &[0, 1], PairScope::All);
        assert_eq!(unresolved, vec![(2, 3)]);
        assert!(!is_resolving_set(&g, &[0, 1]));
        let flags = distinguished(&g, &[0, 1]);
        assert_eq!(flags, vec![true, true, false, false]);
    }

    #[test]
    fn c4_adjacent_pair_resolves() {
        // Oracle: check all pairs against all witnesses by hand-rolled BFS.
        let g = named_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let set = [0, 1];
        for u in 0..4 {
            for v in u + 1..4 {
                let resolved = set.iter().any(|&w| {
                    let d = g.bfs_distances(w).dist;
                    d[u] != d[v]
                });
                assert!(resolved, "pair ({u},{v}) unresolved");
            }
        }
        assert!(is_resolving_set(&g, &set));
    }

    #[test]
    fn resolves_rejects_identical_pair() {
        let g = named_graph(2, &[(0, 1)]);
        assert!(resolves(&g, 0, 1, 1).is_err());
        assert_eq!(resolves(&g, 0, 0, 1), Ok(true));
    }

    #[test]
    fn legality() {
        let x = vec![vec![0, 1], vec![2, 3]];
        assert!(is_legal_set(&[0, 2], &x));
        assert!(!is_legal_set(&[0, 1], &x));
        assert!(!is_legal_set(&[0], &x));
        assert!(!is_legal_set(&[0, 1, 2], &x));
    }
}
