//! Exact brute-force solvers for the three problems. They double as oracles
//! for the verification harness, so enumeration order is pinned:
//! lexicographic over class indices (independent set), over sorted selector
//! sets in `X` order (resolving set), and over vertex-id combinations by
//! increasing size (metric dimension). Exceeding a cap is an error distinct
//! from "no solution".

use crate::error::SolveError;
use crate::graph::{FrozenGraph, VertexId};
use crate::instance::{KmisInstance, KmrsInstance};
use crate::resolve::{unresolved_pairs, is_resolving_set, PairScope};

pub const DEFAULT_CAP: u64 = 10_000_000;

fn check_cap(needed: u128, cap: u64) -> Result<(), SolveError> {
    if needed > cap as u128 {
        return Err(SolveError::CapExceeded { needed, cap });
    }
    Ok(())
}

/// First multicolored independent set in lexicographic order over the
/// per-class index tuple, or `None`.
pub fn brute_force_mis(inst: &KmisInstance, cap: u64) -> Result<Option<Vec<u32>>, SolveError> {
    let k = inst.k() as usize;
    let t = inst.t();
    check_cap((t as u128).pow(k as u32), cap)?;
    let mut choice = vec![1u32; k];
    loop {
        if inst.is_independent(&choice) {
            return Ok(Some(choice));
        }
        // Odometer step, most significant index first.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if choice[pos] < t {
                choice[pos] += 1;
                for slot in &mut choice[pos + 1..] {
                    *slot = 1;
                }
                break;
            }
        }
    }
}

/// First legal set resolving every critical pair, or `None`. Enumeration is
/// lexicographic over the product of the sorted sets of `X`.
pub fn brute_force_kmrs(
    inst: &KmrsInstance,
    cap: u64,
) -> Result<Option<Vec<VertexId>>, SolveError> {
    let sizes: Vec<usize> = inst.x.iter().map(Vec::len).collect();
    let needed: u128 = sizes.iter().map(|&s| s as u128).product();
    check_cap(needed, cap)?;
    let mut idx = vec![0usize; inst.x.len()];
    let mut set: Vec<VertexId> = inst.x.iter().map(|xs| xs[0]).collect();
    loop {
        if unresolved_pairs(&inst.graph, &set, PairScope::Listed(&inst.pairs)).is_empty() {
            return Ok(Some(set));
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if idx[pos] + 1 < sizes[pos] {
                idx[pos] += 1;
                set[pos] = inst.x[pos][idx[pos]];
                for later in pos + 1..idx.len() {
                    idx[later] = 0;
                    set[later] = inst.x[later][0];
                }
                break;
            }
        }
    }
}

fn combinations_count(n: usize, size: usize) -> u128 {
    if size > n {
        return 0;
    }
    let mut result: u128 = 1;
    for step in 0..size {
        result = result.saturating_mul((n - step) as u128) / (step as u128 + 1);
    }
    result
}

/// Advances to the next lexicographic size-`|combo|` combination of
/// `0..n`; returns `false` when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let size = combo.len();
    let mut pos = size;
    while pos > 0 {
        pos -= 1;
        if combo[pos] < n - (size - pos) {
            combo[pos] += 1;
            for later in pos + 1..size {
                combo[later] = combo[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum-size resolving set of size at most `kmax`, searched by increasing
/// size, combinations in lexicographic order of vertex ids. Intended for
/// tiny graphs (standalone gadget studies).
pub fn brute_force_md(
    g: &FrozenGraph,
    kmax: usize,
    cap: u64,
) -> Result<Option<Vec<VertexId>>, SolveError> {
    let n = g.n();
    let total: u128 = (1..=kmax.min(n)).map(|s| combinations_count(n, s)).sum();
    check_cap(total, cap)?;
    for size in 1..=kmax.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if is_resolving_set(g, &combo) {
                return Ok(Some(combo));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;
    use crate::instance::{parse_kmis, KmisVertex};
    use crate::label::Label;
    use crate::reduction::construct_kmrs;

    fn frozen(n: usize, edges: &[(usize, usize)]) -> FrozenGraph {
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
    fn mis_lexicographic_first() {
        let inst = parse_kmis("kmis 2 2\ne 1 1 2 1\ne 1 2 2 2\n").unwrap();
        // Oracle: enumerate all four tuples by hand.
        let mut expected = None;
        for g1 in 1..=2u32 {
            for g2 in 1..=2u32 {
                let choice = vec![g1, g2];
                if inst.is_independent(&choice) && expected.is_none() {
                    expected = Some(choice);
                }
            }
        }
        assert_eq!(brute_force_mis(&inst, DEFAULT_CAP).unwrap(), expected);
        assert_eq!(expected, Some(vec![1, 2]));
    }

    #[test]
    fn mis_complete_bipartite_is_unsat() {
        let mut edges = Vec::new();
        for g1 in 1..=2 {
            for g2 in 1..=2 {
                edges.push((KmisVertex { i: 1, gamma: g1 }, KmisVertex { i: 2, gamma: g2 }));
            }
        }
        let inst = KmisInstance::new(2, 2, edges).unwrap();
        assert_eq!(brute_force_mis(&inst, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn mis_cap_exceeded_is_distinct() {
        let inst = parse_kmis("kmis 2 2\ne 1 1 2 1\ne 1 2 2 2\n").unwrap();
        assert!(matches!(
            brute_force_mis(&inst, 3),
            Err(SolveError::CapExceeded { needed: 4, cap: 3 })
        ));
    }

    #[test]
    fn kmrs_solves_constructed_positive_instance() {
        let inst = parse_kmis("kmis 2 2\ne 1 1 2 1\ne 1 2 2 1\n").unwrap();
        let kmrs = construct_kmrs(&inst).unwrap();
        let sol = brute_force_kmrs(&kmrs, DEFAULT_CAP).unwrap();
        assert!(sol.is_some());
        assert!(crate::resolve::is_consistent_set(&kmrs, &sol.unwrap()));
    }

    #[test]
    fn md_on_paths_and_k4() {
        let p5 = frozen(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let sol = brute_force_md(&p5, 3, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(sol.len(), 1);

        let k4 = frozen(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        // Oracle: no set of size <= 2 resolves K4; some set of size 3 does.
        for size2 in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
            assert!(!is_resolving_set(&k4, &size2));
        }
        let sol = brute_force_md(&k4, 3, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(sol.len(), 3);
    }

    #[test]
    fn md_twin_pair_is_forced() {
        // P3 with a pendant twin triangle at vertex 2: f=3, f'=4.
        let g = frozen(5, &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let sol = brute_force_md(&g, 4, DEFAULT_CAP).unwrap().unwrap();
        assert!(
            sol.contains(&3) || sol.contains(&4),
            "false twins force one of the pendant pair, got {sol:?}"
        );
    }
}
