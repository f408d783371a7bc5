//! Stage 1: selector, edge, and propagation gadgets, then the wrap-up.

use std::collections::BTreeSet;

use super::Mutation;
use crate::error::BuildError;
use crate::graph::{LabeledGraph, VertexId};
use crate::instance::{KmisInstance, KmrsInstance};
use crate::label::{Corner, EdgePart, Label, PropRow};
use crate::ledger::{Dims, Ledger};

fn add_recorded_path(
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    u: VertexId,
    v: VertexId,
    length: usize,
) -> Result<Vec<VertexId>, BuildError> {
    let from = g.label(u).clone();
    let to = g.label(v).clone();
    let internals = g.add_path(u, v, length)?;
    ledger.record_path(from, to, &internals);
    Ok(internals)
}

fn add_labeled(
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    label: Label,
) -> Result<VertexId, BuildError> {
    let v = g.add_vertex(label.clone())?;
    ledger.insert(label, v);
    Ok(v)
}

pub(super) fn build_kmrs(
    inst: &KmisInstance,
    mutation: Option<Mutation>,
) -> Result<KmrsInstance, BuildError> {
    let dims = inst.dims();
    let mut g = LabeledGraph::new();
    let mut ledger = Ledger::new();
    let mut x: Vec<Vec<VertexId>> = Vec::new();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();

    build_selectors(dims, &mut g, &mut ledger, &mut x)?;
    for j in dims.cols() {
        build_edge_gadget(inst, &mut g, &mut ledger, &mut pairs, j, mutation)?;
    }
    for i in dims.rows() {
        for j in dims.cols() {
            build_propagation(dims, &mut g, &mut ledger, &mut pairs, i, j, mutation)?;
        }
    }
    wrap_up(inst, &mut g, &mut ledger, mutation)?;

    let budget = (dims.k * dims.m) as usize;
    Ok(KmrsInstance {
        graph: g.freeze(),
        budget,
        x,
        pairs,
        ledger,
        dims,
    })
}

/// One path on `t-1` edges per row and column; every copy goes into `X`.
fn build_selectors(
    dims: Dims,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    x: &mut Vec<Vec<VertexId>>,
) -> Result<(), BuildError> {
    for i in dims.rows() {
        for j in dims.cols() {
            let mut set = Vec::with_capacity(dims.t as usize);
            let mut prev = None;
            for gamma in dims.gammas() {
                let v = add_labeled(g, ledger, Label::sel(i, j, gamma))?;
                if let Some(p) = prev {
                    g.add_edge(p, v)?;
                }
                prev = Some(v);
                set.push(v);
            }
            x.push(set);
        }
    }
    Ok(())
}

/// The edge gadget of column `j`: the path `c_j g_j c'_j`, private length
/// `t+2` paths from the two selector endpoints to `g_j` and from their
/// selector neighbors to `c_j`, and edges between cyan vertices whose
/// selector hosts are adjacent.
fn build_edge_gadget(
    inst: &KmisInstance,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    pairs: &mut Vec<(VertexId, VertexId)>,
    j: u32,
    mutation: Option<Mutation>,
) -> Result<(), BuildError> {
    let dims = inst.dims();
    let t = dims.t;
    let (a, b) = inst.edge(j);

    let c = add_labeled(g, ledger, Label::edge(EdgePart::C, j))?;
    let gj = add_labeled(g, ledger, Label::edge(EdgePart::G, j))?;
    let cp = add_labeled(g, ledger, Label::edge(EdgePart::Cp, j))?;
    g.add_edge(c, gj)?;
    g.add_edge(gj, cp)?;
    pairs.push((c, cp));

    let plen = (t + 2) as usize;
    for ep in [a, b] {
        let sel = ledger.selector(ep.i, j, ep.gamma);
        add_recorded_path(g, ledger, sel, gj, plen)?;
    }
    let mut skip_one = mutation == Some(Mutation::SkipEdgeCyanPath) && j == 1;
    for ep in [a, b] {
        let below = (ep.gamma > 1).then(|| ep.gamma - 1);
        let above = (ep.gamma < t).then(|| ep.gamma + 1);
        for gamma in [below, above].into_iter().flatten() {
            if skip_one {
                skip_one = false;
                continue;
            }
            let sel = ledger.selector(ep.i, j, gamma);
            add_recorded_path(g, ledger, sel, c, plen)?;
        }
    }
    for i in [a.i, b.i] {
        let cyan = ledger.cyan(dims, i, j);
        for w in cyan.windows(2) {
            if w[1].0 == w[0].0 + 1 {
                g.add_edge(w[0].1, w[1].1)?;
            }
        }
    }
    Ok(())
}

/// The propagation gadget between columns `j` and `j+1` of row `i`: four
/// gates, two critical-pair paths of length `t-1`, and the asymmetric links
/// that encode the selector choice in gate distances.
fn build_propagation(
    dims: Dims,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    pairs: &mut Vec<(VertexId, VertexId)>,
    i: u32,
    j: u32,
    mutation: Option<Mutation>,
) -> Result<(), BuildError> {
    let t = dims.t;
    let jn = dims.next_j(j);

    let sw = add_labeled(g, ledger, Label::gate(Corner::Sw, i, j))?;
    let se = add_labeled(g, ledger, Label::gate(Corner::Se, i, j))?;
    let nw = add_labeled(g, ledger, Label::gate(Corner::Nw, i, j))?;
    let ne = add_labeled(g, ledger, Label::gate(Corner::Ne, i, j))?;

    let mut chain = |g: &mut LabeledGraph, ledger: &mut Ledger, row: PropRow| {
        let mut ids = Vec::with_capacity(t as usize);
        let mut prev = None;
        for z in dims.gammas() {
            let v = add_labeled(g, ledger, Label::prop(row, i, j, z))?;
            if let Some(p) = prev {
                g.add_edge(p, v)?;
            }
            prev = Some(v);
            ids.push(v);
        }
        Ok::<_, BuildError>(ids)
    };
    let avs = chain(g, &mut *ledger, PropRow::A)?;
    let alphas = chain(g, &mut *ledger, PropRow::Alpha)?;
    for z in 0..t as usize {
        pairs.push((avs[z], alphas[z]));
    }

    let a_first = avs[0];
    let a_last = *avs.last().unwrap();
    let alpha_first = alphas[0];
    let alpha_last = *alphas.last().unwrap();
    g.add_edge(nw, a_first)?;
    g.add_edge(nw, alpha_first)?;
    g.add_edge(ne, alpha_first)?;
    g.add_edge(se, a_last)?;
    g.add_edge(se, alpha_last)?;
    g.add_edge(sw, a_last)?;
    g.add_edge(ne, nw)?;
    g.add_edge(sw, se)?;

    let top_left = ledger.selector(i, j, 1);
    let bottom_left = ledger.selector(i, j, t);
    let top_right = ledger.selector(i, jn, 1);
    let bottom_right = ledger.selector(i, jn, t);
    add_recorded_path(g, ledger, top_left, sw, 2)?;
    add_recorded_path(g, ledger, bottom_left, nw, 2)?;
    let se_len = if mutation == Some(Mutation::ShortenSeLink) && (i, j) == (1, 1) {
        2
    } else {
        3
    };
    add_recorded_path(g, ledger, top_right, se, se_len)?;
    add_recorded_path(g, ledger, bottom_right, ne, 2)?;
    Ok(())
}

/// Wrap-up: (a) blue spokes to `g_j` with measured lengths, (b) the `se` and
/// `nw` gate chains, (c) per endpoint row the two `g_j` spokes to the gates,
/// with all lengths of (c) measured against one snapshot taken after (b).
fn wrap_up(
    inst: &KmisInstance,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    mutation: Option<Mutation>,
) -> Result<(), BuildError> {
    let dims = inst.dims();
    let t = dims.t;

    // (a) each blue vertex gets a private path to g_j whose length is the
    // distance of its selector neighbor to c_j, measured as built.
    let mut stretch = mutation == Some(Mutation::StretchBluePath);
    for j in dims.cols() {
        let (a, b) = inst.edge(j);
        let gj = ledger.require(&Label::edge(EdgePart::G, j));
        let cj = ledger.require(&Label::edge(EdgePart::C, j));
        for i in [a.i, b.i] {
            let blues = [
                (ledger.tl(dims, i, j), 1),
                (ledger.tr(dims, i, j), 1),
                (ledger.bl(dims, i, j), t),
                (ledger.br(dims, i, j), t),
            ];
            for (blue, host_gamma) in blues {
                let host = ledger.selector(i, j, host_gamma);
                let measured = g.bfs_distances(host).dist[cj].finite().ok_or_else(|| {
                    BuildError::invariant(format!("row {i} is disconnected from gadget {j}"))
                })?;
                let mut length = measured as usize;
                if stretch {
                    length += 1;
                    stretch = false;
                }
                add_recorded_path(g, ledger, blue, gj, length)?;
            }
        }
    }

    // (b) chain the se gates and the nw gates around the cylinder. The edge
    // set is deduplicated so m = 2 adds each chord once.
    let mut chain_edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for corner in [Corner::Se, Corner::Nw] {
        for i in dims.rows() {
            for j in dims.cols() {
                let u = ledger.require(&Label::gate(corner, i, j));
                let v = ledger.require(&Label::gate(corner, i, dims.next_j(j)));
                chain_edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    if mutation == Some(Mutation::DropSeChainEdge) {
        let u = ledger.require(&Label::gate(Corner::Se, 1, 1));
        let v = ledger.require(&Label::gate(Corner::Se, 1, dims.next_j(1)));
        chain_edges.remove(&(u.min(v), u.max(v)));
    }
    for (u, v) in chain_edges {
        g.add_edge(u, v)?;
    }

    // (c) one frozen snapshot, then all spoke lengths come from it.
    let snapshots: Vec<_> = dims
        .cols()
        .map(|j| g.bfs_distances(ledger.require(&Label::edge(EdgePart::G, j))))
        .collect();
    for j in dims.cols() {
        let (a, b) = inst.edge(j);
        let gj = ledger.require(&Label::edge(EdgePart::G, j));
        let dist = &snapshots[(j - 1) as usize];
        for i in [a.i, b.i] {
            let spokes = [
                (Corner::Sw, Corner::Se),
                (Corner::Nw, Corner::Nw),
            ];
            for (measure_corner, target_corner) in spokes {
                let measured_at = ledger.require(&Label::gate(measure_corner, i, j));
                let target = ledger.require(&Label::gate(target_corner, i, j));
                let d = dist.dist[measured_at].finite().ok_or_else(|| {
                    BuildError::invariant(format!("gate of row {i}, column {j} unreachable"))
                })?;
                let length = (d as i64) - 4;
                if length < 1 {
                    return Err(BuildError::invariant(format!(
                        "gate spoke of row {i}, column {j} has non-positive length {length}"
                    )));
                }
                if (length as u32) < t {
                    return Err(BuildError::invariant(format!(
                        "gate spoke of row {i}, column {j} is shorter than t"
                    )));
                }
                add_recorded_path(g, ledger, gj, target, length as usize)?;
            }
        }
    }
    Ok(())
}
