//! Stage 2: forced-set gadgets, forced twins, finishing touches.

use std::collections::BTreeSet;

use super::Mutation;
use crate::error::BuildError;
use crate::graph::{LabeledGraph, VertexId};
use crate::instance::{KmrsInstance, MdInstance};
use crate::label::{Corner, EdgePart, FsPart, Label};
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

pub(super) fn build_md(
    kmrs: &KmrsInstance,
    mutation: Option<Mutation>,
) -> Result<MdInstance, BuildError> {
    let dims = kmrs.dims;
    let mut g = kmrs.graph.thaw();
    let mut ledger = kmrs.ledger.clone();
    let stage1_n = g.n();

    for i in dims.rows() {
        for j in dims.cols() {
            build_forced_set(dims, &mut g, &mut ledger, i, j, mutation)?;
        }
    }
    apply_forced_vertices(dims, &mut g, &mut ledger, mutation)?;
    let shortcuts = finishing_touches(dims, &mut g, &mut ledger, mutation)?;

    // Twins must stay pendant pairs in the whole graph.
    for (host, (f, fp)) in ledger.forced_twins() {
        if g.degree(f) != 2 || g.degree(fp) != 2 {
            return Err(BuildError::invariant(format!(
                "forced twins of {host} have degree != 2"
            )));
        }
    }
    // The intermediate graph stays induced, except for the cyan shortcut
    // edges, which join two stage-1 path vertices by design.
    for (u, v) in g.edge_list() {
        if u < stage1_n && v < stage1_n && !kmrs.graph.has_edge(u, v) && !shortcuts.contains(&(u, v))
        {
            return Err(BuildError::invariant(format!(
                "stage 2 added a non-shortcut edge {u}-{v} inside the stage-1 graph"
            )));
        }
    }

    let budget = (15 * dims.k * dims.m + 14 * dims.m) as usize;
    Ok(MdInstance {
        graph: g.freeze(),
        budget,
        x: kmrs.x.clone(),
        pairs: kmrs.pairs.clone(),
        ledger,
        dims,
        stage1_n,
    })
}

/// The forced-set gadget of `(i, j)`: two pairs `{p,q}` and `{r,s}` behind
/// gates `pi` and `rho`, with path lengths following one rule: match the
/// distance of the host's selector neighbor to `p` (for `pi`) or `r`
/// (for `rho`).
fn build_forced_set(
    dims: Dims,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    i: u32,
    j: u32,
    mutation: Option<Mutation>,
) -> Result<(), BuildError> {
    let t = dims.t as usize;

    let p = add_labeled(g, ledger, Label::fs(FsPart::P, i, j))?;
    let q = add_labeled(g, ledger, Label::fs(FsPart::Q, i, j))?;
    let r = add_labeled(g, ledger, Label::fs(FsPart::R, i, j))?;
    let s = add_labeled(g, ledger, Label::fs(FsPart::S, i, j))?;
    let pi = add_labeled(g, ledger, Label::fs(FsPart::Pi, i, j))?;
    let rho = add_labeled(g, ledger, Label::fs(FsPart::Rho, i, j))?;
    g.add_edge(pi, p)?;
    g.add_edge(pi, q)?;
    g.add_edge(rho, r)?;
    g.add_edge(rho, s)?;

    let v_top = ledger.selector(i, j, 1);
    let v_bottom = ledger.selector(i, j, dims.t);
    let brown_top = add_recorded_path(g, ledger, v_top, p, t)?[0];
    let brown_bottom = add_recorded_path(g, ledger, v_bottom, r, t)?[0];

    // The rule distances, measured before any gate path exists.
    let from_p = g.bfs_distances(p).dist;
    let from_r = g.bfs_distances(r).dist;
    let check = |which: &str, measured: crate::graph::Dist, want: usize| {
        if measured.finite() != Some(want as u32) {
            return Err(BuildError::invariant(format!(
                "forced-set gadget ({i},{j}): {which} distance is {measured:?}, expected {want}"
            )));
        }
        Ok(())
    };
    check("top-to-p", from_p[v_top], t)?;
    check("bottom-to-p", from_p[v_bottom], 2 * t - 1)?;
    check("bottom-to-r", from_r[v_bottom], t)?;
    check("top-to-r", from_r[v_top], 2 * t - 1)?;

    let tl = ledger.tl(dims, i, j);
    let tr = ledger.tr(dims, i, j);
    let bl = ledger.bl(dims, i, j);
    let br = ledger.br(dims, i, j);
    add_recorded_path(g, ledger, tl, pi, t)?;
    add_recorded_path(g, ledger, tr, pi, t)?;
    add_recorded_path(g, ledger, tl, rho, 2 * t - 1)?;
    add_recorded_path(g, ledger, tr, rho, 2 * t - 1)?;
    add_recorded_path(g, ledger, bl, pi, 2 * t - 1)?;
    add_recorded_path(g, ledger, br, pi, 2 * t - 1)?;
    add_recorded_path(g, ledger, bl, rho, t)?;
    add_recorded_path(g, ledger, br, rho, t)?;
    if !(mutation == Some(Mutation::DropTbRhoPath) && (i, j) == (1, 1)) {
        add_recorded_path(g, ledger, brown_top, rho, 2 * t - 1)?;
    }
    add_recorded_path(g, ledger, brown_bottom, pi, 2 * t - 1)?;

    if let Some((gamma, tc)) = ledger.top_cyan(dims, i, j) {
        let want = (dims.t + gamma - 1) as usize;
        check(
            "top-cyan host-to-p",
            g.bfs_distances(ledger.selector(i, j, gamma)).dist[p],
            want,
        )?;
        add_recorded_path(g, ledger, tc, pi, want)?;
    }
    if let Some((gamma, bc)) = ledger.bottom_cyan(dims, i, j) {
        let want = (2 * dims.t - gamma) as usize;
        check(
            "bottom-cyan host-to-r",
            g.bfs_distances(ledger.selector(i, j, gamma)).dist[r],
            want,
        )?;
        add_recorded_path(g, ledger, bc, rho, want)?;
    }
    Ok(())
}

/// Attaches the pendant twins: to the `nw` and `se` gates, to every path
/// neighbor of `pi` and `rho`, and to every neighbor of `g_j` other than
/// `c_j` and `c'_j`.
fn apply_forced_vertices(
    dims: Dims,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    mutation: Option<Mutation>,
) -> Result<(), BuildError> {
    fn attach(
        g: &mut LabeledGraph,
        ledger: &mut Ledger,
        host: VertexId,
    ) -> Result<(), BuildError> {
        let host_label = g.label(host).clone();
        let f_label = Label::forced(&host_label, false);
        if ledger.vertex(&f_label).is_some() {
            return Err(BuildError::invariant(format!(
                "forced vertex attached twice to {host_label}"
            )));
        }
        let f = add_labeled(g, ledger, f_label)?;
        let fp = add_labeled(g, ledger, Label::forced(&host_label, true))?;
        g.add_edge(host, f)?;
        g.add_edge(host, fp)?;
        g.add_edge(f, fp)?;
        Ok(())
    }

    for i in dims.rows() {
        for j in dims.cols() {
            attach(g, ledger, ledger.require(&Label::gate(Corner::Nw, i, j)))?;
            attach(g, ledger, ledger.require(&Label::gate(Corner::Se, i, j)))?;
        }
    }

    for i in dims.rows() {
        for j in dims.cols() {
            let pi_label = Label::fs(FsPart::Pi, i, j);
            let rho_label = Label::fs(FsPart::Rho, i, j);
            let p = ledger.require(&Label::fs(FsPart::P, i, j));
            let q = ledger.require(&Label::fs(FsPart::Q, i, j));
            let r = ledger.require(&Label::fs(FsPart::R, i, j));
            let s = ledger.require(&Label::fs(FsPart::S, i, j));
            for (gate_label, non_hosts) in [(pi_label, [p, q]), (rho_label, [r, s])] {
                let gate = ledger.require(&gate_label);
                let hosts: Vec<VertexId> = g
                    .neighbors(gate)
                    .iter()
                    .copied()
                    .filter(|v| !non_hosts.contains(v))
                    .collect();
                // Degree 8 with cyan links, 7 without; mutants may differ.
                if mutation.is_none() {
                    let expected = if ledger.row_hosts_edge(dims, i, j) { 8 } else { 7 };
                    if g.degree(gate) != expected {
                        return Err(BuildError::invariant(format!(
                            "{gate_label} has degree {}, expected {expected}",
                            g.degree(gate)
                        )));
                    }
                }
                for host in hosts {
                    attach(g, ledger, host)?;
                }
            }
        }
    }

    for j in dims.cols() {
        let gj = ledger.require(&Label::edge(EdgePart::G, j));
        let c = ledger.require(&Label::edge(EdgePart::C, j));
        let cp = ledger.require(&Label::edge(EdgePart::Cp, j));
        if g.degree(gj) != 16 {
            return Err(BuildError::invariant(format!(
                "g_{j} has degree {}, expected 16",
                g.degree(gj)
            )));
        }
        let hosts: Vec<VertexId> = g
            .neighbors(gj)
            .iter()
            .copied()
            .filter(|&v| v != c && v != cp)
            .collect();
        for host in hosts {
            attach(g, ledger, host)?;
        }
    }
    Ok(())
}

/// The four per-gadget crossover paths, with lengths asserted against one
/// snapshot, plus the cyan shortcut edge for sides with three cyan vertices.
/// Returns the shortcut edges (normalized) for the inducedness check.
fn finishing_touches(
    dims: Dims,
    g: &mut LabeledGraph,
    ledger: &mut Ledger,
    mutation: Option<Mutation>,
) -> Result<BTreeSet<(VertexId, VertexId)>, BuildError> {
    let t = dims.t as usize;

    struct Spoke {
        src: VertexId,
        dst: VertexId,
        measure_at: VertexId,
        want: usize,
        site: (u32, u32),
        first: bool,
    }
    let mut plan = Vec::new();
    for i in dims.rows() {
        for j in dims.cols() {
            let prev = dims.prev_j(j);
            let pi_label = Label::fs(FsPart::Pi, i, j);
            let rho_label = Label::fs(FsPart::Rho, i, j);
            let tr_label = ledger.tr_label(dims, i, j);
            let bl_label = ledger.bl_label(dims, i, j);
            let se = ledger.require(&Label::gate(Corner::Se, i, j));
            let sw = ledger.require(&Label::gate(Corner::Sw, i, j));
            let nw_prev = ledger.require(&Label::gate(Corner::Nw, i, prev));
            let ne_prev = ledger.require(&Label::gate(Corner::Ne, i, prev));
            let nu = |a: &Label, b: &Label| ledger.nu(a, b).expect("forced-set path");
            plan.push(Spoke {
                src: nu(&pi_label, &tr_label),
                dst: se,
                measure_at: sw,
                want: t,
                site: (i, j),
                first: true,
            });
            plan.push(Spoke {
                src: nu(&pi_label, &bl_label),
                dst: nw_prev,
                measure_at: ne_prev,
                want: 2 * t - 1,
                site: (i, j),
                first: false,
            });
            plan.push(Spoke {
                src: nu(&rho_label, &tr_label),
                dst: se,
                measure_at: sw,
                want: 2 * t - 1,
                site: (i, j),
                first: false,
            });
            plan.push(Spoke {
                src: nu(&rho_label, &bl_label),
                dst: nw_prev,
                measure_at: ne_prev,
                want: t,
                site: (i, j),
                first: false,
            });
        }
    }
    // One snapshot for all measurements.
    for spoke in &plan {
        let measured = g.bfs_distances(spoke.src).dist[spoke.measure_at];
        if measured.finite() != Some(spoke.want as u32) {
            return Err(BuildError::invariant(format!(
                "finishing path at ({},{}) measures {measured:?}, expected {}",
                spoke.site.0, spoke.site.1, spoke.want
            )));
        }
    }
    for spoke in &plan {
        if mutation == Some(Mutation::DropFinishingPath) && spoke.site == (1, 1) && spoke.first {
            continue;
        }
        add_recorded_path(g, ledger, spoke.src, spoke.dst, spoke.want)?;
    }

    let mut shortcuts = BTreeSet::new();
    for i in dims.rows() {
        for j in dims.cols() {
            if ledger.cyan(dims, i, j).len() != 3 {
                continue;
            }
            let gj_label = Label::edge(EdgePart::G, j);
            let nw_label = Label::gate(Corner::Nw, i, j);
            let nu_g_nw = ledger
                .nu(&gj_label, &nw_label)
                .ok_or_else(|| BuildError::invariant("missing gate spoke".into()))?;
            let (gamma, _) = ledger.bottom_cyan(dims, i, j).unwrap();
            let bc_path = ledger
                .path_internals(&Label::sel(i, j, gamma), &Label::edge(EdgePart::C, j))
                .ok_or_else(|| BuildError::invariant("missing bottom cyan path".into()))?;
            let nu_c_bc = *bc_path.last().unwrap();
            g.add_edge(nu_g_nw, nu_c_bc)?;
            shortcuts.insert((nu_g_nw.min(nu_c_bc), nu_g_nw.max(nu_c_bc)));
        }
    }
    Ok(shortcuts)
}
