//! The two-stage instance compiler, plus solution lifters and projectors.
//!
//! Stage 1 compiles a multicolored-independent-set instance into a
//! multicolored-resolving-set instance (selector, edge, and propagation
//! gadgets, then the wrap-up paths). Stage 2 turns that into a plain
//! metric-dimension instance (forced-set gadgets, forced twins, finishing
//! touches). Construction is deterministic given the input edge order.
//!
//! Path lengths that the construction defines through distances are measured
//! against pinned snapshots: the wrap-up spoke lengths against one snapshot
//! taken after the gate-chain edges, and the finishing-touch lengths against
//! one snapshot taken after the forced twins. This is the only
//! order-independent reading of lengths defined "before the new paths".

mod stage1;
mod stage2;

use crate::error::BuildError;
use crate::graph::VertexId;
use crate::instance::{KmisInstance, KmrsInstance, MdInstance};
use crate::label::Label;

/// Deliberate single-site construction defects for mutation-testing the
/// lemma checkers. Each one leaves the construction structurally valid but
/// breaks exactly the distance discipline one checker relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Wrap-up: drop the first `se` gate-chain edge of row 1.
    DropSeChainEdge,
    /// Edge gadget of column 1: skip one of the cyan side paths to `c_1`.
    SkipEdgeCyanPath,
    /// Propagation gadget (1,1): shorten the southeast link from 3 to 2.
    ShortenSeLink,
    /// Forced-set gadget (1,1): skip the brown path from `tb` to `rho`.
    DropTbRhoPath,
    /// Finishing touches (1,1): skip the path from `nu(pi,tr)` to `se`.
    DropFinishingPath,
    /// Wrap-up: stretch the first blue spoke to `g_j` by one edge.
    StretchBluePath,
}

/// Compiles a source instance into the intermediate resolving-set instance.
pub fn construct_kmrs(inst: &KmisInstance) -> Result<KmrsInstance, BuildError> {
    stage1::build_kmrs(inst, None)
}

/// Compiles the intermediate instance into the metric-dimension instance.
pub fn construct_md(kmrs: &KmrsInstance) -> Result<MdInstance, BuildError> {
    stage2::build_md(kmrs, None)
}

/// Both stages in one call.
pub fn construct_pipeline(inst: &KmisInstance) -> Result<(KmrsInstance, MdInstance), BuildError> {
    let kmrs = construct_kmrs(inst)?;
    let md = construct_md(&kmrs)?;
    Ok((kmrs, md))
}

/// Both stages with one deliberate defect, for the mutation suite.
pub fn construct_pipeline_mutated(
    inst: &KmisInstance,
    mutation: Mutation,
) -> Result<(KmrsInstance, MdInstance), BuildError> {
    let kmrs = stage1::build_kmrs(inst, Some(mutation))?;
    let md = stage2::build_md(&kmrs, Some(mutation))?;
    Ok((kmrs, md))
}

/// Lifts a multicolored independent set (one index per class) to the
/// selector set `S` of the intermediate instance: the chosen vertex of every
/// copy of every class.
pub fn lift_independent_set(
    inst: &KmisInstance,
    kmrs: &KmrsInstance,
    choice: &[u32],
) -> Result<Vec<VertexId>, BuildError> {
    if choice.len() != inst.k() as usize {
        return Err(BuildError::invariant("choice needs one index per class"));
    }
    if !inst.is_independent(choice) {
        return Err(BuildError::invariant(
            "choice is not a multicolored independent set",
        ));
    }
    let mut set = Vec::new();
    for j in kmrs.dims.cols() {
        for (idx, &gamma) in choice.iter().enumerate() {
            set.push(kmrs.ledger.selector(idx as u32 + 1, j, gamma));
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// Lifts a solution of the intermediate instance to the metric-dimension
/// instance by adding every forced vertex.
pub fn lift_to_md_solution(md: &MdInstance, s: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = s.to_vec();
    out.extend(md.ledger.forced_vertices());
    out.sort_unstable();
    out.dedup();
    out
}

/// Projects a metric-dimension solution back onto the selector sets.
pub fn project_md_solution(md: &MdInstance, s: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = s
        .iter()
        .copied()
        .filter(|&v| matches!(md.graph.label(v), Label::Sel { .. }))
        .collect();
    out.sort_unstable();
    out
}
