//! The construction ledger: a bijection between structured labels and vertex
//! ids, plus the registries derived from it (constructed paths, cyan/blue/
//! brown vertices, forced twins).
//!
//! Everything except the label→id map itself is recomputed from the labels,
//! so serialized instances only carry `ledger <label> <id>` lines.

use std::collections::BTreeMap;

use crate::error::ParseError;
use crate::graph::VertexId;
use crate::label::{Corner, EdgePart, FsPart, Label, PropRow};

/// Parameters of the source instance: `k` rows, `t` vertices per class,
/// `m` columns. All 1-based in labels and APIs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub k: u32,
    pub t: u32,
    pub m: u32,
}

impl Dims {
    /// Column to the right, cyclically.
    pub fn next_j(&self, j: u32) -> u32 {
        j % self.m + 1
    }

    /// Column to the left, cyclically.
    pub fn prev_j(&self, j: u32) -> u32 {
        (j + self.m - 2) % self.m + 1
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.k
    }

    pub fn cols(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.m
    }

    pub fn gammas(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.t
    }
}

/// Which critical pair a `(u, v)` pair of the list `P` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrigin {
    /// `{c_j, c'_j}` of the edge gadget in column `j`.
    Edge { j: u32 },
    /// `{a_g, alpha_g}` of the propagation gadget between columns `j` and `j+1`.
    Prop { i: u32, j: u32, g: u32 },
}

#[derive(Debug, Clone, Default)]
pub struct Ledger {
    by_label: BTreeMap<Label, VertexId>,
    /// Internal vertices of each constructed path, in from→to order.
    paths: BTreeMap<(Label, Label), Vec<VertexId>>,
}

impl Ledger {
    pub fn new() -> Ledger {
        Ledger::default()
    }

    pub fn insert(&mut self, label: Label, v: VertexId) {
        let prev = self.by_label.insert(label, v);
        debug_assert!(prev.is_none(), "ledger label inserted twice");
    }

    pub fn record_path(&mut self, from: Label, to: Label, internals: &[VertexId]) {
        for (idx, &v) in internals.iter().enumerate() {
            self.insert(Label::path(&from, &to, idx as u32 + 1), v);
        }
        self.paths.insert((from, to), internals.to_vec());
    }

    pub fn vertex(&self, label: &Label) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    /// Ledger lookups of labels the construction guarantees to exist.
    pub fn require(&self, label: &Label) -> VertexId {
        self.vertex(label)
            .unwrap_or_else(|| panic!("label {label} missing from ledger"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, VertexId)> {
        self.by_label.iter().map(|(l, &v)| (l, v))
    }

    pub fn len(&self) -> usize {
        self.by_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_label.is_empty()
    }

    /// Internal vertices of the path built from `from` to `to`, if that path
    /// was constructed (in either orientation the caller knows; keys are
    /// directional).
    pub fn path_internals(&self, from: &Label, to: &Label) -> Option<&[VertexId]> {
        self.paths
            .get(&(from.clone(), to.clone()))
            .map(Vec::as_slice)
    }

    fn oriented(&self, a: &Label, b: &Label) -> Option<(Vec<VertexId>, bool)> {
        if let Some(p) = self.path_internals(a, b) {
            return Some((p.to_vec(), false));
        }
        self.path_internals(b, a).map(|p| (p.to_vec(), true))
    }

    /// All vertices of the constructed path between `a` and `b`, endpoints
    /// included, ordered from `a` to `b`.
    pub fn path_vertices(&self, a: &Label, b: &Label) -> Option<Vec<VertexId>> {
        let (internals, reversed) = self.oriented(a, b)?;
        let mut out = vec![self.vertex(a)?];
        if reversed {
            out.extend(internals.iter().rev());
        } else {
            out.extend(internals.iter());
        }
        out.push(self.vertex(b)?);
        Some(out)
    }

    /// `nu(u, v)`: the neighbor of `u` on the path constructed between `u`
    /// and `v` (in either construction orientation).
    pub fn nu(&self, u: &Label, v: &Label) -> Option<VertexId> {
        let (internals, reversed) = self.oriented(u, v)?;
        if internals.is_empty() {
            return self.vertex(v);
        }
        Some(if reversed {
            *internals.last().unwrap()
        } else {
            internals[0]
        })
    }

    /// Label of `nu(u, v)`.
    pub fn nu_label(&self, u: &Label, v: &Label) -> Option<Label> {
        if let Some(internals) = self.path_internals(u, v) {
            if internals.is_empty() {
                return Some(v.clone());
            }
            return Some(Label::path(u, v, 1));
        }
        let internals = self.path_internals(v, u)?;
        if internals.is_empty() {
            return Some(v.clone());
        }
        Some(Label::path(v, u, internals.len() as u32))
    }

    /// Recovers `k`, `t`, `m` from the selector labels.
    pub fn dims(&self) -> Option<Dims> {
        let mut dims: Option<Dims> = None;
        for label in self.by_label.keys() {
            if let Label::Sel { i, j, g } = *label {
                let d = dims.get_or_insert(Dims { k: 0, t: 0, m: 0 });
                d.k = d.k.max(i);
                d.m = d.m.max(j);
                d.t = d.t.max(g);
            }
        }
        dims
    }

    pub fn selector(&self, i: u32, j: u32, g: u32) -> VertexId {
        self.require(&Label::sel(i, j, g))
    }

    pub fn selectors(&self, dims: Dims, i: u32, j: u32) -> Vec<VertexId> {
        dims.gammas().map(|g| self.selector(i, j, g)).collect()
    }

    /// Cyan vertices adjacent to `V_i^j`, as `(gamma, id)` sorted by gamma.
    /// Empty when `e_j` has no endpoint in row `i`; otherwise 2 or 3 entries.
    pub fn cyan(&self, dims: Dims, i: u32, j: u32) -> Vec<(u32, VertexId)> {
        let mut out = Vec::new();
        for g in dims.gammas() {
            let sel = Label::sel(i, j, g);
            for part in [EdgePart::G, EdgePart::C] {
                let key = (sel.clone(), Label::edge(part, j));
                if let Some(internals) = self.paths.get(&key) {
                    out.push((g, internals[0]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Top cyan vertex: the one with smallest selector index.
    pub fn top_cyan(&self, dims: Dims, i: u32, j: u32) -> Option<(u32, VertexId)> {
        self.cyan(dims, i, j).first().copied()
    }

    /// Bottom cyan vertex: the one with largest selector index.
    pub fn bottom_cyan(&self, dims: Dims, i: u32, j: u32) -> Option<(u32, VertexId)> {
        self.cyan(dims, i, j).last().copied()
    }

    /// The two selector endpoints of `e_j` as `(i, gamma)` pairs, recovered
    /// from the gadget's two `g_j`-paths, ordered as built.
    pub fn edge_endpoints(&self, dims: Dims, j: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in dims.rows() {
            for g in dims.gammas() {
                let key = (Label::sel(i, j, g), Label::edge(EdgePart::G, j));
                if self.paths.contains_key(&key) {
                    out.push((i, g));
                }
            }
        }
        out
    }

    /// Whether `e_j` has an endpoint in row `i`.
    pub fn row_hosts_edge(&self, dims: Dims, i: u32, j: u32) -> bool {
        self.edge_endpoints(dims, j).iter().any(|&(ei, _)| ei == i)
    }

    // Blue vertices: the neighbors of the top/bottom selector vertices inside
    // the two adjacent propagation gadgets.

    pub fn tl(&self, dims: Dims, i: u32, j: u32) -> VertexId {
        let prev = dims.prev_j(j);
        self.nu(&Label::sel(i, j, 1), &Label::gate(Corner::Se, i, prev))
            .expect("tl")
    }

    pub fn tr(&self, dims: Dims, i: u32, j: u32) -> VertexId {
        let _ = dims;
        self.nu(&Label::sel(i, j, 1), &Label::gate(Corner::Sw, i, j))
            .expect("tr")
    }

    pub fn bl(&self, dims: Dims, i: u32, j: u32) -> VertexId {
        let prev = dims.prev_j(j);
        self.nu(&Label::sel(i, j, dims.t), &Label::gate(Corner::Ne, i, prev))
            .expect("bl")
    }

    pub fn br(&self, dims: Dims, i: u32, j: u32) -> VertexId {
        self.nu(&Label::sel(i, j, dims.t), &Label::gate(Corner::Nw, i, j))
            .expect("br")
    }

    pub fn tl_label(&self, dims: Dims, i: u32, j: u32) -> Label {
        let prev = dims.prev_j(j);
        self.nu_label(&Label::sel(i, j, 1), &Label::gate(Corner::Se, i, prev))
            .expect("tl")
    }

    pub fn tr_label(&self, dims: Dims, i: u32, j: u32) -> Label {
        let _ = dims;
        self.nu_label(&Label::sel(i, j, 1), &Label::gate(Corner::Sw, i, j))
            .expect("tr")
    }

    pub fn bl_label(&self, dims: Dims, i: u32, j: u32) -> Label {
        let prev = dims.prev_j(j);
        self.nu_label(&Label::sel(i, j, dims.t), &Label::gate(Corner::Ne, i, prev))
            .expect("bl")
    }

    pub fn br_label(&self, dims: Dims, i: u32, j: u32) -> Label {
        self.nu_label(&Label::sel(i, j, dims.t), &Label::gate(Corner::Nw, i, j))
            .expect("br")
    }

    // Brown vertices: the path neighbors of the top/bottom selector vertices
    // toward the forced-set gadget.

    pub fn tb_label(&self, i: u32, j: u32) -> Label {
        Label::path(&Label::sel(i, j, 1), &Label::fs(FsPart::P, i, j), 1)
    }

    pub fn bb_label(&self, dims: Dims, i: u32, j: u32) -> Label {
        Label::path(&Label::sel(i, j, dims.t), &Label::fs(FsPart::R, i, j), 1)
    }

    /// Map from host label to the pair of pendant twins attached to it.
    pub fn forced_twins(&self) -> BTreeMap<Label, (VertexId, VertexId)> {
        let mut out: BTreeMap<Label, (VertexId, VertexId)> = BTreeMap::new();
        for (label, v) in self.iter() {
            if let Label::Forced { host, twin } = label {
                let entry = out.entry((**host).clone()).or_insert((usize::MAX, usize::MAX));
                if *twin {
                    entry.1 = v;
                } else {
                    entry.0 = v;
                }
            }
        }
        debug_assert!(out.values().all(|&(f, fp)| f != usize::MAX && fp != usize::MAX));
        out
    }

    /// The designated forced vertices (one twin per host), in label order.
    pub fn forced_vertices(&self) -> Vec<VertexId> {
        self.forced_twins().values().map(|&(f, _)| f).collect()
    }

    /// Classifies a critical pair by the labels of its two vertices.
    pub fn pair_origin(&self, g: &crate::graph::LabeledGraph, pair: (VertexId, VertexId)) -> Option<PairOrigin> {
        match (g.label(pair.0), g.label(pair.1)) {
            (Label::Edge { part: EdgePart::C, j }, Label::Edge { part: EdgePart::Cp, j2 }) if j == j2 => {
                Some(PairOrigin::Edge { j: *j })
            }
            (
                Label::Prop { row: PropRow::A, i, j, g: z },
                Label::Prop { row: PropRow::Alpha, i: i2, j: j2, g: z2 },
            ) if i == i2 && j == j2 && z == z2 => Some(PairOrigin::Prop { i: *i, j: *j, g: *z }),
            _ => None,
        }
    }

    /// Rebuilds a ledger (including the path registry) from parsed
    /// `label -> id` entries.
    pub fn rebuild(entries: Vec<(Label, VertexId)>) -> Result<Ledger, ParseError> {
        let mut ledger = Ledger::new();
        let mut grouped: BTreeMap<(Label, Label), Vec<(u32, VertexId)>> = BTreeMap::new();
        for (label, v) in entries {
            if ledger.by_label.insert(label.clone(), v).is_some() {
                return Err(ParseError::Validation(format!("duplicate ledger label {label}")));
            }
            if let Label::Path { from, to, pos } = &label {
                grouped
                    .entry(((**from).clone(), (**to).clone()))
                    .or_default()
                    .push((*pos, v));
            }
        }
        for (key, mut positions) in grouped {
            positions.sort_unstable();
            for (expect, &(pos, _)) in (1..).zip(positions.iter()) {
                if pos != expect {
                    return Err(ParseError::Validation(format!(
                        "path {}..{} has a gap at position {expect}",
                        key.0, key.1
                    )));
                }
            }
            ledger
                .paths
                .insert(key, positions.into_iter().map(|(_, v)| v).collect());
        }
        Ok(ledger)
    }
}
