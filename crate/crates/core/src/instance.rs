//! Problem-instance types for the three problems in the pipeline, and their
//! line-oriented text formats.
//!
//! The multicolored-independent-set format is 1-based, matching the
//! `[k] x [t]` indexing of classes; everything else on the wire is 0-based
//! vertex ids.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{
    next_meaningful, parse_graph_section, write_graph_section, FrozenGraph, VertexId,
};
use crate::ledger::{Dims, Ledger};

/// A vertex of the source instance: class `i`, index `gamma`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KmisVertex {
    pub i: u32,
    pub gamma: u32,
}

/// A multicolored-independent-set instance: `k` classes of `t` vertices each
/// and a list of inter-class edges. The edge order is significant: edge `j`
/// of the file drives the gadget in column `j` of the constructed instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmisInstance {
    k: u32,
    t: u32,
    edges: Vec<(KmisVertex, KmisVertex)>,
}

impl KmisInstance {
    /// Validates and builds an instance. Classes all have size `t`; edges
    /// inside one class are rejected (independence within a class is vacuous,
    /// and the edge gadget needs endpoints in two rows), as are instances
    /// with `m < 2` or `t < 2`, whose propagation gadgets degenerate.
    pub fn new(
        k: u32,
        t: u32,
        edges: Vec<(KmisVertex, KmisVertex)>,
    ) -> Result<KmisInstance, ParseError> {
        if k < 1 {
            return Err(ParseError::Validation("need at least one class".into()));
        }
        if t < 2 {
            return Err(ParseError::Validation(
                "class size t must be at least 2".into(),
            ));
        }
        if edges.len() < 2 {
            return Err(ParseError::Validation(
                "need at least 2 edges (m >= 2)".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            for v in [a, b] {
                if v.i < 1 || v.i > k || v.gamma < 1 || v.gamma > t {
                    return Err(ParseError::Validation(format!(
                        "vertex ({},{}) out of range",
                        v.i, v.gamma
                    )));
                }
            }
            if a.i == b.i {
                return Err(ParseError::Validation(format!(
                    "edge inside class {}: preprocess intra-class edges away first",
                    a.i
                )));
            }
            let key = if a <= b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(ParseError::Validation(format!(
                    "duplicate edge ({},{})-({},{})",
                    a.i, a.gamma, b.i, b.gamma
                )));
            }
        }
        Ok(KmisInstance { k, t, edges })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of edges, i.e. the number of columns of the construction.
    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn dims(&self) -> Dims {
        Dims {
            k: self.k,
            t: self.t,
            m: self.m(),
        }
    }

    /// Edge `j` (1-based).
    pub fn edge(&self, j: u32) -> (KmisVertex, KmisVertex) {
        self.edges[(j - 1) as usize]
    }

    pub fn edges(&self) -> &[(KmisVertex, KmisVertex)] {
        &self.edges
    }

    pub fn has_edge(&self, a: KmisVertex, b: KmisVertex) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    }

    /// Row-major 0-based id of a vertex, used in solver witness output.
    pub fn vertex_id(&self, v: KmisVertex) -> usize {
        ((v.i - 1) * self.t + (v.gamma - 1)) as usize
    }

    /// Whether the choice of one index per class is a multicolored
    /// independent set. `choice[i-1]` is the gamma picked in class `i`.
    pub fn is_independent(&self, choice: &[u32]) -> bool {
        self.edges.iter().all(|&(a, b)| {
            choice[(a.i - 1) as usize] != a.gamma || choice[(b.i - 1) as usize] != b.gamma
        })
    }
}

pub fn serialize_kmis(inst: &KmisInstance) -> String {
    let mut out = String::new();
    writeln!(out, "kmis {} {}", inst.k, inst.t).unwrap();
    for &(a, b) in &inst.edges {
        writeln!(out, "e {} {} {} {}", a.i, a.gamma, b.i, b.gamma).unwrap();
    }
    out
}

pub fn parse_kmis(text: &str) -> Result<KmisInstance, ParseError> {
    let mut lines = text.lines().enumerate().peekable();
    let (lineno, header) = next_meaningful(&mut lines).ok_or(ParseError::MissingSection("kmis"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kw, k, t] = fields.as_slice() else {
        return Err(ParseError::at(lineno, "expected `kmis <k> <t>`"));
    };
    if *kw != "kmis" {
        return Err(ParseError::at(lineno, "expected `kmis` header"));
    }
    let k: u32 = k.parse().map_err(|_| ParseError::at(lineno, "bad k"))?;
    let t: u32 = t.parse().map_err(|_| ParseError::at(lineno, "bad t"))?;
    let mut edges = Vec::new();
    while let Some((lineno, line)) = next_meaningful(&mut lines) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kw, i1, g1, i2, g2] = fields.as_slice() else {
            return Err(ParseError::at(lineno, "expected `e <i1> <g1> <i2> <g2>`"));
        };
        if *kw != "e" {
            return Err(ParseError::at(lineno, "expected `e` line"));
        }
        let parse = |s: &str| -> Result<u32, ParseError> {
            s.parse().map_err(|_| ParseError::at(lineno, "bad index"))
        };
        edges.push((
            KmisVertex {
                i: parse(i1)?,
                gamma: parse(g1)?,
            },
            KmisVertex {
                i: parse(i2)?,
                gamma: parse(g2)?,
            },
        ));
    }
    KmisInstance::new(k, t, edges)
}

/// A multicolored-resolving-set instance: the graph, the budget, the family
/// `X` of disjoint selector sets, and the list `P` of critical pairs.
#[derive(Debug, Clone)]
pub struct KmrsInstance {
    pub graph: FrozenGraph,
    pub budget: usize,
    pub x: Vec<Vec<VertexId>>,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub ledger: Ledger,
    pub dims: Dims,
}

/// A metric-dimension instance: a graph and a budget. `x` and `pairs` carry
/// over from the intermediate instance for verification only.
#[derive(Debug, Clone)]
pub struct MdInstance {
    pub graph: FrozenGraph,
    pub budget: usize,
    pub x: Vec<Vec<VertexId>>,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub ledger: Ledger,
    pub dims: Dims,
    /// Vertex count of the intermediate graph; ids below this bound are
    /// stage-1 vertices.
    pub stage1_n: usize,
}

fn serialize_body(
    graph: &FrozenGraph,
    budget: usize,
    x: &[Vec<VertexId>],
    pairs: &[(VertexId, VertexId)],
    ledger: Option<&Ledger>,
) -> String {
    let mut out = String::new();
    write_graph_section(graph, &mut out);
    writeln!(out, "k {budget}").unwrap();
    for set in x {
        let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        writeln!(out, "x {}", ids.join(" ")).unwrap();
    }
    for &(u, v) in pairs {
        writeln!(out, "p {u} {v}").unwrap();
    }
    if let Some(ledger) = ledger {
        for (label, v) in ledger.iter() {
            writeln!(out, "ledger {label} {v}").unwrap();
        }
    }
    out
}

pub fn serialize_kmrs(inst: &KmrsInstance) -> String {
    serialize_body(
        &inst.graph,
        inst.budget,
        &inst.x,
        &inst.pairs,
        Some(&inst.ledger),
    )
}

pub fn serialize_md(inst: &MdInstance) -> String {
    serialize_body(
        &inst.graph,
        inst.budget,
        &inst.x,
        &inst.pairs,
        Some(&inst.ledger),
    )
}

struct ParsedBody {
    graph: FrozenGraph,
    budget: usize,
    x: Vec<Vec<VertexId>>,
    pairs: Vec<(VertexId, VertexId)>,
    ledger: Ledger,
}

fn parse_body(text: &str) -> Result<ParsedBody, ParseError> {
    let mut lines = text.lines().enumerate().peekable();
    let graph = parse_graph_section(&mut lines)?;
    let n = graph.n();
    let mut budget = None;
    let mut x: Vec<Vec<VertexId>> = Vec::new();
    let mut pairs = Vec::new();
    let mut ledger_entries = Vec::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();

    while let Some((lineno, line)) = next_meaningful(&mut lines) {
        let mut fields = line.split_whitespace();
        let kw = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        let parse_id = |s: &str| -> Result<VertexId, ParseError> {
            let id: VertexId = s.parse().map_err(|_| ParseError::at(lineno, "bad id"))?;
            if id >= n {
                return Err(ParseError::at(lineno, format!("dangling id {id}")));
            }
            Ok(id)
        };
        match kw {
            "k" => {
                let [b] = rest.as_slice() else {
                    return Err(ParseError::at(lineno, "expected `k <budget>`"));
                };
                budget = Some(b.parse().map_err(|_| ParseError::at(lineno, "bad budget"))?);
            }
            "x" => {
                let mut set = Vec::new();
                for s in &rest {
                    let id = parse_id(s)?;
                    if !used.insert(id) {
                        return Err(ParseError::at(
                            lineno,
                            format!("vertex {id} occurs in two x sets"),
                        ));
                    }
                    set.push(id);
                }
                if set.is_empty() {
                    return Err(ParseError::at(lineno, "empty x set"));
                }
                set.sort_unstable();
                x.push(set);
            }
            "p" => {
                let [u, v] = rest.as_slice() else {
                    return Err(ParseError::at(lineno, "expected `p <u> <v>`"));
                };
                let (u, v) = (parse_id(u)?, parse_id(v)?);
                if u == v {
                    return Err(ParseError::at(lineno, "pair with identical vertices"));
                }
                pairs.push((u, v));
            }
            "ledger" => {
                let [label, id] = rest.as_slice() else {
                    return Err(ParseError::at(lineno, "expected `ledger <label> <id>`"));
                };
                ledger_entries.push((label.parse()?, parse_id(id)?));
            }
            _ => return Err(ParseError::at(lineno, format!("unknown line `{kw}`"))),
        }
    }

    let budget = budget.ok_or(ParseError::MissingSection("k"))?;
    let ledger = Ledger::rebuild(ledger_entries)?;
    Ok(ParsedBody {
        graph: graph.freeze(),
        budget,
        x,
        pairs,
        ledger,
    })
}

fn dims_of(ledger: &Ledger, x_len: usize) -> Dims {
    ledger.dims().unwrap_or(Dims {
        k: 1,
        t: 1,
        m: x_len.max(1) as u32,
    })
}

pub fn parse_kmrs(text: &str) -> Result<KmrsInstance, ParseError> {
    let body = parse_body(text)?;
    if body.budget != body.x.len() {
        return Err(ParseError::Validation(format!(
            "budget {} differs from |X| = {}",
            body.budget,
            body.x.len()
        )));
    }
    let dims = dims_of(&body.ledger, body.x.len());
    Ok(KmrsInstance {
        graph: body.graph,
        budget: body.budget,
        x: body.x,
        pairs: body.pairs,
        ledger: body.ledger,
        dims,
    })
}

pub fn parse_md(text: &str) -> Result<MdInstance, ParseError> {
    let body = parse_body(text)?;
    let dims = dims_of(&body.ledger, body.x.len());
    // Stage 2 only appends vertices, beginning with the forced-set gadgets,
    // so the smallest id under an `fs` label bounds the stage-1 graph.
    let stage1_n = body
        .ledger
        .iter()
        .filter(|(label, _)| matches!(label, crate::label::Label::Fs { .. }))
        .map(|(_, v)| v)
        .min()
        .unwrap_or(body.graph.n());
    Ok(MdInstance {
        graph: body.graph,
        budget: body.budget,
        x: body.x,
        pairs: body.pairs,
        ledger: body.ledger,
        dims,
        stage1_n,
    })
}

/// One move of the node-searching game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Place(VertexId),
    Remove(VertexId),
    Relocate(VertexId, VertexId),
}

/// An ordered list of searcher moves; a pathwidth certificate when it cleans
/// the graph with few searchers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStrategy {
    pub moves: Vec<Move>,
}

pub fn serialize_strategy(strategy: &SearchStrategy) -> String {
    let mut out = String::new();
    for mv in &strategy.moves {
        match mv {
            Move::Place(v) => writeln!(out, "place {v}").unwrap(),
            Move::Remove(v) => writeln!(out, "remove {v}").unwrap(),
            Move::Relocate(u, v) => writeln!(out, "relocate {u} {v}").unwrap(),
        }
    }
    out
}

pub fn parse_strategy(text: &str) -> Result<SearchStrategy, ParseError> {
    let mut moves = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((lineno, line)) = next_meaningful(&mut lines) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_id = |s: &str| -> Result<VertexId, ParseError> {
            s.parse().map_err(|_| ParseError::at(lineno, "bad id"))
        };
        match fields.as_slice() {
            ["place", v] => moves.push(Move::Place(parse_id(v)?)),
            ["remove", v] => moves.push(Move::Remove(parse_id(v)?)),
            ["relocate", u, v] => moves.push(Move::Relocate(parse_id(u)?, parse_id(v)?)),
            _ => return Err(ParseError::at(lineno, "expected place/remove/relocate")),
        }
    }
    Ok(SearchStrategy { moves })
}

/// Short content hash used to tag verification output lines.
pub fn fingerprint(text: &str) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(text.as_bytes());
    digest[..6].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32, gamma: u32) -> KmisVertex {
        KmisVertex { i, gamma }
    }

    #[test]
    fn kmis_parse_basics() {
        let inst = parse_kmis("kmis 2 2\ne 1 1 2 1\ne 1 2 2 2\n").unwrap();
        assert_eq!((inst.k(), inst.t(), inst.m()), (2, 2, 2));
        assert_eq!(inst.edge(1), (v(1, 1), v(2, 1)));
    }

    #[test]
    fn kmis_rejects_intra_class_edge() {
        let err = parse_kmis("kmis 2 2\ne 1 1 1 2\ne 1 1 2 1\n").unwrap_err();
        assert!(err.to_string().contains("inside class"));
    }

    #[test]
    fn kmis_rejects_out_of_range_and_duplicates() {
        assert!(parse_kmis("kmis 2 2\ne 1 1 2 3\ne 1 2 2 2\n").is_err());
        assert!(parse_kmis("kmis 2 2\ne 1 1 2 1\ne 2 1 1 1\n").is_err());
    }

    #[test]
    fn kmis_roundtrip() {
        let text = "kmis 3 2\ne 1 1 2 1\ne 2 2 3 1\ne 1 2 3 2\n";
        let inst = parse_kmis(text).unwrap();
        assert_eq!(serialize_kmis(&inst), text);
    }

    #[test]
    fn body_rejects_overlapping_x_sets() {
        let text = "graph 3 2\nv 0 a\nv 1 b\nv 2 c\ne 0 1\ne 1 2\nk 2\nx 0 1\nx 1 2\n";
        let err = parse_kmrs(text).unwrap_err();
        assert!(err.to_string().contains("two x sets"));
    }

    #[test]
    fn body_requires_budget() {
        let text = "graph 2 1\nv 0 a\nv 1 b\ne 0 1\nx 0\n";
        assert!(matches!(
            parse_kmrs(text),
            Err(ParseError::MissingSection("k"))
        ));
    }

    #[test]
    fn kmrs_roundtrip_byte_exact() {
        let text = "graph 6 3\nv 0 a\nv 1 b\nv 2 c\nv 3 d\nv 4 e\nv 5 f\ne 0 1\ne 2 3\ne 4 5\nk 2\nx 0 1\nx 2 3\np 4 5\n";
        let inst = parse_kmrs(text).unwrap();
        assert_eq!(serialize_kmrs(&inst), text);
    }

    #[test]
    fn strategy_roundtrip() {
        let text = "place 0\nplace 1\nrelocate 0 2\nremove 1\n";
        let strategy = parse_strategy(text).unwrap();
        assert_eq!(strategy.moves.len(), 4);
        assert_eq!(serialize_strategy(&strategy), text);
    }
}
