//! Undirected simple graphs with structured labels and BFS distances.
//!
//! [`LabeledGraph`] is the mutable builder used by the gadget constructions.
//! [`FrozenGraph`] is an immutable graph plus its all-pairs distance matrix;
//! freezing is the synchronization point after which a graph may be queried
//! from many threads.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{GraphError, ParseError};
use crate::label::Label;

pub type VertexId = usize;

/// Hop count between two vertices. Disconnected pairs are `Infinite`, a
/// tagged value rather than a large sentinel integer, so disconnection bugs
/// fail loudly. `Finite(_) < Infinite` under the derived order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    /// The finite value; panics on `Infinite`.
    pub fn unwrap(self) -> u32 {
        self.finite().expect("unexpected infinite distance")
    }

    pub fn succ(self) -> Dist {
        match self {
            Dist::Finite(d) => Dist::Finite(d + 1),
            Dist::Infinite => Dist::Infinite,
        }
    }
}

/// Single-source BFS result.
#[derive(Debug, Clone)]
pub struct DistanceVector {
    pub source: VertexId,
    pub dist: Vec<Dist>,
}

/// Dense all-pairs hop-count matrix.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn get(&self, u: VertexId, v: VertexId) -> Dist {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: VertexId) -> &[Dist] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone, Default)]
pub struct LabeledGraph {
    labels: Vec<Label>,
    adj: Vec<Vec<VertexId>>,
    by_label: HashMap<Label, VertexId>,
    cache: Option<DistanceMatrix>,
    edges: usize,
}

impl LabeledGraph {
    pub fn new() -> LabeledGraph {
        LabeledGraph::default()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertex(&self, label: &Label) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.n()
    }

    /// Each edge once, with u < v.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn add_vertex(&mut self, label: Label) -> Result<VertexId, GraphError> {
        if self.by_label.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let id = self.labels.len();
        self.by_label.insert(label.clone(), id);
        self.labels.push(label);
        self.adj.push(Vec::new());
        self.cache = None;
        Ok(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edges += 1;
        self.cache = None;
        Ok(())
    }

    /// Joins `u` and `v` by a fresh internally-disjoint path with exactly
    /// `length` edges and returns the `length - 1` new internal vertices in
    /// order from `u` to `v`. Internal vertices are labeled
    /// `path[<label(u)>,<label(v)>,pos]` with `pos` counted from `u`.
    /// `length == 1` adds the plain edge `uv`.
    pub fn add_path(
        &mut self,
        u: VertexId,
        v: VertexId,
        length: usize,
    ) -> Result<Vec<VertexId>, GraphError> {
        if length == 0 {
            return Err(GraphError::ZeroLengthPath);
        }
        if u >= self.n() {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= self.n() {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let from = self.labels[u].clone();
        let to = self.labels[v].clone();
        let mut internal = Vec::with_capacity(length - 1);
        let mut prev = u;
        for pos in 1..length {
            let w = self.add_vertex(Label::path(&from, &to, pos as u32))?;
            self.add_edge(prev, w)?;
            internal.push(w);
            prev = w;
        }
        self.add_edge(prev, v)?;
        Ok(internal)
    }

    /// Fresh single-source BFS; does not consult or fill the cache.
    pub fn bfs_distances(&self, source: VertexId) -> DistanceVector {
        let mut dist = vec![Dist::Infinite; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Dist::Finite(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v] == Dist::Infinite {
                    dist[v] = Dist::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        DistanceVector { source, dist }
    }

    fn compute_all_pairs(&self) -> DistanceMatrix {
        let n = self.n();
        let mut data = vec![Dist::Infinite; n * n];
        data.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(source, row)| {
                row.copy_from_slice(&self.bfs_distances(source).dist);
            });
        DistanceMatrix { n, data }
    }

    /// All-pairs hop counts, cached until the next mutation.
    pub fn all_pairs_distances(&mut self) -> &DistanceMatrix {
        if self.cache.is_none() {
            self.cache = Some(self.compute_all_pairs());
        }
        self.cache.as_ref().unwrap()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let dist = self.bfs_distances(0).dist;
        dist.iter().all(|d| d.is_finite())
    }

    /// Computes the distance matrix and freezes the graph.
    pub fn freeze(mut self) -> FrozenGraph {
        let dist = self
            .cache
            .take()
            .unwrap_or_else(|| self.compute_all_pairs());
        FrozenGraph { graph: self, dist }
    }
}

/// An immutable graph together with its all-pairs distance matrix.
#[derive(Debug, Clone)]
pub struct FrozenGraph {
    graph: LabeledGraph,
    dist: DistanceMatrix,
}

impl FrozenGraph {
    pub fn dist(&self, u: VertexId, v: VertexId) -> Dist {
        self.dist.get(u, v)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// A mutable copy of the underlying graph, for staged constructions that
    /// keep building on a frozen intermediate.
    pub fn thaw(&self) -> LabeledGraph {
        self.graph.clone()
    }

    /// Max distance taken in the whole graph (not the induced subgraph)
    /// over pairs from `set`. Requires a connected graph.
    pub fn diameter_of_set(&self, set: &[VertexId]) -> Result<u32, GraphError> {
        if !self.graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut best = 0;
        for (idx, &u) in set.iter().enumerate() {
            for &v in &set[idx + 1..] {
                best = best.max(self.dist(u, v).unwrap());
            }
        }
        Ok(best)
    }
}

impl std::ops::Deref for FrozenGraph {
    type Target = LabeledGraph;

    fn deref(&self) -> &LabeledGraph {
        &self.graph
    }
}

/// Writes the line-oriented graph section: a `graph <n> <m>` header, one
/// `v <id> <label>` line per vertex, one `e <u> <v>` line per edge.
pub fn write_graph_section(g: &LabeledGraph, out: &mut String) {
    writeln!(out, "graph {} {}", g.n(), g.edge_count()).unwrap();
    for v in g.vertices() {
        writeln!(out, "v {} {}", v, g.label(v)).unwrap();
    }
    for (u, v) in g.edge_list() {
        writeln!(out, "e {u} {v}").unwrap();
    }
}

/// Parses the graph section from numbered lines, consuming exactly the
/// header plus the announced vertex and edge lines. Blank lines and
/// `#` comments are skipped.
pub fn parse_graph_section<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<LabeledGraph, ParseError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (lineno, header) = next_meaningful(lines).ok_or(ParseError::MissingSection("graph"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kw, n, m] = fields.as_slice() else {
        return Err(ParseError::at(lineno, "expected `graph <n> <m>`"));
    };
    if *kw != "graph" {
        return Err(ParseError::at(lineno, "expected `graph` header"));
    }
    let n: usize = n.parse().map_err(|_| ParseError::at(lineno, "bad vertex count"))?;
    let m: usize = m.parse().map_err(|_| ParseError::at(lineno, "bad edge count"))?;

    let mut g = LabeledGraph::new();
    for _ in 0..n {
        let (lineno, line) =
            next_meaningful(lines).ok_or(ParseError::MissingSection("vertex line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kw, id, label] = fields.as_slice() else {
            return Err(ParseError::at(lineno, "expected `v <id> <label>`"));
        };
        if *kw != "v" {
            return Err(ParseError::at(lineno, "expected `v` line"));
        }
        let id: usize = id.parse().map_err(|_| ParseError::at(lineno, "bad id"))?;
        if id != g.n() {
            return Err(ParseError::at(lineno, "vertex ids must be contiguous from 0"));
        }
        let label: Label = label.parse()?;
        g.add_vertex(label)?;
    }
    for _ in 0..m {
        let (lineno, line) =
            next_meaningful(lines).ok_or(ParseError::MissingSection("edge line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [kw, u, v] = fields.as_slice() else {
            return Err(ParseError::at(lineno, "expected `e <u> <v>`"));
        };
        if *kw != "e" {
            return Err(ParseError::at(lineno, "expected `e` line"));
        }
        let u: usize = u.parse().map_err(|_| ParseError::at(lineno, "bad endpoint"))?;
        let v: usize = v.parse().map_err(|_| ParseError::at(lineno, "bad endpoint"))?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Next non-blank, non-comment line.
pub fn next_meaningful<'a, I>(lines: &mut std::iter::Peekable<I>) -> Option<(usize, &'a str)>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    for (lineno, line) in lines.by_ref() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        return Some((lineno, trimmed));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(g: &mut LabeledGraph, name: &str) -> VertexId {
        g.add_vertex(Label::name(name)).unwrap()
    }

    fn path_graph(n: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for i in 0..n {
            named(&mut g, &format!("v{i}"));
        }
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    fn complete_graph(n: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new();
        for i in 0..n {
            named(&mut g, &format!("v{i}"));
        }
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn builds_p3() {
        let g = path_graph(3);
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.bfs_distances(0).dist[2], Dist::Finite(2));
    }

    #[test]
    fn rejects_duplicate_edge_and_self_loop() {
        let mut g = path_graph(2);
        assert_eq!(g.add_edge(0, 1), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(1, 0)));
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn rejects_duplicate_label() {
        let mut g = LabeledGraph::new();
        named(&mut g, "a");
        assert_eq!(
            g.add_vertex(Label::name("a")),
            Err(GraphError::DuplicateLabel(Label::name("a")))
        );
    }

    #[test]
    fn add_path_length_one_is_an_edge() {
        let mut g = LabeledGraph::new();
        let u = named(&mut g, "u");
        let v = named(&mut g, "v");
        let internal = g.add_path(u, v, 1).unwrap();
        assert!(internal.is_empty());
        assert!(g.has_edge(u, v));
    }

    #[test]
    fn add_path_creates_internal_vertices() {
        let mut g = LabeledGraph::new();
        let u = named(&mut g, "u");
        let v = named(&mut g, "v");
        let internal = g.add_path(u, v, 4).unwrap();
        assert_eq!(internal.len(), 3);
        assert!(!g.has_edge(u, v));
        assert_eq!(g.bfs_distances(u).dist[v], Dist::Finite(4));
        assert_eq!(
            g.label(internal[0]),
            &Label::path(&Label::name("u"), &Label::name("v"), 1)
        );
    }

    #[test]
    fn add_path_shortcut_dominates() {
        let mut g = path_graph(11);
        assert_eq!(g.bfs_distances(0).dist[10], Dist::Finite(10));
        g.add_path(0, 10, 6).unwrap();
        assert_eq!(g.bfs_distances(0).dist[10], Dist::Finite(6));
    }

    #[test]
    fn add_path_rejects_zero_length() {
        let mut g = path_graph(2);
        assert_eq!(g.add_path(0, 1, 0), Err(GraphError::ZeroLengthPath));
    }

    #[test]
    fn k4_distances() {
        let mut g = complete_graph(4);
        let dist = g.all_pairs_distances();
        for u in 0..4 {
            for v in 0..4 {
                let want = if u == v { 0 } else { 1 };
                assert_eq!(dist.get(u, v), Dist::Finite(want));
            }
        }
    }

    #[test]
    fn disconnected_pairs_are_infinite() {
        let mut g = LabeledGraph::new();
        for name in ["a", "b", "c", "d"] {
            named(&mut g, name);
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(2, 3).unwrap();
        assert_eq!(g.bfs_distances(0).dist[2], Dist::Infinite);
        assert!(!g.is_connected());
    }

    #[test]
    fn star_max_degree() {
        let mut g = LabeledGraph::new();
        let hub = named(&mut g, "hub");
        for i in 0..5 {
            let leaf = named(&mut g, &format!("l{i}"));
            g.add_edge(hub, leaf).unwrap();
        }
        assert_eq!(g.max_degree(), 5);
    }

    #[test]
    fn diameter_of_set_uses_whole_graph() {
        let g = path_graph(5).freeze();
        assert_eq!(g.diameter_of_set(&[0, 4]).unwrap(), 4);

        // C6, antipodal pair.
        let mut c6 = path_graph(6);
        c6.add_edge(5, 0).unwrap();
        let c6 = c6.freeze();
        assert_eq!(c6.diameter_of_set(&[0, 3]).unwrap(), 3);

        let mut disc = LabeledGraph::new();
        named(&mut disc, "a");
        named(&mut disc, "b");
        let disc = disc.freeze();
        assert_eq!(disc.diameter_of_set(&[0, 1]), Err(GraphError::Disconnected));
    }

    #[test]
    fn graph_section_roundtrip() {
        let mut g = LabeledGraph::new();
        let u = named(&mut g, "u");
        let v = named(&mut g, "v");
        g.add_path(u, v, 3).unwrap();
        let mut text = String::new();
        write_graph_section(&g, &mut text);
        let mut lines = text.lines().enumerate().peekable();
        let parsed = parse_graph_section(&mut lines).unwrap();
        assert_eq!(parsed.n(), g.n());
        assert_eq!(parsed.edge_list(), g.edge_list());
        let mut text2 = String::new();
        write_graph_section(&parsed, &mut text2);
        assert_eq!(text, text2);
    }
}
