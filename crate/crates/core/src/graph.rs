//! The immutable small-graph kernel.
//!
//! A [`Graph`] is a simple undirected graph on the dense vertex set
//! `0..n`, stored as `n` adjacency rows of `ceil(n / 64)` words each. Graphs
//! with at most 64 vertices occupy a single word per row, and the search
//! engines read those rows directly through [`Graph::mask`].
//!
//! Every "mutation" returns a fresh graph; nothing here mutates in place
//! once a value has been handed out.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::GraphError;

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 4096;

/// Largest vertex count handled by the single-word search engines.
pub const WORD_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Degree summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub edge_count: usize,
    /// `degree_histogram[d]` is the number of vertices of degree `d`.
    pub degree_histogram: Vec<usize>,
}

impl DegreeStats {
    /// Number of vertices of degree `d`.
    pub fn count_of_degree(&self, d: usize) -> usize {
        self.degree_histogram.get(d).copied().unwrap_or(0)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_VERTICES`; use [`Graph::try_empty`] for a fallible
    /// constructor.
    pub fn empty(n: usize) -> Graph {
        Graph::try_empty(n).expect("vertex count within MAX_VERTICES")
    }

    pub fn try_empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let words = bits::words_for(n).max(1);
        Ok(Graph { n, words, rows: vec![0; n * words] })
    }

    /// Builds a graph from an edge list. Repeated edges are accepted once.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::try_empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from single-word adjacency
    /// masks. The masks must already be symmetric and loop-free.
    pub fn from_masks(masks: &[u64]) -> Graph {
        let n = masks.len();
        assert!(n <= WORD_LIMIT, "from_masks needs n <= 64");
        let mut g = Graph::empty(n);
        for (v, &m) in masks.iter().enumerate() {
            debug_assert_eq!(m >> v & 1, 0, "loop at {v}");
            g.rows[v] = m & bits::low_mask(n);
        }
        debug_assert!(g.is_symmetric());
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Single-word adjacency mask of `v`. Only meaningful when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD_LIMIT);
        self.rows[v * self.words]
    }

    /// All adjacency rows as single-word masks; `None` when `n > 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= WORD_LIMIT).then(|| (0..self.n).map(|v| self.mask(v)).collect())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Unordered non-adjacent pairs `(u, v)`, `u < v`.
    pub fn missing_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut hist = vec![0; self.n.max(1)];
        for v in 0..self.n {
            hist[self.degree(v)] += 1;
        }
        DegreeStats {
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            edge_count: self.edge_count(),
            degree_histogram: hist,
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        bits::set(&mut self.rows[u * w..(u + 1) * w], v);
        bits::set(&mut self.rows[v * w..(v + 1) * w], u);
    }

    pub(crate) fn unset_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        bits::clear(&mut self.rows[u * w..(u + 1) * w], v);
        bits::clear(&mut self.rows[v * w..(v + 1) * w], u);
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).all(|v| self.has_edge(v, u)))
    }

    /// Returns `G + M`: adds every pair of `edges`. Pairs that are already
    /// edges are no-ops; a pair `(v, v)` is ignored as well.
    pub fn add_edges<I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u != v {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.unset_edge(u, v);
        Ok(g)
    }

    /// `G \ A`. Remaining vertices keep their relative order; the returned
    /// map sends each old index to its new index (`None` for deleted ones).
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        let mut gone = vec![false; self.n];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// `G[keep]`, with vertices renumbered in the order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for v in self.neighbors(u) {
                if let Some(j) = map[v] {
                    if j > i {
                        g.set_edge(i, j);
                    }
                }
            }
        }
        (g, map)
    }

    /// `G / uv`. The merged vertex takes the lower of the two indices; the
    /// higher index is removed and later vertices shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let mut g = self.clone();
        let nbrs: Vec<usize> = self.neighbors(gone).filter(|&w| w != keep).collect();
        for w in nbrs {
            g.set_edge(keep, w);
        }
        g.unset_edge(keep, gone);
        Ok(g.delete_vertices(&[gone])?.0)
    }

    /// Complement graph `Ḡ`.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + off, v + off);
        }
        g
    }

    /// Adds one new vertex (index `n`) adjacent to all existing vertices.
    pub fn add_apex(&self) -> Graph {
        let mut g = self.disjoint_union(&Graph::empty(1));
        for v in 0..self.n {
            g.set_edge(v, self.n);
        }
        g
    }

    /// Vertices adjacent to `v` as a sorted vector.
    pub fn neighborhood(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Whether `set` is pairwise adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether `set` is pairwise non-adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Plain-text adjacency list: a header line `n <count>` followed by one
    /// `u v` line per edge (0-based, `u < v`).
    pub fn to_adjacency_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses [`Graph::to_adjacency_list`] output. Without an `n` header the
    /// vertex count is one more than the largest index seen. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_adjacency_list(text: &str) -> Result<Graph, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| GraphError::AdjacencyList { line: i + 1, message: message.to_string() };
            let mut parts = line.split_whitespace();
            let a = parts.next().ok_or_else(|| err("empty line"))?;
            let b = parts.next().ok_or_else(|| err("expected two fields"))?;
            if parts.next().is_some() {
                return Err(err("expected two fields"));
            }
            if a == "n" {
                n = Some(b.parse::<usize>().map_err(|_| err("bad vertex count"))?);
                continue;
            }
            let u = a.parse::<usize>().map_err(|_| err("bad vertex index"))?;
            let v = b.parse::<usize>().map_err(|_| err("bad vertex index"))?;
            edges.push((u, v));
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edges(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::to_graph6(self))
    }
}

/// Graphs serialise as graph6 strings.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::graph6::to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        crate::graph6::from_graph6(&text).map_err(serde::de::Error::custom)
    }
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.set_edge(u, v);
        }
    }
    g
}

/// Complete multipartite graph; parts occupy consecutive index ranges.
pub fn complete_multipartite(part_sizes: &[usize]) -> Graph {
    let n = part_sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in part_sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if part[u] != part[v] {
                g.set_edge(u, v);
            }
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Cycle `0-1-…-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 0..n {
        if n >= 3 || v + 1 < n {
            g.set_edge(v, (v + 1) % n);
        }
    }
    g
}

/// Path `0-1-…-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
}

/// Star `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    Graph::from_edges(k + 1, (1..=k).map(|v| (0, v))).expect("valid star")
}

/// Wheel: centre 0 joined to the cycle `1..=k`.
pub fn wheel(k: usize) -> Graph {
    cycle(k).add_apex().permute(&(0..=k).map(|v| (v + 1) % (k + 1)).collect::<Vec<_>>())
}

/// The Petersen graph: outer cycle 0..5, spokes `i – i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, e).expect("valid petersen")
}
