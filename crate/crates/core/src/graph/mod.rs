//! Graph representations shared by every other module.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted so that
//! iteration order, and hence every greedy scan built on top of it, is
//! deterministic.

mod distance;
pub mod io;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distance::{
    bfs_distances, exact_distance_graph, shortest_path_sign_counts, sign_counts_within,
    strong_square_union, unsigned_exact_distance_graph, PathSignCounts, Presence,
};

pub(crate) use distance::LayeredCounts;

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    /// Sign of the concatenation of two signed walks.
    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Which of the two negative exact-distance graphs to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `xy` is an edge iff `d(x,y) = k` and every length-`k` path is negative.
    EveryNegative,
    /// `xy` is an edge iff `d(x,y) = k` and some length-`k` path is negative.
    SomeNegative,
}

/// Read-only adjacency access, implemented by both graph types so that
/// traversals work on either.
pub trait Adjacency: Sync {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: Vertex) -> usize;
    fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_;

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); vertex_count],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_unchecked(0, n - 1);
        }
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    /// Adds `uv` unless it is already present. Returns whether it was added.
    pub fn add_edge_if_absent(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_unchecked(u, v);
        Ok(true)
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbour_slice(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Edge union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Graph {
        assert_eq!(self.vertex_count(), other.vertex_count());
        let mut g = self.clone();
        for (u, v) in other.edges() {
            if !g.has_edge(u, v) {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Whether `vertices` induce a clique.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        bfs_distances(self, 0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    /// All signatures negative, the usual embedding of graphs into signed graphs.
    pub fn all_negative(&self) -> SignedGraph {
        self.with_uniform_sign(Sign::Negative)
    }

    pub fn with_uniform_sign(&self, sign: Sign) -> SignedGraph {
        let mut sg = SignedGraph::new(self.vertex_count());
        for (u, v) in self.edges() {
            sg.insert_unchecked(u, v, sign);
        }
        sg
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }
}

/// A simple graph with a sign on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignedGraph {
    adj: Vec<Vec<(Vertex, Sign)>>,
    edge_count: usize,
}

impl SignedGraph {
    pub fn new(vertex_count: usize) -> Self {
        SignedGraph {
            adj: vec![Vec::new(); vertex_count],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Sign)>,
    {
        let mut g = SignedGraph::new(vertex_count);
        for (u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, sign: Sign) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.sign(u, v).is_some() {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v, sign);
        Ok(())
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex, sign: Sign) {
        let pos = self.adj[u].binary_search_by_key(&v, |e| e.0).unwrap_err();
        self.adj[u].insert(pos, (v, sign));
        let pos = self.adj[v].binary_search_by_key(&u, |e| e.0).unwrap_err();
        self.adj[v].insert(pos, (u, sign));
        self.edge_count += 1;
    }

    pub fn sign(&self, u: Vertex, v: Vertex) -> Option<Sign> {
        let nb = self.adj.get(u)?;
        nb.binary_search_by_key(&v, |e| e.0).ok().map(|i| nb[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.sign(u, v).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn signed_neighbours(&self, v: Vertex) -> &[(Vertex, Sign)] {
        &self.adj[v]
    }

    /// Edges as `(u, v, sign)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Sign)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| {
            nb.iter()
                .filter(move |e| u < e.0)
                .map(move |&(v, s)| (u, v, s))
        })
    }

    pub fn underlying(&self) -> Graph {
        Graph {
            adj: self
                .adj
                .iter()
                .map(|nb| nb.iter().map(|e| e.0).collect())
                .collect(),
            edge_count: self.edge_count,
        }
    }

    /// Same underlying graph with every sign replaced by `sign_of(u, v)`.
    pub fn resign<F>(&self, mut sign_of: F) -> SignedGraph
    where
        F: FnMut(Vertex, Vertex) -> Sign,
    {
        let mut g = SignedGraph::new(self.vertex_count());
        for (u, v, _) in self.edges() {
            g.insert_unchecked(u, v, sign_of(u, v));
        }
        g
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges().filter(|e| e.2.is_negative()).count()
    }
}

impl Adjacency for SignedGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|e| e.0)
    }
}

impl From<&SignedGraph> for Graph {
    fn from(g: &SignedGraph) -> Self {
        g.underlying()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::Loop(1)));
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.add_edge(2, 0), Err(Error::DuplicateEdge(0, 2)));
        assert!(matches!(g.add_edge(0, 3), Err(Error::InvalidVertex { .. })));

        let mut sg = SignedGraph::new(2);
        sg.add_edge(0, 1, Sign::Negative).unwrap();
        assert_eq!(
            sg.add_edge(1, 0, Sign::Positive),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (4, 1)]).unwrap();
        for u in 0..5 {
            let nb = g.neighbour_slice(u);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &v in nb {
                assert!(g.has_edge(v, u));
            }
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (1, 3), (1, 4)]);
    }

    #[test]
    fn sign_composition() {
        use Sign::*;
        assert_eq!(Negative.compose(Negative), Positive);
        assert_eq!(Negative.compose(Positive), Negative);
        assert_eq!(Positive.compose(Positive), Positive);
    }

    #[test]
    fn underlying_keeps_edges() {
        let sg = SignedGraph::from_edges(3, [(0, 1, Sign::Negative), (1, 2, Sign::Positive)]).unwrap();
        let g = sg.underlying();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2));
        assert_eq!(sg.negative_edge_count(), 1);
    }
}
