use serde::Serialize;

use crate::error::Result;
use crate::graph::{Adjacency, Graph, Vertex};

#[derive(Debug, Clone, Copy)]
pub struct ChromaticOptions {
    /// Graphs with more vertices only get the DSATUR / clique bracket.
    pub vertex_cap: usize,
    /// Maximum number of search nodes before giving up on exactness.
    pub node_budget: u64,
}

impl Default for ChromaticOptions {
    fn default() -> Self {
        ChromaticOptions {
            vertex_cap: 200,
            node_budget: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChromaticResult {
    Exact { value: usize },
    /// The search ran out of budget; `lower ≤ χ ≤ upper`.
    Bounds { lower: usize, upper: usize },
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            ChromaticResult::Exact { value } => Some(value),
            ChromaticResult::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            ChromaticResult::Exact { value } => value,
            ChromaticResult::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            ChromaticResult::Exact { value } => value,
            ChromaticResult::Bounds { upper, .. } => upper,
        }
    }
}

/// Greedy clique: grows from every start vertex, always adding the
/// highest-degree compatible candidate, and keeps the largest.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut candidates: Vec<Vertex> = g.neighbours(start).collect();
        while !candidates.is_empty() {
            let &next = candidates
                .iter()
                .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            clique.push(next);
            candidates.retain(|&v| v != next && g.has_edge(v, next));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR colouring: repeatedly colour the vertex seeing the most distinct
/// colours (ties: higher degree, then smaller id) with its smallest free
/// colour.
pub fn dsatur_colouring(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colour = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = seen[v].iter().position(|&s| !s).unwrap();
        colour[v] = c;
        for w in g.neighbours(v) {
            if !seen[w][c] {
                seen[w][c] = true;
                saturation[w] += 1;
            }
        }
    }
    colour
}

struct Search<'a> {
    g: &'a Graph,
    colour: Vec<usize>,
    /// `conflicts[v][c]`: neighbours of `v` currently coloured `c`.
    conflicts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn assign(&mut self, v: Vertex, c: usize) {
        self.colour[v] = c;
        for w in self.g.neighbours(v) {
            if self.conflicts[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.conflicts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        self.colour[v] = usize::MAX;
        for w in self.g.neighbours(v) {
            self.conflicts[w][c] -= 1;
            if self.conflicts[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, remaining: usize, used: usize) {
        if self.best <= self.lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if remaining == 0 {
            self.best = used;
            return;
        }
        let n = self.g.vertex_count();
        let v = (0..n)
            .filter(|&v| self.colour[v] == usize::MAX)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        // A new colour is only worth trying while it stays below the best.
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.conflicts[v][c] == 0 {
                self.assign(v, c);
                self.run(remaining - 1, used.max(c + 1));
                self.unassign(v, c);
                if self.best <= self.lower || self.exhausted {
                    return;
                }
            }
        }
    }
}

/// Exact chromatic number with default options.
pub fn chromatic_number_exact(g: &Graph) -> Result<ChromaticResult> {
    chromatic_number_with(g, ChromaticOptions::default())
}

/// Branch and bound over DSATUR choices, seeded with a greedy clique (fixed
/// to colours `0..q`) as lower bound and the DSATUR colouring as upper bound.
pub fn chromatic_number_with(g: &Graph, options: ChromaticOptions) -> Result<ChromaticResult> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ChromaticResult::Exact { value: 0 });
    }
    let clique = greedy_clique(g);
    let upper = dsatur_colouring(g).into_iter().max().unwrap() + 1;
    let lower = clique.len();
    if lower == upper {
        return Ok(ChromaticResult::Exact { value: upper });
    }
    if n > options.vertex_cap {
        return Ok(ChromaticResult::Bounds { lower, upper });
    }
    let mut search = Search {
        g,
        colour: vec![usize::MAX; n],
        conflicts: vec![vec![0; upper]; n],
        saturation: vec![0; n],
        best: upper,
        lower,
        nodes: 0,
        budget: options.node_budget,
        exhausted: false,
    };
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    search.run(n - lower, lower);
    Ok(if search.exhausted {
        ChromaticResult::Bounds {
            lower,
            upper: search.best,
        }
    } else {
        ChromaticResult::Exact { value: search.best }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn classic_values() {
        assert_eq!(chromatic_number_exact(&Graph::complete(7)).unwrap().exact(), Some(7));
        assert_eq!(chromatic_number_exact(&Graph::cycle(5)).unwrap().exact(), Some(3));
        assert_eq!(chromatic_number_exact(&petersen()).unwrap().exact(), Some(3));
        assert_eq!(chromatic_number_exact(&Graph::new(4)).unwrap().exact(), Some(1));
    }

    #[test]
    fn tiny_budget_gives_bounds() {
        // Mycielski graph of C5 (Grötzsch): triangle-free with χ = 4.
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i + 5, (i + 1) % 5));
            edges.push((i + 5, (i + 4) % 5));
            edges.push((i + 5, 10));
        }
        let g = Graph::from_edges(11, edges).unwrap();
        assert_eq!(chromatic_number_exact(&g).unwrap().exact(), Some(4));
        let r = chromatic_number_with(&g, ChromaticOptions { vertex_cap: 200, node_budget: 1 }).unwrap();
        assert!(matches!(r, ChromaticResult::Bounds { lower: 2, .. }));
        assert!(r.upper() >= 4);
    }
}
