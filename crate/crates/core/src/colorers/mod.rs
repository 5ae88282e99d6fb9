//! Constructive colourings of negative exact-distance graphs, the 140-vertex
//! target graph and an exact chromatic number oracle.

mod chromatic;
mod col2;
mod dcol;
mod p133;
mod tw2;
mod wcolk;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use serde::Serialize;

use crate::graph::{Graph, Vertex};

pub use chromatic::{
    chromatic_number_exact, chromatic_number_with, dsatur_colouring, greedy_clique,
    ChromaticOptions, ChromaticResult,
};
pub use col2::{colour_strong_square_via_col2, Col2Colouring};
pub use dcol::{colour_exact_distance_via_dcol, DcolColorer};
pub use p133::{build_target_p133, hom_to_p133, p133_index, p133_vertex, TargetGraphP133};
pub use tw2::{
    base_assignment, colour_2tree_7, table_row, two_tree_completion, Assignment733, Triple,
    TwoTreeCompletion,
};
pub use wcolk::{colour_exact_distance_via_wcolk, VectorColour, VectorColouring};

/// A vertex colouring with colour ids in `0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colouring {
    pub palette_size: usize,
    pub colours: Vec<usize>,
}

impl Colouring {
    /// Wraps a colour vector; `palette_size` becomes the largest id plus one.
    pub fn from_colours(colours: Vec<usize>) -> Self {
        let palette_size = colours.iter().map(|&c| c + 1).max().unwrap_or(0);
        Colouring {
            palette_size,
            colours,
        }
    }

    /// Assigns consecutive ids to distinct labels in first-seen order.
    pub fn intern<T: Eq + Hash + Clone>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let colours = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Colouring::from_colours(colours)
    }

    pub fn colour(&self, v: Vertex) -> usize {
        self.colours[v]
    }

    /// Number of distinct colours actually used.
    pub fn colours_used(&self) -> usize {
        let mut seen = vec![false; self.palette_size];
        self.colours.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Edges of `g` whose endpoints share a colour.
    pub fn conflicts(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        g.edges()
            .filter(|&(u, v)| self.colours[u] == self.colours[v])
            .collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colours.len() == crate::graph::Adjacency::vertex_count(g)
            && self.conflicts(g).is_empty()
    }

    /// Two columns per line: 1-indexed vertex label and colour id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colours.iter().enumerate() {
            writeln!(out, "{} {}", v + 1, c).unwrap();
        }
        out
    }
}

/// Smallest colour id not marked in `used`.
pub(crate) fn smallest_free(used: &[bool]) -> usize {
    used.iter().position(|&u| !u).unwrap_or(used.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_and_properness() {
        let c = Colouring::intern(&["a", "b", "a", "c"]);
        assert_eq!(c.colours, vec![0, 1, 0, 2]);
        assert_eq!((c.palette_size, c.colours_used()), (3, 3));
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(c.is_proper(&g));
        let bad = Graph::from_edges(4, [(0, 2)]).unwrap();
        assert_eq!(c.conflicts(&bad), vec![(0, 2)]);
        assert_eq!(c.to_text().lines().next(), Some("1 0"));
    }
}
