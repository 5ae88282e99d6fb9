//! Reachability under a vertex ordering and the generalised colouring numbers.

mod minimize;
mod reach;
mod treewidth;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

pub use minimize::{
    degeneracy_ordering, minimize_over_orderings, MinimizeMode, MinimizeOptions, OrderingResult,
    DEFAULT_EXHAUSTIVE_CAP,
};
pub use reach::{
    dcol, dreach_sets, dreach_sets_budgeted, dreach_sets_layered, dreach_witness,
    is_dreach_witness, reach_profile, reach_sets, wcol, col, wreach_sets, wreach_with_distances,
    DreachStats,
};
pub use treewidth::{treewidth_small, treewidth_with_cap, TREEWIDTH_CAP};
pub(crate) use reach::RestrictedBfs;

/// A strict total order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Builds an ordering from vertices listed smallest first.
    pub fn from_order(order: Vec<Vertex>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if position[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            position[v] = i;
        }
        Ok(VertexOrdering { order, position })
    }

    /// Builds an ordering from a rank per vertex; ranks must be distinct.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let mut order: Vec<Vertex> = (0..ranks.len()).collect();
        order.sort_by_key(|&v| ranks[v]);
        if order.windows(2).any(|w| ranks[w[0]] == ranks[w[1]]) {
            return Err(Error::InvalidOrdering("duplicate ranks".into()));
        }
        VertexOrdering::from_order(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.order[rank]
    }

    /// Vertices from smallest to largest.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn less(&self, a: Vertex, b: Vertex) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        VertexOrdering::from_order(order).expect("reversal of a bijection")
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidOrdering(format!(
                "ordering has {} vertices, graph has {n}",
                self.len()
            )))
        }
    }
}

impl TryFrom<Vec<Vertex>> for VertexOrdering {
    type Error = Error;
    fn try_from(order: Vec<Vertex>) -> Result<Self> {
        VertexOrdering::from_order(order)
    }
}

impl From<VertexOrdering> for Vec<Vertex> {
    fn from(o: VertexOrdering) -> Self {
        o.order
    }
}

/// Path-length bound for reachability. `Infinite` is normalised to `n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Radius {
    Finite(usize),
    Infinite,
}

impl Radius {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Radius::Finite(k) => k,
            Radius::Infinite => n.saturating_sub(1),
        }
    }
}

impl From<usize> for Radius {
    fn from(k: usize) -> Self {
        Radius::Finite(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReachKind {
    /// `WReach`: paths on which the reached vertex is the minimum.
    Weak,
    /// `Reach`: additionally every other path vertex is at least the start.
    Strong,
    /// `DReach`: the reached vertex is the minimum and the vertices in the
    /// second half of the path are at least the start.
    Distance,
}

/// Per-vertex reach sets and their maximum size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachProfile {
    pub kind: ReachKind,
    pub radius: usize,
    /// `sets[y]` lists the members of the reach set of `y`, smallest first
    /// under the ordering. Every set contains `y`.
    pub sets: Vec<Vec<Vertex>>,
    pub max_size: usize,
    pub argmax: Option<Vertex>,
}

impl ReachProfile {
    pub(crate) fn new(kind: ReachKind, radius: usize, sets: Vec<Vec<Vertex>>) -> Self {
        let (max_size, argmax) = sets
            .iter()
            .enumerate()
            .map(|(v, s)| (s.len(), v))
            .fold((0, None), |best, (size, v)| {
                if size > best.0 {
                    (size, Some(v))
                } else {
                    best
                }
            });
        ReachProfile {
            kind,
            radius,
            sets,
            max_size,
            argmax,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, y: Vertex, x: Vertex) -> bool {
        self.sets[y].contains(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_rejects_non_bijections() {
        assert!(VertexOrdering::from_order(vec![0, 0, 1]).is_err());
        assert!(VertexOrdering::from_order(vec![0, 3, 1]).is_err());
        assert!(VertexOrdering::from_ranks(&[2, 0, 2]).is_err());
        let o = VertexOrdering::from_ranks(&[2, 0, 1]).unwrap();
        assert_eq!(o.order(), &[1, 2, 0]);
        assert!(o.less(1, 0));
        assert_eq!(o.reversed().order(), &[0, 2, 1]);
    }

    #[test]
    fn infinite_radius_is_n_minus_one() {
        assert_eq!(Radius::Infinite.resolve(7), 6);
        assert_eq!(Radius::Infinite.resolve(0), 0);
        assert_eq!(Radius::Finite(3).resolve(7), 3);
    }
}
