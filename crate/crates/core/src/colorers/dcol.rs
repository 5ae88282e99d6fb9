use super::{smallest_free, Colouring};
use crate::colnum::{dreach_sets_layered, VertexOrdering};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph, LayeredCounts, Presence, SignedGraph, Vertex};

/// Colours the exact-distance `-k` graph through distance reachability.
///
/// The greedy colour `a(·)` only depends on the underlying graph, the
/// ordering and `k`, so it is computed once and reused for every signature.
#[derive(Debug, Clone)]
pub struct DcolColorer {
    underlying: Graph,
    ordering: VertexOrdering,
    k: usize,
    reach_radius: usize,
    bound: usize,
    base: Vec<usize>,
}

impl DcolColorer {
    pub fn new(underlying: &Graph, ordering: &VertexOrdering, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDistance);
        }
        let reach_radius = if k % 2 == 1 { 2 * k - 1 } else { 2 * k };
        let profile = dreach_sets_layered(underlying, ordering, reach_radius)?;
        let n = underlying.vertex_count();
        let mut base = vec![usize::MAX; n];
        let mut used = vec![false; profile.max_size];
        for &y in ordering.order() {
            let reached = &profile.sets[y];
            for &x in reached {
                if x != y {
                    used[base[x]] = true;
                }
            }
            base[y] = smallest_free(&used);
            for &x in reached {
                if x != y {
                    used[base[x]] = false;
                }
            }
        }
        Ok(DcolColorer {
            underlying: underlying.clone(),
            ordering: ordering.clone(),
            k,
            reach_radius,
            bound: profile.max_size,
            base,
        })
    }

    /// `dcol_{2k}(G, L)`, or `dcol_{2k-1}(G, L)` for odd `k`: the palette
    /// bound the colouring respects.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Radius of the distance reachability used by the greedy step.
    pub fn reach_radius(&self) -> usize {
        self.reach_radius
    }

    pub fn base_colours(&self) -> &[usize] {
        &self.base
    }

    /// Colours one signature of the underlying graph.
    pub fn colour(&self, g: &SignedGraph) -> Result<Colouring> {
        if g.underlying() != self.underlying {
            return Err(Error::Parameter(
                "signed graph does not match the colorer's underlying graph".into(),
            ));
        }
        let n = g.vertex_count();
        let half = self.k / 2;
        let even = self.k % 2 == 0;
        let pos = self.ordering.positions();
        let mut counts = LayeredCounts::<Presence>::new(n);
        let mut colours = Vec::with_capacity(n);
        for y in 0..n {
            counts.run(g, y, half);
            // Ball of radius k/2 - 1, plus distance-k/2 vertices reached only
            // by positive shortest paths; for odd k the full ball.
            let mu: Vertex = counts
                .reached
                .iter()
                .copied()
                .filter(|&v| !even || counts.dist[v] < half || !counts.negative[v].0)
                .min_by_key(|&v| pos[v])
                .expect("y is in its own ball");
            colours.push(self.base[mu]);
        }
        Ok(Colouring::from_colours(colours))
    }
}

/// One-shot wrapper around [`DcolColorer`].
pub fn colour_exact_distance_via_dcol(
    g: &SignedGraph,
    k: usize,
    ordering: &VertexOrdering,
) -> Result<Colouring> {
    DcolColorer::new(&g.underlying(), ordering, k)?.colour(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colnum::dcol;
    use crate::graph::{exact_distance_graph, Variant};

    #[test]
    fn negative_p3_square_is_empty() {
        let g = Graph::path(3).all_negative();
        let ord = VertexOrdering::identity(3);
        let c = colour_exact_distance_via_dcol(&g, 2, &ord).unwrap();
        let target = exact_distance_graph(&g, 2, Variant::EveryNegative).unwrap();
        assert_eq!(target.edge_count(), 0);
        assert!(c.is_proper(&target));
    }

    #[test]
    fn negative_c5_distance_one() {
        let g = Graph::cycle(5).all_negative();
        let ord = VertexOrdering::identity(5);
        let c = colour_exact_distance_via_dcol(&g, 1, &ord).unwrap();
        assert!(c.is_proper(&g.underlying()));
        assert!(c.palette_size <= dcol(&g.underlying(), &ord, 1).unwrap());
    }

    #[test]
    fn rejects_other_underlying_graph() {
        let colorer = DcolColorer::new(&Graph::path(3), &VertexOrdering::identity(3), 2).unwrap();
        assert!(colorer.colour(&Graph::cycle(3).all_negative()).is_err());
    }
}
