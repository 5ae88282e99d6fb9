use num_bigint::BigUint;
use serde::Serialize;

use super::{smallest_free, Colouring};
use crate::colnum::{reach_sets, VertexOrdering};
use crate::error::Result;
use crate::graph::{Adjacency, Sign, SignedGraph, Vertex};

#[derive(Debug, Clone, Serialize)]
pub struct Col2Colouring {
    /// Distinct `(α, b)` pairs numbered in order of first appearance.
    pub colouring: Colouring,
    /// Per vertex: the sign vector `α(y)` and the colour `b(y)`.
    pub labels: Vec<(Vec<Sign>, usize)>,
    pub col2: usize,
    #[serde(serialize_with = "serialize_big")]
    pub palette_bound: BigUint,
}

fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Colours the strong exact-distance `-2` graph with pairs `(α(y), b(y))`.
///
/// `a` separates strongly 2-reachable vertices, `b` separates vertices that
/// share a strongly 2-reachable vertex, and `α(y)[i]` records the sign of the
/// edge from `y` to its smaller neighbour of `a`-colour `i` (`+` if none).
pub fn colour_strong_square_via_col2(g: &SignedGraph, ord: &VertexOrdering) -> Result<Col2Colouring> {
    let n = g.vertex_count();
    let reach = reach_sets(g, ord, 2)?;
    let col2 = reach.max_size;

    let mut a = vec![usize::MAX; n];
    let mut used = vec![false; col2];
    for &y in ord.order() {
        let others = reach.sets[y].iter().filter(|&&x| x != y);
        others.clone().for_each(|&x| used[a[x]] = true);
        a[y] = smallest_free(&used);
        others.for_each(|&x| used[a[x]] = false);
    }

    let mut b = vec![usize::MAX; n];
    let mut used = vec![false; col2 * col2];
    let mut conflict: Vec<Vertex> = Vec::new();
    for &y in ord.order() {
        conflict.clear();
        for &w in &reach.sets[y] {
            conflict.extend(reach.sets[w].iter().copied().filter(|&x| x != y));
        }
        conflict.iter().for_each(|&x| used[b[x]] = true);
        b[y] = smallest_free(&used);
        conflict.iter().for_each(|&x| used[b[x]] = false);
    }

    let labels: Vec<(Vec<Sign>, usize)> = (0..n)
        .map(|y| {
            let mut alpha = vec![Sign::Positive; col2];
            for &(x, s) in g.signed_neighbours(y) {
                if ord.less(x, y) {
                    alpha[a[x]] = s;
                }
            }
            (alpha, b[y])
        })
        .collect();
    let colouring = Colouring::intern(&labels);
    let palette_bound = BigUint::from(col2 * col2) * BigUint::from(2u32).pow(col2 as u32);
    Ok(Col2Colouring {
        colouring,
        labels,
        col2,
        palette_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{exact_distance_graph, Graph, Variant};

    #[test]
    fn positive_star_leaves_are_separated() {
        let g = Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap();
        let g = g.with_uniform_sign(Sign::Positive);
        let ord = VertexOrdering::identity(5);
        let c = colour_strong_square_via_col2(&g, &ord).unwrap();
        let square = exact_distance_graph(&g, 2, Variant::SomeNegative).unwrap();
        assert!(c.colouring.is_proper(&square));
        assert!(BigUint::from(c.colouring.palette_size) <= c.palette_bound);
    }

    #[test]
    fn single_vertex() {
        let g = SignedGraph::new(1);
        let c = colour_strong_square_via_col2(&g, &VertexOrdering::identity(1)).unwrap();
        assert_eq!(c.colouring.colours_used(), 1);
        assert_eq!(c.col2, 1);
    }
}
