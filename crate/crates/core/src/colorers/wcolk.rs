use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::{smallest_free, Colouring};
use crate::colnum::{wreach_sets, VertexOrdering};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Sign, SignedGraph, Vertex};

/// The vector colour `(α, β, γ)`; `None` is the padding symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VectorColour {
    /// Greedy colours of the weakly reached vertices, smallest first.
    pub alpha: Vec<Option<usize>>,
    /// Lengths of their shortest witness paths.
    pub beta: Vec<Option<usize>>,
    /// Signs (`1` / `-1`) of the chosen witnesses.
    pub gamma: Vec<Option<i8>>,
}

impl fmt::Display for VectorColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(v: &[Option<T>]) -> String {
            v.iter()
                .map(|e| e.as_ref().map_or("*".to_string(), |x| x.to_string()))
                .collect::<Vec<_>>()
                .join(",")
        }
        write!(
            f,
            "[{}];[{}];[{}]",
            join(&self.alpha),
            join(&self.beta),
            join(&self.gamma)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VectorColouring {
    pub vectors: Vec<VectorColour>,
    /// Distinct vectors numbered in order of first appearance.
    pub colouring: Colouring,
    pub wcol_k: usize,
    pub wcol_half: usize,
    #[serde(serialize_with = "serialize_big")]
    pub palette_bound: BigUint,
}

fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `((wcol_k + 1)(⌊k/2⌋ + 2) 3)^{wcol_⌊k/2⌋}`.
fn palette_bound(wcol_k: usize, half: usize, wcol_half: usize) -> BigUint {
    let base = BigUint::from((wcol_k + 1) * (half + 2) * 3);
    base.pow(wcol_half as u32)
}

/// For every `v`, the triples `(x, d, sign)` over `x ∈ WReach_r[v]` in
/// increasing order: `d` is the distance from `x` to `v` inside `G[≥ x]` and
/// `sign` that of the lexicographically smallest such shortest path read
/// from `v`.
fn witnesses(
    g: &SignedGraph,
    ord: &VertexOrdering,
    r: usize,
) -> Vec<Vec<(Vertex, usize, Sign)>> {
    let n = g.vertex_count();
    let pos = ord.positions();
    let per_source: Vec<Vec<(Vertex, usize, Sign)>> = ord
        .order()
        .par_iter()
        .map_init(
            || vec![usize::MAX; n],
            |dist, &x| {
                let px = pos[x];
                let mut reached = vec![x];
                dist[x] = 0;
                let mut head = 0;
                while head < reached.len() {
                    let u = reached[head];
                    head += 1;
                    if dist[u] == r {
                        continue;
                    }
                    for w in g.neighbours(u) {
                        if pos[w] > px && dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            reached.push(w);
                        }
                    }
                }
                // Vertices are in BFS order, so the next vertex towards x is
                // always processed before y.
                let mut sign_of = std::collections::HashMap::with_capacity(reached.len());
                sign_of.insert(x, Sign::Positive);
                for &y in &reached[1..] {
                    let (next, s) = g
                        .signed_neighbours(y)
                        .iter()
                        .copied()
                        .filter(|&(w, _)| dist[w] != usize::MAX && dist[w] + 1 == dist[y])
                        .min_by_key(|&(w, _)| w)
                        .expect("BFS parent exists");
                    let sy = s.compose(sign_of[&next]);
                    sign_of.insert(y, sy);
                }
                let out = reached
                    .iter()
                    .map(|&y| (y, dist[y], sign_of[&y]))
                    .collect();
                for &y in &reached {
                    dist[y] = usize::MAX;
                }
                out
            },
        )
        .collect();
    let mut sets = vec![Vec::new(); n];
    for reached in per_source.into_iter() {
        // The source is the first vertex its BFS reaches.
        let x = reached[0].0;
        for (y, d, s) in reached {
            sets[y].push((x, d, s));
        }
    }
    sets
}

/// Colours the exact-distance `-k` graph with vectors built from weak
/// reachability at radius `k` and `⌊k/2⌋`.
pub fn colour_exact_distance_via_wcolk(
    g: &SignedGraph,
    k: usize,
    ord: &VertexOrdering,
) -> Result<VectorColouring> {
    if k == 0 {
        return Err(Error::ZeroDistance);
    }
    let n = g.vertex_count();
    ord.check_len(n)?;
    let half = k / 2;
    let reach_k = wreach_sets(g, ord, k)?;
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; reach_k.max_size];
    for &y in ord.order() {
        let others = reach_k.sets[y].iter().filter(|&&x| x != y);
        others.clone().for_each(|&x| used[f[x]] = true);
        f[y] = smallest_free(&used);
        others.for_each(|&x| used[f[x]] = false);
    }
    let heads = witnesses(g, ord, half);
    let q = heads.iter().map(Vec::len).max().unwrap_or(0);
    let vectors: Vec<VectorColour> = heads
        .iter()
        .map(|list| {
            let mut c = VectorColour {
                alpha: vec![None; q],
                beta: vec![None; q],
                gamma: vec![None; q],
            };
            for (i, &(x, d, s)) in list.iter().enumerate() {
                c.alpha[i] = Some(f[x]);
                c.beta[i] = Some(d);
                c.gamma[i] = Some(if s.is_negative() { -1 } else { 1 });
            }
            c
        })
        .collect();
    let colouring = Colouring::intern(&vectors);
    Ok(VectorColouring {
        vectors,
        colouring,
        wcol_k: reach_k.max_size,
        wcol_half: q,
        palette_bound: palette_bound(reach_k.max_size, half, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colnum::wcol;
    use crate::graph::{exact_distance_graph, Graph, Variant};

    #[test]
    fn single_negative_edge() {
        let g = Graph::path(2).all_negative();
        let c = colour_exact_distance_via_wcolk(&g, 1, &VertexOrdering::identity(2)).unwrap();
        assert_ne!(c.vectors[0], c.vectors[1]);
        assert_eq!(c.colouring.colours_used(), 2);
        assert_eq!(c.wcol_half, 1);
    }

    #[test]
    fn witness_signs_follow_smallest_path() {
        // 0 is the minimum; 3 reaches it via 1 (negative) or 2 (positive).
        let g = SignedGraph::from_edges(
            4,
            [
                (0, 1, Sign::Negative),
                (0, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 3, Sign::Positive),
            ],
        )
        .unwrap();
        let w = witnesses(&g, &VertexOrdering::identity(4), 2);
        assert_eq!(w[3][0], (0, 2, Sign::Negative));
        assert_eq!(w[3].len(), 4);
        assert_eq!(w[0], vec![(0, 0, Sign::Positive)]);
    }

    #[test]
    fn proper_on_negative_cycle_square() {
        let g = Graph::cycle(8).with_uniform_sign(Sign::Negative);
        let g = g.resign(|u, v| if (u, v) == (0, 1) { Sign::Positive } else { Sign::Negative });
        let ord = VertexOrdering::identity(8);
        let c = colour_exact_distance_via_wcolk(&g, 2, &ord).unwrap();
        let target = exact_distance_graph(&g, 2, Variant::EveryNegative).unwrap();
        assert!(c.colouring.is_proper(&target));
        assert_eq!(c.wcol_k, wcol(&g, &ord, 2).unwrap());
        assert!(BigUint::from(c.colouring.palette_size) <= c.palette_bound);
    }
}
