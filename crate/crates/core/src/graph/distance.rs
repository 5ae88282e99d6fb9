use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{Adjacency, Graph, Sign, SignedGraph, Variant, Vertex};
use crate::error::{Error, Result};

/// Unweighted shortest-path distances from `source`; `None` marks unreachable
/// vertices.
pub fn bfs_distances<G: Adjacency>(g: &G, source: Vertex) -> Result<Vec<Option<usize>>> {
    g.check_vertex(source)?;
    let mut dist = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for w in g.neighbours(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Shortest-path counts split by sign, for one source/target pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSignCounts {
    pub source: Vertex,
    pub target: Vertex,
    pub distance: Option<usize>,
    #[serde(serialize_with = "serialize_big")]
    pub positive_count: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub negative_count: BigUint,
}

fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl PathSignCounts {
    pub fn total(&self) -> BigUint {
        &self.positive_count + &self.negative_count
    }
}

/// Counting semiring used by the layered DP. `BigUint` gives exact counts;
/// [`Presence`] only tracks whether the count is nonzero.
pub trait PathCount: Clone + Send {
    fn zero() -> Self;
    fn one() -> Self;
    fn accumulate(&mut self, other: &Self);
}

impl PathCount for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

/// Nonzero-ness of a path count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Presence(pub bool);

impl PathCount for Presence {
    fn zero() -> Self {
        Presence(false)
    }
    fn one() -> Self {
        Presence(true)
    }
    fn accumulate(&mut self, other: &Self) {
        self.0 |= other.0;
    }
}

/// Reusable buffers for a depth-bounded layered count from one source.
pub(crate) struct LayeredCounts<C> {
    pub dist: Vec<usize>,
    pub positive: Vec<C>,
    pub negative: Vec<C>,
    /// Vertices reached by the last run, in BFS order.
    pub reached: Vec<Vertex>,
}

pub(crate) const UNREACHED: usize = usize::MAX;

impl<C: PathCount> LayeredCounts<C> {
    pub fn new(n: usize) -> Self {
        LayeredCounts {
            dist: vec![UNREACHED; n],
            positive: vec![C::zero(); n],
            negative: vec![C::zero(); n],
            reached: Vec::new(),
        }
    }

    fn clear(&mut self) {
        for &v in &self.reached {
            self.dist[v] = UNREACHED;
            self.positive[v] = C::zero();
            self.negative[v] = C::zero();
        }
        self.reached.clear();
    }

    /// Runs the DP from `source` over all vertices within `max_depth`.
    ///
    /// Counts at layer `d + 1` are sums over neighbours at layer `d`; a
    /// negative connecting edge swaps the two sign classes. Every length-`d`
    /// walk to a vertex at distance `d` is a path, so these are path counts.
    pub fn run(&mut self, g: &SignedGraph, source: Vertex, max_depth: usize) {
        self.clear();
        self.dist[source] = 0;
        self.positive[source] = C::one();
        self.reached.push(source);
        let mut head = 0;
        while head < self.reached.len() {
            let u = self.reached[head];
            head += 1;
            let d = self.dist[u];
            if d == max_depth {
                continue;
            }
            for &(w, s) in g.signed_neighbours(u) {
                if self.dist[w] == UNREACHED {
                    self.dist[w] = d + 1;
                    self.reached.push(w);
                }
                if self.dist[w] == d + 1 {
                    let (p, q) = (self.positive[u].clone(), self.negative[u].clone());
                    match s {
                        Sign::Positive => {
                            self.positive[w].accumulate(&p);
                            self.negative[w].accumulate(&q);
                        }
                        Sign::Negative => {
                            self.positive[w].accumulate(&q);
                            self.negative[w].accumulate(&p);
                        }
                    }
                }
            }
        }
    }
}

/// Exact counts of positive and negative shortest paths from `source` to every
/// vertex.
pub fn shortest_path_sign_counts(g: &SignedGraph, source: Vertex) -> Result<Vec<PathSignCounts>> {
    sign_counts_within(g, source, usize::MAX)
}

/// As [`shortest_path_sign_counts`] but only explores up to `max_depth`;
/// vertices further away are reported as unreachable.
pub fn sign_counts_within(
    g: &SignedGraph,
    source: Vertex,
    max_depth: usize,
) -> Result<Vec<PathSignCounts>> {
    g.check_vertex(source)?;
    let mut lc = LayeredCounts::<BigUint>::new(g.vertex_count());
    lc.run(g, source, max_depth);
    Ok((0..g.vertex_count())
        .map(|t| PathSignCounts {
            source,
            target: t,
            distance: (lc.dist[t] != UNREACHED).then_some(lc.dist[t]),
            positive_count: lc.positive[t].clone(),
            negative_count: lc.negative[t].clone(),
        })
        .collect())
}

/// The exact-distance `-k` graph (`EveryNegative`) or the strong one
/// (`SomeNegative`) of a signed graph. `k` larger than the diameter yields the
/// empty graph.
pub fn exact_distance_graph(g: &SignedGraph, k: usize, variant: Variant) -> Result<Graph> {
    if k == 0 {
        return Err(Error::ZeroDistance);
    }
    let n = g.vertex_count();
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .into_par_iter()
        .map_init(
            || LayeredCounts::<Presence>::new(n),
            |lc, s| {
                lc.run(g, s, k);
                lc.reached
                    .iter()
                    .copied()
                    .filter(|&t| t > s && lc.dist[t] == k)
                    .filter(|&t| {
                        let neg = lc.negative[t].0;
                        match variant {
                            Variant::EveryNegative => neg && !lc.positive[t].0,
                            Variant::SomeNegative => neg,
                        }
                    })
                    .map(|t| (s, t))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect();
    Graph::from_edges(n, edges)
}

/// The `k`-th exact-distance graph of an unsigned graph.
pub fn unsigned_exact_distance_graph(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::ZeroDistance);
    }
    let n = g.vertex_count();
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|s| {
            let dist = bfs_distances(g, s).expect("source in range");
            dist.into_iter()
                .enumerate()
                .filter(move |&(t, d)| t > s && d == Some(k))
                .map(move |(t, _)| (s, t))
        })
        .collect();
    Graph::from_edges(n, edges)
}

/// `G ∪ G^[-2]_s`: the underlying graph together with its strong negative
/// exact-distance square.
pub fn strong_square_union(g: &SignedGraph) -> Graph {
    let square = exact_distance_graph(g, 2, Variant::SomeNegative).expect("k = 2");
    g.underlying().union(&square)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn dist_map(g: &Graph, s: Vertex) -> Vec<usize> {
        bfs_distances(g, s)
            .unwrap()
            .into_iter()
            .map(|d| d.unwrap())
            .collect()
    }

    #[test]
    fn bfs_on_path_and_clique() {
        assert_eq!(dist_map(&Graph::path(3), 0), vec![0, 1, 2]);
        assert_eq!(dist_map(&Graph::complete(4), 2), vec![1, 1, 0, 1]);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&g, 0).unwrap()[2], None);
        assert!(bfs_distances(&g, 3).is_err());
    }

    #[test]
    fn sign_counts_small_cases() {
        let path = SignedGraph::from_edges(3, [(0, 1, Negative), (1, 2, Negative)]).unwrap();
        let c = &shortest_path_sign_counts(&path, 0).unwrap()[2];
        assert_eq!(c.distance, Some(2));
        assert_eq!(c.positive_count, BigUint::from(1u32));
        assert!(Zero::is_zero(&c.negative_count));

        let edge = SignedGraph::from_edges(2, [(0, 1, Negative)]).unwrap();
        let c = &shortest_path_sign_counts(&edge, 0).unwrap()[1];
        assert!(Zero::is_zero(&c.positive_count));
        assert_eq!(c.negative_count, BigUint::from(1u32));

        // C4 0-1-2-3-0 with one negative edge; opposite corners 0 and 2.
        let c4 = SignedGraph::from_edges(
            4,
            [(0, 1, Negative), (1, 2, Positive), (2, 3, Positive), (3, 0, Positive)],
        )
        .unwrap();
        let c = &shortest_path_sign_counts(&c4, 0).unwrap()[2];
        assert_eq!(c.distance, Some(2));
        assert_eq!(c.positive_count, BigUint::from(1u32));
        assert_eq!(c.negative_count, BigUint::from(1u32));
    }

    #[test]
    fn zero_distance_rejected() {
        let g = SignedGraph::new(2);
        assert_eq!(exact_distance_graph(&g, 0, Variant::SomeNegative), Err(Error::ZeroDistance));
        assert_eq!(unsigned_exact_distance_graph(&Graph::new(1), 0), Err(Error::ZeroDistance));
    }

    #[test]
    fn negative_square_of_negative_path_is_empty() {
        let g = SignedGraph::from_edges(3, [(0, 1, Negative), (1, 2, Negative)]).unwrap();
        for v in [Variant::EveryNegative, Variant::SomeNegative] {
            assert_eq!(exact_distance_graph(&g, 2, v).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn unsigned_exact_distance_on_c6() {
        let c6 = Graph::cycle(6);
        let g3 = unsigned_exact_distance_graph(&c6, 3).unwrap();
        assert_eq!(g3.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 4), (2, 5)]);
        let g2 = unsigned_exact_distance_graph(&c6, 2).unwrap();
        assert_eq!(g2.edge_count(), 6);
        assert!(g2.is_clique(&[0, 2, 4]) && g2.is_clique(&[1, 3, 5]));
        assert_eq!(unsigned_exact_distance_graph(&c6, 1).unwrap(), c6);
        assert_eq!(unsigned_exact_distance_graph(&c6, 7).unwrap().edge_count(), 0);
    }

    #[test]
    fn bounded_counts_stop_at_depth() {
        let g = Graph::path(5).all_negative();
        let c = sign_counts_within(&g, 0, 2).unwrap();
        assert_eq!(c[2].distance, Some(2));
        assert_eq!(c[3].distance, None);
    }
}
