use serde::Serialize;

use super::reach::reach_profile;
use super::{Radius, ReachKind, VertexOrdering};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph, Vertex};

/// Default vertex cap for exhaustive minimisation.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimizeMode {
    /// Every ordering is tried; fails above the cap.
    Exhaustive,
    /// Degeneracy ordering plus any supplied candidates.
    Heuristic,
    /// Exhaustive up to the cap, heuristic beyond.
    Auto,
}

#[derive(Debug, Clone)]
pub struct MinimizeOptions {
    pub mode: MinimizeMode,
    pub cap: usize,
    /// Extra orderings tried by the heuristic, e.g. a planar reduction
    /// ordering.
    pub candidates: Vec<VertexOrdering>,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            mode: MinimizeMode::Auto,
            cap: DEFAULT_EXHAUSTIVE_CAP,
            candidates: Vec::new(),
        }
    }
}

impl MinimizeOptions {
    pub fn exhaustive() -> Self {
        MinimizeOptions {
            mode: MinimizeMode::Exhaustive,
            ..Self::default()
        }
    }

    pub fn heuristic() -> Self {
        MinimizeOptions {
            mode: MinimizeMode::Heuristic,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingResult {
    pub ordering: VertexOrdering,
    pub value: usize,
    /// `true` when every ordering was examined, so `value` is the minimum;
    /// otherwise it is only an upper bound.
    pub exact: bool,
}

/// Smallest-last ordering: repeatedly delete a vertex of minimum degree; the
/// last deleted vertex becomes the smallest. Ties go to the smallest id.
pub fn degeneracy_ordering<G: Adjacency>(g: &G) -> VertexOrdering {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> =
        vec![Default::default(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    let mut low = 0;
    for _ in 0..n {
        low = low.min(max_deg);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().unwrap();
        removed[v] = true;
        sequence.push(v);
        for w in g.neighbours(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
                low = low.min(degree[w]);
            }
        }
    }
    sequence.reverse();
    VertexOrdering::from_order(sequence).expect("every vertex removed once")
}

/// Minimises `wcol_k`, `col_k` or `dcol_k` over vertex orderings.
pub fn minimize_over_orderings(
    g: &Graph,
    kind: ReachKind,
    radius: Radius,
    options: &MinimizeOptions,
) -> Result<OrderingResult> {
    let n = g.vertex_count();
    let exhaustive = match options.mode {
        MinimizeMode::Exhaustive => {
            if n > options.cap.min(64) {
                return Err(Error::SizeCap {
                    what: "exhaustive ordering search",
                    vertex_count: n,
                    cap: options.cap.min(64),
                });
            }
            true
        }
        MinimizeMode::Heuristic => false,
        MinimizeMode::Auto => n <= options.cap.min(64),
    };
    let k = radius.resolve(n);
    if kind == ReachKind::Distance && k == 0 {
        return Err(Error::ZeroDistance);
    }
    if exhaustive {
        return Ok(exhaustive_search(g, kind, k));
    }
    let mut candidates = vec![degeneracy_ordering(g), VertexOrdering::identity(n)];
    candidates.extend(options.candidates.iter().cloned());
    let mut best: Option<OrderingResult> = None;
    for ord in candidates {
        let value = reach_profile(g, &ord, kind, Radius::Finite(k))?.max_size;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(OrderingResult {
                ordering: ord,
                value,
                exact: false,
            });
        }
    }
    Ok(best.expect("at least one candidate"))
}

fn exhaustive_search(g: &Graph, kind: ReachKind, k: usize) -> OrderingResult {
    let n = g.vertex_count();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbours(v).fold(0u64, |m, w| m | (1 << w)))
        .collect();
    let mut perm: Vec<Vertex> = (0..n).collect();
    let mut best_value = usize::MAX;
    let mut best_perm = perm.clone();
    let mut consider = |perm: &[Vertex]| {
        let value = match kind {
            ReachKind::Weak => bitmask_wcol(&adj, perm, k, best_value),
            ReachKind::Strong => bitmask_col(&adj, perm, k, best_value),
            ReachKind::Distance => {
                let ord = VertexOrdering::from_order(perm.to_vec()).expect("permutation");
                reach_profile(g, &ord, kind, Radius::Finite(k))
                    .expect("valid ordering")
                    .max_size
            }
        };
        if value < best_value {
            best_value = value;
            best_perm = perm.to_vec();
        }
    };
    // Heap's algorithm visits every permutation with one swap per step.
    consider(&perm);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    OrderingResult {
        ordering: VertexOrdering::from_order(best_perm).expect("permutation"),
        value: if n == 0 { 0 } else { best_value },
        exact: true,
    }
}

/// `wcol_k` of the ordering `perm` (smallest first) on a graph with at most
/// 64 vertices. Gives up early once the value reaches `stop`.
fn bitmask_wcol(adj: &[u64], perm: &[Vertex], k: usize, stop: usize) -> usize {
    let mut counts = [0usize; 64];
    let mut above: u64 = perm.iter().fold(0, |m, &v| m | (1 << v));
    let mut best = 0;
    for &x in perm {
        let mut reached = 1u64 << x;
        let mut frontier = reached;
        for _ in 0..k {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                next |= adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & above & !reached;
            if frontier == 0 {
                break;
            }
            reached |= frontier;
        }
        let mut r = reached;
        while r != 0 {
            let y = r.trailing_zeros() as usize;
            r &= r - 1;
            counts[y] += 1;
            best = best.max(counts[y]);
        }
        if best >= stop {
            return best;
        }
        above &= !(1 << x);
    }
    best
}

/// `col_k` of the ordering `perm` on a graph with at most 64 vertices.
fn bitmask_col(adj: &[u64], perm: &[Vertex], k: usize, stop: usize) -> usize {
    let mut below = 0u64;
    let mut above: u64 = perm.iter().fold(0, |m, &v| m | (1 << v));
    let mut best = 0;
    for &y in perm {
        above &= !(1 << y);
        let mut size = 1;
        if k > 0 {
            let mut reached = 1u64 << y;
            let mut frontier = reached;
            for _ in 1..k {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    next |= adj[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                frontier = next & above & !reached;
                if frontier == 0 {
                    break;
                }
                reached |= frontier;
            }
            let mut smaller = 0u64;
            let mut r = reached;
            while r != 0 {
                smaller |= adj[r.trailing_zeros() as usize];
                r &= r - 1;
            }
            size += (smaller & below).count_ones() as usize;
        }
        best = best.max(size);
        if best >= stop {
            return best;
        }
        below |= 1 << y;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colnum::{col, wcol};

    #[test]
    fn exhaustive_examples() {
        let k4 = Graph::complete(4);
        let r = minimize_over_orderings(&k4, ReachKind::Weak, 1.into(), &MinimizeOptions::exhaustive())
            .unwrap();
        assert_eq!((r.value, r.exact), (4, true));

        let p4 = Graph::path(4);
        let r = minimize_over_orderings(&p4, ReachKind::Weak, 2.into(), &MinimizeOptions::exhaustive())
            .unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(wcol(&p4, &r.ordering, 2).unwrap(), 3);

        let c5 = Graph::cycle(5);
        let r = minimize_over_orderings(
            &c5,
            ReachKind::Strong,
            Radius::Infinite,
            &MinimizeOptions::exhaustive(),
        )
        .unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(col(&c5, &r.ordering, Radius::Infinite).unwrap(), 3);
    }

    #[test]
    fn cap_exceeded() {
        let g = Graph::path(11);
        let err = minimize_over_orderings(&g, ReachKind::Weak, 1.into(), &MinimizeOptions::exhaustive());
        assert!(matches!(err, Err(Error::SizeCap { .. })));
        let r = minimize_over_orderings(&g, ReachKind::Weak, 1.into(), &MinimizeOptions::default())
            .unwrap();
        assert!(!r.exact);
        assert_eq!(r.value, 2);
    }

    #[test]
    fn bitmask_matches_generic() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 1)]).unwrap();
        let adj: Vec<u64> = (0..6).map(|v| g.neighbours(v).fold(0, |m, w| m | (1 << w))).collect();
        let perm = vec![4, 1, 5, 0, 3, 2];
        let ord = VertexOrdering::from_order(perm.clone()).unwrap();
        for k in 0..5 {
            assert_eq!(bitmask_wcol(&adj, &perm, k, usize::MAX), wcol(&g, &ord, k).unwrap());
            assert_eq!(bitmask_col(&adj, &perm, k, usize::MAX), col(&g, &ord, k).unwrap());
        }
    }

    #[test]
    fn degeneracy_of_tree_is_one() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let ord = degeneracy_ordering(&g);
        assert_eq!(col(&g, &ord, 1).unwrap(), 2);
    }
}
