use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};

/// Default vertex cap for [`treewidth_small`].
pub const TREEWIDTH_CAP: usize = 10;

/// Exact treewidth of a graph with at most [`TREEWIDTH_CAP`] vertices.
pub fn treewidth_small(g: &Graph) -> Result<usize> {
    treewidth_with_cap(g, TREEWIDTH_CAP)
}

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// `TW(S)` is the best width of an elimination ordering that removes `S`
/// first. Eliminating `v` after `S` creates a clique on `Q(S, v)`, the
/// vertices outside `S ∪ {v}` reachable from `v` through `S`, so
/// `TW(S) = min_{v ∈ S} max(TW(S - v), |Q(S - v, v)|)`.
pub fn treewidth_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > cap || n > 24 {
        return Err(Error::SizeCap {
            what: "exact treewidth",
            vertex_count: n,
            cap: cap.min(24),
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).fold(0u32, |m, w| m | (1 << w)))
        .collect();
    let full = (1u32 << n) - 1;
    let q_size = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = seen;
        let mut outside = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u];
            }
            next &= !seen;
            seen |= next;
            outside |= next & !s;
            frontier = next & s;
        }
        outside.count_ones()
    };
    let mut tw = vec![i32::MAX; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i32::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q_size(rest, v) as i32);
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}
