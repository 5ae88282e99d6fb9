use rayon::prelude::*;
use serde::Serialize;

use super::{Radius, ReachKind, ReachProfile, VertexOrdering};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Vertex};

const UNSEEN: usize = usize::MAX;

/// Depth-bounded BFS restricted to an allowed vertex set, reusing its buffers
/// across runs.
pub(crate) struct RestrictedBfs {
    pub dist: Vec<usize>,
    pub parent: Vec<Vertex>,
    /// Vertices reached by the last run, in BFS order.
    pub reached: Vec<Vertex>,
}

impl RestrictedBfs {
    pub fn new(n: usize) -> Self {
        RestrictedBfs {
            dist: vec![UNSEEN; n],
            parent: vec![UNSEEN; n],
            reached: Vec::new(),
        }
    }

    pub fn run<G, F>(&mut self, g: &G, source: Vertex, max_depth: usize, allowed: F)
    where
        G: Adjacency,
        F: Fn(Vertex) -> bool,
    {
        for &v in &self.reached {
            self.dist[v] = UNSEEN;
            self.parent[v] = UNSEEN;
        }
        self.reached.clear();
        self.dist[source] = 0;
        self.reached.push(source);
        let mut head = 0;
        while head < self.reached.len() {
            let u = self.reached[head];
            head += 1;
            let d = self.dist[u];
            if d == max_depth {
                continue;
            }
            for w in g.neighbours(u) {
                if self.dist[w] == UNSEEN && allowed(w) {
                    self.dist[w] = d + 1;
                    self.parent[w] = u;
                    self.reached.push(w);
                }
            }
        }
    }

    pub fn reached_at(&self, v: Vertex) -> Option<usize> {
        (self.dist[v] != UNSEEN).then_some(self.dist[v])
    }

    /// Path from the last source to `v` following BFS parents.
    pub fn path_to(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while self.dist[cur] != 0 {
            cur = self.parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// For every `y`, the pairs `(x, d)` with `x ∈ WReach_r[y]` and `d` the length
/// of a shortest witness path, smallest `x` first.
pub fn wreach_with_distances<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    r: usize,
) -> Result<Vec<Vec<(Vertex, usize)>>> {
    let n = g.vertex_count();
    ord.check_len(n)?;
    let pos = ord.positions();
    let per_source: Vec<Vec<(Vertex, usize)>> = ord
        .order()
        .par_iter()
        .map_init(
            || RestrictedBfs::new(n),
            |bfs, &x| {
                let px = pos[x];
                bfs.run(g, x, r, |w| pos[w] > px);
                bfs.reached.iter().map(|&y| (y, bfs.dist[y])).collect()
            },
        )
        .collect();
    let mut sets = vec![Vec::new(); n];
    for (rank, reached) in per_source.into_iter().enumerate() {
        let x = ord.vertex_at(rank);
        for (y, d) in reached {
            sets[y].push((x, d));
        }
    }
    Ok(sets)
}

/// Weak reachability: `x ∈ WReach_k[y]` iff some `xy`-path of length at most
/// `k` has `x` as its minimum.
pub fn wreach_sets<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    radius: impl Into<Radius>,
) -> Result<ReachProfile> {
    let k = radius.into().resolve(g.vertex_count());
    let sets = wreach_with_distances(g, ord, k)?
        .into_iter()
        .map(|s| s.into_iter().map(|(x, _)| x).collect())
        .collect();
    Ok(ReachProfile::new(ReachKind::Weak, k, sets))
}

/// Strong reachability: as weak, with every path vertex other than `x` at or
/// above `y`.
pub fn reach_sets<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    radius: impl Into<Radius>,
) -> Result<ReachProfile> {
    let n = g.vertex_count();
    ord.check_len(n)?;
    let k = radius.into().resolve(n);
    let pos = ord.positions();
    let sets: Vec<Vec<Vertex>> = (0..n)
        .into_par_iter()
        .map_init(
            || (RestrictedBfs::new(n), vec![false; n]),
            |(bfs, mark), y| {
                let py = pos[y];
                let mut found = Vec::new();
                if k > 0 {
                    bfs.run(g, y, k - 1, |w| pos[w] > py);
                    for &u in &bfs.reached {
                        for x in g.neighbours(u) {
                            if pos[x] < py && !mark[x] {
                                mark[x] = true;
                                found.push(x);
                            }
                        }
                    }
                    for &x in &found {
                        mark[x] = false;
                    }
                }
                found.sort_by_key(|&x| pos[x]);
                found.push(y);
                found
            },
        )
        .collect();
    Ok(ReachProfile::new(ReachKind::Strong, k, sets))
}

/// Counters reported by the budgeted distance-reach computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DreachStats {
    /// Vertices whose path enumeration exceeded the work budget and were
    /// recomputed by the layered search.
    pub budget_overruns: usize,
    pub enumeration_steps: u64,
}

/// Enumerates simple paths ending at `y` backwards, `y = p_0, p_1, …, p_t`,
/// and collects the endpoints `x = p_t` that satisfy the distance-reach
/// conditions. Returns `None` if more than `budget` extension steps are needed.
fn dreach_enumerate_one<G: Adjacency>(
    g: &G,
    pos: &[usize],
    k: usize,
    y: Vertex,
    budget: u64,
    on_path: &mut [bool],
    steps: &mut u64,
) -> Option<Vec<Vertex>> {
    let half = k / 2;
    let py = pos[y];
    let mut found = vec![y];
    // prefix_min[t] = smallest position among p_0..p_t
    let mut path = vec![y];
    let mut prefix_min = vec![py];
    let mut iters: Vec<Vec<Vertex>> = vec![g.neighbours(y).collect()];
    on_path[y] = true;
    let mut result_mark = std::collections::HashSet::from([y]);

    while let Some(frontier) = iters.last_mut() {
        let Some(next) = frontier.pop() else {
            iters.pop();
            let last = path.pop().unwrap();
            prefix_min.pop();
            on_path[last] = false;
            continue;
        };
        if on_path[next] {
            continue;
        }
        *steps += 1;
        if *steps > budget {
            for &v in &path {
                on_path[v] = false;
            }
            return None;
        }
        let t = path.len();
        // p_{t-h-1} for the new length t must lie at or above y.
        if t >= half + 2 && pos[path[t - half - 1]] < py {
            continue;
        }
        let min_before = *prefix_min.last().unwrap();
        if pos[next] < min_before && result_mark.insert(next) {
            found.push(next);
        }
        if t < k {
            path.push(next);
            prefix_min.push(min_before.min(pos[next]));
            on_path[next] = true;
            iters.push(g.neighbours(next).collect());
        }
    }
    found.sort_by_key(|&x| pos[x]);
    Some(found)
}

/// `DReach_k` by exhaustive simple-path enumeration.
pub fn dreach_sets<G: Adjacency>(g: &G, ord: &VertexOrdering, k: usize) -> Result<ReachProfile> {
    let (profile, _) = dreach_sets_budgeted(g, ord, k, u64::MAX)?;
    Ok(profile)
}

/// `DReach_k` by path enumeration with a per-vertex work budget; vertices
/// that overrun it are recomputed by [`dreach_sets_layered`]'s search.
pub fn dreach_sets_budgeted<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    k: usize,
    budget: u64,
) -> Result<(ReachProfile, DreachStats)> {
    if k == 0 {
        return Err(Error::ZeroDistance);
    }
    let n = g.vertex_count();
    ord.check_len(n)?;
    let pos = ord.positions();
    let attempts: Vec<(Option<Vec<Vertex>>, u64)> = (0..n)
        .into_par_iter()
        .map_init(
            || vec![false; n],
            |on_path, y| {
                let mut steps = 0;
                let r = dreach_enumerate_one(g, pos, k, y, budget, on_path, &mut steps);
                (r, steps)
            },
        )
        .collect();
    let mut stats = DreachStats::default();
    stats.enumeration_steps = attempts.iter().map(|a| a.1).sum();
    let pending: Vec<Vertex> = (0..n).filter(|&y| attempts[y].0.is_none()).collect();
    stats.budget_overruns = pending.len();
    let mut sets: Vec<Vec<Vertex>> = attempts.into_iter().map(|a| a.0.unwrap_or_default()).collect();
    if !pending.is_empty() {
        let heads = wreach_with_distances(g, ord, k / 2)?;
        let redone: Vec<(Vertex, Vec<Vertex>)> = pending
            .par_iter()
            .map_init(
                || (RestrictedBfs::new(n), vec![false; n]),
                |(bfs, mark), &y| (y, dreach_layered_one(g, pos, k, y, &heads, bfs, mark)),
            )
            .collect();
        for (y, s) in redone {
            sets[y] = s;
        }
    }
    Ok((ReachProfile::new(ReachKind::Distance, k, sets), stats))
}

/// One vertex of the layered search.
///
/// A valid walk `x = w_0 … w_s = y` splits at position `h = ⌊k/2⌋`: the head
/// `w_0 … w_h` only needs to stay above `x`, the tail `w_{h+1} … w_s` must
/// stay at or above `y`. So `x` qualifies iff `x ∈ WReach_h[y]`, or some tail
/// vertex `t` at distance `D` from `y` inside `G[≥ y]` has a neighbour `w`
/// with `x ∈ WReach_r[w]`, `r = min(h, k - 1 - D)`, and `x ≤ y`. Walks can be
/// shortcut to paths without breaking either condition.
fn dreach_layered_one<G: Adjacency>(
    g: &G,
    pos: &[usize],
    k: usize,
    y: Vertex,
    heads: &[Vec<(Vertex, usize)>],
    bfs: &mut RestrictedBfs,
    mark: &mut [bool],
) -> Vec<Vertex> {
    let half = k / 2;
    let py = pos[y];
    let mut found = Vec::new();
    let add = |x: Vertex, found: &mut Vec<Vertex>, mark: &mut [bool]| {
        if !mark[x] {
            mark[x] = true;
            found.push(x);
        }
    };
    for &(x, _) in &heads[y] {
        add(x, &mut found, mark);
    }
    bfs.run(g, y, k - 1, |w| pos[w] >= py);
    for &t in &bfs.reached {
        let budget = (k - 1 - bfs.dist[t]).min(half);
        for w in g.neighbours(t) {
            for &(x, d) in &heads[w] {
                if d <= budget && pos[x] <= py {
                    add(x, &mut found, mark);
                }
            }
        }
    }
    for &x in &found {
        mark[x] = false;
    }
    found.sort_by_key(|&x| pos[x]);
    found
}

/// `DReach_k` by the layered search over head/tail decompositions. Exact, and
/// insensitive to high-degree vertices that make enumeration explode.
pub fn dreach_sets_layered<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    k: usize,
) -> Result<ReachProfile> {
    if k == 0 {
        return Err(Error::ZeroDistance);
    }
    let n = g.vertex_count();
    ord.check_len(n)?;
    let pos = ord.positions();
    let heads = wreach_with_distances(g, ord, k / 2)?;
    let sets = (0..n)
        .into_par_iter()
        .map_init(
            || (RestrictedBfs::new(n), vec![false; n]),
            |(bfs, mark), y| dreach_layered_one(g, pos, k, y, &heads, bfs, mark),
        )
        .collect();
    Ok(ReachProfile::new(ReachKind::Distance, k, sets))
}

/// Checks that `path` (listed from `x` to `y`) witnesses `x ∈ DReach_k[y]`.
pub fn is_dreach_witness<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    k: usize,
    path: &[Vertex],
) -> bool {
    let Some((&x, _)) = path.split_first() else {
        return false;
    };
    let y = *path.last().unwrap();
    let s = path.len() - 1;
    if s > k {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !path.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    if !path.windows(2).all(|e| g.neighbours(e[0]).any(|w| w == e[1])) {
        return false;
    }
    if path[1..].iter().any(|&z| !ord.less(x, z)) {
        return false;
    }
    path.iter()
        .enumerate()
        .skip(k / 2 + 1)
        .all(|(_, &z)| z == y || ord.less(y, z))
}

/// A path from `x` to `y` witnessing `x ∈ DReach_k[y]`, if one exists.
pub fn dreach_witness<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    k: usize,
    x: Vertex,
    y: Vertex,
) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    if k == 0 || x >= n || y >= n || ord.less(y, x) {
        return None;
    }
    if x == y {
        return Some(vec![x]);
    }
    let pos = ord.positions();
    let half = k / 2;
    let (px, py) = (pos[x], pos[y]);
    let mut head = RestrictedBfs::new(n);
    head.run(g, x, half, |w| pos[w] > px);
    let mut walk = None;
    if head.reached_at(y).is_some() {
        walk = Some(head.path_to(y));
    } else {
        let mut tail = RestrictedBfs::new(n);
        tail.run(g, y, k - 1, |w| pos[w] >= py);
        'outer: for &t in &tail.reached {
            let budget = (k - 1 - tail.dist[t]).min(half);
            for w in g.neighbours(t) {
                if head.reached_at(w).is_some_and(|d| d <= budget) {
                    let mut wk = head.path_to(w);
                    let mut back = tail.path_to(t);
                    back.reverse();
                    wk.extend(back);
                    walk = Some(wk);
                    break 'outer;
                }
            }
        }
    }
    let path = shortcut(walk?);
    debug_assert!(is_dreach_witness(g, ord, k, &path));
    Some(path)
}

/// Removes closed subwalks so that every vertex appears once. The surviving
/// vertices keep their order and never move to a later position.
fn shortcut(walk: Vec<Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
    for v in walk {
        if let Some(i) = out.iter().position(|&u| u == v) {
            out.truncate(i + 1);
        } else {
            out.push(v);
        }
    }
    out
}

pub fn reach_profile<G: Adjacency>(
    g: &G,
    ord: &VertexOrdering,
    kind: ReachKind,
    radius: Radius,
) -> Result<ReachProfile> {
    match kind {
        ReachKind::Weak => wreach_sets(g, ord, radius),
        ReachKind::Strong => reach_sets(g, ord, radius),
        ReachKind::Distance => {
            let k = radius.resolve(g.vertex_count());
            if g.vertex_count() <= 64 {
                dreach_sets(g, ord, k)
            } else {
                dreach_sets_layered(g, ord, k)
            }
        }
    }
}

/// `wcol_k(G, L)`.
pub fn wcol<G: Adjacency>(g: &G, ord: &VertexOrdering, k: impl Into<Radius>) -> Result<usize> {
    Ok(wreach_sets(g, ord, k)?.max_size)
}

/// `col_k(G, L)`.
pub fn col<G: Adjacency>(g: &G, ord: &VertexOrdering, k: impl Into<Radius>) -> Result<usize> {
    Ok(reach_sets(g, ord, k)?.max_size)
}

/// `dcol_k(G, L)`, via the layered search.
pub fn dcol<G: Adjacency>(g: &G, ord: &VertexOrdering, k: usize) -> Result<usize> {
    Ok(dreach_sets_layered(g, ord, k)?.max_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn id(n: usize) -> VertexOrdering {
        VertexOrdering::identity(n)
    }

    #[test]
    fn path_left_to_right() {
        let p = Graph::path(6);
        assert_eq!(wcol(&p, &id(6), 2).unwrap(), 3);
        assert_eq!(col(&p, &id(6), 2).unwrap(), 2);
        let w = wreach_sets(&p, &id(6), 2).unwrap();
        assert_eq!(w.sets[4], vec![2, 3, 4]);
    }

    #[test]
    fn clique_reaches_everything() {
        let k5 = Graph::complete(5);
        let o = VertexOrdering::from_order(vec![3, 1, 4, 0, 2]).unwrap();
        assert_eq!(wcol(&k5, &o, 1).unwrap(), 5);
        assert_eq!(col(&k5, &o, 1).unwrap(), 5);
        assert_eq!(dreach_sets(&k5, &o, 1).unwrap().max_size, 5);
    }

    #[test]
    fn single_edge_distance_reach() {
        let g = Graph::path(2);
        let d = dreach_sets(&g, &id(2), 4).unwrap();
        assert_eq!(d.sets[1], vec![0, 1]);
        assert_eq!(d.sets[0], vec![0]);
    }

    #[test]
    fn dreach_rejects_zero() {
        assert_eq!(dreach_sets(&Graph::path(2), &id(2), 0), Err(Error::ZeroDistance));
    }

    #[test]
    fn enumeration_matches_layered_on_c5() {
        let c5 = Graph::cycle(5);
        for k in 1..=6 {
            let a = dreach_sets(&c5, &id(5), k).unwrap();
            let b = dreach_sets_layered(&c5, &id(5), k).unwrap();
            assert_eq!(a.sets, b.sets, "k = {k}");
        }
    }

    #[test]
    fn tiny_budget_falls_back() {
        let g = Graph::complete(6);
        let (p, stats) = dreach_sets_budgeted(&g, &id(6), 4, 3).unwrap();
        assert!(stats.budget_overruns > 0);
        assert_eq!(p.sets, dreach_sets(&g, &id(6), 4).unwrap().sets);
    }

    #[test]
    fn witnesses_are_valid() {
        let g = Graph::cycle(7);
        let o = VertexOrdering::from_order(vec![3, 0, 5, 1, 6, 2, 4]).unwrap();
        let d = dreach_sets(&g, &o, 4).unwrap();
        for y in 0..7 {
            for &x in &d.sets[y] {
                let w = dreach_witness(&g, &o, 4, x, y).expect("witness");
                assert!(is_dreach_witness(&g, &o, 4, &w));
                assert_eq!((w[0], *w.last().unwrap()), (x, y));
            }
        }
    }

    #[test]
    fn shortcut_removes_cycles() {
        assert_eq!(shortcut(vec![1, 2, 3, 2, 4]), vec![1, 2, 4]);
        assert_eq!(shortcut(vec![1, 2, 1, 5]), vec![1, 5]);
    }
}
