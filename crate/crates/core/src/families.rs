//! Seeded and deterministic generators for the instance families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colnum::VertexOrdering;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph, Sign, SignedGraph, Vertex};
use crate::planar::{k4, Triangulation};

/// Largest depth accepted by the full Apollonian generator.
pub const APOLLONIAN_MAX_DEPTH: usize = 8;
/// Largest clique size for [`gen_clique_indep`].
pub const CLIQUE_INDEP_MAX_T: usize = 12;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Appends a path of `len` edges from `from` to `to` through fresh vertices;
/// the first edge is negative when `negative` holds, all others positive.
fn add_path(g: &mut Vec<(Vertex, Vertex, Sign)>, next: &mut Vertex, from: Vertex, to: Vertex, len: usize, negative: bool) {
    let mut prev = from;
    for step in 0..len {
        let cur = if step + 1 == len {
            to
        } else {
            *next += 1;
            *next - 1
        };
        let sign = if step == 0 && negative { Sign::Negative } else { Sign::Positive };
        g.push((prev, cur, sign));
        prev = cur;
    }
}

/// `K_n` with every edge replaced by a path of length `k` whose first edge is
/// negative. Branch vertices are `0..n`; the subdivision vertices of the
/// `e`-th edge `(i, j)`, `i < j` in lexicographic order, follow in path order.
pub fn gen_snk(n: usize, k: usize) -> Result<SignedGraph> {
    if n < 2 || k < 2 {
        return Err(Error::Parameter(format!("S_(n,k) needs n >= 2 and k >= 2, got n = {n}, k = {k}")));
    }
    let total = n + n * (n - 1) / 2 * (k - 1);
    let mut edges = Vec::new();
    let mut next = n;
    for i in 0..n {
        for j in i + 1..n {
            add_path(&mut edges, &mut next, i, j, k, true);
        }
    }
    SignedGraph::from_edges(total, edges)
}

/// Ordering shipped with [`gen_snk`]: branch vertices first, then
/// subdivision vertices by edge and position. This is the identity.
pub fn snk_ordering(n: usize, k: usize) -> Result<VertexOrdering> {
    Ok(VertexOrdering::identity(gen_snk(n, k)?.vertex_count()))
}

/// The star `K_(1,ℓ)` (centre `0`, leaves `1..=ℓ`) with every edge replaced
/// by an all-positive path and a single-negative-edge path, both of length
/// `k / 2`.
pub fn gen_star_gadget(leaves: usize, k: usize) -> Result<SignedGraph> {
    if leaves < 2 || k < 4 || k % 2 == 1 {
        return Err(Error::Parameter(format!(
            "star gadget needs at least 2 leaves and even k >= 4, got {leaves} leaves, k = {k}"
        )));
    }
    let half = k / 2;
    let total = 1 + leaves + 2 * leaves * (half - 1);
    let mut edges = Vec::new();
    let mut next = leaves + 1;
    for leaf in 1..=leaves {
        add_path(&mut edges, &mut next, 0, leaf, half, false);
        add_path(&mut edges, &mut next, 0, leaf, half, true);
    }
    SignedGraph::from_edges(total, edges)
}

/// Two negative paths of length two, `0 1 2` and `3 4 5`, each with
/// negative first edge, and a vertex `6` joined positively to the first path
/// and negatively to the second.
pub fn gen_k7_gadget() -> SignedGraph {
    use Sign::{Negative as N, Positive as P};
    SignedGraph::from_edges(
        7,
        [
            (0, 1, N),
            (1, 2, P),
            (3, 4, N),
            (4, 5, P),
            (6, 0, P),
            (6, 1, P),
            (6, 2, P),
            (6, 3, N),
            (6, 4, N),
            (6, 5, N),
        ],
    )
    .expect("fixed gadget")
}

/// A positive clique on `0..t` and an independent set `t..t + 2^t`; the
/// independent vertex `t + p` sees clique vertex `j` negatively exactly when
/// bit `j` of `p` is set.
pub fn gen_clique_indep(t: usize) -> Result<SignedGraph> {
    if t == 0 || t > CLIQUE_INDEP_MAX_T {
        return Err(Error::Parameter(format!("clique size must lie in 1..={CLIQUE_INDEP_MAX_T}, got {t}")));
    }
    let mut edges = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            edges.push((i, j, Sign::Positive));
        }
    }
    for p in 0..1usize << t {
        for j in 0..t {
            let s = if p >> j & 1 == 1 { Sign::Negative } else { Sign::Positive };
            edges.push((t + p, j, s));
        }
    }
    SignedGraph::from_edges(t + (1 << t), edges)
}

/// Random 2-tree: start from the edge `0 1`, then join each new vertex to
/// both ends of a uniformly chosen existing edge. Signs are uniform.
pub fn gen_signed_2tree(n: usize, seed: u64) -> Result<SignedGraph> {
    if n < 2 {
        return Err(Error::Parameter(format!("a 2-tree needs at least 2 vertices, got {n}")));
    }
    let mut rng = rng(seed);
    let mut skeleton = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = skeleton[rng.gen_range(0..skeleton.len())];
        skeleton.push((a, v));
        skeleton.push((b, v));
    }
    let edges: Vec<_> = skeleton.into_iter().map(|(u, v)| (u, v, random_sign(&mut rng))).collect();
    SignedGraph::from_edges(n, edges)
}

/// How faces are chosen for vertex insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApollonianMode {
    /// Subdivide every face created in the previous round, `depth` rounds.
    Full { depth: usize },
    /// Insert into a uniformly random inner face until there are
    /// `vertices` vertices.
    Seeded { vertices: usize, seed: u64 },
}

/// Iterated face subdivision of `K_4`, keeping the outer face `0 1 2`.
pub fn gen_apollonian(mode: ApollonianMode) -> Result<Triangulation> {
    let mut t = k4();
    match mode {
        ApollonianMode::Full { depth } => {
            if depth > APOLLONIAN_MAX_DEPTH {
                return Err(Error::Parameter(format!(
                    "full Apollonian depth is capped at {APOLLONIAN_MAX_DEPTH}, got {depth}"
                )));
            }
            let mut frontier = t.inner_faces();
            for _ in 0..depth {
                let mut next = Vec::with_capacity(frontier.len() * 3);
                for f in frontier {
                    next.extend(subdivide(&mut t, f));
                }
                frontier = next;
            }
        }
        ApollonianMode::Seeded { vertices, seed } => {
            if vertices < 4 {
                return Err(Error::Parameter(format!("a seeded Apollonian network has at least 4 vertices, got {vertices}")));
            }
            let mut rng = rng(seed);
            let mut faces = t.inner_faces();
            while t.vertex_count() < vertices {
                let i = rng.gen_range(0..faces.len());
                let f = faces.swap_remove(i);
                faces.extend(subdivide(&mut t, f));
            }
        }
    }
    Ok(t.revalidate()?)
}

fn subdivide(t: &mut Triangulation, face: [Vertex; 3]) -> [[Vertex; 3]; 3] {
    let [a, b, c] = face;
    let x = t.insert_unchecked(face);
    [[a, b, x], [b, c, x], [c, a, x]]
}

/// Vertex count of the full Apollonian network: `4 + 3 + 9 + ... + 3^depth`.
pub fn apollonian_full_vertex_count(depth: usize) -> usize {
    4 + (1..=depth).map(|d| 3usize.pow(d as u32)).sum::<usize>()
}

/// Erdős–Rényi graph with independent uniform signs.
pub fn gen_random_signed(n: usize, p: f64, seed: u64) -> Result<SignedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, random_sign(&mut rng)));
            }
        }
    }
    SignedGraph::from_edges(n, edges)
}

/// A generator together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Snk { n: usize, k: usize },
    StarGadget { leaves: usize, k: usize },
    K7Gadget,
    CliqueIndep { t: usize },
    Signed2Tree { n: usize, seed: u64 },
    Apollonian { mode: ApollonianMode },
    RandomSigned { n: usize, p: f64, seed: u64 },
}

/// Output of a generator: most families are signed graphs, Apollonian
/// networks come with their embedding.
#[derive(Debug, Clone)]
pub enum Generated {
    Signed(SignedGraph),
    Triangulation(Triangulation),
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Generated> {
        Ok(match *self {
            FamilySpec::Snk { n, k } => Generated::Signed(gen_snk(n, k)?),
            FamilySpec::StarGadget { leaves, k } => Generated::Signed(gen_star_gadget(leaves, k)?),
            FamilySpec::K7Gadget => Generated::Signed(gen_k7_gadget()),
            FamilySpec::CliqueIndep { t } => Generated::Signed(gen_clique_indep(t)?),
            FamilySpec::Signed2Tree { n, seed } => Generated::Signed(gen_signed_2tree(n, seed)?),
            FamilySpec::Apollonian { mode } => Generated::Triangulation(gen_apollonian(mode)?),
            FamilySpec::RandomSigned { n, p, seed } => Generated::Signed(gen_random_signed(n, p, seed)?),
        })
    }
}

/// Canonical form of a graph on at most 11 vertices: the smallest
/// upper-triangle bit string over relabellings that respect a refined
/// degree partition.
fn canonical_form(n: usize, adj: &[u16]) -> u64 {
    let deg = |v: usize| adj[v].count_ones();
    let label = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(deg).collect();
        nd.sort_unstable();
        (deg(v), nd)
    };
    let labels: Vec<_> = (0..n).map(label).collect();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &verts {
        match cells.last_mut() {
            Some(c) if labels[c[0]] == labels[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }

    fn code(n: usize, adj: &[u16], order: &[usize]) -> u64 {
        let mut bits = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                bits = bits << 1 | u64::from(adj[order[i]] >> order[j] & 1);
            }
        }
        bits
    }

    fn search(cells: &mut [Vec<usize>], ci: usize, order: &mut Vec<usize>, n: usize, adj: &[u16], best: &mut u64) {
        if ci == cells.len() {
            *best = (*best).min(code(n, adj, order));
            return;
        }
        permute(cells, ci, 0, order, n, adj, best);
    }

    fn permute(cells: &mut [Vec<usize>], ci: usize, i: usize, order: &mut Vec<usize>, n: usize, adj: &[u16], best: &mut u64) {
        let len = cells[ci].len();
        if i == len {
            let base = order.len();
            order.extend(cells[ci].iter().copied());
            search(cells, ci + 1, order, n, adj, best);
            order.truncate(base);
            return;
        }
        for j in i..len {
            cells[ci].swap(i, j);
            permute(cells, ci, i + 1, order, n, adj, best);
            cells[ci].swap(i, j);
        }
    }

    let mut best = u64::MAX;
    search(&mut cells, 0, &mut Vec::with_capacity(n), n, adj, &mut best);
    best
}

/// Every connected graph on `n` vertices up to isomorphism (`n <= 8`).
///
/// Built by adding a vertex with every nonempty neighbourhood to each graph
/// on `n - 1` vertices: removing a leaf of a spanning tree keeps a connected
/// graph connected, so nothing is missed.
pub fn small_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::SizeCap {
            what: "connected graph enumeration",
            vertex_count: n,
            cap: 8,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<Vec<u16>> = vec![vec![0]];
    for m in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for s in 1u16..1 << (m - 1) {
                let mut new = adj.clone();
                for (v, row) in new.iter_mut().enumerate() {
                    if s >> v & 1 == 1 {
                        *row |= 1 << (m - 1);
                    }
                }
                new.push(s);
                if seen.insert(canonical_form(m, &new)) {
                    next.push(new);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let edges = (0..n).flat_map(|u| {
                let row = adj[u];
                (u + 1..n).filter(move |&v| row >> v & 1 == 1).map(move |v| (u, v))
            });
            Graph::from_edges(n, edges.collect::<Vec<_>>())
        })
        .collect()
}

/// Connected with every block a single edge or a cycle. Cacti are
/// outerplanar.
pub fn is_cactus<G: Adjacency>(g: &G) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    // Iterative DFS: a cactus has every edge on at most one cycle, which is
    // equivalent to no tree edge being covered by two back edges.
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut covered = vec![false; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    let neighbours: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbours(v).collect()).collect();
    let mut back_edges = Vec::new();
    while let Some((v, i)) = stack.pop() {
        if i < neighbours[v].len() {
            stack.push((v, i + 1));
            let w = neighbours[v][i];
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                back_edges.push((v, w));
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return false;
    }
    for (v, w) in back_edges {
        // Mark the tree edges from v up to w, each identified by its child.
        let mut cur = v;
        while cur != w {
            if covered[cur] {
                return false;
            }
            covered[cur] = true;
            cur = parent[cur];
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colnum::treewidth_small;
    use crate::graph::{bfs_distances, exact_distance_graph, strong_square_union, Variant};

    #[test]
    fn snk_counts_and_distances() {
        let g = gen_snk(3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.negative_edge_count()), (6, 6, 3));
        let g = gen_snk(4, 3).unwrap();
        for i in 0..4 {
            let d = bfs_distances(&g, i).unwrap();
            assert!((0..4).filter(|&j| j != i).all(|j| d[j] == Some(3)));
        }
        let e = exact_distance_graph(&g, 3, Variant::EveryNegative).unwrap();
        for i in 0..4 {
            assert!((i + 1..4).all(|j| e.has_edge(i, j)));
        }
        assert_eq!(gen_snk(5, 3).unwrap().vertex_count(), 25);
        assert!(gen_snk(1, 2).is_err());
    }

    #[test]
    fn star_gadget_shape() {
        let g = gen_star_gadget(4, 4).unwrap();
        assert_eq!(g.vertex_count(), 1 + 4 + 8);
        assert!(is_cactus(&g));
        assert!(gen_star_gadget(3, 5).is_err());
        let s = exact_distance_graph(&g, 4, Variant::SomeNegative).unwrap();
        assert!(s.is_clique(&[1, 2, 3, 4]));
    }

    #[test]
    fn k7_gadget_square_is_complete() {
        let g = gen_k7_gadget();
        let u = strong_square_union(&g);
        assert_eq!(u.edge_count(), 21);
        assert!(treewidth_small(&g.underlying()).unwrap() <= 2);
    }

    #[test]
    fn clique_indep_patterns() {
        let g = gen_clique_indep(1).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_ne!(g.sign(1, 0), g.sign(2, 0));
        let g = gen_clique_indep(2).unwrap();
        assert_eq!(g.vertex_count(), 6);
        let s = exact_distance_graph(&g, 2, Variant::SomeNegative).unwrap();
        assert!(s.is_clique(&[2, 3, 4, 5]));
    }

    #[test]
    fn two_trees_are_reproducible() {
        let a = gen_signed_2tree(50, 9).unwrap();
        assert_eq!(a, gen_signed_2tree(50, 9).unwrap());
        assert_eq!(a.edge_count(), 2 * 50 - 3);
        assert_eq!(gen_signed_2tree(3, 0).unwrap().edge_count(), 3);
    }

    #[test]
    fn apollonian_counts() {
        for d in 0..=4 {
            let t = gen_apollonian(ApollonianMode::Full { depth: d }).unwrap();
            let n = t.vertex_count();
            assert_eq!(n, apollonian_full_vertex_count(d));
            assert_eq!(t.graph().edge_count(), 3 * n - 6);
        }
        assert_eq!(apollonian_full_vertex_count(3), 43);
        let t = gen_apollonian(ApollonianMode::Seeded { vertices: 300, seed: 4 }).unwrap();
        assert_eq!(t.vertex_count(), 300);
        assert!(gen_apollonian(ApollonianMode::Full { depth: 9 }).is_err());
    }

    #[test]
    fn random_signed_extremes() {
        assert_eq!(gen_random_signed(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(gen_random_signed(5, 1.0, 1).unwrap().edge_count(), 10);
        assert_eq!(gen_random_signed(20, 0.3, 7).unwrap(), gen_random_signed(20, 0.3, 7).unwrap());
        assert!(gen_random_signed(3, 1.5, 0).is_err());
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| small_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn cactus_recognition() {
        assert!(is_cactus(&Graph::cycle(5)));
        assert!(is_cactus(&Graph::path(4)));
        assert!(!is_cactus(&Graph::complete(4)));
        assert!(!is_cactus(&Graph::new(2)));
    }
}
