use serde::Serialize;

use super::{Reduction, Triangulation};
use crate::graph::{Adjacency, Vertex};

/// Components below this size get the brute-force minimality check.
const BRUTE_FORCE_LIMIT: usize = 20;
/// Above this amount of work the exchange check samples path vertices.
const EXCHANGE_WORK_LIMIT: usize = 200_000;
const EXCHANGE_SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub path: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(check: &'static str, path: Option<usize>, detail: String) -> Self {
        Violation { check, path, detail }
    }
}

/// Vertices reachable from `sources` through vertices accepted by `allowed`,
/// with BFS distances (`usize::MAX` when unreached).
fn bfs_within(
    t: &Triangulation,
    sources: &[Vertex],
    allowed: impl Fn(Vertex) -> bool,
) -> (Vec<Vertex>, Vec<usize>) {
    let g = t.graph();
    let mut dist = vec![usize::MAX; t.vertex_count()];
    let mut order = Vec::new();
    for &s in sources {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            order.push(s);
        }
    }
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in g.neighbours(u) {
            if dist[w] == usize::MAX && allowed(w) {
                dist[w] = dist[u] + 1;
                order.push(w);
            }
        }
    }
    (order, dist)
}

/// The component `K_i` that path `i` was extracted from: everything reachable
/// from the path through paths of index at least `i`.
fn component(t: &Triangulation, path_of: &[usize], r: &Reduction, i: usize) -> Vec<Vertex> {
    bfs_within(t, &r.paths[i], |w| path_of[w] >= i && path_of[w] != usize::MAX).0
}

/// Vertices of `K \ path` in components touching path `manager`.
fn region_of(
    t: &Triangulation,
    path_of: &[usize],
    comp: &[Vertex],
    path: &[Vertex],
    manager: usize,
) -> Vec<Vertex> {
    let n = t.vertex_count();
    let mut allowed = vec![false; n];
    for &v in comp {
        allowed[v] = true;
    }
    for &v in path {
        allowed[v] = false;
    }
    let seeds: Vec<Vertex> = comp
        .iter()
        .copied()
        .filter(|&v| allowed[v] && t.graph().neighbours(v).any(|w| path_of[w] == manager))
        .collect();
    let (mut region, _) = bfs_within(t, &seeds, |w| allowed[w]);
    region.sort_unstable();
    region
}

/// The part of `K_i \ P_i` lying between `P_i` and its manager: the
/// components of `K_i - P_i` adjacent to the manager. In a triangulated
/// disc the path splits these from the side of the foreman, so this equals
/// the interior of the cycle through the manager segment and `P_i`.
pub fn region_one(t: &Triangulation, r: &Reduction, i: usize) -> Vec<Vertex> {
    let Some(Some(meta)) = r.meta.get(i) else {
        return Vec::new();
    };
    let path_of = r.path_index(t.vertex_count());
    let comp = component(t, &path_of, r, i);
    region_of(t, &path_of, &comp, &r.paths[i], meta.manager)
}

/// Smallest region size over every shortest `w w'` path of `K_i`, or `None`
/// when `K_i` is too large to enumerate.
pub fn minimal_region_size(t: &Triangulation, r: &Reduction, i: usize) -> Option<usize> {
    let meta = r.meta.get(i).copied().flatten()?;
    let path_of = r.path_index(t.vertex_count());
    let comp = component(t, &path_of, r, i);
    if comp.len() >= BRUTE_FORCE_LIMIT {
        return None;
    }
    let mut in_comp = vec![false; t.vertex_count()];
    for &v in &comp {
        in_comp[v] = true;
    }
    let (_, dist) = bfs_within(t, &[meta.w2], |w| in_comp[w]);
    let mut best = usize::MAX;
    let mut stack = vec![meta.w];
    fn extend(
        t: &Triangulation,
        dist: &[usize],
        in_comp: &[bool],
        stack: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]),
    ) {
        let cur = *stack.last().unwrap();
        if dist[cur] == 0 {
            visit(stack);
            return;
        }
        for w in t.graph().neighbours(cur) {
            if in_comp[w] && dist[w] + 1 == dist[cur] {
                stack.push(w);
                extend(t, dist, in_comp, stack, visit);
                stack.pop();
            }
        }
    }
    extend(t, &dist, &in_comp, &mut stack, &mut |p| {
        best = best.min(region_of(t, &path_of, &comp, p, meta.manager).len());
    });
    Some(best)
}

/// Positions along `path` of its vertices adjacent to `comp`, sorted.
fn touched_positions(t: &Triangulation, path: &[Vertex], in_comp: &[bool]) -> Vec<usize> {
    (0..path.len())
        .filter(|&p| t.graph().neighbours(path[p]).any(|w| in_comp[w]))
        .collect()
}

/// Checks every structural property of a reduction and returns what fails.
///
/// Exact checks: partition, path adjacency, the two initial paths,
/// isometry of each path in its component, two bosses, anchor faces, the
/// boss segments between the anchors and region minimality on small
/// components. The excursion check (every detour through the manager-side
/// region is longer than the path between its ends) samples path vertices
/// on large inputs.
pub fn verify_reduction(t: &Triangulation, r: &Reduction) -> Vec<Violation> {
    let n = t.vertex_count();
    let mut out = Vec::new();
    let mut count = vec![0usize; n];
    for (i, p) in r.paths.iter().enumerate() {
        if p.is_empty() {
            out.push(Violation::new("partition", Some(i), "empty path".into()));
        }
        for &v in p {
            if v >= n {
                out.push(Violation::new("partition", Some(i), format!("vertex {v} out of range")));
            } else {
                count[v] += 1;
            }
        }
    }
    for (v, &c) in count.iter().enumerate() {
        if c != 1 {
            out.push(Violation::new("partition", None, format!("vertex {v} lies on {c} paths")));
        }
    }
    if r.meta.len() != r.paths.len() {
        out.push(Violation::new(
            "partition",
            None,
            format!("{} paths but {} metadata entries", r.paths.len(), r.meta.len()),
        ));
    }
    if !out.is_empty() {
        return out;
    }
    let [u1, u2, u3] = t.outer();
    if r.paths.len() < 2 || r.paths[0] != [u1, u2] || r.paths[1] != [u3] {
        out.push(Violation::new("initial_paths", None, "paths 0 and 1 must be u1 u2 and u3".into()));
        return out;
    }
    let g = t.graph();
    for (i, p) in r.paths.iter().enumerate() {
        for e in p.windows(2) {
            if !g.has_edge(e[0], e[1]) {
                out.push(Violation::new(
                    "path_adjacency",
                    Some(i),
                    format!("{} and {} are not adjacent", e[0], e[1]),
                ));
            }
        }
    }

    let path_of = r.path_index(n);
    let mut in_comp = vec![false; n];
    for i in 2..r.paths.len() {
        let path = &r.paths[i];
        let Some(meta) = r.meta[i] else {
            out.push(Violation::new("metadata", Some(i), "missing bosses and anchors".into()));
            continue;
        };
        let comp = component(t, &path_of, r, i);
        for &v in &comp {
            in_comp[v] = true;
        }
        if comp.len() != meta.component_size {
            out.push(Violation::new(
                "component",
                Some(i),
                format!("component has {} vertices, metadata says {}", comp.len(), meta.component_size),
            ));
        }

        let (_, dist) = bfs_within(t, &path[..1], |w| in_comp[w]);
        let last = *path.last().unwrap();
        if dist[last] != path.len() - 1 {
            out.push(Violation::new(
                "isometry",
                Some(i),
                format!("path of length {} but its ends are at distance {}", path.len() - 1, dist[last]),
            ));
        }

        let mut bosses: Vec<usize> = comp
            .iter()
            .flat_map(|&c| g.neighbours(c))
            .map(|w| path_of[w])
            .filter(|&p| p < i)
            .collect();
        bosses.sort_unstable();
        bosses.dedup();
        let (h, j) = (meta.manager, meta.foreman);
        if bosses != [h, j] {
            out.push(Violation::new(
                "bosses",
                Some(i),
                format!("adjacent to earlier paths {bosses:?}, metadata says [{h}, {j}]"),
            ));
        }

        let anchors_ok = meta.w == path[0]
            && meta.w2 == last
            && path_of[meta.v] == h
            && path_of[meta.v2] == h
            && path_of[meta.z] == j
            && path_of[meta.z2] == j
            && t.is_face(meta.v, meta.w, meta.z)
            && t.is_face(meta.v2, meta.w2, meta.z2);
        if !anchors_ok {
            out.push(Violation::new(
                "anchor_faces",
                Some(i),
                format!(
                    "anchors {} {} {} and {} {} {} are not junction faces at the path ends",
                    meta.v, meta.w, meta.z, meta.v2, meta.w2, meta.z2
                ),
            ));
        }

        // Boss segments: the vertices of each boss adjacent to K_i are
        // consecutive on it and end at the anchors. Any path from K_i to an
        // earlier vertex therefore meets one of the two segments.
        for (b, ends) in [(h, (meta.v, meta.v2)), (j, (meta.z, meta.z2))] {
            if b >= r.paths.len() {
                continue;
            }
            let bp = &r.paths[b];
            let touched = touched_positions(t, bp, &in_comp);
            let contiguous = touched.last().map_or(0, |&l| l + 1 - touched[0]) == touched.len();
            let pos = |v: Vertex| bp.iter().position(|&x| x == v);
            let ends_ok = match (pos(ends.0), pos(ends.1), touched.first(), touched.last()) {
                (Some(a), Some(c), Some(&lo), Some(&hi)) => a.min(c) == lo && a.max(c) == hi,
                _ => false,
            };
            if !contiguous || !ends_ok {
                out.push(Violation::new(
                    "boss_segment",
                    Some(i),
                    format!("vertices of path {b} adjacent to the component are not the segment between its anchors"),
                ));
            }
        }

        let region = region_of(t, &path_of, &comp, path, h);
        check_exchange(t, i, path, &region, &mut out);

        if comp.len() < BRUTE_FORCE_LIMIT {
            if let Some(best) = minimal_region_size(t, r, i) {
                if region.len() > best {
                    out.push(Violation::new(
                        "minimal_region",
                        Some(i),
                        format!("region has {} vertices, another shortest path leaves {best}", region.len()),
                    ));
                }
            }
        }
        for &v in &comp {
            in_comp[v] = false;
        }
    }
    out
}

/// Every path `x Q y` with interior in `region` satisfies
/// `|pos(x) - pos(y)| <= |Q| - 1`.
fn check_exchange(t: &Triangulation, i: usize, path: &[Vertex], region: &[Vertex], out: &mut Vec<Violation>) {
    if region.is_empty() {
        return;
    }
    let n = t.vertex_count();
    let g = t.graph();
    let mut in_region = vec![false; n];
    for &v in region {
        in_region[v] = true;
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in path.iter().enumerate() {
        pos[v] = p;
    }
    let starts: Vec<usize> = if path.len() * region.len() > EXCHANGE_WORK_LIMIT {
        let m = EXCHANGE_SAMPLES.min(path.len());
        (0..m).map(|s| s * (path.len() - 1) / (m - 1).max(1)).collect()
    } else {
        (0..path.len()).collect()
    };
    for px in starts {
        let x = path[px];
        let seeds: Vec<Vertex> = g.neighbours(x).filter(|&w| in_region[w]).collect();
        let (order, dist) = bfs_within(t, &seeds, |w| in_region[w]);
        for &r in &order {
            for y in g.neighbours(r) {
                // The detour x, (dist + 1 region vertices), y has length dist + 2.
                if pos[y] != usize::MAX && y != x && pos[y].abs_diff(px) > dist[r] + 1 {
                    out.push(Violation::new(
                        "exchange",
                        Some(i),
                        format!(
                            "detour of length {} from {x} to {y} through the region, path distance {}",
                            dist[r] + 2,
                            pos[y].abs_diff(px)
                        ),
                    ));
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{build_reduction, octahedron, k4};

    #[test]
    fn built_reductions_verify() {
        for t in [k4(), octahedron()] {
            let r = build_reduction(&t).unwrap();
            assert_eq!(verify_reduction(&t, &r), vec![]);
        }
    }

    #[test]
    fn tampering_is_caught() {
        let t = octahedron();
        let mut r = build_reduction(&t).unwrap();
        let last = r.paths.len() - 1;
        let v = r.paths[last].pop().unwrap();
        r.paths[0].push(v);
        assert!(!verify_reduction(&t, &r).is_empty());
    }

    #[test]
    fn k4_region_is_empty() {
        let t = k4();
        let r = build_reduction(&t).unwrap();
        assert!(region_one(&t, &r, 2).is_empty());
        assert_eq!(minimal_region_size(&t, &r, 2), Some(0));
    }
}
