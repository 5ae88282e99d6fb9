use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Triangulation;
use crate::colnum::VertexOrdering;
use crate::graph::{Adjacency, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("component of {size} vertices containing {sample} is adjacent to paths {bosses:?}, expected exactly two")]
    BossCount {
        size: usize,
        sample: Vertex,
        bosses: Vec<usize>,
    },
    #[error("component containing {sample} has {found} junction faces between paths {manager} and {foreman}, expected two")]
    AnchorFaces {
        sample: Vertex,
        manager: usize,
        foreman: usize,
        found: usize,
    },
    #[error("reduction does not fit the triangulation: {0}")]
    Mismatch(String),
}

/// Anchors of an extracted path: `v w z` and `v' w' z'` are faces with `v,
/// v'` on the manager, `w, w'` the path ends and `z, z'` on the foreman.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathMeta {
    pub manager: usize,
    pub foreman: usize,
    pub v: Vertex,
    pub w: Vertex,
    pub z: Vertex,
    pub v2: Vertex,
    pub w2: Vertex,
    pub z2: Vertex,
    /// Size of the component the path was extracted from.
    pub component_size: usize,
}

/// An ordered partition of a triangulation into isometric paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub outer: [Vertex; 3],
    pub paths: Vec<Vec<Vertex>>,
    /// `None` for the two initial paths.
    pub meta: Vec<Option<PathMeta>>,
}

impl Reduction {
    pub fn vertex_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Index of the path containing each vertex; `usize::MAX` if none.
    pub fn path_index(&self, n: usize) -> Vec<usize> {
        let mut path_of = vec![usize::MAX; n];
        for (i, p) in self.paths.iter().enumerate() {
            for &v in p {
                if v < n {
                    path_of[v] = i;
                }
            }
        }
        path_of
    }

    /// Vertices path by path, each path end to end.
    pub fn ordering(&self) -> Result<VertexOrdering, crate::Error> {
        VertexOrdering::from_order(self.paths.concat())
    }
}

pub fn reduction_ordering(r: &Reduction) -> crate::Result<VertexOrdering> {
    r.ordering()
}

/// Connected pieces of the unassigned vertices reachable from
/// `start_vertices`.
fn split_components(
    t: &Triangulation,
    start_vertices: &[Vertex],
    path_of: &[usize],
    seen: &mut [bool],
) -> Vec<Vec<Vertex>> {
    let g = t.graph();
    let mut comps = Vec::new();
    for &s in start_vertices {
        if seen[s] || path_of[s] != usize::MAX {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for w in g.neighbours(u) {
                if !seen[w] && path_of[w] == usize::MAX {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Builds a reduction: `u1 u2` and `u3` first, then one isometric path per
/// component, processed first in first out.
///
/// Each path joins the two junction faces of its component and is the
/// leftmost shortest path: from every vertex it takes the first admissible
/// neighbour met when sweeping the rotation from the manager's side. This
/// leaves as few vertices as possible between the path and its manager.
pub fn build_reduction(t: &Triangulation) -> Result<Reduction, ReductionError> {
    let n = t.vertex_count();
    let g = t.graph();
    let [u1, u2, u3] = t.outer();
    let mut path_of = vec![usize::MAX; n];
    let mut paths = vec![vec![u1, u2], vec![u3]];
    let mut meta = vec![None, None];
    path_of[u1] = 0;
    path_of[u2] = 0;
    path_of[u3] = 1;

    let mut seen = vec![false; n];
    let all: Vec<Vertex> = (0..n).collect();
    let mut queue: VecDeque<Vec<Vertex>> = split_components(t, &all, &path_of, &mut seen).into();
    let mut in_comp = vec![false; n];
    let mut dist = vec![usize::MAX; n];

    while let Some(comp) = queue.pop_front() {
        for &v in &comp {
            in_comp[v] = true;
        }
        let mut bosses: Vec<usize> = comp
            .iter()
            .flat_map(|&c| g.neighbours(c))
            .filter(|&w| path_of[w] != usize::MAX)
            .map(|w| path_of[w])
            .collect();
        bosses.sort_unstable();
        bosses.dedup();
        let [h, j] = bosses[..] else {
            return Err(ReductionError::BossCount {
                size: comp.len(),
                sample: comp[0],
                bosses,
            });
        };

        let mut anchors: Vec<(Vertex, Vertex, Vertex)> = Vec::new();
        for &c in &comp {
            let rot = t.rotation(c);
            for i in 0..rot.len() {
                let (a, b) = (rot[i], rot[(i + 1) % rot.len()]);
                let face = if path_of[a] == h && path_of[b] == j {
                    Some((a, c, b))
                } else if path_of[a] == j && path_of[b] == h {
                    Some((b, c, a))
                } else {
                    None
                };
                if let Some(f) = face {
                    if !anchors.contains(&f) {
                        anchors.push(f);
                    }
                }
            }
        }
        let [(v, w, z), (v2, w2, z2)] = anchors[..] else {
            return Err(ReductionError::AnchorFaces {
                sample: comp[0],
                manager: h,
                foreman: j,
                found: anchors.len(),
            });
        };

        // BFS from the far end inside the component.
        let mut order = vec![w2];
        dist[w2] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for x in g.neighbours(u) {
                if in_comp[x] && dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    order.push(x);
                }
            }
        }

        let rot_w = t.rotation(w);
        let iv = rot_w.iter().position(|&x| x == v).expect("anchor is a face");
        let step: isize = if rot_w[(iv + rot_w.len() - 1) % rot_w.len()] == z {
            1
        } else {
            -1
        };
        let mut path = vec![w];
        let (mut prev, mut cur) = (v, w);
        while cur != w2 {
            let rot = t.rotation(cur);
            let d = rot.len() as isize;
            let start = rot.iter().position(|&x| x == prev).expect("neighbour") as isize;
            let next = (1..d)
                .map(|s| rot[(start + step * s).rem_euclid(d) as usize])
                .find(|&x| in_comp[x] && dist[x] + 1 == dist[cur])
                .expect("BFS predecessor exists");
            path.push(next);
            prev = cur;
            cur = next;
        }

        let index = paths.len();
        for &x in &path {
            path_of[x] = index;
        }
        for &x in &order {
            dist[x] = usize::MAX;
        }
        for &x in &comp {
            in_comp[x] = false;
            seen[x] = false;
        }
        meta.push(Some(PathMeta {
            manager: h,
            foreman: j,
            v,
            w,
            z,
            v2,
            w2,
            z2,
            component_size: comp.len(),
        }));
        paths.push(path);
        queue.extend(split_components(t, &comp, &path_of, &mut seen));
    }

    Ok(Reduction {
        outer: t.outer(),
        paths,
        meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{k4, octahedron};

    #[test]
    fn k4_reduction_is_forced() {
        let r = build_reduction(&k4()).unwrap();
        assert_eq!(r.paths, vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(r.ordering().unwrap().order(), &[0, 1, 2, 3]);
        let m = r.meta[2].unwrap();
        assert_eq!((m.manager, m.foreman, m.w, m.w2), (0, 1, 3, 3));
    }

    #[test]
    fn octahedron_paths_partition() {
        let r = build_reduction(&octahedron()).unwrap();
        assert_eq!(r.vertex_count(), 6);
        let ord = r.ordering().unwrap();
        assert_eq!(ord.len(), 6);
    }
}
