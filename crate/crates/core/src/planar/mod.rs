//! Planar triangulations given as rotation systems, isometric-path
//! reductions and the distance-4 reachability audit.
//!
//! Rotations list neighbours clockwise. A face is traced by following the
//! dart `u → v` with `v → w`, where `w` comes right after `u` in the rotation
//! at `v`.

mod audit;
mod reduction;
mod verify;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use audit::{audit_dr4, AuditOptions, AuditReport, PathBallCheck, DR4_BOUND, PATH_BALL_BOUND};
pub use reduction::{build_reduction, reduction_ordering, PathMeta, Reduction, ReductionError};
pub use verify::{minimal_region_size, region_one, verify_reduction, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("rotation system lists {found} vertices, expected {expected}")]
    VertexCount { expected: usize, found: usize },
    #[error("a triangulation needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("rotation at {vertex} names invalid neighbour {neighbour}")]
    InvalidNeighbour { vertex: Vertex, neighbour: Vertex },
    #[error("rotation at {vertex} repeats neighbour {neighbour} or has a loop")]
    NotSimple { vertex: Vertex, neighbour: Vertex },
    #[error("{u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: Vertex, v: Vertex },
    #[error("face of length {} is not a triangle: {face:?}", face.len())]
    NonTriangularFace { face: Vec<Vertex> },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler's formula fails: {vertices} vertices, {edges} edges, {faces} faces")]
    Euler {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("outer triple {0:?} is not a face")]
    OuterNotFace([Vertex; 3]),
}

/// A planar triangulation with a fixed outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    rot: Vec<Vec<Vertex>>,
    outer: [Vertex; 3],
    graph: Graph,
    faces: Vec<[Vertex; 3]>,
}

/// On-disk form: `{"n": .., "outer": [u1, u2, u3], "rot": {"v": [..]}}` with
/// 0-based ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationFile {
    pub n: usize,
    pub outer: [Vertex; 3],
    pub rot: BTreeMap<Vertex, Vec<Vertex>>,
}

impl Triangulation {
    /// Validates a rotation system and caches its faces.
    pub fn new(rot: Vec<Vec<Vertex>>, outer: [Vertex; 3]) -> Result<Self, TriangulationError> {
        let n = rot.len();
        if n < 3 {
            return Err(TriangulationError::TooSmall(n));
        }
        let mut edges = Vec::new();
        for (v, nbrs) in rot.iter().enumerate() {
            let mut seen = HashSet::new();
            for &w in nbrs {
                if w >= n {
                    return Err(TriangulationError::InvalidNeighbour { vertex: v, neighbour: w });
                }
                if w == v || !seen.insert(w) {
                    return Err(TriangulationError::NotSimple { vertex: v, neighbour: w });
                }
                if !rot[w].contains(&v) {
                    return Err(TriangulationError::Asymmetric { u: v, v: w });
                }
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        let graph = Graph::from_edges(n, edges).expect("checked simple and symmetric");
        if !graph.is_connected() {
            return Err(TriangulationError::Disconnected);
        }
        let mut t = Triangulation {
            rot,
            outer,
            graph,
            faces: Vec::new(),
        };
        let faces = t.trace_faces();
        let m = t.graph.edge_count();
        if n + faces.len() != m + 2 {
            return Err(TriangulationError::Euler {
                vertices: n,
                edges: m,
                faces: faces.len(),
            });
        }
        let mut triangles = Vec::with_capacity(faces.len());
        for f in faces {
            match f[..] {
                [a, b, c] => triangles.push([a, b, c]),
                _ => return Err(TriangulationError::NonTriangularFace { face: f }),
            }
        }
        t.faces = triangles;
        if outer.iter().any(|&u| u >= n) || !t.is_face(outer[0], outer[1], outer[2]) {
            return Err(TriangulationError::OuterNotFace(outer));
        }
        Ok(t)
    }

    pub fn from_file(file: &RotationFile) -> Result<Self, TriangulationError> {
        if file.rot.len() != file.n || file.rot.keys().any(|&v| v >= file.n) {
            return Err(TriangulationError::VertexCount {
                expected: file.n,
                found: file.rot.len(),
            });
        }
        Triangulation::new(file.rot.values().cloned().collect(), file.outer)
    }

    pub fn to_file(&self) -> RotationFile {
        RotationFile {
            n: self.vertex_count(),
            outer: self.outer,
            rot: self.rot.iter().cloned().enumerate().collect(),
        }
    }

    /// Builds the rotation system of a straight-line drawing.
    pub fn from_straight_line(
        points: &[(f64, f64)],
        edges: &[(Vertex, Vertex)],
        outer: [Vertex; 3],
    ) -> Result<Self, TriangulationError> {
        let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); points.len()];
        for &(u, v) in edges {
            rot[u].push(v);
            rot[v].push(u);
        }
        for (v, nbrs) in rot.iter_mut().enumerate() {
            let (x, y) = points[v];
            // Decreasing angle is clockwise.
            nbrs.sort_by(|&a, &b| {
                let ta = (points[a].1 - y).atan2(points[a].0 - x);
                let tb = (points[b].1 - y).atan2(points[b].0 - x);
                tb.partial_cmp(&ta).unwrap()
            });
        }
        Triangulation::new(rot, outer)
    }

    fn trace_faces(&self) -> Vec<Vec<Vertex>> {
        let mut used: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..self.rot.len() {
            for i in 0..self.rot[u].len() {
                if used[u][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut ia) = (u, i);
                while !used[a][ia] {
                    used[a][ia] = true;
                    face.push(a);
                    let b = self.rot[a][ia];
                    let w = self.next_cw(b, a);
                    ia = self.index_in(b, w);
                    a = b;
                }
                faces.push(face);
            }
        }
        faces
    }

    fn index_in(&self, v: Vertex, w: Vertex) -> usize {
        self.rot[v].iter().position(|&x| x == w).expect("neighbour in rotation")
    }

    /// Neighbour following `u` clockwise around `v`.
    pub fn next_cw(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = &self.rot[v];
        r[(self.index_in(v, u) + 1) % r.len()]
    }

    /// Neighbour preceding `u` clockwise around `v`.
    pub fn prev_cw(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = &self.rot[v];
        r[(self.index_in(v, u) + r.len() - 1) % r.len()]
    }

    /// Whether `{a, b, c}` bounds a face (in either orientation).
    pub fn is_face(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.graph.has_edge(a, b)
            && self.graph.has_edge(b, c)
            && self.graph.has_edge(a, c)
            && (self.next_cw(b, a) == c || self.next_cw(b, c) == a)
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn outer(&self) -> [Vertex; 3] {
        self.outer
    }

    pub fn faces(&self) -> &[[Vertex; 3]] {
        &self.faces
    }

    /// Faces other than the outer one, as traced.
    pub fn inner_faces(&self) -> Vec<[Vertex; 3]> {
        let outer: HashSet<Vertex> = self.outer.into_iter().collect();
        self.faces
            .iter()
            .copied()
            .filter(|f| !f.iter().all(|v| outer.contains(v)))
            .collect()
    }

    /// Adds a vertex inside a traced face `(a, b, c)` and joins it to the
    /// three corners, returning the new vertex. Only the rotation system is
    /// updated; call [`Triangulation::revalidate`] after a batch.
    pub(crate) fn insert_unchecked(&mut self, face: [Vertex; 3]) -> Vertex {
        let [a, b, c] = face;
        let n = self.rot.len();
        for (p, q) in [(a, b), (b, c), (c, a)] {
            let i = self.index_in(q, p);
            self.rot[q].insert(i + 1, n);
        }
        self.rot.push(vec![a, c, b]);
        n
    }

    /// Recomputes the graph and faces after a batch of insertions and
    /// validates the result.
    pub(crate) fn revalidate(self) -> Result<Self, TriangulationError> {
        Triangulation::new(self.rot, self.outer)
    }
}

/// `K_4` with outer face `(0, 1, 2)` and inner vertex `3`.
pub fn k4() -> Triangulation {
    Triangulation::new(
        vec![vec![2, 3, 1], vec![0, 3, 2], vec![1, 3, 0], vec![0, 2, 1]],
        [0, 1, 2],
    )
    .expect("valid K4")
}

/// The octahedron drawn as two nested triangles.
pub fn octahedron() -> Triangulation {
    let points = [
        (0.0, 10.0),
        (-10.0, -6.0),
        (10.0, -6.0),
        (0.0, -3.0),
        (3.0, 2.0),
        (-3.0, 2.0),
    ];
    let edges = [
        (0, 1), (1, 2), (2, 0),
        (3, 4), (4, 5), (5, 3),
        (3, 1), (3, 2), (4, 0), (4, 2), (5, 0), (5, 1),
    ];
    Triangulation::from_straight_line(&points, &edges, [0, 1, 2]).expect("valid octahedron")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_four_triangles() {
        let t = k4();
        assert_eq!(t.faces().len(), 4);
        assert_eq!(t.inner_faces().len(), 3);
        assert!(t.is_face(0, 1, 2));
    }

    #[test]
    fn octahedron_counts() {
        let t = octahedron();
        assert_eq!(t.faces().len(), 8);
        assert_eq!(t.graph().edge_count(), 12);
    }

    #[test]
    fn straight_line_k4_matches_hand_rotation() {
        let points = [(0.0, 10.0), (-10.0, -6.0), (10.0, -6.0), (0.0, 0.0)];
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        let t = Triangulation::from_straight_line(&points, &edges, [0, 1, 2]).unwrap();
        assert_eq!(t.faces().len(), 4);
        let hand = k4();
        for v in 0..4 {
            // Same cyclic order up to rotation.
            let r = t.rotation(v);
            let h = hand.rotation(v);
            let shift = h.iter().position(|&x| x == r[0]).unwrap();
            let rotated: Vec<_> = (0..r.len()).map(|i| h[(shift + i) % h.len()]).collect();
            assert_eq!(r, &rotated[..], "vertex {v}");
        }
    }

    #[test]
    fn rejects_bad_rotations() {
        assert!(matches!(
            Triangulation::new(vec![vec![1], vec![0]], [0, 1, 0]),
            Err(TriangulationError::TooSmall(2))
        ));
        // K4 with one rotation reversed is not a consistent embedding.
        let bad = vec![vec![1, 3, 2], vec![0, 3, 2], vec![1, 3, 0], vec![0, 2, 1]];
        assert!(Triangulation::new(bad, [0, 1, 2]).is_err());
        let asym = vec![vec![1, 2], vec![2], vec![0, 1]];
        assert!(matches!(
            Triangulation::new(asym, [0, 1, 2]),
            Err(TriangulationError::Asymmetric { .. })
        ));
        let mut path = vec![vec![1], vec![0, 2], vec![1]];
        assert!(Triangulation::new(path.clone(), [0, 1, 2]).is_err());
        path[0].push(3);
        assert!(Triangulation::new(path, [0, 1, 2]).is_err());
    }

    #[test]
    fn insertion_keeps_a_triangulation() {
        let mut t = k4();
        let f = t.inner_faces()[0];
        let v = t.insert_unchecked(f);
        let t = t.revalidate().unwrap();
        assert_eq!(v, 4);
        assert_eq!(t.faces().len(), 6);
        assert_eq!(t.graph().edge_count(), 3 * 5 - 6);
    }

    #[test]
    fn file_roundtrip() {
        let t = octahedron();
        let json = serde_json::to_string(&t.to_file()).unwrap();
        let back: RotationFile = serde_json::from_str(&json).unwrap();
        assert_eq!(Triangulation::from_file(&back).unwrap(), t);
    }
}
