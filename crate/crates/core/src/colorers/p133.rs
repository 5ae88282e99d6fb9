use std::sync::OnceLock;

use super::{Assignment733, Triple};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, Vertex};

/// The signed graph on all triples `(x, A, B)` partitioning `1..=7` with
/// `|A| = |B| = 3`. Two triples are joined positively when each colour lies
/// in the other's `A`, negatively when each lies in the other's `B`.
#[derive(Debug, Clone)]
pub struct TargetGraphP133 {
    pub graph: SignedGraph,
    pub vertices: Vec<Triple>,
}

fn all_triples() -> &'static [Triple] {
    static TRIPLES: OnceLock<Vec<Triple>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let mut out = Vec::with_capacity(140);
        for c in 1..=7u8 {
            let rest = 0b1111_1110u8 & !(1 << c);
            for a in 0..=255u8 {
                if a & !rest == 0 && a.count_ones() == 3 {
                    out.push(Triple { c, a, b: rest & !a });
                }
            }
        }
        out
    })
}

/// Index of a triple among the target's vertices, if it is one.
pub fn p133_index(t: &Triple) -> Option<Vertex> {
    all_triples().iter().position(|u| u == t)
}

pub fn p133_vertex(index: Vertex) -> Option<Triple> {
    all_triples().get(index).copied()
}

fn target_sign(s: &Triple, t: &Triple) -> Option<Sign> {
    if s.a & (1 << t.c) != 0 && t.a & (1 << s.c) != 0 {
        Some(Sign::Positive)
    } else if s.b & (1 << t.c) != 0 && t.b & (1 << s.c) != 0 {
        Some(Sign::Negative)
    } else {
        None
    }
}

pub fn build_target_p133() -> TargetGraphP133 {
    let vertices = all_triples().to_vec();
    let mut graph = SignedGraph::new(vertices.len());
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if let Some(s) = target_sign(&vertices[i], &vertices[j]) {
                graph.add_edge(i, j, s).expect("fresh pair");
            }
        }
    }
    TargetGraphP133 { graph, vertices }
}

/// Maps each vertex to its triple in the target and checks that every edge
/// lands on a target edge of the same sign.
pub fn hom_to_p133(g: &SignedGraph, asg: &Assignment733) -> Result<Vec<Vertex>> {
    asg.validate(g)?;
    let map: Vec<Vertex> = asg
        .triples
        .iter()
        .map(|t| p133_index(t).expect("validated triples are target vertices"))
        .collect();
    for (u, v, s) in g.edges() {
        let (tu, tv) = (&asg.triples[u], &asg.triples[v]);
        if target_sign(tu, tv) != Some(s) {
            return Err(Error::Assignment {
                condition: "edge maps to a target edge of the same sign",
                location: format!("edge {u}-{v}"),
            });
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorers::base_assignment;

    #[test]
    fn has_140_loopless_vertices() {
        let t = build_target_p133();
        assert_eq!(t.vertices.len(), 140);
        assert!(t.vertices.iter().all(|v| v.well_formed().is_none()));
        assert!(t.vertices.iter().all(|v| target_sign(v, v).is_none()));
        assert_eq!(p133_vertex(p133_index(&t.vertices[77]).unwrap()), Some(t.vertices[77]));
    }

    #[test]
    fn base_edges_map_to_same_sign() {
        for s in [Sign::Positive, Sign::Negative] {
            let g = SignedGraph::from_edges(2, [(0, 1, s)]).unwrap();
            let (x, y) = base_assignment(s);
            let map = hom_to_p133(&g, &Assignment733 { triples: vec![x, y] }).unwrap();
            let t = build_target_p133();
            assert_eq!(t.graph.sign(map[0], map[1]), Some(s));
        }
    }
}
