//! Seven-colouring of signed graphs of treewidth at most 2 through triples
//! `(c, A, B)` of a colour and two disjoint 3-sets of colours from `1..=7`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::Colouring;
use crate::error::{Error, Result};
use crate::graph::{strong_square_union, Adjacency, Sign, SignedGraph, Vertex};

/// `(c, A, B)` with `A` and `B` stored as bitmasks: bit `i` stands for
/// colour `i`, so only bits `1..=7` are ever set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub c: u8,
    pub a: u8,
    pub b: u8,
}

const fn mask(colours: [u8; 3]) -> u8 {
    (1 << colours[0]) | (1 << colours[1]) | (1 << colours[2])
}

const fn triple(c: u8, a: [u8; 3], b: [u8; 3]) -> Triple {
    Triple {
        c,
        a: mask(a),
        b: mask(b),
    }
}

fn members(m: u8) -> Vec<u8> {
    (1..=7).filter(|&i| m & (1 << i) != 0).collect()
}

fn bit(c: u8) -> u8 {
    1 << c
}

impl Triple {
    pub fn a_colours(&self) -> Vec<u8> {
        members(self.a)
    }

    pub fn b_colours(&self) -> Vec<u8> {
        members(self.b)
    }

    /// Conditions on a single triple: `c ∉ A ∪ B`, `A ∩ B = ∅`, `|A| = |B| = 3`.
    pub fn well_formed(&self) -> Option<&'static str> {
        const VALID: u8 = 0b1111_1110;
        if !(1..=7).contains(&self.c) || self.a & !VALID != 0 || self.b & !VALID != 0 {
            return Some("colours lie in 1..=7");
        }
        if (self.a | self.b) & bit(self.c) != 0 {
            return Some("(i) c not in A or B");
        }
        if self.a & self.b != 0 {
            return Some("(ii) A and B disjoint");
        }
        if self.a.count_ones() != 3 || self.b.count_ones() != 3 {
            return Some("(iii) |A| = |B| = 3");
        }
        None
    }

    /// Conditions on the two ends of an edge of the given sign.
    pub fn edge_violation(&self, other: &Triple, sign: Sign) -> Option<&'static str> {
        let (x, z) = (self, other);
        if x.a & z.a == 0 || x.a & z.b == 0 || x.b & z.a == 0 || x.b & z.b == 0 {
            return Some("(iv) all four intersections nonempty");
        }
        let (xs, zs) = match sign {
            Sign::Positive => (z.a, x.a),
            Sign::Negative => (z.b, x.b),
        };
        if xs & bit(x.c) == 0 || zs & bit(z.c) == 0 {
            return Some(match sign {
                Sign::Positive => "(v) positive edge: colours in the other's A",
                Sign::Negative => "(vi) negative edge: colours in the other's B",
            });
        }
        None
    }

    fn relabel(&self, perm: &[u8; 8]) -> Triple {
        let map = |m: u8| members(m).into_iter().fold(0u8, |acc, i| acc | bit(perm[i as usize]));
        Triple {
            c: perm[self.c as usize],
            a: map(self.a),
            b: map(self.b),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: u8| {
            members(m)
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{} | {} | {}", self.c, show(self.a), show(self.b))
    }
}

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Triple", 3)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("a", &self.a_colours())?;
        st.serialize_field("b", &self.b_colours())?;
        st.end()
    }
}

const BASE_X: Triple = triple(1, [2, 3, 4], [5, 6, 7]);
const BASE_Y_POSITIVE: Triple = triple(2, [1, 3, 5], [4, 6, 7]);
const BASE_Y_NEGATIVE: Triple = triple(5, [2, 4, 6], [1, 3, 7]);

/// The triples of the two ends of a base edge with the given sign.
pub fn base_assignment(sign: Sign) -> (Triple, Triple) {
    match sign {
        Sign::Positive => (BASE_X, BASE_Y_POSITIVE),
        Sign::Negative => (BASE_X, BASE_Y_NEGATIVE),
    }
}

/// Triple for a new vertex `z` attached to the base pair `(x, y)`, indexed
/// by `(σ(xy), σ(xz), σ(yz))` with `+` first.
const TABLE: [Triple; 8] = [
    triple(3, [1, 2, 6], [4, 5, 7]), // + + +
    triple(4, [1, 3, 6], [2, 5, 7]), // + + -
    triple(5, [2, 3, 7], [1, 4, 6]), // + - +
    triple(7, [3, 4, 5], [1, 2, 6]), // + - -
    triple(2, [1, 4, 5], [3, 6, 7]), // - + +
    triple(3, [1, 2, 6], [4, 5, 7]), // - + -
    triple(6, [2, 3, 5], [1, 4, 7]), // - - +
    triple(7, [3, 4, 6], [1, 2, 5]), // - - -
];

pub fn table_row(xy: Sign, xz: Sign, yz: Sign) -> Triple {
    let idx = |s: Sign| s.is_negative() as usize;
    TABLE[4 * idx(xy) + 2 * idx(xz) + idx(yz)]
}

fn single(m: u8) -> Option<u8> {
    (m.count_ones() == 1).then(|| m.trailing_zeros() as u8)
}

/// Permutation `perm` of `1..=7` taking the base pair of sign `sign` to
/// `(tx, ty)`. Every adjacent pair satisfying the edge conditions has the
/// intersection sizes of the base pair, so the blocks below are forced; the
/// result is checked before it is returned.
fn relabelling(tx: &Triple, ty: &Triple, sign: Sign) -> Option<[u8; 8]> {
    let aa = tx.a & ty.a;
    let ab = tx.a & ty.b;
    let ba = tx.b & ty.a;
    let bb = tx.b & ty.b;
    let mut perm = [0u8; 8];
    perm[1] = tx.c;
    match sign {
        Sign::Positive => {
            perm[2] = ty.c;
            perm[3] = single(aa)?;
            perm[4] = single(ab)?;
            perm[5] = single(ba)?;
            let rest = members(bb);
            if rest.len() != 2 {
                return None;
            }
            perm[6] = rest[0];
            perm[7] = rest[1];
        }
        Sign::Negative => {
            perm[5] = ty.c;
            perm[3] = single(ab)?;
            perm[7] = single(bb)?;
            perm[6] = single(ba)?;
            let rest = members(aa);
            if rest.len() != 2 {
                return None;
            }
            perm[2] = rest[0];
            perm[4] = rest[1];
        }
    }
    let image = perm[1..].iter().fold(0u8, |m, &c| m | bit(c));
    if image != 0b1111_1110 {
        return None;
    }
    let (bx, by) = base_assignment(sign);
    (bx.relabel(&perm) == *tx && by.relabel(&perm) == *ty).then_some(perm)
}

/// Colour triples for every vertex of a signed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment733 {
    pub triples: Vec<Triple>,
}

impl Assignment733 {
    /// Checks every condition on every vertex and edge of `g`.
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.triples.len() != g.vertex_count() {
            return Err(Error::Assignment {
                condition: "one triple per vertex",
                location: format!("{} triples for {} vertices", self.triples.len(), g.vertex_count()),
            });
        }
        for (v, t) in self.triples.iter().enumerate() {
            if let Some(condition) = t.well_formed() {
                return Err(Error::Assignment {
                    condition,
                    location: format!("vertex {v}"),
                });
            }
        }
        for (u, v, s) in g.edges() {
            if let Some(condition) = self.triples[u].edge_violation(&self.triples[v], s) {
                return Err(Error::Assignment {
                    condition,
                    location: format!("edge {u}-{v}"),
                });
            }
        }
        Ok(())
    }

    /// The colouring by first coordinates, shifted to ids `0..7`.
    pub fn colouring(&self) -> Colouring {
        let mut c = Colouring::from_colours(self.triples.iter().map(|t| t.c as usize - 1).collect());
        c.palette_size = c.palette_size.max(if self.triples.is_empty() { 0 } else { 7 });
        c
    }

    /// One line per vertex: `v: c | A | B` with 1-indexed `v`.
    pub fn to_text(&self) -> String {
        self.triples
            .iter()
            .enumerate()
            .map(|(v, t)| format!("{}: {}\n", v + 1, t))
            .collect()
    }
}

/// A 2-tree containing a signed graph, with the order in which it can be
/// rebuilt from a single edge.
#[derive(Debug, Clone)]
pub struct TwoTreeCompletion {
    /// The original edges plus positive completion edges.
    pub completed: SignedGraph,
    pub added_edges: Vec<(Vertex, Vertex)>,
    /// First vertex, and second vertex forming the base edge, if any.
    pub base: (Option<Vertex>, Option<Vertex>),
    /// `(z, x, y)`: `z` attached to the existing edge `xy`.
    pub insertions: Vec<(Vertex, Vertex, Vertex)>,
}

/// Completes a graph of treewidth at most 2 to a 2-tree by eliminating
/// vertices of degree at most 2 and rebuilding in reverse.
pub fn two_tree_completion(g: &SignedGraph) -> Result<TwoTreeCompletion> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbours(v).collect()).collect();
    let mut completed = g.clone();
    let mut added_edges = Vec::new();
    let mut eliminated = vec![false; n];
    let mut sequence: Vec<(Vertex, Vec<Vertex>)> = Vec::with_capacity(n);
    // Popping the largest ids first leaves the smallest ids as the base.
    let mut work: Vec<Vertex> = (0..n).filter(|&v| adj[v].len() <= 2).collect();
    while let Some(v) = work.pop() {
        if eliminated[v] || adj[v].len() > 2 {
            continue;
        }
        eliminated[v] = true;
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            if adj[a].insert(b) {
                adj[b].insert(a);
                completed.add_edge(a, b, Sign::Positive)?;
                added_edges.push((a.min(b), a.max(b)));
            }
        }
        for &w in &nbrs {
            if adj[w].len() <= 2 {
                work.push(w);
            }
        }
        sequence.push((v, nbrs));
    }
    if sequence.len() < n {
        return Err(Error::NotPartialTwoTree {
            remaining: n - sequence.len(),
        });
    }

    let mut placed = vec![false; n];
    let mut base = (None, None);
    let mut insertions = Vec::with_capacity(n.saturating_sub(2));
    let mut connect = |u: Vertex, v: Vertex, completed: &mut SignedGraph| -> Result<()> {
        if !completed.has_edge(u, v) {
            completed.add_edge(u, v, Sign::Positive)?;
            added_edges.push((u.min(v), u.max(v)));
        }
        Ok(())
    };
    for (z, parents) in sequence.into_iter().rev() {
        match base {
            (None, _) => base.0 = Some(z),
            (Some(x), None) => {
                connect(x, z, &mut completed)?;
                base.1 = Some(z);
            }
            (Some(bx), Some(by)) => {
                let (x, y) = match parents[..] {
                    [a, b] => (a, b),
                    [a] => {
                        let b = completed
                            .neighbours(a)
                            .filter(|&w| placed[w])
                            .min()
                            .expect("placed vertices have placed neighbours");
                        (a, b)
                    }
                    _ => (bx, by),
                };
                connect(x, z, &mut completed)?;
                connect(y, z, &mut completed)?;
                insertions.push((z, x, y));
            }
        }
        placed[z] = true;
    }
    added_edges.sort_unstable();
    added_edges.dedup();
    Ok(TwoTreeCompletion {
        completed,
        added_edges,
        base,
        insertions,
    })
}

/// Assigns triples along a 2-tree completion, checking every condition as
/// each vertex is inserted, and returns them with the induced colouring.
///
/// The colouring is verified proper on the original graph together with its
/// strong negative exact-distance square.
pub fn colour_2tree_7(g: &SignedGraph) -> Result<(Assignment733, Colouring)> {
    let n = g.vertex_count();
    let completion = two_tree_completion(g)?;
    let h = &completion.completed;
    let mut triples = vec![None; n];
    if let (Some(x), second) = completion.base {
        match second {
            Some(y) => {
                let (tx, ty) = base_assignment(h.sign(x, y).expect("base edge"));
                triples[x] = Some(tx);
                triples[y] = Some(ty);
            }
            None => triples[x] = Some(BASE_X),
        }
    }
    for &(z, x, y) in &completion.insertions {
        let (tx, ty) = (triples[x].unwrap(), triples[y].unwrap());
        let sign = |a: Vertex, b: Vertex| h.sign(a, b).expect("2-tree edge");
        let sxy = sign(x, y);
        let perm = relabelling(&tx, &ty, sxy).ok_or_else(|| Error::Assignment {
            condition: "adjacent pair equivalent to the base pair",
            location: format!("edge {x}-{y}"),
        })?;
        let tz = table_row(sxy, sign(x, z), sign(y, z)).relabel(&perm);
        for (p, tp) in [(x, tx), (y, ty)] {
            if let Some(condition) = tz.well_formed().or_else(|| tp.edge_violation(&tz, sign(p, z))) {
                return Err(Error::Assignment {
                    condition,
                    location: format!("edge {p}-{z}"),
                });
            }
        }
        triples[z] = Some(tz);
    }
    let assignment = Assignment733 {
        triples: triples.into_iter().map(|t| t.expect("every vertex placed")).collect(),
    };
    assignment.validate(g)?;
    let colouring = assignment.colouring();
    if let Some((u, v)) = colouring.conflicts(&strong_square_union(g)).first() {
        return Err(Error::Assignment {
            condition: "colours proper on the graph and its strong square",
            location: format!("pair {u}-{v}"),
        });
    }
    Ok((assignment, colouring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    const SIGNS: [Sign; 2] = [Positive, Negative];

    #[test]
    fn base_pairs_satisfy_conditions() {
        for s in SIGNS {
            let (x, y) = base_assignment(s);
            assert_eq!(x.well_formed(), None);
            assert_eq!(y.well_formed(), None);
            assert_eq!(x.edge_violation(&y, s), None);
        }
    }

    #[test]
    fn every_table_row_is_valid() {
        for sxy in SIGNS {
            let (x, y) = base_assignment(sxy);
            for sxz in SIGNS {
                for syz in SIGNS {
                    let z = table_row(sxy, sxz, syz);
                    assert_eq!(z.well_formed(), None, "{sxy}{sxz}{syz}");
                    assert_eq!(x.edge_violation(&z, sxz), None, "{sxy}{sxz}{syz}");
                    assert_eq!(y.edge_violation(&z, syz), None, "{sxy}{sxz}{syz}");
                    // Every table row can itself be relabelled as a base pair.
                    assert!(relabelling(&x, &z, sxz).is_some());
                    assert!(relabelling(&y, &z, syz).is_some());
                }
            }
        }
    }

    #[test]
    fn relabelling_inverts_a_permutation() {
        let perm = [0, 4, 7, 1, 6, 2, 3, 5];
        for s in SIGNS {
            let (x, y) = base_assignment(s);
            let (px, py) = (x.relabel(&perm), y.relabel(&perm));
            // The base pair has automorphisms, so any preimage will do.
            let found = relabelling(&px, &py, s).unwrap();
            assert_eq!((x.relabel(&found), y.relabel(&found)), (px, py));
        }
    }

    #[test]
    fn single_positive_edge() {
        let g = SignedGraph::from_edges(2, [(0, 1, Positive)]).unwrap();
        let (asg, c) = colour_2tree_7(&g).unwrap();
        assert_eq!(asg.to_text(), "1: 1 | 2 3 4 | 5 6 7\n2: 2 | 1 3 5 | 4 6 7\n");
        assert_eq!(c.colours, vec![0, 1]);
    }

    #[test]
    fn k4_is_rejected() {
        let g = crate::graph::Graph::complete(4).all_negative();
        assert_eq!(
            colour_2tree_7(&g).unwrap_err(),
            Error::NotPartialTwoTree { remaining: 4 }
        );
    }

    #[test]
    fn forests_and_cycles_are_completed() {
        let g = SignedGraph::from_edges(
            7,
            [(0, 1, Negative), (1, 2, Negative), (2, 3, Positive), (3, 0, Negative), (5, 6, Negative)],
        )
        .unwrap();
        let (asg, c) = colour_2tree_7(&g).unwrap();
        asg.validate(&g).unwrap();
        assert!(c.colours_used() <= 7);
        let t = two_tree_completion(&g).unwrap();
        assert_eq!(t.completed.edge_count(), 2 * 7 - 3);
    }

    #[test]
    fn empty_and_single_vertex() {
        assert_eq!(colour_2tree_7(&SignedGraph::new(0)).unwrap().1.colours, Vec::<usize>::new());
        assert_eq!(colour_2tree_7(&SignedGraph::new(1)).unwrap().1.colours, vec![0]);
    }
}
