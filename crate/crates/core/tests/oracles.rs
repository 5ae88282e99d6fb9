//! Brute-force oracles against the library algorithms on random small inputs.

use std::collections::BTreeSet;

use exactsign::colnum::{
    col, dcol, dreach_sets, dreach_sets_layered, dreach_witness, is_dreach_witness, reach_sets, treewidth_small,
    wcol, wreach_sets, VertexOrdering,
};
use exactsign::colorers::{
    chromatic_number_exact, colour_2tree_7, colour_exact_distance_via_dcol, colour_exact_distance_via_wcolk,
    colour_strong_square_via_col2,
};
use exactsign::families::{gen_apollonian, gen_signed_2tree, ApollonianMode};
use exactsign::graph::{exact_distance_graph, strong_square_union, Adjacency};
use exactsign::planar::{audit_dr4, build_reduction, verify_reduction, AuditOptions};
use exactsign::{Graph, Sign, SignedGraph, Variant, Vertex};
use proptest::prelude::*;

fn signed_graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (proptest::collection::vec(0u8..4, pairs), Just(n)).prop_map(|(codes, n)| {
            let mut g = SignedGraph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    // 0, 1: no edge; 2: positive; 3: negative.
                    match codes[i] {
                        2 => g.add_edge(u, v, Sign::Positive).unwrap(),
                        3 => g.add_edge(u, v, Sign::Negative).unwrap(),
                        _ => {}
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn with_ordering(max_n: usize) -> impl Strategy<Value = (SignedGraph, VertexOrdering)> {
    signed_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, order)| (g, VertexOrdering::from_order(order).unwrap()))
    })
}

/// All simple paths from `start` with at most `k` edges.
fn simple_paths<G: Adjacency>(g: &G, start: Vertex, k: usize) -> Vec<Vec<Vertex>> {
    fn go<G: Adjacency>(g: &G, k: usize, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        out.push(path.clone());
        if path.len() > k {
            return;
        }
        let last = *path.last().unwrap();
        for w in g.neighbours(last).collect::<Vec<_>>() {
            if !path.contains(&w) {
                path.push(w);
                go(g, k, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, k, &mut vec![start], &mut out);
    out
}

fn floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                d[a][b] = d[a][b].min(d[a][m] + d[m][b]);
            }
        }
    }
    d
}

fn path_sign(g: &SignedGraph, p: &[Vertex]) -> Sign {
    p.windows(2)
        .map(|e| g.sign(e[0], e[1]).unwrap())
        .fold(Sign::Positive, Sign::compose)
}

fn brute_exact_distance(g: &SignedGraph, k: usize, variant: Variant) -> BTreeSet<(Vertex, Vertex)> {
    let d = floyd(&g.underlying());
    let mut out = BTreeSet::new();
    for s in 0..g.vertex_count() {
        let mut signs: Vec<Vec<Sign>> = vec![Vec::new(); g.vertex_count()];
        for p in simple_paths(g, s, k) {
            if p.len() == k + 1 {
                signs[*p.last().unwrap()].push(path_sign(g, &p));
            }
        }
        for t in s + 1..g.vertex_count() {
            if d[s][t] != k {
                continue;
            }
            let neg = signs[t].iter().filter(|s| s.is_negative()).count();
            let keep = match variant {
                Variant::EveryNegative => neg == signs[t].len() && neg > 0,
                Variant::SomeNegative => neg > 0,
            };
            if keep {
                out.insert((s, t));
            }
        }
    }
    out
}

/// The three reach sets of `y` straight from their definitions.
fn brute_reach(g: &Graph, ord: &VertexOrdering, y: Vertex, k: usize) -> [BTreeSet<Vertex>; 3] {
    let pos = ord.positions();
    let mut weak = BTreeSet::new();
    let mut strong = BTreeSet::new();
    let mut dist = BTreeSet::new();
    for p in simple_paths(g, y, k) {
        let x = *p.last().unwrap();
        let min = p.iter().map(|&v| pos[v]).min().unwrap();
        if pos[x] != min {
            continue;
        }
        weak.insert(x);
        // Internal vertices above y.
        if p.len() < 3 || p[1..p.len() - 1].iter().all(|&v| pos[v] > pos[y]) {
            strong.insert(x);
        }
        // Read from x: the vertices at indices floor(k/2) + 1 onwards are at or above y.
        let from_x: Vec<Vertex> = p.iter().rev().copied().collect();
        if from_x.iter().skip(k / 2 + 1).all(|&v| pos[v] >= pos[y]) {
            dist.insert(x);
        }
    }
    [weak, strong, dist]
}

fn brute_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    fn fits(g: &Graph, c: usize, colour: &mut Vec<usize>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for x in 0..c {
            if g.neighbour_slice(v).iter().all(|&w| w >= v || colour[w] != x) {
                colour[v] = x;
                if fits(g, c, colour, v + 1) {
                    return true;
                }
            }
        }
        false
    }
    (1..=n).find(|&c| fits(g, c, &mut vec![0; n], 0)).unwrap()
}

/// Treewidth as the best elimination ordering over all permutations.
fn brute_treewidth(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = n.saturating_sub(1);
    fn width(g: &Graph, perm: &[usize]) -> usize {
        let n = g.vertex_count();
        let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbours(v).collect()).collect();
        let mut w = 0;
        for &v in perm {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            w = w.max(nb.len());
            for &a in &nb {
                adj[a].remove(&v);
                for &b in &nb {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        w
    }
    loop {
        best = best.min(width(g, &perm));
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_distance_graphs_match_path_enumeration(g in signed_graph(8), k in 1usize..5) {
        for variant in [Variant::EveryNegative, Variant::SomeNegative] {
            let fast: BTreeSet<_> = exact_distance_graph(&g, k, variant).unwrap().edges().collect();
            prop_assert_eq!(fast, brute_exact_distance(&g, k, variant));
        }
    }

    #[test]
    fn reach_sets_match_definitions((g, ord) in with_ordering(8), k in 1usize..6) {
        let u = g.underlying();
        let weak = wreach_sets(&u, &ord, k).unwrap();
        let strong = reach_sets(&u, &ord, k).unwrap();
        let enumerated = dreach_sets(&u, &ord, k).unwrap();
        let layered = dreach_sets_layered(&u, &ord, k).unwrap();
        for y in 0..u.vertex_count() {
            let [bw, bs, bd] = brute_reach(&u, &ord, y, k);
            let set = |s: &Vec<Vertex>| s.iter().copied().collect::<BTreeSet<_>>();
            prop_assert_eq!(set(&weak.sets[y]), bw);
            prop_assert_eq!(set(&strong.sets[y]), bs);
            prop_assert_eq!(&set(&enumerated.sets[y]), &bd);
            prop_assert_eq!(set(&layered.sets[y]), bd.clone());
            for x in 0..u.vertex_count() {
                let w = dreach_witness(&u, &ord, k, x, y);
                prop_assert_eq!(w.is_some(), bd.contains(&x));
                if let Some(p) = w {
                    prop_assert!(is_dreach_witness(&u, &ord, k, &p));
                }
            }
        }
    }

    #[test]
    fn chromatic_number_matches_brute_force(g in signed_graph(8)) {
        let u = g.underlying();
        prop_assert_eq!(chromatic_number_exact(&u).unwrap().exact(), Some(brute_chromatic(&u)));
    }

    #[test]
    fn treewidth_matches_elimination_orderings(g in signed_graph(7)) {
        let u = g.underlying();
        prop_assert_eq!(treewidth_small(&u).unwrap(), brute_treewidth(&u));
    }

    #[test]
    fn colourings_are_proper_and_bounded((g, ord) in with_ordering(10), k in 1usize..5) {
        let u = g.underlying();
        let target = exact_distance_graph(&g, k, Variant::EveryNegative).unwrap();
        let c = colour_exact_distance_via_dcol(&g, k, &ord).unwrap();
        prop_assert!(c.is_proper(&target));
        let radius = if k % 2 == 1 { 2 * k - 1 } else { 2 * k };
        prop_assert!(c.colours_used() <= dcol(&u, &ord, radius).unwrap());

        let v = colour_exact_distance_via_wcolk(&g, k, &ord).unwrap();
        prop_assert!(v.colouring.is_proper(&target));
        prop_assert_eq!(v.wcol_k, wcol(&u, &ord, k).unwrap());
        prop_assert!(num_bigint::BigUint::from(v.colouring.colours_used()) <= v.palette_bound);

        let square = exact_distance_graph(&g, 2, Variant::SomeNegative).unwrap();
        let c2 = colour_strong_square_via_col2(&g, &ord).unwrap();
        prop_assert!(c2.colouring.is_proper(&square));
        prop_assert_eq!(c2.col2, col(&u, &ord, 2).unwrap());
        prop_assert!(num_bigint::BigUint::from(c2.colouring.colours_used()) <= c2.palette_bound);
    }

    #[test]
    fn partial_two_trees_get_seven_colours(n in 2usize..40, seed in any::<u64>(), mask in any::<u64>()) {
        let full = gen_signed_2tree(n, seed).unwrap();
        let mut g = SignedGraph::new(n);
        for (i, (u, v, s)) in full.edges().enumerate() {
            if mask >> (i % 64) & 1 == 1 || i % 3 == 0 {
                g.add_edge(u, v, s).unwrap();
            }
        }
        let (asg, c) = colour_2tree_7(&g).unwrap();
        prop_assert!(asg.validate(&g).is_ok());
        prop_assert!(c.colours_used() <= 7);
        prop_assert!(c.is_proper(&strong_square_union(&g)));
    }

    #[test]
    fn random_triangulations_reduce_cleanly(vertices in 4usize..150, seed in any::<u64>()) {
        let t = gen_apollonian(ApollonianMode::Seeded { vertices, seed }).unwrap();
        prop_assert_eq!(t.graph().edge_count(), 3 * vertices - 6);
        prop_assert_eq!(t.faces().len(), 2 * vertices - 4);
        let r = build_reduction(&t).unwrap();
        prop_assert_eq!(verify_reduction(&t, &r), vec![]);
        let audit = audit_dr4(&t, &r, &AuditOptions::default()).unwrap();
        prop_assert!(audit.pass && audit.path_balls.pass);
    }
}

#[test]
fn strong_square_of_negative_path_oracle() {
    // A negative 2-path makes its ends adjacent in the square.
    let g = SignedGraph::from_edges(3, [(0, 1, Sign::Negative), (1, 2, Sign::Positive)]).unwrap();
    assert_eq!(strong_square_union(&g).edge_count(), 3);
    let g = SignedGraph::from_edges(3, [(0, 1, Sign::Negative), (1, 2, Sign::Negative)]).unwrap();
    assert_eq!(strong_square_union(&g).edge_count(), 2);
}

#[test]
fn all_positive_star_has_empty_strong_square() {
    // No 2-path of an all-positive graph is negative, so nothing is added.
    let g = SignedGraph::from_edges(5, (1..5).map(|l| (0, l, Sign::Positive))).unwrap();
    let square = exact_distance_graph(&g, 2, Variant::SomeNegative).unwrap();
    assert_eq!(square.edge_count(), 0);
    let c = colour_strong_square_via_col2(&g, &VertexOrdering::identity(5)).unwrap();
    assert!(c.colouring.conflicts(&square).is_empty());
}
