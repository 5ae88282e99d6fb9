//! Verification suites: each check states the mathematical claim it tests,
//! runs it on a generated corpus and reports every failing instance.

use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colnum::{
    col, degeneracy_ordering, dreach_sets, minimize_over_orderings, treewidth_small, wcol, MinimizeOptions,
    Radius, ReachKind,
};
use crate::colorers::{
    build_target_p133, chromatic_number_exact, colour_2tree_7, colour_exact_distance_via_dcol,
    colour_exact_distance_via_wcolk, colour_strong_square_via_col2, hom_to_p133, DcolColorer,
};
use crate::error::Result;
use crate::families::{
    gen_apollonian, gen_clique_indep, gen_k7_gadget, gen_random_signed, gen_signed_2tree, gen_snk,
    gen_star_gadget, small_connected_graphs, snk_ordering, ApollonianMode,
};
use crate::graph::{exact_distance_graph, strong_square_union, Adjacency, Sign, SignedGraph, Variant};
use crate::planar::{audit_dr4, build_reduction, verify_reduction, AuditOptions, Triangulation, DR4_BOUND};

const MAX_FAILURES_REPORTED: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Tw2,
    Planar76,
    Bounds,
    Eq1,
    Gadgets,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Tw2, Suite::Planar76, Suite::Bounds, Suite::Eq1, Suite::Gadgets];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tw2 => "tw2",
            Suite::Planar76 => "planar76",
            Suite::Bounds => "bounds",
            Suite::Eq1 => "eq1",
            Suite::Gadgets => "gadgets",
        }
    }

    /// Criterion numbers run by the suite.
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Tw2 => &[1, 11],
            Suite::Planar76 => &[6, 7],
            Suite::Bounds => &[3, 4, 5],
            Suite::Eq1 => &[8],
            Suite::Gadgets => &[2, 9, 10],
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| crate::Error::Parameter(format!("unknown suite {s:?}")))
    }
}

/// Corpus sizes and seed. The defaults are the full acceptance corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub two_trees: usize,
    pub two_tree_max_n: usize,
    pub random_graphs: usize,
    pub random_max_n: usize,
    pub apollonian_max_depth: usize,
    pub seeded_triangulations: usize,
    pub seeded_max_n: usize,
    pub signatures: usize,
    pub eq1_max_n: usize,
    pub clique_indep_max_t: usize,
    pub hom_two_trees: usize,
    /// Path-enumeration steps per vertex in the distance-4 audit.
    pub audit_budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            two_trees: 100,
            two_tree_max_n: 200,
            random_graphs: 200,
            random_max_n: 40,
            apollonian_max_depth: 6,
            seeded_triangulations: 50,
            seeded_max_n: 5000,
            signatures: 20,
            eq1_max_n: 7,
            clique_indep_max_t: 4,
            hom_two_trees: 50,
            audit_budget: AuditOptions::default().budget,
        }
    }
}

impl SuiteConfig {
    /// A reduced corpus for quick runs.
    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            seed,
            two_trees: 10,
            two_tree_max_n: 60,
            random_graphs: 20,
            random_max_n: 20,
            apollonian_max_depth: 3,
            seeded_triangulations: 3,
            seeded_max_n: 300,
            signatures: 3,
            eq1_max_n: 5,
            clique_indep_max_t: 3,
            hom_two_trees: 5,
            ..SuiteConfig::default()
        }
    }
}

/// Outcome of one criterion over its corpus.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub claim: &'static str,
    pub instances: usize,
    pub failure_count: usize,
    /// The first failures, one line each.
    pub failures: Vec<String>,
    /// Aggregates specific to the check, such as the largest value seen.
    pub summary: serde_json::Value,
    pub elapsed_ms: u128,
    pub pass: bool,
}

impl CheckResult {
    fn new(
        criterion: u8,
        name: &'static str,
        claim: &'static str,
        instances: usize,
        failures: Vec<String>,
        summary: serde_json::Value,
        start: Instant,
    ) -> Self {
        let failure_count = failures.len();
        let mut failures = failures;
        failures.truncate(MAX_FAILURES_REPORTED);
        CheckResult {
            criterion,
            name,
            claim,
            instances,
            failure_count,
            failures,
            summary,
            elapsed_ms: start.elapsed().as_millis(),
            pass: failure_count == 0 && instances > 0,
        }
    }

    /// `PASS 3 name: claim (instances, failures, ms)`.
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}: {} ({} instances, {} failures, {} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.claim,
            self.instances,
            self.failure_count,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for &c in suite.criteria() {
        match c {
            6 => {
                let (a, b) = planar_checks(config)?;
                checks.push(a);
                checks.push(b);
            }
            7 => {}
            _ => checks.push(run_criterion(c, config)?),
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite,
        config: config.clone(),
        checks,
        pass,
    })
}

/// Runs a single criterion. Criteria 6 and 7 share one corpus; asking for
/// either runs both and returns the requested one.
pub fn run_criterion(criterion: u8, config: &SuiteConfig) -> Result<CheckResult> {
    match criterion {
        1 => two_tree_colouring(config),
        2 => seven_tightness(),
        3 => dcol_bound(config),
        4 => wcol_vector_bound(config),
        5 => col2_bound(config),
        6 => Ok(planar_checks(config)?.0),
        7 => Ok(planar_checks(config)?.1),
        8 => treewidth_identity(config),
        9 => snk_separation(),
        10 => star_cliques(),
        11 => target_graph(config),
        _ => Err(crate::Error::Parameter(format!("no criterion {criterion}"))),
    }
}

fn sub_seed(config: &SuiteConfig, salt: u64, i: usize) -> u64 {
    config
        .seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(salt << 32)
        .wrapping_add(i as u64)
}

fn two_tree_sizes(config: &SuiteConfig) -> Vec<usize> {
    let count = config.two_trees;
    let max = config.two_tree_max_n.max(10);
    (0..count)
        .map(|i| 10 + i * (max - 10) / count.saturating_sub(1).max(1))
        .collect()
}

fn two_tree_colouring(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let sizes = two_tree_sizes(config);
    let outcomes: Vec<Result<Option<String>>> = sizes
        .par_iter()
        .enumerate()
        .map(|(i, &n)| {
            let g = gen_signed_2tree(n, sub_seed(config, 1, i))?;
            let (asg, colouring) = match colour_2tree_7(&g) {
                Ok(x) => x,
                Err(e) => return Ok(Some(format!("2-tree #{i} (n = {n}): {e}"))),
            };
            let square = strong_square_union(&g);
            let conflicts = colouring.conflicts(&square);
            Ok(if colouring.colours_used() > 7 || !conflicts.is_empty() || asg.validate(&g).is_err() {
                Some(format!(
                    "2-tree #{i} (n = {n}): {} colours, {} conflicts",
                    colouring.colours_used(),
                    conflicts.len()
                ))
            } else {
                None
            })
        })
        .collect();
    let failures = collect_failures(outcomes)?;
    Ok(CheckResult::new(
        1,
        "two_tree_seven_colouring",
        "every signed graph of treewidth at most 2 has a proper 7-colouring of G together with its strong exact-distance -2 graph",
        sizes.len(),
        failures,
        serde_json::json!({ "max_n": sizes.iter().max() }),
        start,
    ))
}

fn collect_failures(outcomes: Vec<Result<Option<String>>>) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(f) = o? {
            failures.push(f);
        }
    }
    Ok(failures)
}

fn seven_tightness() -> Result<CheckResult> {
    let start = Instant::now();
    let g = gen_k7_gadget();
    let union = strong_square_union(&g);
    let chi = chromatic_number_exact(&union)?;
    let failures = if chi.exact() == Some(7) {
        vec![]
    } else {
        vec![format!("chromatic number of the union is {chi:?}")]
    };
    Ok(CheckResult::new(
        2,
        "seven_is_tight",
        "the gadget of treewidth 2 has G together with its strong exact-distance -2 graph equal to K7, so 7 colours are needed",
        1,
        failures,
        serde_json::json!({ "union_edges": union.edge_count(), "chromatic": chi }),
        start,
    ))
}

/// The shared random corpus for the bound checks.
fn random_corpus(config: &SuiteConfig) -> Result<Vec<(usize, SignedGraph)>> {
    (0..config.random_graphs)
        .map(|i| {
            let max = config.random_max_n.max(5);
            let n = 5 + i % (max - 4);
            let p = if i % 2 == 0 { 0.1 } else { 0.2 };
            Ok((i, gen_random_signed(n, p, sub_seed(config, 3, i))?))
        })
        .collect()
}

fn dcol_bound(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let corpus = random_corpus(config)?;
    let outcomes: Vec<Result<Vec<String>>> = corpus
        .par_iter()
        .map(|(i, g)| {
            let mut bad = Vec::new();
            let u = g.underlying();
            for k in 1..=3 {
                let radius = if k % 2 == 1 { 2 * k - 1 } else { 2 * k };
                let ord = minimize_over_orderings(&u, ReachKind::Distance, Radius::Finite(radius), &MinimizeOptions::heuristic())?
                    .ordering;
                let colouring = colour_exact_distance_via_dcol(g, k, &ord)?;
                let target = exact_distance_graph(g, k, Variant::EveryNegative)?;
                let bound = dreach_sets(&u, &ord, radius)?.max_size;
                let conflicts = colouring.conflicts(&target).len();
                if conflicts > 0 || colouring.colours_used() > bound {
                    bad.push(format!(
                        "graph #{i} (n = {}), k = {k}: {} colours, bound {bound}, {conflicts} conflicts",
                        g.vertex_count(),
                        colouring.colours_used()
                    ));
                }
            }
            Ok(bad)
        })
        .collect();
    let failures = flatten(outcomes)?;
    Ok(CheckResult::new(
        3,
        "dcol_bound",
        "the exact-distance -k graph has a proper colouring with at most dcol_2k(G, L) colours (dcol_(2k-1) for odd k)",
        corpus.len() * 3,
        failures,
        serde_json::Value::Null,
        start,
    ))
}

fn flatten(outcomes: Vec<Result<Vec<String>>>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for o in outcomes {
        out.extend(o?);
    }
    Ok(out)
}

/// `((wcol_k + 1)(⌊k/2⌋ + 2) · 3)^q` with `q = wcol_⌊k/2⌋`.
pub fn wcol_vector_palette_bound(wcol_k: usize, k: usize, q: usize) -> BigUint {
    BigUint::from((wcol_k + 1) * (k / 2 + 2) * 3).pow(q as u32)
}

fn wcol_vector_bound(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let corpus = random_corpus(config)?;
    let outcomes: Vec<Result<Vec<String>>> = corpus
        .par_iter()
        .map(|(i, g)| {
            let mut bad = Vec::new();
            let u = g.underlying();
            let ord = degeneracy_ordering(&u);
            for k in 2..=4 {
                let vc = colour_exact_distance_via_wcolk(g, k, &ord)?;
                let target = exact_distance_graph(g, k, Variant::EveryNegative)?;
                let bound = wcol_vector_palette_bound(wcol(&u, &ord, k)?, k, wcol(&u, &ord, k / 2)?);
                let conflicts = vc.colouring.conflicts(&target).len();
                if conflicts > 0 || BigUint::from(vc.colouring.colours_used()) > bound {
                    bad.push(format!(
                        "graph #{i} (n = {}), k = {k}: {} colours, bound {bound}, {conflicts} conflicts",
                        g.vertex_count(),
                        vc.colouring.colours_used()
                    ));
                }
            }
            Ok(bad)
        })
        .collect();
    let failures = flatten(outcomes)?;
    Ok(CheckResult::new(
        4,
        "wcol_vector_bound",
        "the exact-distance -k graph has a proper colouring with at most ((wcol_k + 1)(floor(k/2) + 2) 3)^q colours, q = wcol_floor(k/2)",
        corpus.len() * 3,
        failures,
        serde_json::Value::Null,
        start,
    ))
}

/// `col_2² · 2^col_2`.
pub fn col2_palette_bound(col2: usize) -> BigUint {
    BigUint::from(col2 * col2) << col2
}

fn col2_bound(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let mut corpus = random_corpus(config)?;
    let base = corpus.len();
    for t in 1..=config.clique_indep_max_t {
        corpus.push((base + t - 1, gen_clique_indep(t)?));
    }
    let check = |i: usize, g: &SignedGraph| -> Result<Option<String>> {
        let u = g.underlying();
        let ord = degeneracy_ordering(&u);
        let c = colour_strong_square_via_col2(g, &ord)?;
        let target = exact_distance_graph(g, 2, Variant::SomeNegative)?;
        let bound = col2_palette_bound(col(&u, &ord, 2)?);
        let conflicts = c.colouring.conflicts(&target).len();
        Ok((conflicts > 0 || BigUint::from(c.colouring.colours_used()) > bound).then(|| {
            format!(
                "graph #{i} (n = {}): {} colours, bound {bound}, {conflicts} conflicts",
                g.vertex_count(),
                c.colouring.colours_used()
            )
        }))
    };
    let outcomes: Vec<Result<Option<String>>> = corpus.par_iter().map(|(i, g)| check(*i, g)).collect();
    let mut failures = collect_failures(outcomes)?;
    let mut lower_bounds = Vec::new();
    for t in 1..=config.clique_indep_max_t {
        let g = gen_clique_indep(t)?;
        let chi = chromatic_number_exact(&exact_distance_graph(&g, 2, Variant::SomeNegative)?)?;
        lower_bounds.push(chi.lower());
        if chi.lower() < 1 << t {
            failures.push(format!("clique + independent set, t = {t}: chromatic number {chi:?} below 2^t"));
        }
    }
    Ok(CheckResult::new(
        5,
        "col2_bound",
        "the strong exact-distance -2 graph has a proper colouring with at most col_2(G)^2 2^col_2(G) colours, and the clique + independent set graphs need at least 2^t",
        corpus.len() + config.clique_indep_max_t,
        failures,
        serde_json::json!({ "clique_indep_chromatic_lower": lower_bounds }),
        start,
    ))
}

/// The planar corpus: full Apollonian networks, then seeded insertions.
pub fn planar_corpus(config: &SuiteConfig) -> Vec<ApollonianMode> {
    let mut modes: Vec<ApollonianMode> = (0..=config.apollonian_max_depth)
        .map(|depth| ApollonianMode::Full { depth })
        .collect();
    let count = config.seeded_triangulations;
    let max = config.seeded_max_n.max(10);
    for i in 0..count {
        let vertices = 10 + (i + 1) * (max - 10) / count.max(1);
        modes.push(ApollonianMode::Seeded {
            vertices,
            seed: sub_seed(config, 6, i),
        });
    }
    modes
}

#[derive(Debug, Clone, Serialize)]
struct PlanarOutcome {
    vertices: usize,
    max_dr4: usize,
    max_colours: usize,
    max_path_ball: usize,
    failures: Vec<String>,
    path_ball_failures: Vec<String>,
}

fn planar_instance(config: &SuiteConfig, index: usize, t: &Triangulation) -> Result<PlanarOutcome> {
    let n = t.vertex_count();
    let mut failures = Vec::new();
    let mut path_ball_failures = Vec::new();
    let r = match build_reduction(t) {
        Ok(r) => r,
        Err(e) => {
            failures.push(format!("triangulation #{index} (n = {n}): no reduction: {e}"));
            return Ok(PlanarOutcome {
                vertices: n,
                max_dr4: 0,
                max_colours: 0,
                max_path_ball: 0,
                failures,
                path_ball_failures,
            });
        }
    };
    let violations = verify_reduction(t, &r);
    if let Some(v) = violations.first() {
        failures.push(format!(
            "triangulation #{index} (n = {n}): {} reduction violations, first {}: {}",
            violations.len(),
            v.check,
            v.detail
        ));
    }
    let audit = audit_dr4(t, &r, &AuditOptions { budget: config.audit_budget })?;
    if !audit.pass {
        failures.push(format!(
            "triangulation #{index} (n = {n}): |DReach_4| reaches {} at vertex {:?}",
            audit.max_dr4, audit.argmax
        ));
    }
    if !audit.path_balls.pass {
        path_ball_failures.push(format!(
            "triangulation #{index} (n = {n}): {} (vertex, path) pairs above 9, first {:?}",
            audit.path_balls.violation_count,
            audit.path_balls.violations.first()
        ));
    }
    let ord = r.ordering()?;
    let colorer = DcolColorer::new(t.graph(), &ord, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(config, 60, index));
    let mut max_colours = 0;
    for s in 0..config.signatures {
        let g = t
            .graph()
            .with_uniform_sign(Sign::Positive)
            .resign(|_, _| if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive });
        let colouring = colorer.colour(&g)?;
        let target = exact_distance_graph(&g, 2, Variant::EveryNegative)?;
        let used = colouring.colours_used();
        max_colours = max_colours.max(used);
        let conflicts = colouring.conflicts(&target).len();
        if used > DR4_BOUND || conflicts > 0 {
            failures.push(format!(
                "triangulation #{index} (n = {n}), signature {s}: {used} colours, {conflicts} conflicts"
            ));
        }
    }
    Ok(PlanarOutcome {
        vertices: n,
        max_dr4: audit.max_dr4,
        max_colours,
        max_path_ball: audit.path_balls.max_intersection,
        failures,
        path_ball_failures,
    })
}

fn planar_checks(config: &SuiteConfig) -> Result<(CheckResult, CheckResult)> {
    let start = Instant::now();
    let modes = planar_corpus(config);
    let outcomes: Vec<Result<PlanarOutcome>> = modes
        .par_iter()
        .enumerate()
        .map(|(i, &mode)| planar_instance(config, i, &gen_apollonian(mode)?))
        .collect();
    let outcomes: Vec<PlanarOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    let max_dr4 = outcomes.iter().map(|o| o.max_dr4).max();
    let max_colours = outcomes.iter().map(|o| o.max_colours).max();
    let max_path_ball = outcomes.iter().map(|o| o.max_path_ball).max();
    let max_n = outcomes.iter().map(|o| o.vertices).max();
    let failures = outcomes.iter().flat_map(|o| o.failures.clone()).collect();
    let ball_failures = outcomes.iter().flat_map(|o| o.path_ball_failures.clone()).collect();
    let audit = CheckResult::new(
        6,
        "planar_dreach4_bound",
        "every planar triangulation has a reduction ordering with |DReach_4(v)| <= 76, so the exact-distance -2 graph of any signature is 76-colourable",
        modes.len(),
        failures,
        serde_json::json!({
            "max_vertices": max_n,
            "max_dreach4": max_dr4,
            "max_colours": max_colours,
            "signatures_per_triangulation": config.signatures,
        }),
        start,
    );
    let balls = CheckResult::new(
        7,
        "isometric_path_balls",
        "an isometric path meets every closed 4-ball of its graph in at most 9 vertices",
        modes.len(),
        ball_failures,
        serde_json::json!({ "max_intersection": max_path_ball }),
        start,
    );
    Ok((audit, balls))
}

fn treewidth_identity(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let mut graphs = Vec::new();
    for n in 1..=config.eq1_max_n {
        graphs.extend(small_connected_graphs(n)?);
    }
    let outcomes: Vec<Result<Option<String>>> = graphs
        .par_iter()
        .map(|g| {
            let n = g.vertex_count();
            let radius = Radius::Finite(n.saturating_sub(1).max(1));
            let best = minimize_over_orderings(g, ReachKind::Strong, radius, &MinimizeOptions::exhaustive())?;
            let tw = treewidth_small(g)?;
            Ok((best.value != tw + 1).then(|| {
                format!(
                    "graph with edges {:?}: min col_(n-1) = {}, treewidth {tw}",
                    g.edges().collect::<Vec<_>>(),
                    best.value
                )
            }))
        })
        .collect();
    let failures = collect_failures(outcomes)?;
    Ok(CheckResult::new(
        8,
        "col_infinity_is_treewidth_plus_one",
        "min over orderings of col_(n-1)(G, L) equals tw(G) + 1",
        graphs.len(),
        failures,
        serde_json::json!({ "max_n": config.eq1_max_n }),
        start,
    ))
}

fn snk_separation() -> Result<CheckResult> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for n in 3..=5 {
        for k in 2..=4 {
            instances += 1;
            let g = gen_snk(n, k)?;
            let e = exact_distance_graph(&g, k, Variant::EveryNegative)?;
            let chi = chromatic_number_exact(&e)?;
            let w = wcol(&g, &snk_ordering(n, k)?, k - 1)?;
            if chi.exact() != Some(n) || w > k + 1 {
                failures.push(format!("S({n},{k}): chromatic {chi:?}, wcol_(k-1) = {w}"));
            }
        }
    }
    Ok(CheckResult::new(
        9,
        "snk_separation",
        "the exact-distance -k graph of S_(n,k) has chromatic number n while wcol_(k-1) <= k + 1",
        instances,
        failures,
        serde_json::Value::Null,
        start,
    ))
}

fn star_cliques() -> Result<CheckResult> {
    let start = Instant::now();
    let mut failures = Vec::new();
    for leaves in 2..=6 {
        let g = gen_star_gadget(leaves, 4)?;
        let s = exact_distance_graph(&g, 4, Variant::SomeNegative)?;
        let leaf_set: Vec<_> = (1..=leaves).collect();
        if !s.is_clique(&leaf_set) {
            failures.push(format!("{leaves} leaves: leaves are not a clique"));
        }
    }
    Ok(CheckResult::new(
        10,
        "star_gadget_cliques",
        "the doubled star with l leaves has K_l on its leaves in the strong exact-distance -4 graph, so the strong variant has no constant bound",
        5,
        failures,
        serde_json::Value::Null,
        start,
    ))
}

fn target_graph(config: &SuiteConfig) -> Result<CheckResult> {
    let start = Instant::now();
    let target = build_target_p133();
    let tg = &target.graph;
    let mut failures = Vec::new();
    let n = tg.vertex_count();
    if n != 140 || target.vertices.iter().any(|t| t.well_formed().is_some()) {
        failures.push(format!("target has {n} vertices"));
    }
    let first = |v: usize| target.vertices[v].c;
    for (u, v, _) in tg.edges() {
        if u == v || first(u) == first(v) {
            failures.push(format!("edge {u}-{v} joins equal first coordinates"));
        }
    }
    for w in 0..n {
        let nb = tg.signed_neighbours(w);
        for (i, &(u, su)) in nb.iter().enumerate() {
            for &(v, sv) in &nb[i + 1..] {
                if su.compose(sv).is_negative() && first(u) == first(v) {
                    failures.push(format!("negative path {u}-{w}-{v} joins equal first coordinates"));
                }
            }
        }
    }
    let outcomes: Vec<Result<Option<String>>> = (0..config.hom_two_trees)
        .into_par_iter()
        .map(|i| {
            let n = 10 + (i * 7) % 150;
            let g = gen_signed_2tree(n, sub_seed(config, 11, i))?;
            let (asg, _) = colour_2tree_7(&g)?;
            Ok(match hom_to_p133(&g, &asg) {
                Ok(map) => g
                    .edges()
                    .find(|&(u, v, s)| tg.sign(map[u], map[v]) != Some(s))
                    .map(|(u, v, _)| format!("2-tree #{i}: edge {u}-{v} changes sign")),
                Err(e) => Some(format!("2-tree #{i}: {e}")),
            })
        })
        .collect();
    failures.extend(collect_failures(outcomes)?);
    Ok(CheckResult::new(
        11,
        "target_p133",
        "the 140-vertex target separates the first coordinate on edges and negative 2-paths, and every signed 2-tree maps to it preserving signs",
        1 + config.hom_two_trees,
        failures,
        serde_json::json!({ "vertices": n, "edges": tg.edge_count() }),
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let config = SuiteConfig::quick(3);
        for suite in Suite::ALL {
            let report = run_suite(suite, &config).unwrap();
            for c in &report.checks {
                assert!(c.pass, "{}", c.line());
            }
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn palette_formulae() {
        assert_eq!(col2_palette_bound(3), BigUint::from(72u32));
        assert_eq!(wcol_vector_palette_bound(2, 2, 1), BigUint::from(27u32));
    }
}
