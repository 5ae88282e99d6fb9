use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Reduction, ReductionError, Triangulation};
use crate::colnum::{dreach_sets_budgeted, dreach_witness, RestrictedBfs};
use crate::error::Result;
use crate::graph::Vertex;

/// Upper bound on `|DReach_4|` under a reduction ordering.
pub const DR4_BOUND: usize = 76;
/// At most `2k + 1 = 9` vertices of an isometric path lie within distance 4.
pub const PATH_BALL_BOUND: usize = 9;
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    /// Path-enumeration steps per vertex before the layered search takes over.
    pub budget: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { budget: 200_000 }
    }
}

/// Largest `|N^4[v] ∩ P_i|` over paths `P_i` and vertices `v` still present
/// when `P_i` was removed, distances taken in that residual graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathBallCheck {
    pub max_intersection: usize,
    pub bound: usize,
    /// `(v, path, count)` triples above the bound, at most twenty.
    pub violations: Vec<(Vertex, usize, usize)>,
    pub violation_count: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub vertex_count: usize,
    pub path_count: usize,
    pub max_dr4: usize,
    /// Number of vertices per `|DReach_4|` value.
    pub histogram: BTreeMap<usize, usize>,
    pub argmax: Option<Vertex>,
    /// One witness path per member of the argmax vertex's set.
    pub argmax_witnesses: Vec<Vec<Vertex>>,
    pub bound: usize,
    pub pass: bool,
    pub budget_overruns: usize,
    pub enumeration_steps: u64,
    pub path_balls: PathBallCheck,
}

fn path_ball_check(t: &Triangulation, r: &Reduction, path_of: &[usize]) -> PathBallCheck {
    let n = t.vertex_count();
    let g = t.graph();
    let per_path: Vec<(usize, Vec<(Vertex, usize, usize)>)> = (0..r.paths.len())
        .into_par_iter()
        .map_init(
            || (RestrictedBfs::new(n), vec![0usize; n], Vec::new()),
            |(bfs, count, touched), i| {
                for &p in &r.paths[i] {
                    bfs.run(g, p, 4, |w| path_of[w] >= i);
                    for &v in &bfs.reached {
                        if count[v] == 0 {
                            touched.push(v);
                        }
                        count[v] += 1;
                    }
                }
                let mut max = 0;
                let mut bad = Vec::new();
                for &v in touched.iter() {
                    max = max.max(count[v]);
                    if count[v] > PATH_BALL_BOUND {
                        bad.push((v, i, count[v]));
                    }
                    count[v] = 0;
                }
                touched.clear();
                (max, bad)
            },
        )
        .collect();
    let max_intersection = per_path.iter().map(|p| p.0).max().unwrap_or(0);
    let mut violations: Vec<_> = per_path.into_iter().flat_map(|p| p.1).collect();
    let violation_count = violations.len();
    violations.truncate(MAX_REPORTED);
    PathBallCheck {
        max_intersection,
        bound: PATH_BALL_BOUND,
        violations,
        violation_count,
        pass: violation_count == 0,
    }
}

/// Measures `DReach_4` under the reduction ordering against [`DR4_BOUND`]
/// and the path-ball property against [`PATH_BALL_BOUND`].
pub fn audit_dr4(t: &Triangulation, r: &Reduction, options: &AuditOptions) -> Result<AuditReport> {
    let n = t.vertex_count();
    if r.vertex_count() != n {
        return Err(ReductionError::Mismatch(format!(
            "reduction covers {} vertices, triangulation has {n}",
            r.vertex_count()
        ))
        .into());
    }
    let ord = r.ordering()?;
    let g = t.graph();
    let (profile, stats) = dreach_sets_budgeted(g, &ord, 4, options.budget)?;
    let mut histogram = BTreeMap::new();
    for s in &profile.sets {
        *histogram.entry(s.len()).or_insert(0) += 1;
    }
    let argmax_witnesses = profile
        .argmax
        .map(|y| {
            profile.sets[y]
                .iter()
                .filter_map(|&x| dreach_witness(g, &ord, 4, x, y))
                .collect()
        })
        .unwrap_or_default();
    let path_of = r.path_index(n);
    let path_balls = path_ball_check(t, r, &path_of);
    Ok(AuditReport {
        vertex_count: n,
        path_count: r.paths.len(),
        max_dr4: profile.max_size,
        histogram,
        argmax: profile.argmax,
        argmax_witnesses,
        bound: DR4_BOUND,
        pass: profile.max_size <= DR4_BOUND,
        budget_overruns: stats.budget_overruns,
        enumeration_steps: stats.enumeration_steps,
        path_balls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{build_reduction, octahedron};

    #[test]
    fn octahedron_audit_passes() {
        let t = octahedron();
        let r = build_reduction(&t).unwrap();
        let a = audit_dr4(&t, &r, &AuditOptions::default()).unwrap();
        assert!(a.pass && a.path_balls.pass);
        assert!(a.max_dr4 <= 6);
        assert_eq!(a.histogram.values().sum::<usize>(), 6);
        assert_eq!(a.argmax_witnesses.len(), a.max_dr4);
    }
}
