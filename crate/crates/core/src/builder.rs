//! Greedy construction of a complete-digraph subdivision inside the
//! extracted core.
//!
//! After extraction the core is so well connected that a small set of
//! high-indegree branch vertices can be pairwise joined by short dipaths,
//! chosen greedily one ordered pair at a time: previously used inner
//! vertices and the other branch vertices are simply forbidden, and the
//! connectivity surplus guarantees a short path still exists. The target
//! order and the path length cap are exact integer bounds in the original
//! order `n` and parameter `d`.

use num_bigint::BigUint;
use thiserror::Error;

use crate::certificate::SubdivisionCertificate;
use crate::digraph::{DiGraph, Dipath, VertexId};
use crate::extractor::{extract_core, CoreReport, ExtractError, ExtractOptions, ExtractionTrace, Params};
use crate::verifier::verify_certificate;

/// Guaranteed subdivision order: `floor(sqrt(d^4 / (64 n^3)))`, evaluated
/// exactly in arbitrary precision.
pub fn order_bound(n: usize, d: usize) -> usize {
    if n == 0 {
        return 0;
    }
    assert!(d < n, "parameter d must be below the order");
    let d4 = BigUint::from(d).pow(4);
    let denom = BigUint::from(64u32) * BigUint::from(n).pow(3);
    let bound = (d4 / denom).sqrt();
    usize::try_from(&bound).expect("bound is below the order")
}

/// Cap on inner vertices per connecting dipath: `floor(8 n^2 / d^2)`.
pub fn short_bound(n: usize, d: usize) -> usize {
    assert!(d > 0, "path length cap needs a positive d");
    let bound = 8 * (n as u128).pow(2) / (d as u128).pow(2);
    usize::try_from(bound).expect("bound fits the platform")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("need {needed} branch candidates but only {available} vertices have high indegree")]
    NotEnoughBranchVertices { needed: usize, available: usize },
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// Greedy connection got stuck: no dipath within the length cap avoids
/// the forbidden set for this ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FailureReport {
    pub pair: (VertexId, VertexId),
    pub forbidden_len: usize,
    pub paths_completed: usize,
}

/// Resolved build parameters. `guarantee` is true when both the order and
/// the length cap came from the bounds rather than from overrides; in that
/// mode a failure to build is a bug, not a legitimate outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildPlan {
    pub target_order: usize,
    pub max_inner: usize,
    pub guarantee: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildOutcome {
    Certificate(SubdivisionCertificate),
    Stuck(FailureReport),
}

/// Everything a build produces: the outcome, the core it built in, the
/// extraction trace, and the resolved plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildRun {
    pub outcome: BuildOutcome,
    pub core: CoreReport,
    pub trace: ExtractionTrace,
    pub plan: BuildPlan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    /// Outdegree parameter; defaults to the minimum outdegree.
    pub d: Option<usize>,
    /// Override the subdivision order. Disables the guarantee.
    pub target_order: Option<usize>,
    /// Override the per-path inner vertex cap. Disables the guarantee.
    pub max_inner: Option<usize>,
    pub extract: ExtractOptions,
}

/// Picks `count` branch vertices: the high-indegree vertices of `h`,
/// by descending indegree with ties broken by ascending id.
pub fn select_branch_vertices(
    h: &DiGraph,
    params: Params,
    count: usize,
) -> Result<Vec<VertexId>, BuildError> {
    let mut qualifying: Vec<VertexId> = (0..h.order())
        .filter(|&v| params.indegree_qualifies(h.in_degree(v)))
        .collect();
    if qualifying.len() < count {
        return Err(BuildError::NotEnoughBranchVertices {
            needed: count,
            available: qualifying.len(),
        });
    }
    qualifying.sort_by_key(|&v| (std::cmp::Reverse(h.in_degree(v)), v));
    qualifying.truncate(count);
    Ok(qualifying)
}

/// Joins every ordered pair of branch vertices by a dipath with at most
/// `max_inner` inner vertices, greedily in branch-position order. Each
/// path must avoid the other branch vertices and all inner vertices used
/// so far, so the result is internally disjoint by construction.
pub fn connect_pairs_greedy(
    g: &DiGraph,
    branch: &[VertexId],
    max_inner: usize,
) -> Result<SubdivisionCertificate, FailureReport> {
    let mut branch_mask = vec![false; g.order()];
    for &b in branch {
        branch_mask[b] = true;
    }
    let mut used_inner: Vec<VertexId> = Vec::new();
    let mut paths = Vec::new();
    for &u in branch {
        for &v in branch {
            if u == v {
                continue;
            }
            let mut forbidden: Vec<VertexId> = branch
                .iter()
                .copied()
                .filter(|&b| b != u && b != v)
                .collect();
            forbidden.extend_from_slice(&used_inner);
            match g.shortest_dipath(u, v, &forbidden, max_inner) {
                Some(path) => {
                    used_inner.extend_from_slice(&path.inner);
                    paths.push(path);
                }
                None => {
                    return Err(FailureReport {
                        pair: (u, v),
                        forbidden_len: forbidden.len(),
                        paths_completed: paths.len(),
                    })
                }
            }
        }
    }
    Ok(SubdivisionCertificate {
        graph_order: g.order(),
        branch: branch.to_vec(),
        paths,
    })
}

/// Extracts the core of `g` and builds a complete-digraph subdivision in
/// it. Without overrides the order is [`order_bound`] and the length cap
/// [`short_bound`], and the build is guaranteed to succeed; with overrides
/// the greedy attempt may stall, reported as [`BuildOutcome::Stuck`]. The
/// certificate is stated in original vertex ids of `g` and re-verified
/// against `g` before being returned.
pub fn build_subdivision(g: &DiGraph, opts: &BuildOptions) -> Result<BuildRun, BuildError> {
    let (core, trace) = extract_core(g, opts.d, &opts.extract)?;
    let params = core.params;
    let n = params.n;
    let d = params.d;
    let guarantee = opts.target_order.is_none() && opts.max_inner.is_none();
    let target_order = opts.target_order.unwrap_or_else(|| order_bound(n, d));
    let max_inner = match opts.max_inner {
        Some(m) => m,
        None if target_order < 2 => 0,
        // d = 0 leaves the length bound undefined; the order must have been
        // overridden to reach here, so run best-effort with no length cap.
        None if d == 0 => n.saturating_sub(2),
        None => short_bound(n, d),
    };
    let plan = BuildPlan { target_order, max_inner, guarantee };

    if guarantee && target_order >= 1 {
        // the chosen order is small enough that the high-indegree count
        // bound alone supplies the branch vertices
        let lhs = BigUint::from(64u32)
            * BigUint::from(n).pow(3)
            * (BigUint::from(target_order).pow(2) - BigUint::from(1u32));
        if lhs >= BigUint::from(d).pow(4) {
            return Err(BuildError::InvariantViolation(format!(
                "target order {target_order} is not covered by the counting bound"
            )));
        }
    }

    let branch_local = match select_branch_vertices(&core.subdigraph, params, target_order) {
        Ok(b) => b,
        Err(e) if guarantee => {
            return Err(BuildError::InvariantViolation(format!(
                "guaranteed branch selection failed: {e}"
            )))
        }
        Err(e) => return Err(e),
    };

    let outcome = match connect_pairs_greedy(&core.subdigraph, &branch_local, max_inner) {
        Ok(local) => {
            let cert = SubdivisionCertificate {
                graph_order: g.order(),
                branch: local.branch.iter().map(|&b| core.vertices[b]).collect(),
                paths: local
                    .paths
                    .iter()
                    .map(|p| Dipath {
                        source: core.vertices[p.source],
                        target: core.vertices[p.target],
                        inner: p.inner.iter().map(|&v| core.vertices[v]).collect(),
                    })
                    .collect(),
            };
            if let Err(violations) = verify_certificate(g, &cert) {
                return Err(BuildError::InvariantViolation(format!(
                    "built certificate fails verification: {}",
                    violations
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                )));
            }
            BuildOutcome::Certificate(cert)
        }
        Err(fr) if guarantee => {
            return Err(BuildError::InvariantViolation(format!(
                "guaranteed connection stalled at pair ({}, {}) after {} paths",
                core.vertices[fr.pair.0], core.vertices[fr.pair.1], fr.paths_completed
            )))
        }
        Err(fr) => BuildOutcome::Stuck(FailureReport {
            pair: (core.vertices[fr.pair.0], core.vertices[fr.pair.1]),
            forbidden_len: fr.forbidden_len,
            paths_completed: fr.paths_completed,
        }),
    };

    Ok(BuildRun { outcome, core, trace, plan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DiGraph;
    use crate::generators::{complete_digraph, oriented_bipartite, two_cliques_bottleneck};

    #[test]
    fn order_bound_values() {
        assert_eq!(order_bound(400, 399), 2);
        assert_eq!(order_bound(1024, 900), 3);
        assert_eq!(order_bound(25, 11), 0);
        assert_eq!(order_bound(0, 0), 0);
        assert_eq!(order_bound(8, 0), 0);
    }

    #[test]
    fn order_bound_boundaries() {
        assert_eq!(order_bound(1024, 511), 0);
        assert_eq!(order_bound(1024, 512), 1);
        assert_eq!(order_bound(1024, 513), 1);
        assert_eq!(order_bound(1024, 724), 1);
        assert_eq!(order_bound(1024, 725), 2);
    }

    #[test]
    fn short_bound_values() {
        assert_eq!(short_bound(400, 399), 8);
        assert_eq!(short_bound(1024, 900), 10);
        assert_eq!(short_bound(4, 1), 128);
        assert_eq!(short_bound(10, 3), 88);
    }

    #[test]
    fn branch_selection_prefers_high_indegree() {
        let g = two_cliques_bottleneck(12);
        let params = Params::new(25, 11);
        // sink-clique vertices have indegree 12, source-clique 11
        assert_eq!(select_branch_vertices(&g, params, 3).unwrap(), vec![13, 14, 15]);
        let core = complete_digraph(12);
        assert_eq!(select_branch_vertices(&core, params, 2).unwrap(), vec![0, 1]);
        assert_eq!(
            select_branch_vertices(&core, params, 13),
            Err(BuildError::NotEnoughBranchVertices { needed: 13, available: 12 })
        );
    }

    #[test]
    fn greedy_connects_complete_graph_directly() {
        let g = complete_digraph(5);
        let cert = connect_pairs_greedy(&g, &[0, 1, 2], 0).unwrap();
        assert_eq!(cert.paths.len(), 6);
        assert!(cert.paths.iter().all(|p| p.inner.is_empty()));
        assert_eq!(cert.paths[0], Dipath { source: 0, target: 1, inner: vec![] });
    }

    #[test]
    fn greedy_reports_stall() {
        // 0 -> 2 -> 1 -> 0: the pair (0, 1) needs an inner vertex
        let g = DiGraph::from_edge_list(3, &[(0, 2), (2, 1), (1, 0)]).unwrap();
        let err = connect_pairs_greedy(&g, &[0, 1], 0).unwrap_err();
        assert_eq!(err.pair, (0, 1));
        assert_eq!(err.paths_completed, 0);
        let cert = connect_pairs_greedy(&g, &[0, 1], 1).unwrap();
        assert_eq!(cert.paths[0].inner, vec![2]);
        assert_eq!(cert.paths[1].inner, vec![]);
    }

    #[test]
    fn build_with_overrides() {
        let g = complete_digraph(6);
        let opts = BuildOptions {
            target_order: Some(3),
            max_inner: Some(1),
            ..BuildOptions::default()
        };
        let run = build_subdivision(&g, &opts).unwrap();
        assert!(!run.plan.guarantee);
        assert_eq!(run.plan.target_order, 3);
        let BuildOutcome::Certificate(cert) = run.outcome else {
            panic!("expected a certificate");
        };
        assert_eq!(cert.branch.len(), 3);
        assert_eq!(cert.paths.len(), 6);
    }

    #[test]
    fn guarantee_mode_small_graph_gives_empty_certificate() {
        let g = two_cliques_bottleneck(12);
        let run = build_subdivision(&g, &BuildOptions::default()).unwrap();
        assert!(run.plan.guarantee);
        assert_eq!(run.plan.target_order, 0);
        let BuildOutcome::Certificate(cert) = run.outcome else {
            panic!("expected a certificate");
        };
        assert!(cert.branch.is_empty());
        assert!(cert.paths.is_empty());
        assert_eq!(cert.graph_order, 25);
        assert_eq!(run.core.vertices, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn degree_zero_handling() {
        let g = oriented_bipartite(4);
        let run = build_subdivision(&g, &BuildOptions::default()).unwrap();
        assert!(matches!(run.outcome, BuildOutcome::Certificate(c) if c.branch.is_empty()));

        // an order override without a cap runs uncapped and stalls honestly:
        // the best-fed vertices are sinks
        let opts = BuildOptions { target_order: Some(2), ..BuildOptions::default() };
        let run = build_subdivision(&g, &opts).unwrap();
        let BuildOutcome::Stuck(fr) = run.outcome else {
            panic!("expected a stall");
        };
        assert_eq!(fr.pair, (4, 5));
        assert_eq!(run.plan.max_inner, 6);

        // an explicit cap stalls the same way
        let opts = BuildOptions {
            target_order: Some(2),
            max_inner: Some(2),
            ..BuildOptions::default()
        };
        let run = build_subdivision(&g, &opts).unwrap();
        let BuildOutcome::Stuck(fr) = run.outcome else {
            panic!("expected a stall");
        };
        assert_eq!(fr.pair, (4, 5));
        assert_eq!(fr.paths_completed, 0);
    }

    #[test]
    fn override_mode_surfaces_selection_error() {
        let g = complete_digraph(4);
        let opts = BuildOptions { target_order: Some(9), ..BuildOptions::default() };
        assert_eq!(
            build_subdivision(&g, &opts).unwrap_err(),
            BuildError::NotEnoughBranchVertices { needed: 9, available: 4 }
        );
    }
}
