//! Independent checking of certificates and cores.
//!
//! Everything here re-derives its verdict from the graph and the claimed
//! object alone, sharing no state with the code that produced the claim.
//! Certificate checks collect *all* violations rather than stopping at the
//! first, so a mutated certificate names every defect.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::SubdivisionCertificate;
use crate::connectivity::kappa_at_least;
use crate::digraph::{DiGraph, Dipath, VertexId};
use crate::extractor::{CoreReport, ExtractOptions, Params, VerificationMode};

/// One defect in a claimed subdivision or path family.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    #[error("certificate order {cert} does not match graph order {graph}")]
    OrderMismatch { cert: usize, graph: usize },
    #[error("branch vertex {v} is out of range")]
    BranchOutOfRange { v: VertexId },
    #[error("branch vertex {v} listed more than once")]
    DuplicateBranch { v: VertexId },
    #[error("no path for pair ({from}, {to})")]
    MissingPair { from: VertexId, to: VertexId },
    #[error("path pair ({from}, {to}) is not a pair of distinct branch vertices")]
    UnknownPair { from: VertexId, to: VertexId },
    #[error("more than one path for pair ({from}, {to})")]
    DuplicatePair { from: VertexId, to: VertexId },
    #[error("path ({}, {}): endpoint {v} is out of range", pair.0, pair.1)]
    EndpointOutOfRange { v: VertexId, pair: (VertexId, VertexId) },
    #[error("path endpoints ({}, {}) do not match ({}, {})", found.0, found.1, expected.0, expected.1)]
    EndpointMismatch { expected: (VertexId, VertexId), found: (VertexId, VertexId) },
    #[error("path ({}, {}): inner vertex {v} is out of range", pair.0, pair.1)]
    InnerOutOfRange { v: VertexId, pair: (VertexId, VertexId) },
    #[error("path ({}, {}): inner vertex {v} equals an endpoint", pair.0, pair.1)]
    InnerIsEndpoint { v: VertexId, pair: (VertexId, VertexId) },
    #[error("path ({}, {}): inner vertex {v} repeats within the path", pair.0, pair.1)]
    RepeatedInner { v: VertexId, pair: (VertexId, VertexId) },
    #[error("path ({}, {}): branch vertex {v} used as inner vertex", pair.0, pair.1)]
    BranchAsInner { v: VertexId, pair: (VertexId, VertexId) },
    #[error("path ({}, {}): edge {from} -> {to} is not in the graph", pair.0, pair.1)]
    EdgeMissing { from: VertexId, to: VertexId, pair: (VertexId, VertexId) },
    #[error("inner vertex {v} shared by paths ({}, {}) and ({}, {})", first.0, first.1, second.0, second.1)]
    SharedInner { v: VertexId, first: (VertexId, VertexId), second: (VertexId, VertexId) },
}

/// Checks a certificate against `g`: branch vertices distinct and in
/// range, exactly one path per ordered pair, every path a real dipath of
/// `g`, no branch vertex inside a path, all inner vertices distinct across
/// the whole family. Returns every violation found, sorted and deduplicated.
pub fn verify_certificate(g: &DiGraph, cert: &SubdivisionCertificate) -> Result<(), Vec<Violation>> {
    let order = g.order();
    let mut out = Vec::new();
    if cert.graph_order != order {
        out.push(Violation::OrderMismatch { cert: cert.graph_order, graph: order });
    }

    let mut counts: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &b in &cert.branch {
        *counts.entry(b).or_default() += 1;
    }
    for (&b, &c) in &counts {
        if b >= order {
            out.push(Violation::BranchOutOfRange { v: b });
        }
        if c > 1 {
            out.push(Violation::DuplicateBranch { v: b });
        }
    }
    let branch_set: BTreeSet<VertexId> = cert.branch.iter().copied().collect();

    let mut pair_count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut inner_owner: BTreeMap<VertexId, (VertexId, VertexId)> = BTreeMap::new();
    for path in &cert.paths {
        let pair = (path.source, path.target);
        if path.source != path.target
            && branch_set.contains(&path.source)
            && branch_set.contains(&path.target)
        {
            *pair_count.entry(pair).or_default() += 1;
        } else {
            out.push(Violation::UnknownPair { from: pair.0, to: pair.1 });
        }
        for v in [path.source, path.target] {
            if v >= order {
                out.push(Violation::EndpointOutOfRange { v, pair });
            }
        }
        let mut local = BTreeSet::new();
        for &v in &path.inner {
            if v >= order {
                out.push(Violation::InnerOutOfRange { v, pair });
            }
            if v == path.source || v == path.target {
                out.push(Violation::InnerIsEndpoint { v, pair });
            } else if branch_set.contains(&v) {
                out.push(Violation::BranchAsInner { v, pair });
            }
            if !local.insert(v) {
                out.push(Violation::RepeatedInner { v, pair });
            } else {
                match inner_owner.entry(v) {
                    Entry::Vacant(e) => {
                        e.insert(pair);
                    }
                    Entry::Occupied(e) => {
                        out.push(Violation::SharedInner { v, first: *e.get(), second: pair });
                    }
                }
            }
        }
        let seq: Vec<VertexId> = path.vertices().collect();
        for w in seq.windows(2) {
            if w[0] < order && w[1] < order && !g.has_edge(w[0], w[1]) {
                out.push(Violation::EdgeMissing { from: w[0], to: w[1], pair });
            }
        }
    }

    for &u in &branch_set {
        for &v in &branch_set {
            if u != v && !pair_count.contains_key(&(u, v)) {
                out.push(Violation::MissingPair { from: u, to: v });
            }
        }
    }
    for (&(from, to), &c) in &pair_count {
        if c > 1 {
            out.push(Violation::DuplicatePair { from, to });
        }
    }

    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Checks that `paths` is a family of internally disjoint dipaths of `g`
/// sharing one source and one target. Stops at the first defect.
pub fn verify_disjoint_family(g: &DiGraph, paths: &[Dipath]) -> Result<(), Violation> {
    let Some(first) = paths.first() else {
        return Ok(());
    };
    let expected = (first.source, first.target);
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for p in paths {
        let found = (p.source, p.target);
        if found != expected {
            return Err(Violation::EndpointMismatch { expected, found });
        }
        for v in [p.source, p.target] {
            if v >= g.order() {
                return Err(Violation::EndpointOutOfRange { v, pair: expected });
            }
        }
        let mut local = BTreeSet::new();
        for &v in &p.inner {
            if v >= g.order() {
                return Err(Violation::InnerOutOfRange { v, pair: expected });
            }
            if v == p.source || v == p.target {
                return Err(Violation::InnerIsEndpoint { v, pair: expected });
            }
            if !local.insert(v) {
                return Err(Violation::RepeatedInner { v, pair: expected });
            }
            if !used.insert(v) {
                return Err(Violation::SharedInner { v, first: expected, second: expected });
            }
        }
        let seq: Vec<VertexId> = p.vertices().collect();
        for w in seq.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Violation::EdgeMissing { from: w[0], to: w[1], pair: expected });
            }
        }
    }
    Ok(())
}

/// Re-derives the core conditions for a claimed vertex set, independently
/// of how it was found: induces the subdigraph, recomputes degrees and
/// high-indegree counts, and re-checks pair connectivity exhaustively
/// below the cap or by seeded sample above it. Thresholds use the order of
/// `g` and the given `d`.
pub fn verify_core(g: &DiGraph, vertices: &[VertexId], d: usize, opts: &ExtractOptions) -> CoreReport {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    assert!(
        vs.iter().all(|&v| v < g.order()),
        "core vertices must lie in the graph"
    );
    let params = Params::new(g.order(), d);
    let (sub, to_original) = g.induced_subdigraph(&vs);
    if d == 0 {
        return CoreReport {
            params,
            min_out_degree: sub.min_out_degree(),
            qualifying_count: sub.order(),
            condition_outdegree: true,
            condition_connectivity: true,
            condition_count: true,
            checked_pairs: Vec::new(),
            failing_pairs: Vec::new(),
            adjacent_pairs: 0,
            mode: VerificationMode::Exhaustive,
            trivial: true,
            vertices: to_original,
            subdigraph: sub,
        };
    }

    let order = sub.order();
    let qualifying: Vec<VertexId> = (0..order)
        .filter(|&v| params.indegree_qualifies(sub.in_degree(v)))
        .collect();

    let pairs: Vec<(VertexId, VertexId)>;
    let mode;
    if order <= opts.exhaustive_cap {
        pairs = qualifying
            .iter()
            .flat_map(|&y| (0..order).filter(move |&x| x != y).map(move |x| (x, y)))
            .collect();
        mode = VerificationMode::Exhaustive;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.sample_seed);
        let mut sample = Vec::with_capacity(opts.sample_size);
        if !qualifying.is_empty() && order >= 2 {
            while sample.len() < opts.sample_size {
                let x = rng.random_range(0..order);
                let y = qualifying[rng.random_range(0..qualifying.len())];
                if x != y {
                    sample.push((x, y));
                }
            }
        }
        mode = VerificationMode::Sampled { seed: opts.sample_seed, pairs: sample.len() };
        pairs = sample;
    }

    let req = params.kappa_requirement();
    let pair_ok =
        |&(x, y): &(VertexId, VertexId)| sub.has_edge(x, y) || kappa_at_least(&sub, x, y, req);
    let adjacent_pairs = pairs.iter().filter(|&&(x, y)| sub.has_edge(x, y)).count();
    let mut failing: Vec<(VertexId, VertexId)> = if opts.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("worker pool")
            .install(|| pairs.par_iter().filter(|p| !pair_ok(p)).copied().collect())
    } else {
        pairs.iter().filter(|p| !pair_ok(p)).copied().collect()
    };
    failing = failing
        .into_iter()
        .map(|(x, y)| (to_original[x], to_original[y]))
        .collect();
    failing.sort_unstable();
    failing.dedup();

    CoreReport {
        params,
        min_out_degree: sub.min_out_degree(),
        qualifying_count: qualifying.len(),
        condition_outdegree: params.outdegree_ok(sub.min_out_degree()),
        condition_connectivity: failing.is_empty(),
        condition_count: params.count_ok(qualifying.len()),
        checked_pairs: pairs
            .iter()
            .map(|&(x, y)| (to_original[x], to_original[y]))
            .collect(),
        failing_pairs: failing,
        adjacent_pairs,
        mode,
        trivial: false,
        vertices: to_original,
        subdigraph: sub,
    }
}
