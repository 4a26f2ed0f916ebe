//! Extraction of a highly connected core from a digraph of large minimum
//! outdegree.
//!
//! Given a digraph whose minimum outdegree is at least `d`, repeatedly look
//! for an ordered pair `(x, y)` with `y` of high indegree that a small
//! vertex set separates, delete everything that still reaches `y` after the
//! separator is removed, and keep the weakly connected piece containing
//! `x`. Every removal is charged against the separator budget, so the
//! minimum outdegree degrades slowly while the order shrinks quickly; the
//! loop must therefore stop at a subdigraph on which every such pair is
//! well connected. All threshold comparisons are exact cross-multiplied
//! integer arithmetic against the *original* order `n` and the parameter
//! `d`, never floating point.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::connectivity::{kappa_at_least, min_vertex_separator, SeparationResult};
use crate::digraph::{DiGraph, VertexId};

/// Threshold context fixed at the start of an extraction: the order `n`
/// and outdegree parameter `d` of the input graph. All predicates compare
/// in `u128` so no intermediate product can overflow or round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    pub d: usize,
}

impl Params {
    pub fn new(n: usize, d: usize) -> Params {
        assert!(d == 0 || d < n, "parameter d must be below the order");
        Params { n, d }
    }

    /// A vertex with indegree `deg` counts as a high-indegree target when
    /// `2 * deg >= d`.
    pub fn indegree_qualifies(&self, deg: usize) -> bool {
        2 * deg as u128 >= self.d as u128
    }

    /// Final outdegree requirement: `2 * min_out > d`.
    pub fn outdegree_ok(&self, min_out: usize) -> bool {
        2 * min_out as u128 > self.d as u128
    }

    /// Connectivity requirement for a checked pair: `4 n kappa >= d^2`.
    pub fn kappa_ok(&self, kappa: usize) -> bool {
        4 * self.n as u128 * kappa as u128 >= (self.d as u128).pow(2)
    }

    /// High-indegree population requirement: `4 n count >= d^2`.
    pub fn count_ok(&self, count: usize) -> bool {
        4 * self.n as u128 * count as u128 >= (self.d as u128).pow(2)
    }

    /// Smallest `k` with `4 n k >= d^2`, i.e. `ceil(d^2 / 4n)`. A pair is
    /// violating exactly when its local connectivity is below this.
    pub fn kappa_requirement(&self) -> usize {
        if self.d == 0 {
            return 0;
        }
        let d2 = (self.d as u128).pow(2);
        let denom = 4 * self.n as u128;
        d2.div_ceil(denom) as usize
    }
}

/// One extraction iteration: the pair that was cut, the separator size,
/// and the order and minimum outdegree of the graph *after* the cut.
/// Vertex ids refer to the original input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationRecord {
    pub index: usize,
    pub order: usize,
    pub min_out_degree: usize,
    pub x: VertexId,
    pub y: VertexId,
    pub separator_size: usize,
    pub removed: usize,
}

/// Full history of an extraction run, checkable on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub params: Params,
    pub initial_order: usize,
    pub initial_min_out_degree: usize,
    pub iterations: Vec<IterationRecord>,
}

pub const TRACE_HEADER: &str = "extraction-trace v1";

impl ExtractionTrace {
    pub fn write<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{TRACE_HEADER}")?;
        writeln!(w, "iter,order,min_outdeg,x,y,sep_size,removed")?;
        for r in &self.iterations {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.index, r.order, r.min_out_degree, r.x, r.y, r.separator_size, r.removed
            )?;
        }
        Ok(())
    }

    /// Re-checks every quantitative guarantee of the run from the recorded
    /// numbers alone. Returns a description of the first failure.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.params.n as i128;
        let d = self.params.d as i128;
        if d == 0 {
            if self.iterations.is_empty() {
                return Ok(());
            }
            return Err("iterations recorded although d = 0".into());
        }
        let mut prev_order = self.initial_order;
        let mut prev_min = self.initial_min_out_degree;
        for (pos, r) in self.iterations.iter().enumerate() {
            let i = r.index as i128;
            if r.index != pos + 1 {
                return Err(format!("iteration indices not consecutive at {}", r.index));
            }
            if r.order + r.removed != prev_order {
                return Err(format!(
                    "iteration {}: order {} plus removed {} does not match previous order {}",
                    r.index, r.order, r.removed, prev_order
                ));
            }
            // each cut removes the target and all its surviving in-neighbors
            if r.removed < self.params.d.div_ceil(2) {
                return Err(format!(
                    "iteration {}: removed only {} vertices, below ceil(d/2) = {}",
                    r.index,
                    r.removed,
                    self.params.d.div_ceil(2)
                ));
            }
            // outdegree loses at most the separator size per cut
            if r.min_out_degree + r.separator_size < prev_min {
                return Err(format!(
                    "iteration {}: minimum outdegree fell from {} to {} across a separator of size {}",
                    r.index, prev_min, r.min_out_degree, r.separator_size
                ));
            }
            // separators are below threshold by choice of the pair
            if 4 * n * r.separator_size as i128 >= d * d {
                return Err(format!(
                    "iteration {}: separator size {} is not below the threshold",
                    r.index, r.separator_size
                ));
            }
            // accumulated outdegree loss after i cuts stays above 4nd - i d^2
            if 4 * n * n * (r.min_out_degree as i128) < (4 * n * d - i * d * d) * n {
                return Err(format!(
                    "iteration {}: minimum outdegree {} below the degradation bound",
                    r.index, r.min_out_degree
                ));
            }
            prev_order = r.order;
            prev_min = r.min_out_degree;
        }
        let r = self.iterations.len() as i128;
        // the loop cannot run long: each cut costs order, and order is finite
        if r * d >= 2 * n {
            return Err(format!("{r} iterations is too many for the removal bound"));
        }
        if d < n && r * d * (2 * n - d) >= 4 * n * (n - d) {
            return Err(format!("{r} iterations exceeds the separator budget"));
        }
        if 2 * prev_order as i128 + r * d > 2 * n {
            return Err(format!(
                "final order {prev_order} is too large after {r} iterations"
            ));
        }
        if 2 * prev_min as i128 <= d {
            return Err(format!(
                "final minimum outdegree {prev_min} does not exceed d/2"
            ));
        }
        Ok(())
    }
}

/// An ordered pair whose local connectivity is below the threshold,
/// together with a minimum separator witnessing that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolatingPair {
    pub x: VertexId,
    pub y: VertexId,
    pub separator: Vec<VertexId>,
}

/// Tuning knobs for [`extract_core`]. Defaults verify exhaustively up to
/// order 100, otherwise sample 500 pairs with seed 0, scan in canonical
/// order, and run single threaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Verify all pairs when the final order is at most this.
    pub exhaustive_cap: usize,
    /// Number of sampled pairs above the cap.
    pub sample_size: usize,
    /// Seed for the pair sample.
    pub sample_seed: u64,
    /// Randomize the scan order of the search for a violating pair. The
    /// result set is scan-order independent; only which witness is found
    /// first changes.
    pub scan_shuffle_seed: Option<u64>,
    /// Worker threads for pair checking; 0 or 1 means sequential.
    pub threads: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            exhaustive_cap: 100,
            sample_size: 500,
            sample_seed: 0,
            scan_shuffle_seed: None,
            threads: 1,
        }
    }
}

/// How the final subdigraph was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationMode {
    Exhaustive,
    Sampled { seed: u64, pairs: usize },
}

/// Result of an extraction: the core subdigraph, in original vertex ids,
/// plus the outcome of the three final conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    pub params: Params,
    /// Vertices of the core, ascending original ids.
    pub vertices: Vec<VertexId>,
    /// The core itself; vertex `i` is `vertices[i]`.
    pub subdigraph: DiGraph,
    pub min_out_degree: usize,
    /// Number of core vertices of high indegree within the core.
    pub qualifying_count: usize,
    /// `2 * min_out_degree > d`.
    pub condition_outdegree: bool,
    /// Every checked pair met the connectivity threshold.
    pub condition_connectivity: bool,
    /// `4 n qualifying_count >= d^2`.
    pub condition_count: bool,
    /// Pairs checked for the connectivity condition, original ids.
    pub checked_pairs: Vec<(VertexId, VertexId)>,
    /// Checked pairs that failed, original ids, sorted and deduplicated.
    pub failing_pairs: Vec<(VertexId, VertexId)>,
    /// Checked pairs joined by an edge. No vertex set separates such a
    /// pair, so they satisfy the connectivity condition by convention;
    /// this count surfaces how often that convention was used.
    pub adjacent_pairs: usize,
    pub mode: VerificationMode,
    /// True when `d = 0`: the graph itself is returned and all three
    /// conditions hold vacuously at threshold zero.
    pub trivial: bool,
}

impl CoreReport {
    pub fn conditions_hold(&self) -> bool {
        self.condition_outdegree && self.condition_connectivity && self.condition_count
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("parameter d = {d} exceeds the minimum outdegree {min_out}")]
    Precondition { d: usize, min_out: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("extraction emptied the graph")]
    EmptyResult,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), ExtractError> {
    if cond {
        Ok(())
    } else {
        Err(ExtractError::InvariantViolation(msg()))
    }
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("worker pool")
        .install(f)
}

/// Checks one ordered pair against the connectivity threshold and returns
/// a witness separator if it falls short. Pairs joined by an edge cannot
/// be separated at all and always pass.
fn pair_violation(h: &DiGraph, req: usize, x: VertexId, y: VertexId) -> Option<ViolatingPair> {
    if x == y || h.has_edge(x, y) {
        return None;
    }
    if kappa_at_least(h, x, y, req) {
        return None;
    }
    match min_vertex_separator(h, x, y) {
        SeparationResult::Separator { vertices, .. } => Some(ViolatingPair { x, y, separator: vertices }),
        SeparationResult::Uncuttable => unreachable!("non-adjacent pairs are cuttable"),
    }
}

/// Scans for an ordered pair `(x, y)` with `y` of high indegree whose
/// local connectivity is below `ceil(d^2 / 4n)`.
///
/// Canonical scan order: targets `y` by descending indegree with ties
/// ascending, sources `x` ascending, pairs joined by an edge skipped. With
/// `shuffle_seed` set the pair list is shuffled first (ChaCha8), which
/// exercises scan-order independence of the overall extraction. `threads`
/// above 1 checks pairs in parallel but still reports the scan-order-first
/// hit.
pub fn find_violating_pair(
    h: &DiGraph,
    params: Params,
    shuffle_seed: Option<u64>,
    threads: usize,
) -> Option<ViolatingPair> {
    let order = h.order();
    if params.d == 0 || order < 2 {
        return None;
    }
    let req = params.kappa_requirement();
    let mut targets: Vec<VertexId> = (0..order)
        .filter(|&v| params.indegree_qualifies(h.in_degree(v)))
        .collect();
    targets.sort_by_key(|&v| (std::cmp::Reverse(h.in_degree(v)), v));

    if let Some(seed) = shuffle_seed {
        let mut pairs: Vec<(VertexId, VertexId)> = targets
            .iter()
            .flat_map(|&y| (0..order).filter(move |&x| x != y).map(move |x| (x, y)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..pairs.len()).rev() {
            pairs.swap(i, rng.random_range(0..=i));
        }
        if threads > 1 {
            return with_pool(threads, || {
                pairs
                    .par_iter()
                    .find_map_first(|&(x, y)| pair_violation(h, req, x, y))
            });
        }
        return pairs
            .iter()
            .find_map(|&(x, y)| pair_violation(h, req, x, y));
    }

    if threads > 1 {
        return with_pool(threads, || {
            targets.par_iter().find_map_first(|&y| {
                (0..order).find_map(|x| pair_violation(h, req, x, y))
            })
        });
    }
    targets
        .iter()
        .find_map(|&y| (0..order).find_map(|x| pair_violation(h, req, x, y)))
}

/// Result of one cut: the kept subdigraph, its vertex map into the parent
/// graph, and how many vertices disappeared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractStep {
    pub subgraph: DiGraph,
    pub to_parent: Vec<VertexId>,
    pub removed: usize,
}

/// Performs one cut: removes the separator together with everything that
/// reaches `y` without it, and keeps the weakly connected piece containing
/// `x`. Checks en route that the piece really is sealed off (no edge
/// re-enters the removed side except through the separator) and that the
/// quantitative guarantees of the cut hold.
pub fn extract_step(
    h: &DiGraph,
    x: VertexId,
    y: VertexId,
    separator: &[VertexId],
    params: Params,
) -> Result<ExtractStep, ExtractError> {
    let order = h.order();
    assert!(x < order && y < order && x != y, "pair must be two distinct vertices");
    assert!(
        separator.iter().all(|&s| s < order && s != x && s != y),
        "separator must avoid the pair"
    );
    ensure(params.indegree_qualifies(h.in_degree(y)), || {
        format!("target {y} lacks the required indegree")
    })?;

    let mut sep_mask = vec![false; order];
    for &s in separator {
        sep_mask[s] = true;
    }
    let reaching = h.vertices_reaching(y, separator);
    ensure(!reaching.contains(&x), || {
        format!("separator fails to cut {x} from {y}")
    })?;
    let mut reach_mask = vec![false; order];
    for &v in &reaching {
        reach_mask[v] = true;
    }
    // the reaching set is closed: an edge into it from outside the
    // separator would extend it
    for u in 0..order {
        if reach_mask[u] || sep_mask[u] {
            continue;
        }
        for &v in h.out_neighbors(u) {
            ensure(!reach_mask[v], || {
                format!("edge {u} -> {v} re-enters the removed side")
            })?;
        }
    }

    let mut removed_set: Vec<VertexId> = reaching.iter().chain(separator).copied().collect();
    removed_set.sort_unstable();
    removed_set.dedup();
    let component = h.undirected_component(x, &removed_set);
    let (subgraph, to_parent) = h.induced_subdigraph(&component);
    ensure(subgraph.order() > 0, || "kept component is empty".into())?;

    let mut comp_mask = vec![false; order];
    for &v in &component {
        comp_mask[v] = true;
    }
    // out-edges of the kept component may leave only into the separator,
    // so induced outdegrees drop by at most the separator size
    for &u in &component {
        for &v in h.out_neighbors(u) {
            ensure(comp_mask[v] || sep_mask[v], || {
                format!("edge {u} -> {v} escapes the kept component")
            })?;
        }
    }
    ensure(
        subgraph.min_out_degree() + separator.len() >= h.min_out_degree(),
        || {
            format!(
                "minimum outdegree fell from {} to {} across a separator of size {}",
                h.min_out_degree(),
                subgraph.min_out_degree(),
                separator.len()
            )
        },
    )?;

    let removed = order - subgraph.order();
    // y leaves together with all its surviving in-neighbors
    ensure(removed >= params.d.div_ceil(2) + 1, || {
        format!("cut removed only {removed} vertices")
    })?;

    Ok(ExtractStep { subgraph, to_parent, removed })
}

/// Runs the extraction loop on `g` and returns the core with its final
/// condition report plus the full iteration trace.
///
/// `d` defaults to the minimum outdegree of `g`; passing a larger value is
/// a precondition error. With `d = 0` the graph itself is the core and the
/// report is marked trivial. The returned ids are original ids of `g`.
pub fn extract_core(
    g: &DiGraph,
    d: Option<usize>,
    opts: &ExtractOptions,
) -> Result<(CoreReport, ExtractionTrace), ExtractError> {
    let min_out = g.min_out_degree();
    let d = d.unwrap_or(min_out);
    if d > min_out {
        return Err(ExtractError::Precondition { d, min_out });
    }
    let params = Params::new(g.order(), d);
    if d == 0 {
        let report = CoreReport {
            params,
            vertices: (0..g.order()).collect(),
            subdigraph: g.clone(),
            min_out_degree: min_out,
            qualifying_count: g.order(),
            condition_outdegree: true,
            condition_connectivity: true,
            condition_count: true,
            checked_pairs: Vec::new(),
            failing_pairs: Vec::new(),
            adjacent_pairs: 0,
            mode: VerificationMode::Exhaustive,
            trivial: true,
        };
        let trace = ExtractionTrace {
            params,
            initial_order: g.order(),
            initial_min_out_degree: min_out,
            iterations: Vec::new(),
        };
        return Ok((report, trace));
    }

    let mut current = g.clone();
    let mut to_original: Vec<VertexId> = (0..g.order()).collect();
    let mut iterations = Vec::new();
    while let Some(vp) = find_violating_pair(&current, params, opts.scan_shuffle_seed, opts.threads)
    {
        let step = extract_step(&current, vp.x, vp.y, &vp.separator, params)?;
        iterations.push(IterationRecord {
            index: iterations.len() + 1,
            order: step.subgraph.order(),
            min_out_degree: step.subgraph.min_out_degree(),
            x: to_original[vp.x],
            y: to_original[vp.y],
            separator_size: vp.separator.len(),
            removed: step.removed,
        });
        to_original = step.to_parent.iter().map(|&p| to_original[p]).collect();
        current = step.subgraph;
        ensure(iterations.len() <= g.order(), || {
            "more iterations than vertices".into()
        })?;
    }
    let trace = ExtractionTrace {
        params,
        initial_order: g.order(),
        initial_min_out_degree: min_out,
        iterations,
    };
    trace
        .check_invariants()
        .map_err(ExtractError::InvariantViolation)?;

    let report = evaluate_core(current, to_original, params, opts);
    Ok((report, trace))
}

/// Builds the final report: re-derives the three conditions on the core,
/// checking pairs exhaustively below the cap and by seeded sample above it.
fn evaluate_core(
    subdigraph: DiGraph,
    to_original: Vec<VertexId>,
    params: Params,
    opts: &ExtractOptions,
) -> CoreReport {
    let order = subdigraph.order();
    let min_out = subdigraph.min_out_degree();
    let qualifying: Vec<VertexId> = (0..order)
        .filter(|&v| params.indegree_qualifies(subdigraph.in_degree(v)))
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
        mode = VerificationMode::Sampled {
            seed: opts.sample_seed,
            pairs: sample.len(),
        };
        pairs = sample;
    }

    let req = params.kappa_requirement();
    let pair_ok = |&(x, y): &(VertexId, VertexId)| {
        subdigraph.has_edge(x, y) || kappa_at_least(&subdigraph, x, y, req)
    };
    let adjacent_pairs = pairs
        .iter()
        .filter(|&&(x, y)| subdigraph.has_edge(x, y))
        .count();
    let mut failing: Vec<(VertexId, VertexId)> = if opts.threads > 1 {
        with_pool(opts.threads, || {
            pairs.par_iter().filter(|p| !pair_ok(p)).copied().collect()
        })
    } else {
        pairs.iter().filter(|p| !pair_ok(p)).copied().collect()
    };
    failing = failing
        .into_iter()
        .map(|(x, y)| (to_original[x], to_original[y]))
        .collect();
    failing.sort_unstable();
    failing.dedup();

    let checked_pairs = pairs
        .iter()
        .map(|&(x, y)| (to_original[x], to_original[y]))
        .collect();
    CoreReport {
        params,
        min_out_degree: min_out,
        qualifying_count: qualifying.len(),
        condition_outdegree: params.outdegree_ok(min_out),
        condition_connectivity: failing.is_empty(),
        condition_count: params.count_ok(qualifying.len()),
        checked_pairs,
        failing_pairs: failing,
        adjacent_pairs,
        mode,
        trivial: false,
        vertices: to_original,
        subdigraph,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_digraph, random_out_regular, two_cliques_bottleneck};

    #[test]
    fn params_thresholds() {
        let p = Params::new(25, 11);
        assert!(p.indegree_qualifies(6) && !p.indegree_qualifies(5));
        assert_eq!(p.kappa_requirement(), 2);
        assert!(!p.kappa_ok(1) && p.kappa_ok(2));
        assert!(p.outdegree_ok(6) && !p.outdegree_ok(5));
        assert!(p.count_ok(2) && !p.count_ok(1));

        let big = Params::new(400, 399);
        assert_eq!(big.kappa_requirement(), 100);
        assert!(big.kappa_ok(398));

        let zero = Params::new(7, 0);
        assert_eq!(zero.kappa_requirement(), 0);
        assert!(zero.indegree_qualifies(0));
    }

    #[test]
    #[should_panic(expected = "below the order")]
    fn params_reject_d_at_order() {
        Params::new(5, 5);
    }

    #[test]
    fn complete_graph_has_no_violating_pair() {
        let g = complete_digraph(12);
        assert_eq!(find_violating_pair(&g, Params::new(25, 11), None, 1), None);
    }

    #[test]
    fn bottleneck_violating_pair() {
        let g = two_cliques_bottleneck(12);
        let vp = find_violating_pair(&g, Params::new(25, 11), None, 1).unwrap();
        assert_eq!((vp.x, vp.y), (0, 13));
        assert_eq!(vp.separator, vec![12]);
    }

    #[test]
    fn zero_parameter_never_violates() {
        let g = two_cliques_bottleneck(3);
        assert_eq!(find_violating_pair(&g, Params::new(7, 0), None, 1), None);
    }

    #[test]
    fn step_cuts_bottleneck_to_source_clique() {
        let g = two_cliques_bottleneck(12);
        let step = extract_step(&g, 0, 13, &[12], Params::new(25, 11)).unwrap();
        assert_eq!(step.removed, 13);
        assert_eq!(step.to_parent, (0..12).collect::<Vec<_>>());
        assert_eq!(step.subgraph, complete_digraph(12));
    }

    #[test]
    fn step_rejects_non_separator() {
        let g = two_cliques_bottleneck(12);
        let err = extract_step(&g, 0, 13, &[14], Params::new(25, 11)).unwrap_err();
        assert!(matches!(err, ExtractError::InvariantViolation(_)));
    }

    #[test]
    fn core_of_bottleneck_example() {
        let g = two_cliques_bottleneck(12);
        let (report, trace) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        assert_eq!(trace.iterations.len(), 1);
        assert_eq!(
            trace.iterations[0],
            IterationRecord {
                index: 1,
                order: 12,
                min_out_degree: 11,
                x: 0,
                y: 13,
                separator_size: 1,
                removed: 13,
            }
        );
        assert_eq!(report.vertices, (0..12).collect::<Vec<_>>());
        assert!(report.conditions_hold());
        assert!(!report.trivial);
        assert_eq!(report.qualifying_count, 12);
        assert_eq!(report.mode, VerificationMode::Exhaustive);
        assert!(report.failing_pairs.is_empty());
        let mut out = Vec::new();
        trace.write(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "extraction-trace v1\niter,order,min_outdeg,x,y,sep_size,removed\n1,12,11,0,13,1,13\n"
        );
    }

    #[test]
    fn small_bottleneck_cuts_once_and_keeps_relay_side() {
        // scan order reaches (x=relay, y=0) first: the sink clique cannot
        // reach vertex 0 at all, so the empty set separates the pair
        let g = two_cliques_bottleneck(3);
        let (report, trace) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        assert_eq!(trace.iterations.len(), 1);
        assert_eq!(trace.iterations[0].x, 3);
        assert_eq!(trace.iterations[0].y, 0);
        assert_eq!(trace.iterations[0].separator_size, 0);
        assert_eq!(report.vertices, vec![3, 4, 5, 6]);
        assert!(report.conditions_hold());
    }

    #[test]
    fn trivial_extraction_returns_graph() {
        let g = crate::generators::oriented_bipartite(4);
        let (report, trace) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        assert!(report.trivial);
        assert!(report.conditions_hold());
        assert_eq!(report.vertices.len(), 8);
        assert!(trace.iterations.is_empty());
        assert_eq!(trace.params.d, 0);
    }

    #[test]
    fn precondition_rejects_large_d() {
        let g = complete_digraph(5);
        let err = extract_core(&g, Some(5), &ExtractOptions::default()).unwrap_err();
        assert_eq!(err, ExtractError::Precondition { d: 5, min_out: 4 });
    }

    #[test]
    fn random_graph_core_is_scan_order_independent() {
        let g = random_out_regular(60, 10, 42);
        let base = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        for seed in [1, 7, 99] {
            let opts = ExtractOptions {
                scan_shuffle_seed: Some(seed),
                ..ExtractOptions::default()
            };
            let (report, trace) = extract_core(&g, None, &opts).unwrap();
            assert!(report.conditions_hold());
            trace.check_invariants().unwrap();
            assert!(base.0.conditions_hold());
        }
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let g = two_cliques_bottleneck(8);
        let p = Params::new(17, 7);
        let seq = find_violating_pair(&g, p, None, 1);
        let par = find_violating_pair(&g, p, None, 4);
        assert_eq!(seq, par);
        let opts = ExtractOptions { threads: 4, ..ExtractOptions::default() };
        let (report, _) = extract_core(&g, None, &opts).unwrap();
        let (base, _) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        assert_eq!(report, base);
    }

    #[test]
    fn trace_invariants_reject_tampering() {
        let g = two_cliques_bottleneck(12);
        let (_, trace) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        assert_eq!(trace.check_invariants(), Ok(()));
        let mut bad = trace.clone();
        bad.iterations[0].separator_size = 5;
        assert!(bad.check_invariants().is_err());
        let mut bad = trace.clone();
        bad.iterations[0].removed = 2;
        assert!(bad.check_invariants().is_err());
        let mut bad = trace;
        bad.iterations[0].min_out_degree = 3;
        assert!(bad.check_invariants().is_err());
    }
}
