//! Local vertex connectivity between ordered pairs, computed as max flow
//! on a split network: each vertex v becomes v_in -> v_out, the query pair
//! keeps unconstrained throughput, and augmentation runs shortest-path
//! first. Two capacity assignments are used: unit edge arcs count
//! internally disjoint dipaths, wide edge arcs force minimum cuts onto the
//! split arcs so a minimum vertex separator can be read off the residual
//! reachability. Queries never share state, so each builds its own network.

use std::collections::VecDeque;

use thiserror::Error;

use crate::digraph::{DiGraph, Dipath, VertexId};

/// Outcome of a separator query for a non-adjacent ordered pair, or
/// `Uncuttable` when the edge (x, y) is present and no separator exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationResult {
    Separator {
        /// Minimum separating set, ascending. Removing it leaves no x->y dipath.
        vertices: Vec<VertexId>,
        /// Matching count of internally disjoint x->y dipaths.
        path_count: usize,
    },
    Uncuttable,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph order {order} exceeds brute force bound {max}")]
pub struct TooLarge {
    pub order: usize,
    pub max: usize,
}

/// Largest order `brute_force_separator` accepts.
pub const BRUTE_FORCE_MAX_ORDER: usize = 15;

struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
    flow: i64,
}

struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    source: usize,
    sink: usize,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    /// Node 2v is v_in, node 2v+1 is v_out. Source is x_out, sink is y_in.
    /// Split arcs carry capacity 1 except at the query pair; edge arcs
    /// carry 1 when `unit_edges`, else a capacity exceeding any flow.
    fn new(g: &DiGraph, x: VertexId, y: VertexId, unit_edges: bool) -> FlowNetwork {
        let n = g.order();
        let wide = n as i64 + 1;
        let mut net = FlowNetwork {
            adj: (0..2 * n).map(|_| Vec::new()).collect(),
            source: 2 * x + 1,
            sink: 2 * y,
            level: vec![-1; 2 * n],
            cursor: vec![0; 2 * n],
        };
        for v in 0..n {
            let cap = if v == x || v == y { wide } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap);
        }
        let edge_cap = if unit_edges { 1 } else { wide };
        for u in 0..n {
            for &v in g.out_neighbors(u) {
                net.add_arc(2 * u + 1, 2 * v, edge_cap);
            }
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        let rev_in_to = self.adj[to].len();
        let rev_in_from = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            rev: rev_in_to,
            cap,
            flow: 0,
        });
        self.adj[to].push(Arc {
            to: from,
            rev: rev_in_from,
            cap: 0,
            flow: 0,
        });
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(-1);
        self.level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for a in &self.adj[v] {
                if a.cap - a.flow > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[self.sink] >= 0
    }

    fn dfs(&mut self, v: usize, budget: i64) -> i64 {
        if v == self.sink {
            return budget;
        }
        while self.cursor[v] < self.adj[v].len() {
            let i = self.cursor[v];
            let (to, residual) = {
                let a = &self.adj[v][i];
                (a.to, a.cap - a.flow)
            };
            if residual > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, budget.min(residual));
                if pushed > 0 {
                    let rev = self.adj[v][i].rev;
                    self.adj[v][i].flow += pushed;
                    self.adj[to][rev].flow -= pushed;
                    return pushed;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    /// Augments until `limit` is reached or no augmenting path remains.
    fn max_flow(&mut self, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.bfs() {
            self.cursor.fill(0);
            while total < limit {
                let pushed = self.dfs(self.source, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for a in &self.adj[v] {
                if a.cap - a.flow > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// Splits a unit-edge flow of value `count` into that many dipaths,
    /// consuming it. At every node the outgoing flow arcs are tried in
    /// construction order, which is ascending target id.
    fn decode_paths(&mut self, count: usize, x: VertexId, y: VertexId) -> Vec<Dipath> {
        let mut paths = Vec::with_capacity(count);
        for _ in 0..count {
            let mut verts = vec![x];
            let mut cur = self.source;
            let mut steps = 0usize;
            while cur != self.sink {
                let i = self.adj[cur]
                    .iter()
                    .position(|a| a.cap > 0 && a.flow > 0)
                    .expect("unit flow decomposes into source-sink paths");
                self.adj[cur][i].flow -= 1;
                cur = self.adj[cur][i].to;
                if cur % 2 == 0 {
                    verts.push(cur / 2);
                }
                steps += 1;
                assert!(steps <= self.adj.len(), "flow decode cycled");
            }
            let inner = verts[1..verts.len() - 1].to_vec();
            paths.push(Dipath {
                source: x,
                target: y,
                inner,
            });
        }
        paths
    }
}

fn check_pair(g: &DiGraph, x: VertexId, y: VertexId) {
    assert!(x < g.order() && y < g.order(), "query vertex out of range");
    assert!(x != y, "query endpoints coincide");
}

/// Number of vertices that are both out-neighbors of `x` and in-neighbors
/// of `y`. Each carries its own two-hop dipath, so for a non-adjacent pair
/// this is a lower bound on the disjoint path count.
fn common_out_in(g: &DiGraph, x: VertexId, y: VertexId) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    let (outs, ins) = (g.out_neighbors(x), g.in_neighbors(y));
    while i < outs.len() && j < ins.len() {
        match outs[i].cmp(&ins[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Maximum family of internally disjoint x->y dipaths, stopping early once
/// `limit` paths are found. Returns the count and the family itself.
pub fn max_disjoint_paths(
    g: &DiGraph,
    x: VertexId,
    y: VertexId,
    limit: Option<usize>,
) -> (usize, Vec<Dipath>) {
    check_pair(g, x, y);
    let budget = limit.map_or(i64::MAX, |k| k as i64);
    if budget == 0 {
        return (0, Vec::new());
    }
    let mut net = FlowNetwork::new(g, x, y, true);
    let flow = net.max_flow(budget) as usize;
    let paths = net.decode_paths(flow, x, y);
    (flow, paths)
}

/// Minimum vertex set separating `y` from `x`, or `Uncuttable` when the
/// edge (x, y) makes separation impossible.
pub fn min_vertex_separator(g: &DiGraph, x: VertexId, y: VertexId) -> SeparationResult {
    check_pair(g, x, y);
    if g.has_edge(x, y) {
        return SeparationResult::Uncuttable;
    }
    let mut net = FlowNetwork::new(g, x, y, false);
    let flow = net.max_flow(i64::MAX) as usize;
    let seen = net.residual_reachable();
    let vertices: Vec<VertexId> = (0..g.order())
        .filter(|&v| v != x && v != y && seen[2 * v] && !seen[2 * v + 1])
        .collect();
    assert_eq!(vertices.len(), flow, "separator size must equal max flow");
    assert!(
        g.vertices_reaching(y, &vertices).binary_search(&x).is_err(),
        "separator must disconnect the pair"
    );
    SeparationResult::Separator {
        vertices,
        path_count: flow,
    }
}

/// Local vertex connectivity of the ordered pair. For an adjacent pair no
/// separator exists and the defined cap |G| - 2 is returned; otherwise the
/// value is the disjoint path count, which Menger duality ties to the
/// minimum separator size.
pub fn kappa(g: &DiGraph, x: VertexId, y: VertexId) -> usize {
    check_pair(g, x, y);
    if g.has_edge(x, y) {
        return g.order() - 2;
    }
    let (count, _) = max_disjoint_paths(g, x, y, None);
    count.min(g.order() - 2)
}

/// Whether `kappa(g, x, y) >= k`, with flow augmentation stopped as soon
/// as the answer is decided. A common-neighbor count certifies large
/// connectivity without running any flow.
pub fn kappa_at_least(g: &DiGraph, x: VertexId, y: VertexId, k: usize) -> bool {
    check_pair(g, x, y);
    if k == 0 {
        return true;
    }
    if g.has_edge(x, y) {
        return g.order() - 2 >= k;
    }
    if g.order() - 2 < k {
        return false;
    }
    if common_out_in(g, x, y) >= k {
        return true;
    }
    let mut net = FlowNetwork::new(g, x, y, true);
    net.max_flow(k as i64) as usize >= k
}

/// Reference implementation: tries every candidate subset in ascending
/// size, lexicographic within a size, and returns the first that cuts all
/// x->y dipaths. Only for orders up to [`BRUTE_FORCE_MAX_ORDER`].
pub fn brute_force_separator(
    g: &DiGraph,
    x: VertexId,
    y: VertexId,
) -> Result<SeparationResult, TooLarge> {
    if g.order() > BRUTE_FORCE_MAX_ORDER {
        return Err(TooLarge {
            order: g.order(),
            max: BRUTE_FORCE_MAX_ORDER,
        });
    }
    check_pair(g, x, y);
    if g.has_edge(x, y) {
        return Ok(SeparationResult::Uncuttable);
    }
    let candidates: Vec<VertexId> = (0..g.order()).filter(|&v| v != x && v != y).collect();
    for size in 0..=candidates.len() {
        let mut chosen = Vec::with_capacity(size);
        if let Some(vertices) = first_cut(g, x, y, &candidates, &mut chosen, 0, size) {
            let path_count = vertices.len();
            return Ok(SeparationResult::Separator {
                vertices,
                path_count,
            });
        }
    }
    unreachable!("removing all candidates separates any non-adjacent pair");
}

fn first_cut(
    g: &DiGraph,
    x: VertexId,
    y: VertexId,
    candidates: &[VertexId],
    chosen: &mut Vec<VertexId>,
    start: usize,
    remaining: usize,
) -> Option<Vec<VertexId>> {
    if remaining == 0 {
        let cuts = g.vertices_reaching(y, chosen).binary_search(&x).is_err();
        return cuts.then(|| chosen.clone());
    }
    for i in start..=candidates.len() - remaining {
        chosen.push(candidates[i]);
        if let Some(s) = first_cut(g, x, y, candidates, chosen, i + 1, remaining - 1) {
            return Some(s);
        }
        chosen.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> DiGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        DiGraph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> DiGraph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        DiGraph::from_edge_list(n, &edges).unwrap()
    }

    /// All inner-vertex sets of simple x->y dipaths, as bitmasks.
    fn simple_path_inners(g: &DiGraph, x: VertexId, y: VertexId) -> Vec<u64> {
        assert!(g.order() <= 32);
        fn go(
            g: &DiGraph,
            cur: VertexId,
            y: VertexId,
            visited: &mut Vec<bool>,
            inner: u64,
            out: &mut Vec<u64>,
        ) {
            if cur == y {
                out.push(inner);
                return;
            }
            for &w in g.out_neighbors(cur) {
                if !visited[w] {
                    visited[w] = true;
                    let bit = if w == y { 0 } else { 1 << w };
                    go(g, w, y, visited, inner | bit, out);
                    visited[w] = false;
                }
            }
        }
        let mut out = Vec::new();
        let mut visited = vec![false; g.order()];
        visited[x] = true;
        go(g, x, y, &mut visited, 0, &mut out);
        out
    }

    /// Largest subfamily with pairwise disjoint inner sets, by exhaustive
    /// branch and bound. Independent of the flow engine.
    fn packing_oracle(g: &DiGraph, x: VertexId, y: VertexId) -> usize {
        let paths = simple_path_inners(g, x, y);
        assert!(paths.len() <= 24, "oracle limited to small families");
        fn pack(paths: &[u64], used: u64, idx: usize, count: usize, best: &mut usize) {
            *best = (*best).max(count);
            if idx == paths.len() || count + (paths.len() - idx) <= *best {
                return;
            }
            if paths[idx] & used == 0 {
                pack(paths, used | paths[idx], idx + 1, count + 1, best);
            }
            pack(paths, used, idx + 1, count, best);
        }
        let mut best = 0;
        pack(&paths, 0, 0, 0, &mut best);
        best
    }

    fn assert_family_disjoint(paths: &[Dipath]) {
        let mut seen = std::collections::HashSet::new();
        for p in paths {
            for &v in &p.inner {
                assert!(seen.insert(v), "inner vertex {v} reused across paths");
            }
        }
    }

    #[test]
    fn five_cycle_has_single_path() {
        let g = cycle(5);
        let (count, paths) = max_disjoint_paths(&g, 0, 2, None);
        assert_eq!(count, 1);
        assert_eq!(paths[0].inner, vec![1]);
    }

    #[test]
    fn complete_four_has_three_paths() {
        let g = complete(4);
        let (count, paths) = max_disjoint_paths(&g, 0, 2, None);
        assert_eq!(count, packing_oracle(&g, 0, 2));
        assert_eq!(count, 3);
        assert!(paths.iter().all(|p| p.is_valid_in(&g)));
        assert_family_disjoint(&paths);
        // direct edge plus the two two-hop routes
        assert!(paths.iter().any(|p| p.inner.is_empty()));
    }

    #[test]
    fn oracle_agrees_on_complete_five() {
        let g = complete(5);
        let (count, paths) = max_disjoint_paths(&g, 1, 3, None);
        assert_eq!(count, packing_oracle(&g, 1, 3));
        assert_eq!(count, 4);
        assert!(paths.iter().all(|p| p.is_valid_in(&g)));
        assert_family_disjoint(&paths);
    }

    #[test]
    fn oriented_bipartite_single_direct_path() {
        // classes {0,1,2} -> {3,4,5}, edges one way only
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = DiGraph::from_edge_list(6, &edges).unwrap();
        let (count, paths) = max_disjoint_paths(&g, 0, 3, None);
        assert_eq!(count, 1);
        assert!(paths[0].inner.is_empty());
    }

    #[test]
    fn limit_stops_augmentation() {
        let g = complete(4);
        let (count, paths) = max_disjoint_paths(&g, 0, 2, Some(2));
        assert_eq!(count, 2);
        assert_eq!(paths.len(), 2);
        assert_family_disjoint(&paths);
        let (zero, none) = max_disjoint_paths(&g, 0, 2, Some(0));
        assert_eq!((zero, none.len()), (0, 0));
        // a limit above the maximum changes nothing
        assert_eq!(max_disjoint_paths(&g, 0, 2, Some(9)).0, 3);
    }

    #[test]
    fn separator_on_path_graph() {
        let g = DiGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            min_vertex_separator(&g, 0, 2),
            SeparationResult::Separator {
                vertices: vec![1],
                path_count: 1
            }
        );
    }

    #[test]
    fn separator_bottleneck_single_relay() {
        // two 2-cliques joined through vertex 2
        let g = DiGraph::from_edge_list(
            5,
            &[(0, 1), (1, 0), (3, 4), (4, 3), (0, 2), (2, 3), (2, 4)],
        )
        .unwrap();
        assert_eq!(
            min_vertex_separator(&g, 0, 3),
            SeparationResult::Separator {
                vertices: vec![2],
                path_count: 1
            }
        );
    }

    #[test]
    fn separator_direct_edge_uncuttable() {
        let g = complete(3);
        assert_eq!(min_vertex_separator(&g, 0, 1), SeparationResult::Uncuttable);
    }

    #[test]
    fn separator_empty_for_unreachable_pair() {
        let g = DiGraph::from_edge_list(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(
            min_vertex_separator(&g, 0, 2),
            SeparationResult::Separator {
                vertices: vec![],
                path_count: 0
            }
        );
    }

    #[test]
    fn brute_force_matches_flow_small_cases() {
        let g = DiGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            brute_force_separator(&g, 0, 2).unwrap(),
            SeparationResult::Separator {
                vertices: vec![1],
                path_count: 1
            }
        );
        let k4 = complete(4);
        assert_eq!(
            brute_force_separator(&k4, 0, 1).unwrap(),
            SeparationResult::Uncuttable
        );
    }

    #[test]
    fn brute_force_on_complete_minus_edge() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 0..4 {
                if u != v && (u, v) != (0, 1) {
                    edges.push((u, v));
                }
            }
        }
        let g = DiGraph::from_edge_list(4, &edges).unwrap();
        let SeparationResult::Separator {
            vertices,
            path_count,
        } = brute_force_separator(&g, 0, 1).unwrap()
        else {
            panic!("pair is not adjacent");
        };
        assert_eq!(vertices, vec![2, 3]);
        assert_eq!(path_count, 2);
        assert_eq!(min_vertex_separator(&g, 0, 1), brute_force_separator(&g, 0, 1).unwrap());
    }

    #[test]
    fn brute_force_rejects_large_graphs() {
        let g = complete(16);
        assert_eq!(
            brute_force_separator(&g, 0, 1).unwrap_err(),
            TooLarge { order: 16, max: 15 }
        );
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&cycle(5), 0, 2), 1);
        // adjacent pairs report the defined cap
        assert_eq!(kappa(&complete(4), 0, 1), 2);
        let split = DiGraph::from_edge_list(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(kappa(&split, 0, 2), 0);
    }

    #[test]
    fn kappa_at_least_matches_exact_value() {
        let graphs = [
            cycle(5),
            complete(4),
            complete(5),
            DiGraph::from_edge_list(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap(),
            DiGraph::from_edge_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            for x in 0..g.order() {
                for y in 0..g.order() {
                    if x == y {
                        continue;
                    }
                    let exact = kappa(g, x, y);
                    for k in 0..=g.order() {
                        assert_eq!(
                            kappa_at_least(g, x, y, k),
                            exact >= k,
                            "x={x} y={y} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decode_order_is_deterministic() {
        let g = complete(4);
        let (_, first) = max_disjoint_paths(&g, 0, 2, None);
        let (_, second) = max_disjoint_paths(&g, 0, 2, None);
        assert_eq!(first, second);
    }
}
