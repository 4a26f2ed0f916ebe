//! Loop-free digraphs over dense vertex ids `0..n`.
//!
//! Both orientations of a pair may be present, but each ordered pair occurs
//! at most once. Adjacency lists are kept sorted ascending, which makes
//! graph construction canonical and every traversal in this crate
//! deterministic. Graphs are immutable after construction.

use std::collections::HashSet;

use thiserror::Error;

/// Index of a vertex, valid iff it is below the order of its host graph.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0}, {0})")]
    LoopEdge(VertexId),
    #[error("edge ({u}, {v}) out of range for order {order}")]
    OutOfRange { u: VertexId, v: VertexId, order: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: VertexId, v: VertexId },
}

/// Directed path from `source` to `target` through `inner`, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dipath {
    pub source: VertexId,
    pub target: VertexId,
    pub inner: Vec<VertexId>,
}

impl Dipath {
    /// All vertices along the path: source, inner vertices, target.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::once(self.source)
            .chain(self.inner.iter().copied())
            .chain(std::iter::once(self.target))
    }

    /// Consecutive hops along the path.
    pub fn hops(&self) -> Vec<(VertexId, VertexId)> {
        let verts: Vec<VertexId> = self.vertices().collect();
        verts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Structural validity in `g`: distinct endpoints, inner vertices
    /// distinct and disjoint from the endpoints, every hop an edge of `g`.
    pub fn is_valid_in(&self, g: &DiGraph) -> bool {
        if self.source == self.target {
            return false;
        }
        let mut seen = HashSet::new();
        for v in self.inner.iter().copied() {
            if v == self.source || v == self.target || !seen.insert(v) {
                return false;
            }
        }
        self.vertices().all(|v| v < g.order())
            && self.hops().iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// Immutable digraph with sorted out- and in-adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl DiGraph {
    /// Builds a digraph on `order` vertices from an edge list. Rejects
    /// loops, out-of-range endpoints, and duplicate ordered pairs; the
    /// first offender in input order is reported.
    pub fn from_edge_list(
        order: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<DiGraph, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(GraphError::OutOfRange { u, v, order });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
        }
        let mut out_adj = vec![Vec::new(); order];
        let mut in_adj = vec![Vec::new(); order];
        for &(u, v) in edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(DiGraph {
            out_adj,
            in_adj,
            edge_count: edges.len(),
        })
    }

    pub fn order(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    /// Minimum outdegree; 0 for the empty graph.
    pub fn min_out_degree(&self) -> usize {
        self.out_adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Minimum indegree; 0 for the empty graph.
    pub fn min_in_degree(&self) -> usize {
        self.in_adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }

    /// Subdigraph induced on `keep` (duplicates ignored), plus the
    /// relabeling: entry `i` of the returned map is the original id of the
    /// new vertex `i`. New ids follow ascending original ids.
    pub fn induced_subdigraph(&self, keep: &[VertexId]) -> (DiGraph, Vec<VertexId>) {
        let mut mask = vec![false; self.order()];
        for &v in keep {
            assert!(v < self.order(), "induced_subdigraph: vertex out of range");
            mask[v] = true;
        }
        let to_original: Vec<VertexId> = (0..self.order()).filter(|&v| mask[v]).collect();
        let mut to_new = vec![usize::MAX; self.order()];
        for (new, &old) in to_original.iter().enumerate() {
            to_new[old] = new;
        }
        let mut out_adj = vec![Vec::new(); to_original.len()];
        let mut in_adj = vec![Vec::new(); to_original.len()];
        let mut edge_count = 0;
        for (new_u, &old_u) in to_original.iter().enumerate() {
            for &old_v in &self.out_adj[old_u] {
                if mask[old_v] {
                    out_adj[new_u].push(to_new[old_v]);
                    in_adj[to_new[old_v]].push(new_u);
                    edge_count += 1;
                }
            }
        }
        // out lists inherit sortedness; in lists are filled by ascending source
        (
            DiGraph {
                out_adj,
                in_adj,
                edge_count,
            },
            to_original,
        )
    }

    /// Vertices from which `target` is reachable in the graph minus
    /// `forbidden`, `target` included. `target` must not be forbidden.
    pub fn vertices_reaching(&self, target: VertexId, forbidden: &[VertexId]) -> Vec<VertexId> {
        let mut blocked = vec![false; self.order()];
        for &v in forbidden {
            blocked[v] = true;
        }
        assert!(!blocked[target], "vertices_reaching: target is forbidden");
        let mut seen = vec![false; self.order()];
        seen[target] = true;
        let mut queue = std::collections::VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.in_adj[v] {
                if !blocked[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        (0..self.order()).filter(|&v| seen[v]).collect()
    }

    /// Vertices connected to `start` when edge directions are ignored and
    /// `removed` is deleted, `start` included. `start` must not be removed.
    pub fn undirected_component(&self, start: VertexId, removed: &[VertexId]) -> Vec<VertexId> {
        let mut blocked = vec![false; self.order()];
        for &v in removed {
            blocked[v] = true;
        }
        assert!(!blocked[start], "undirected_component: start is removed");
        let mut seen = vec![false; self.order()];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in self.out_adj[v].iter().chain(self.in_adj[v].iter()) {
                if !blocked[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        (0..self.order()).filter(|&v| seen[v]).collect()
    }

    /// Shortest dipath from `x` to `y` whose inner vertices avoid
    /// `forbidden` and number at most `max_inner`. Breadth-first with
    /// ascending neighbor order, so among shortest paths the one whose
    /// vertex sequence is lexicographically least is returned.
    pub fn shortest_dipath(
        &self,
        x: VertexId,
        y: VertexId,
        forbidden: &[VertexId],
        max_inner: usize,
    ) -> Option<Dipath> {
        assert!(x != y, "shortest_dipath: endpoints coincide");
        let mut blocked = vec![false; self.order()];
        for &v in forbidden {
            blocked[v] = true;
        }
        assert!(
            !blocked[x] && !blocked[y],
            "shortest_dipath: endpoint is forbidden"
        );
        let mut parent = vec![usize::MAX; self.order()];
        let mut dist = vec![usize::MAX; self.order()];
        dist[x] = 0;
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            if v == y {
                break;
            }
            // a hop to y from depth max_inner is still allowed
            if dist[v] > max_inner {
                break;
            }
            for &w in &self.out_adj[v] {
                if dist[w] == usize::MAX && (w == y || !blocked[w]) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if dist[y] == usize::MAX || dist[y] > max_inner + 1 {
            return None;
        }
        let mut inner = Vec::with_capacity(dist[y].saturating_sub(1));
        let mut v = parent[y];
        while v != x {
            inner.push(v);
            v = parent[v];
        }
        inner.reverse();
        Some(Dipath {
            source: x,
            target: y,
            inner,
        })
    }
}
