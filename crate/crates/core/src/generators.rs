//! Deterministic graph families for the command line tool and the suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{DiGraph, VertexId};

/// Complete digraph on `k` vertices: every ordered pair is an edge.
pub fn complete_digraph(k: usize) -> DiGraph {
    let mut edges = Vec::with_capacity(k.saturating_sub(1) * k);
    for u in 0..k {
        for v in 0..k {
            if u != v {
                edges.push((u, v));
            }
        }
    }
    DiGraph::from_edge_list(k, &edges).expect("generated edges are valid")
}

/// Complete bipartite digraph with classes `[0, m)` and `[m, 2m)`: both
/// orientations between the classes, nothing inside a class.
pub fn complete_bipartite_digraph(m: usize) -> DiGraph {
    let mut edges = Vec::with_capacity(2 * m * m);
    for u in 0..m {
        for v in m..2 * m {
            edges.push((u, v));
            edges.push((v, u));
        }
    }
    DiGraph::from_edge_list(2 * m, &edges).expect("generated edges are valid")
}

/// Bipartite digraph oriented one way: all edges go from `[0, m)` to
/// `[m, 2m)`, so the second class consists of sinks and the minimum
/// outdegree is zero.
pub fn oriented_bipartite(m: usize) -> DiGraph {
    let mut edges = Vec::with_capacity(m * m);
    for u in 0..m {
        for v in m..2 * m {
            edges.push((u, v));
        }
    }
    DiGraph::from_edge_list(2 * m, &edges).expect("generated edges are valid")
}

/// Two complete digraphs of order `a` joined through a single relay:
/// vertices `[0, a)` form the source clique, vertex `a` is the relay,
/// `[a+1, 2a+1)` form the sink clique. Vertex 0 feeds the relay and the
/// relay feeds every sink-clique vertex, so every crossing dipath passes
/// through the relay. Minimum outdegree is `a - 1`.
pub fn two_cliques_bottleneck(a: usize) -> DiGraph {
    assert!(a >= 2, "cliques need at least two vertices");
    let relay = a;
    let n = 2 * a + 1;
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..a {
            if u != v {
                edges.push((u, v));
            }
        }
    }
    for u in a + 1..n {
        for v in a + 1..n {
            if u != v {
                edges.push((u, v));
            }
        }
    }
    edges.push((0, relay));
    for v in a + 1..n {
        edges.push((relay, v));
    }
    DiGraph::from_edge_list(n, &edges).expect("generated edges are valid")
}

/// Random digraph in which every vertex has exactly `d` out-neighbors,
/// drawn uniformly without replacement from the other vertices.
///
/// Fully deterministic for a given `(n, d, seed)`: a single ChaCha8 stream
/// seeded with `seed` serves vertices in ascending order, and each vertex
/// takes `d` draws by partial Fisher-Yates over its candidate list.
pub fn random_out_regular(n: usize, d: usize, seed: u64) -> DiGraph {
    assert!(d == 0 || d < n, "outdegree must leave room for distinct targets");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * d);
    for v in 0..n {
        let mut pool: Vec<VertexId> = (0..n).filter(|&u| u != v).collect();
        for i in 0..d {
            let j = rng.random_range(i..pool.len());
            pool.swap(i, j);
            edges.push((v, pool[i]));
        }
    }
    DiGraph::from_edge_list(n, &edges).expect("generated edges are valid")
}
