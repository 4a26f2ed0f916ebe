//! Randomized structural properties, checked against independent oracles
//! where one exists (reachability closure, disjoint-path packing by brute
//! force, separator minimality by subset search).

use proptest::prelude::*;
use subdiv_core::{
    brute_force_separator, connect_pairs_greedy, extract_core, kappa, kappa_at_least,
    max_disjoint_paths, min_vertex_separator, random_out_regular, read_certificate, read_digraph,
    verify_certificate, verify_disjoint_family, write_certificate, write_digraph, DiGraph, Dipath,
    ExtractOptions, SeparationResult, SubdivisionCertificate, VertexId,
};

fn small_digraph() -> impl Strategy<Value = DiGraph> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..n * n).prop_map(move |raw| {
            let mut edges: Vec<(VertexId, VertexId)> =
                raw.into_iter().filter(|&(u, v)| u != v).collect();
            edges.sort_unstable();
            edges.dedup();
            DiGraph::from_edge_list(n, &edges).unwrap()
        })
    })
}

/// Plain boolean reachability avoiding a forbidden set, by saturation.
fn reaches(g: &DiGraph, from: VertexId, to: VertexId, forbidden: &[VertexId]) -> bool {
    let n = g.order();
    let mut ok = vec![false; n];
    ok[to] = true;
    loop {
        let mut changed = false;
        for u in 0..n {
            if ok[u] || forbidden.contains(&u) || u == to {
                continue;
            }
            if g.out_neighbors(u)
                .iter()
                .any(|&v| ok[v] && !forbidden.contains(&v))
            {
                ok[u] = true;
                changed = true;
            }
        }
        if !changed {
            return ok[from];
        }
    }
}

proptest! {
    #[test]
    fn degree_sums_match_edge_count(g in small_digraph()) {
        let out_sum: usize = (0..g.order()).map(|v| g.out_degree(v)).sum();
        let in_sum: usize = (0..g.order()).map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(out_sum, g.edge_count());
        prop_assert_eq!(in_sum, g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn digraph_text_roundtrip(g in small_digraph()) {
        let mut buf = Vec::new();
        write_digraph(&mut buf, &g).unwrap();
        let back = read_digraph(&buf[..]).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn induced_composition(g in small_digraph(), mask1 in proptest::collection::vec(any::<bool>(), 8), mask2 in proptest::collection::vec(any::<bool>(), 8)) {
        let first: Vec<VertexId> = (0..g.order()).filter(|&v| mask1[v]).collect();
        let (h, to_g) = g.induced_subdigraph(&first);
        let second: Vec<VertexId> = (0..h.order()).filter(|&v| mask2[to_g[v]]).collect();
        let (hh, to_h) = h.induced_subdigraph(&second);
        let direct_set: Vec<VertexId> = (0..g.order()).filter(|&v| mask1[v] && mask2[v]).collect();
        let (direct, to_g_direct) = g.induced_subdigraph(&direct_set);
        let composed: Vec<VertexId> = to_h.iter().map(|&v| to_g[v]).collect();
        prop_assert_eq!(hh, direct);
        prop_assert_eq!(composed, to_g_direct);
    }

    #[test]
    fn reaching_set_matches_saturation(g in small_digraph(), target_pick in any::<proptest::sample::Index>(), forb in proptest::collection::vec(any::<bool>(), 8)) {
        let target = target_pick.index(g.order());
        let forbidden: Vec<VertexId> = (0..g.order()).filter(|&v| v != target && forb[v]).collect();
        let reaching = g.vertices_reaching(target, &forbidden);
        for v in 0..g.order() {
            let expect = !forbidden.contains(&v) && reaches(&g, v, target, &forbidden);
            prop_assert_eq!(reaching.contains(&v), expect, "vertex {}", v);
        }
    }

    #[test]
    fn shortest_path_is_valid_and_minimal(g in small_digraph(), picks in any::<[proptest::sample::Index; 2]>()) {
        let x = picks[0].index(g.order());
        let y = picks[1].index(g.order());
        prop_assume!(x != y);
        let found = g.shortest_dipath(x, y, &[], g.order());
        match found {
            Some(p) => {
                prop_assert!(p.is_valid_in(&g));
                prop_assert_eq!((p.source, p.target), (x, y));
                // no strictly shorter connection: BFS distance agrees
                for shorter in 0..p.inner.len() {
                    prop_assert!(g.shortest_dipath(x, y, &[], shorter).is_none());
                }
            }
            None => prop_assert!(!reaches(&g, x, y, &[])),
        }
    }

    #[test]
    fn menger_duality_small(g in small_digraph(), picks in any::<[proptest::sample::Index; 2]>()) {
        let x = picks[0].index(g.order());
        let y = picks[1].index(g.order());
        prop_assume!(x != y);
        let (count, paths) = max_disjoint_paths(&g, x, y, None);
        prop_assert_eq!(count, paths.len());
        prop_assert_eq!(verify_disjoint_family(&g, &paths), Ok(()));
        let brute = brute_force_separator(&g, x, y).unwrap();
        let flow = min_vertex_separator(&g, x, y);
        match (brute, flow) {
            (SeparationResult::Uncuttable, SeparationResult::Uncuttable) => {
                prop_assert!(g.has_edge(x, y));
            }
            (
                SeparationResult::Separator { vertices: bs, .. },
                SeparationResult::Separator { vertices: fs, .. },
            ) => {
                prop_assert_eq!(bs.len(), fs.len());
                prop_assert_eq!(fs.len(), count);
                prop_assert!(!reaches(&g, x, y, &fs));
            }
            (b, f) => prop_assert!(false, "disagree: {:?} vs {:?}", b, f),
        }
        let k = kappa(&g, x, y);
        for req in 0..=g.order() + 1 {
            prop_assert_eq!(kappa_at_least(&g, x, y, req), k >= req, "req {}", req);
        }
    }

    #[test]
    fn extraction_invariants_on_random_regular(n in 6usize..40, frac in 1usize..4, seed in 0u64..500) {
        let d = (n / (2 * frac)).max(1);
        let g = random_out_regular(n, d, seed);
        let (report, trace) = extract_core(&g, None, &ExtractOptions::default()).unwrap();
        prop_assert_eq!(trace.check_invariants(), Ok(()));
        prop_assert!(report.conditions_hold(), "failing pairs: {:?}", report.failing_pairs);
        prop_assert!(report.vertices.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(report.vertices.iter().all(|&v| v < n));
        prop_assert_eq!(report.subdigraph.order(), report.vertices.len());
    }

    #[test]
    fn greedy_certificates_verify(k in 2usize..6) {
        let g = subdiv_core::complete_digraph(k);
        let branch: Vec<VertexId> = (0..k).collect();
        let cert = connect_pairs_greedy(&g, &branch, 0).unwrap();
        prop_assert_eq!(verify_certificate(&g, &cert), Ok(()));
        prop_assert_eq!(cert.paths.len(), k * (k - 1));
    }

    #[test]
    fn certificate_text_roundtrip(
        graph_order in 0usize..60,
        branch in proptest::collection::vec(0usize..60, 0..6),
        raw_paths in proptest::collection::vec(
            (0usize..60, 0usize..60, proptest::collection::vec(0usize..60, 0..4)),
            0..8,
        ),
    ) {
        // the text format is purely syntactic, so arbitrary ids round-trip
        let cert = SubdivisionCertificate {
            graph_order,
            branch,
            paths: raw_paths
                .into_iter()
                .map(|(source, target, inner)| Dipath { source, target, inner })
                .collect(),
        };
        let mut buf = Vec::new();
        write_certificate(&mut buf, &cert).unwrap();
        let back = read_certificate(&buf[..]).unwrap();
        prop_assert_eq!(back, cert);
    }
}
