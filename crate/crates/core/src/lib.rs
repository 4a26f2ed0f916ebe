//! Algorithms for loop-free digraphs: local vertex connectivity via
//! unit-capacity max flow, extraction of highly connected cores from
//! digraphs of large minimum outdegree, and greedy construction of
//! complete-digraph subdivisions inside such cores, together with an
//! independent verifier for the resulting certificates.

#![forbid(unsafe_code)]

pub mod builder;
pub mod certificate;
pub mod connectivity;
pub mod digraph;
pub mod extractor;
pub mod generators;
pub mod io;
pub mod verifier;

pub use builder::{
    build_subdivision, connect_pairs_greedy, order_bound, select_branch_vertices, short_bound,
    BuildError, BuildOptions, BuildOutcome, BuildPlan, BuildRun, FailureReport,
};
pub use certificate::{read_certificate, write_certificate, CertParseError, SubdivisionCertificate};
pub use connectivity::{
    brute_force_separator, kappa, kappa_at_least, max_disjoint_paths, min_vertex_separator,
    SeparationResult, TooLarge,
};
pub use digraph::{DiGraph, Dipath, GraphError, VertexId};
pub use extractor::{
    extract_core, extract_step, find_violating_pair, CoreReport, ExtractError, ExtractOptions,
    ExtractStep, ExtractionTrace, IterationRecord, Params, VerificationMode, ViolatingPair,
};
pub use generators::{
    complete_bipartite_digraph, complete_digraph, oriented_bipartite, random_out_regular,
    two_cliques_bottleneck,
};
pub use io::{read_digraph, write_digraph, ParseError};
pub use verifier::{verify_certificate, verify_core, verify_disjoint_family, Violation};
