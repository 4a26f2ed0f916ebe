//! Command line front end: generate digraphs, inspect local connectivity,
//! extract highly connected cores, build complete-digraph subdivision
//! certificates, and verify them.
//!
//! Exit codes: 0 success, 1 verification violations or failed conditions,
//! 2 parse or usage errors, 3 precondition errors, 4 internal invariant
//! violations, 5 best-effort build got stuck. Every run echoes a `# run:`
//! line from which it can be reproduced; threshold values are printed as
//! integer cross-products with a decimal approximation alongside.

use std::fmt::Display;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subdiv_core::{
    build_subdivision, complete_bipartite_digraph, complete_digraph, extract_core, kappa,
    max_disjoint_paths, order_bound, oriented_bipartite, random_out_regular, read_certificate,
    read_digraph, short_bound, two_cliques_bottleneck, verify_certificate, write_certificate,
    write_digraph, BuildError, BuildOptions, BuildOutcome, CoreReport, DiGraph, ExtractError,
    ExtractOptions, Params, VerificationMode,
};

const EXIT_VIOLATIONS: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_PRECONDITION: i32 = 3;
const EXIT_INVARIANT: i32 = 4;
const EXIT_STUCK: i32 = 5;

#[derive(Parser)]
#[command(name = "subdiv", version, about = "digraph cores and complete-digraph subdivisions")]
struct Cli {
    /// Worker threads for pair checking; defaults to SUBDIV_THREADS or 1.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a digraph from a named family and write it to a file.
    Gen(GenArgs),
    /// Print order, size, degrees, bounds, and high-indegree count.
    Stats { file: PathBuf },
    /// Local connectivity of one ordered pair, optionally with a
    /// maximum family of internally disjoint dipaths.
    Kappa(KappaArgs),
    /// Extract a highly connected core and report its conditions.
    Extract(ExtractArgs),
    /// Extract a core and build a complete-digraph subdivision inside it.
    Subdivide(SubdivideArgs),
    /// Check a subdivision certificate against a digraph.
    Verify { graph: PathBuf, cert: PathBuf },
}

#[derive(ValueEnum, Clone, Copy)]
enum Family {
    Complete,
    BipartiteDigraph,
    OrientedBipartite,
    Bottleneck,
    RandomOutRegular,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Order, for complete and random-out-regular.
    #[arg(long)]
    n: Option<usize>,
    /// Class size, for the bipartite families.
    #[arg(long)]
    m: Option<usize>,
    /// Clique size, for bottleneck.
    #[arg(long)]
    a: Option<usize>,
    /// Outdegree, for random-out-regular.
    #[arg(long)]
    d: Option<usize>,
    /// Generator seed, for random-out-regular.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct KappaArgs {
    file: PathBuf,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Stop counting disjoint paths at this value.
    #[arg(long)]
    limit: Option<usize>,
    /// Also print a maximum family of internally disjoint dipaths.
    #[arg(long)]
    paths: bool,
}

#[derive(Args)]
struct ExtractArgs {
    file: PathBuf,
    /// Outdegree parameter; defaults to the minimum outdegree.
    #[arg(long)]
    d: Option<usize>,
    /// Write the iteration trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Check all pairs when the core order is at most this.
    #[arg(long, default_value_t = 100)]
    exhaustive_cap: usize,
    /// Number of sampled pairs above the cap.
    #[arg(long, default_value_t = 500)]
    sample: usize,
    /// Seed for the pair sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SubdivideArgs {
    file: PathBuf,
    /// Outdegree parameter; defaults to the minimum outdegree.
    #[arg(long)]
    d: Option<usize>,
    /// Override the subdivision order (disables the guarantee).
    #[arg(long)]
    order: Option<usize>,
    /// Override the per-path inner vertex cap (disables the guarantee).
    #[arg(long)]
    max_inner: Option<usize>,
    #[arg(short, long)]
    output: PathBuf,
    /// Write the iteration trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn fail(code: i32, msg: impl Display) -> ! {
    eprintln!("error: {msg}");
    exit(code);
}

fn load_graph(path: &Path) -> DiGraph {
    let file = File::open(path)
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())));
    read_digraph(BufReader::new(file))
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> BufWriter<File> {
    let file = File::create(path)
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())));
    BufWriter::new(file)
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("SUBDIV_THREADS").ok()?.parse().ok())
        .unwrap_or(1)
        .max(1)
}

fn main() {
    let cli = Cli::parse();
    let threads = resolve_threads(cli.threads);
    match cli.command {
        Command::Gen(args) => run_gen(&args, threads),
        Command::Stats { file } => run_stats(&file, threads),
        Command::Kappa(args) => run_kappa(&args, threads),
        Command::Extract(args) => run_extract(&args, threads),
        Command::Subdivide(args) => run_subdivide(&args, threads),
        Command::Verify { graph, cert } => run_verify(&graph, &cert, threads),
    }
}

fn run_gen(args: &GenArgs, threads: usize) {
    let need = |name: &str, v: Option<usize>| {
        v.unwrap_or_else(|| fail(EXIT_PARSE, format!("this family needs --{name}")))
    };
    let (graph, desc) = match args.family {
        Family::Complete => {
            let n = need("n", args.n);
            (complete_digraph(n), format!("--family complete --n {n}"))
        }
        Family::BipartiteDigraph => {
            let m = need("m", args.m);
            (complete_bipartite_digraph(m), format!("--family bipartite-digraph --m {m}"))
        }
        Family::OrientedBipartite => {
            let m = need("m", args.m);
            (oriented_bipartite(m), format!("--family oriented-bipartite --m {m}"))
        }
        Family::Bottleneck => {
            let a = need("a", args.a);
            if a < 2 {
                fail(EXIT_PRECONDITION, "--a must be at least 2");
            }
            (two_cliques_bottleneck(a), format!("--family bottleneck --a {a}"))
        }
        Family::RandomOutRegular => {
            let n = need("n", args.n);
            let d = need("d", args.d);
            if d > 0 && d >= n {
                fail(EXIT_PRECONDITION, "--d must be below --n");
            }
            (
                random_out_regular(n, d, args.seed),
                format!("--family random-out-regular --n {n} --d {d} --seed {}", args.seed),
            )
        }
    };
    println!(
        "# run: subdiv gen {desc} --threads {threads} --output {}",
        args.output.display()
    );
    println!("n {}", graph.order());
    println!("m {}", graph.edge_count());
    write_digraph(create(&args.output), &graph)
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", args.output.display())));
    println!("wrote {}", args.output.display());
}

fn run_stats(file: &Path, threads: usize) {
    let g = load_graph(file);
    println!("# run: subdiv stats {} --threads {threads}", file.display());
    let n = g.order();
    let d = g.min_out_degree();
    println!("n {n}");
    println!("m {}", g.edge_count());
    println!("min-outdegree {d}");
    println!("min-indegree {}", g.min_in_degree());
    if d == 0 {
        println!("order-bound 0");
        println!("short-bound 0");
    } else {
        let d4 = (d as u128).pow(4);
        let n3 = 64 * (n as u128).pow(3);
        println!(
            "order-bound {} # d^4 = {d4}, 64 n^3 = {n3}, ratio ~ {:.4}",
            order_bound(n, d),
            d4 as f64 / n3 as f64
        );
        let n2 = 8 * (n as u128).pow(2);
        let d2 = (d as u128).pow(2);
        println!(
            "short-bound {} # 8 n^2 = {n2}, d^2 = {d2}, ratio ~ {:.4}",
            short_bound(n, d),
            n2 as f64 / d2 as f64
        );
    }
    let params = Params::new(n, d);
    let qualifying = (0..n).filter(|&v| params.indegree_qualifies(g.in_degree(v))).count();
    println!("qualifying {qualifying}");
}

fn run_kappa(args: &KappaArgs, threads: usize) {
    let g = load_graph(&args.file);
    let (x, y) = (args.from, args.to);
    if x >= g.order() || y >= g.order() || x == y {
        fail(EXIT_PRECONDITION, "--from and --to must be distinct vertices of the graph");
    }
    print!("# run: subdiv kappa {} --from {x} --to {y}", args.file.display());
    if let Some(k) = args.limit {
        print!(" --limit {k}");
    }
    if args.paths {
        print!(" --paths");
    }
    println!(" --threads {threads}");
    println!("order {}", g.order());
    let adjacent = g.has_edge(x, y);
    if adjacent {
        println!("uncuttable yes # edge from {x} to {y}, no separator exists");
    } else {
        println!("uncuttable no");
    }
    let value = match args.limit {
        None => kappa(&g, x, y),
        Some(k) => {
            let (count, _) = max_disjoint_paths(&g, x, y, Some(k));
            let capped = count.min(g.order().saturating_sub(2));
            println!("limited {}", if count == k { "yes" } else { "no" });
            if adjacent {
                g.order() - 2
            } else {
                capped
            }
        }
    };
    println!("kappa {value}");
    if args.paths {
        let (count, family) = max_disjoint_paths(&g, x, y, args.limit);
        println!("paths {count}");
        for p in &family {
            let seq: Vec<String> = p.vertices().map(|v| v.to_string()).collect();
            println!("path {}", seq.join(" "));
        }
    }
}

fn print_core_report(report: &CoreReport, edge_count: usize, iterations: usize) {
    let params = report.params;
    let d2 = (params.d as u128).pow(2);
    let n4 = 4 * params.n as u128;
    println!("n {}", params.n);
    println!("m {edge_count}");
    println!("d {}", params.d);
    if params.d > 0 {
        println!(
            "kappa-threshold {} # smallest k with {n4} k >= {d2}, d^2/(4n) ~ {:.4}",
            params.kappa_requirement(),
            d2 as f64 / n4 as f64
        );
    }
    println!("iterations {iterations}");
    println!("core-order {}", report.subdigraph.order());
    println!("core-min-outdegree {}", report.min_out_degree);
    println!("qualifying {}", report.qualifying_count);
    match report.mode {
        VerificationMode::Exhaustive => {
            println!("checked-pairs {} exhaustive", report.checked_pairs.len())
        }
        VerificationMode::Sampled { seed, pairs } => {
            println!("checked-pairs {pairs} sampled seed {seed}")
        }
    }
    println!("adjacent-pairs {}", report.adjacent_pairs);
    println!("failing-pairs {}", report.failing_pairs.len());
    for &(x, y) in &report.failing_pairs {
        println!("failing-pair {x} {y}");
    }
    if report.trivial {
        println!("trivial yes # d = 0, conditions hold vacuously");
    }
    println!(
        "condition-outdegree {} # 2 min-outdegree = {} vs d = {}",
        if report.condition_outdegree { "ok" } else { "violated" },
        2 * report.min_out_degree,
        params.d
    );
    println!(
        "condition-connectivity {}",
        if report.condition_connectivity { "ok" } else { "violated" }
    );
    println!(
        "condition-count {} # 4 n qualifying = {} vs d^2 = {d2}",
        if report.condition_count { "ok" } else { "violated" },
        n4 * report.qualifying_count as u128
    );
    let ids: Vec<String> = report.vertices.iter().map(|v| v.to_string()).collect();
    println!("core-vertices {}", ids.join(" "));
}

fn extract_exit(err: ExtractError) -> ! {
    match err {
        ExtractError::Precondition { .. } => fail(EXIT_PRECONDITION, err),
        ExtractError::InvariantViolation(_) | ExtractError::EmptyResult => {
            fail(EXIT_INVARIANT, err)
        }
    }
}

fn run_extract(args: &ExtractArgs, threads: usize) {
    let g = load_graph(&args.file);
    let opts = ExtractOptions {
        exhaustive_cap: args.exhaustive_cap,
        sample_size: args.sample,
        sample_seed: args.seed,
        scan_shuffle_seed: None,
        threads,
    };
    let (report, trace) = match extract_core(&g, args.d, &opts) {
        Ok(pair) => pair,
        Err(e) => extract_exit(e),
    };
    print!(
        "# run: subdiv extract {} --d {} --exhaustive-cap {} --sample {} --seed {}",
        args.file.display(),
        report.params.d,
        args.exhaustive_cap,
        args.sample,
        args.seed
    );
    if let Some(t) = &args.trace {
        print!(" --trace {}", t.display());
    }
    println!(" --threads {threads}");
    print_core_report(&report, g.edge_count(), trace.iterations.len());
    if let Some(path) = &args.trace {
        trace
            .write(create(path))
            .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())));
        println!("wrote {}", path.display());
    }
    if report.conditions_hold() {
        println!("conditions hold");
    } else {
        println!("conditions violated");
        exit(EXIT_VIOLATIONS);
    }
}

fn run_subdivide(args: &SubdivideArgs, threads: usize) {
    let g = load_graph(&args.file);
    let opts = BuildOptions {
        d: args.d,
        target_order: args.order,
        max_inner: args.max_inner,
        extract: ExtractOptions { threads, ..ExtractOptions::default() },
    };
    let run = match build_subdivision(&g, &opts) {
        Ok(run) => run,
        Err(BuildError::Extract(e)) => extract_exit(e),
        Err(e @ BuildError::NotEnoughBranchVertices { .. }) => fail(EXIT_PRECONDITION, e),
        Err(e @ BuildError::InvariantViolation(_)) => fail(EXIT_INVARIANT, e),
    };
    print!(
        "# run: subdiv subdivide {} --d {}",
        args.file.display(),
        run.core.params.d
    );
    if let Some(l) = args.order {
        print!(" --order {l}");
    }
    if let Some(b) = args.max_inner {
        print!(" --max-inner {b}");
    }
    if let Some(t) = &args.trace {
        print!(" --trace {}", t.display());
    }
    println!(" --threads {threads} --output {}", args.output.display());
    print_core_report(&run.core, g.edge_count(), run.trace.iterations.len());
    println!("mode {}", if run.plan.guarantee { "guarantee" } else { "override" });
    println!("plan-order {}", run.plan.target_order);
    println!("plan-max-inner {}", run.plan.max_inner);
    if let Some(path) = &args.trace {
        run.trace
            .write(create(path))
            .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())));
        println!("wrote {}", path.display());
    }
    match &run.outcome {
        BuildOutcome::Certificate(cert) => {
            let ids: Vec<String> = cert.branch.iter().map(|v| v.to_string()).collect();
            println!("branch {}", ids.join(" "));
            println!("paths {}", cert.paths.len());
            println!(
                "max-inner-used {}",
                cert.paths.iter().map(|p| p.inner.len()).max().unwrap_or(0)
            );
            write_certificate(create(&args.output), cert)
                .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", args.output.display())));
            println!("wrote {}", args.output.display());
            println!("certificate ok # verified against the input graph");
        }
        BuildOutcome::Stuck(fr) => {
            println!("stuck-pair {} {}", fr.pair.0, fr.pair.1);
            println!("stuck-forbidden {}", fr.forbidden_len);
            println!("stuck-after-paths {}", fr.paths_completed);
            exit(EXIT_STUCK);
        }
    }
}

fn run_verify(graph: &Path, cert_path: &Path, threads: usize) {
    let g = load_graph(graph);
    let cert_file = File::open(cert_path)
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", cert_path.display())));
    let cert = read_certificate(BufReader::new(cert_file))
        .unwrap_or_else(|e| fail(EXIT_PARSE, format!("{}: {e}", cert_path.display())));
    println!(
        "# run: subdiv verify {} {} --threads {threads}",
        graph.display(),
        cert_path.display()
    );
    match verify_certificate(&g, &cert) {
        Ok(()) => println!("ok"),
        Err(violations) => {
            for v in &violations {
                println!("{v}");
            }
            exit(EXIT_VIOLATIONS);
        }
    }
}
