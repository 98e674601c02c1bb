use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};

use wqh_core::algebra::{format_rational, parse_rational};
use wqh_core::features::{feature_matrix, FeatureConfig};
use wqh_core::homology::{boundary1_matrix, h1_kernel_basis};
use wqh_core::ingest::{
    self, load_attributes, load_weighted_edges, open_input, parse_undirected_pairs, read_feature_file,
    render_edge_list, to_dot, write_atomic, FeatureFormat, LoadedGraph,
};
use wqh_core::{berger_shor, build_chain_complex, dim_h1, Error, FieldMode, Rational, Representation};

/// Exit codes: 0 success, 1 I/O or parse failure, 2 violated precondition
/// (cycles, weights), 3 resource guard.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: anyhow::Error) -> Self {
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Parse { .. } => 1,
            _ => 2,
        };
        Failure::new(code, e.into())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Parser)]
#[command(name = "wqh", version, about = "Homology of weighted quivers and homology-based vertex features")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the first homology of a weighted acyclic quiver
    Homology(HomologyArgs),
    /// Per-vertex, per-hop first-homology feature matrix
    Features(FeaturesArgs),
    /// Berger–Shor feedback arc set
    Fas(FasArgs),
    /// Homology table from the full chain complex, cross-checked against the fast path
    Oracle(OracleArgs),
    /// Weight an edge list by Jaccard distance between binary attribute vectors
    Jaccard(JaccardArgs),
    /// Orient an undirected integer edge list from smaller to larger id, weighted by |u - v|
    Orient(OrientArgs),
    /// Inner product of two feature matrices of equal shape
    Kernel(KernelArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list (`source,target[,weight]`, tab or comma separated); `-` reads stdin
    input: PathBuf,
    /// Replace zero weights by this value instead of failing
    #[arg(long, value_name = "RATIONAL")]
    zero_weight_epsilon: Option<String>,
}

impl InputArgs {
    fn load(&self) -> CliResult<LoadedGraph> {
        let epsilon = parse_epsilon(self.zero_weight_epsilon.as_deref())?;
        Ok(load_weighted_edges(&self.input, epsilon.as_ref())?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Exact,
    Float,
}

#[derive(Args)]
struct FieldArgs {
    /// Arithmetic for rank computations
    #[arg(long, value_enum, default_value = "exact")]
    field: Field,
    /// Pivot tolerance in float mode
    #[arg(long, default_value_t = FieldMode::DEFAULT_TOLERANCE)]
    tol: f64,
}

impl FieldArgs {
    fn mode(&self) -> CliResult<FieldMode> {
        match self.field {
            Field::Exact => Ok(FieldMode::Exact),
            Field::Float if self.tol > 0.0 && self.tol.is_finite() => Ok(FieldMode::Float { tol: self.tol }),
            Field::Float => Err(Failure::new(2, anyhow!("--tol must be positive in float mode"))),
        }
    }
}

#[derive(Args)]
struct HomologyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    field: FieldArgs,
    /// Remove a Berger–Shor feedback arc set first if the input has cycles
    #[arg(long)]
    dagify: bool,
    /// Seed for --dagify
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a basis of the first homology (exact mode)
    #[arg(long)]
    kernel: bool,
    /// Print the boundary matrix
    #[arg(long)]
    matrix: bool,
    /// Write the (possibly dagified) quiver in Graphviz format
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct FeaturesArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    field: FieldArgs,
    /// Number of hop levels H
    #[arg(long, short = 'H', default_value_t = 3)]
    hops: usize,
    /// Base seed for the per-vertex feedback arc sets
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; `-` writes stdout
    #[arg(long, short, default_value = "-")]
    output: PathBuf,
}

#[derive(Args)]
struct FasArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Seed for the vertex visiting order
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the kept acyclic quiver in Graphviz format
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Highest chain degree built; homology is reported below it
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Keep only chains whose composite has at most this many arrows
    #[arg(long)]
    ell: Option<usize>,
    /// Refuse inputs with more basis chains than this
    #[arg(long, default_value_t = 200_000)]
    max_chains: u128,
    /// Remove a Berger–Shor feedback arc set first if the input has cycles
    #[arg(long)]
    dagify: bool,
    /// Seed for --dagify
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct JaccardArgs {
    /// Edge list; any weight column is ignored
    edges: PathBuf,
    /// Attribute file: vertex id followed by a 0/1 vector
    #[arg(long)]
    attributes: PathBuf,
    /// Replace zero distances by this value instead of failing
    #[arg(long, value_name = "RATIONAL")]
    epsilon: Option<String>,
    #[arg(long, short, default_value = "-")]
    output: PathBuf,
}

#[derive(Args)]
struct OrientArgs {
    /// Undirected integer pairs, one per line
    pairs: PathBuf,
    #[arg(long, short, default_value = "-")]
    output: PathBuf,
}

#[derive(Args)]
struct KernelArgs {
    /// Feature file (CSV or JSON)
    a: PathBuf,
    /// Feature file of the same shape
    b: PathBuf,
}

fn parse_epsilon(text: Option<&str>) -> CliResult<Option<Rational>> {
    let Some(text) = text else { return Ok(None) };
    match parse_rational(text) {
        Some(x) if x > Rational::from_integer(0.into()) => Ok(Some(x)),
        _ => Err(Failure::new(2, anyhow!("epsilon must be a positive rational, got {text:?}"))),
    }
}

fn describe_cycle(graph: &LoadedGraph, cycle: &[usize]) -> String {
    let q = graph.quiver.quiver();
    let mut names: Vec<&str> = cycle.iter().map(|&a| graph.ids[q.arrow(a).source].as_str()).collect();
    if let Some(&first) = names.first() {
        names.push(first);
    }
    names.join(" -> ")
}

/// Applies --dagify or fails with exit code 2 on a cyclic input.
fn acyclic_input(mut graph: LoadedGraph, dagify: bool, seed: u64) -> CliResult<LoadedGraph> {
    let Some(cycle) = graph.quiver.quiver().find_cycle() else {
        return Ok(graph);
    };
    if !dagify {
        return Err(Failure::new(
            2,
            anyhow!(
                "input has an oriented cycle: {} (use --dagify to remove a feedback arc set)",
                describe_cycle(&graph, &cycle)
            ),
        ));
    }
    let result = berger_shor(&graph.quiver, seed);
    eprintln!(
        "dagify: removed {} of {} arcs (seed {seed})",
        result.feedback.len(),
        graph.quiver.quiver().arrow_count()
    );
    graph.quiver = result.kept;
    Ok(graph)
}

fn write_dot(path: &Path, graph: &LoadedGraph) -> CliResult<()> {
    Ok(write_atomic(path, to_dot(&graph.quiver, &graph.ids).as_bytes())?)
}

fn cmd_homology(args: &HomologyArgs) -> CliResult<String> {
    let graph = acyclic_input(args.input.load()?, args.dagify, args.seed)?;
    let mode = args.field.mode()?;
    let k = Representation::scalar();
    let q = graph.quiver.quiver();
    let mut out = String::new();
    writeln!(out, "vertices = {}, arrows = {}", q.vertex_count(), q.arrow_count()).unwrap();
    writeln!(out, "dim H1 = {}", dim_h1(&graph.quiver, &k, mode)?).unwrap();
    if args.matrix {
        writeln!(out, "boundary matrix (rows: vertices, columns: arrows):").unwrap();
        out.push_str(&boundary1_matrix(&graph.quiver, &k)?.to_string());
    }
    if args.kernel {
        writeln!(out, "kernel basis (coordinates: arrows in input order):").unwrap();
        for v in h1_kernel_basis(&graph.quiver, &k)? {
            let parts: Vec<String> = v.iter().map(format_rational).collect();
            writeln!(out, "({})", parts.join(", ")).unwrap();
        }
    }
    if let Some(path) = &args.dot {
        write_dot(path, &graph)?;
    }
    Ok(out)
}

fn cmd_features(args: &FeaturesArgs) -> CliResult<String> {
    if args.hops == 0 {
        return Err(Failure::new(2, anyhow!("--hops must be at least 1")));
    }
    let graph = args.input.load()?;
    let config = FeatureConfig::new(args.hops, args.seed).with_mode(args.field.mode()?);
    eprintln!(
        "features: hops={} seed={} field={} tol={} threads={}",
        config.hops,
        config.seed,
        config.mode.name(),
        config.mode.tolerance().map_or("none".to_string(), |t| t.to_string()),
        args.threads
    );
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| Failure::new(1, e.into()))?;
    let fm = pool.install(|| feature_matrix(&graph.quiver, &config))?;
    let format = match args.format {
        Format::Csv => FeatureFormat::Csv,
        Format::Json => FeatureFormat::Json,
    };
    ingest::write_feature_matrix(&fm, &graph.ids, &args.output, format)?;
    Ok(String::new())
}

fn cmd_fas(args: &FasArgs) -> CliResult<String> {
    let graph = args.input.load()?;
    let result = berger_shor(&graph.quiver, args.seed);
    let q = graph.quiver.quiver();
    assert!(result.kept.quiver().is_acyclic(), "kept arcs must form an acyclic quiver");
    let mut out = String::new();
    writeln!(out, "seed = {}", result.seed).unwrap();
    writeln!(out, "feedback arcs = {}", result.feedback.len()).unwrap();
    for &a in &result.feedback {
        let arrow = q.arrow(a);
        writeln!(out, "  {} -> {} (arrow {a})", graph.ids[arrow.source], graph.ids[arrow.target]).unwrap();
    }
    writeln!(
        out,
        "kept arcs = {} of {} (fraction {:.3})",
        result.kept_arrows.len(),
        q.arrow_count(),
        result.kept_fraction()
    )
    .unwrap();
    writeln!(out, "acyclic = yes").unwrap();
    if let Some(path) = &args.dot {
        write_dot(
            path,
            &LoadedGraph {
                quiver: result.kept.clone(),
                ids: graph.ids.clone(),
            },
        )?;
    }
    Ok(out)
}

fn cmd_oracle(args: &OracleArgs) -> CliResult<String> {
    if args.n_max == 0 {
        return Err(Failure::new(2, anyhow!("--n-max must be at least 1")));
    }
    if args.ell == Some(0) {
        return Err(Failure::new(2, anyhow!("--ell must be at least 1")));
    }
    let graph = acyclic_input(args.input.load()?, args.dagify, args.seed)?;
    let q = graph.quiver.quiver();
    let total = q
        .count_nchains(args.n_max, args.ell)?
        .into_iter()
        .fold(q.vertex_count() as u128, u128::saturating_add);
    if total > args.max_chains {
        return Err(Failure::new(
            3,
            anyhow!(
                "chain complex would have {total} basis chains, above the cap of {} (raise --max-chains)",
                args.max_chains
            ),
        ));
    }
    let k = Representation::scalar();
    let complex = build_chain_complex(&graph.quiver, &k, args.n_max, args.ell)?;
    let dims = complex.homology_dims();
    let mut out = String::new();
    match args.ell {
        Some(ell) => writeln!(out, "chains truncated at composite length {ell}").unwrap(),
        None => writeln!(out, "chains untruncated").unwrap(),
    }
    writeln!(out, "n\tchains\tdim H_n").unwrap();
    for (n, d) in dims.iter().enumerate() {
        writeln!(out, "{n}\t{}\t{d}", complex.basis_len(n)).unwrap();
    }
    let fast = dim_h1(&graph.quiver, &k, FieldMode::Exact)?;
    writeln!(out, "fast path dim H1 = {fast}").unwrap();
    match dims.get(1) {
        Some(&h1) => writeln!(out, "matches fast path: {}", if h1 == fast { "yes" } else { "no" }).unwrap(),
        None => writeln!(out, "matches fast path: n/a (raise --n-max to 2 or more)").unwrap(),
    }
    Ok(out)
}

fn cmd_jaccard(args: &JaccardArgs) -> CliResult<String> {
    let epsilon = parse_epsilon(args.epsilon.as_deref())?;
    // Weights in the edge file are irrelevant here; zeros must not abort the load.
    let one = Rational::from_integer(1.into());
    let graph = load_weighted_edges(&args.edges, Some(&one))?;
    let attrs = load_attributes(&args.attributes)?;
    let weighted = ingest::jaccard_weights(graph.quiver.quiver(), &graph.ids, &attrs, epsilon.as_ref())?;
    let out = render_edge_list(&LoadedGraph {
        quiver: weighted,
        ids: graph.ids,
    });
    write_atomic(&args.output, out.as_bytes())?;
    Ok(String::new())
}

fn cmd_orient(args: &OrientArgs) -> CliResult<String> {
    let pairs = parse_undirected_pairs(open_input(&args.pairs)?)?;
    let graph = ingest::orient_undirected(&pairs)?;
    write_atomic(&args.output, render_edge_list(&graph).as_bytes())?;
    Ok(String::new())
}

fn cmd_kernel(args: &KernelArgs) -> CliResult<String> {
    let a = read_feature_file(&args.a)?;
    let b = read_feature_file(&args.b)?;
    let shape = |f: &ingest::FeatureFile| (f.rows.len(), f.rows.first().map_or(0, Vec::len));
    if shape(&a) != shape(&b) {
        return Err(Failure::new(
            2,
            anyhow!("feature matrices differ in shape: {:?} vs {:?}", shape(&a), shape(&b)),
        ));
    }
    let value: u128 = a
        .flattened()
        .zip(b.flattened())
        .map(|(x, y)| x as u128 * y as u128)
        .sum();
    Ok(format!("{value}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Homology(a) => cmd_homology(a),
        Command::Features(a) => cmd_features(a),
        Command::Fas(a) => cmd_fas(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Jaccard(a) => cmd_jaccard(a),
        Command::Orient(a) => cmd_orient(a),
        Command::Kernel(a) => cmd_kernel(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
