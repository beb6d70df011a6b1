use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypavg::diagnostics::{
    audit_catalog, audit_graph, find_witness, AuditOptions, Auditor, WitnessKind,
};
use hypavg::estimators::{
    estimate_all, exact_avg_fp, exact_avg_triangles, model_rng, ExactReport, SampleConfig,
    VertexDistribution, DEFAULT_EXACT_CAP,
};
use hypavg::euclidean::sample_gaussian_cloud;
use hypavg::experiments::{run_experiment, write_csv, ExperimentSpec, Scan};
use hypavg::generators::{gen_er, gen_gn, gen_hmn, gen_rrg, giant_component, LabeledGraph};
use hypavg::metric::{load_graph, DistanceMatrix, Graph, GraphMetric};
use hypavg::Error;

#[derive(Parser)]
#[command(
    name = "hypavg",
    version,
    about = "Worst-case and average hyperbolicity of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family or a Gaussian point cloud.
    Gen(GenArgs),
    /// Estimate the five average measures of a graph.
    Estimate(EstimateArgs),
    /// Run a parameter scan and write one CSV row per cell.
    Experiment(ExperimentArgs),
    /// Check the inequalities between the measures.
    Audit(AuditArgs),
    /// Search for a graph with extremal measures and save it as a fixture.
    Witness(WitnessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gn,
    Hmn,
    Rrg,
    Er,
    Gauss,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// M of H_{M,n}.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 5.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Keep only the largest component.
    #[arg(long)]
    giant: bool,
    /// Output file; labels go next to it with a `.labels` extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Edge-list file.
    graph: PathBuf,
    /// Vertex weights, one `id weight` pair per line; unlisted vertices get 0.
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also compute exact rational averages by enumeration.
    #[arg(long)]
    exact: bool,
    /// Measure the largest component of a disconnected graph.
    #[arg(long)]
    giant: bool,
    #[arg(long, default_value_t = 10_000)]
    geodesic_cap: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, alias = "out")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// gn-scan, hmn-scan, rrg-scan, er-scan or gauss-scan.
    scan: String,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    dim: Vec<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// Triangles per cell.
    #[arg(long)]
    samples: Option<u64>,
    /// Quadruples per cell.
    #[arg(long)]
    quad_samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Edge-list files to audit.
    graphs: Vec<PathBuf>,
    /// Also audit every connected graph with at most this many vertices.
    #[arg(long)]
    exhaustive_small: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    geodesic_cap: u64,
    #[arg(long)]
    giant: bool,
    /// Perturb one distance of each input before auditing.
    #[arg(long, hide = true)]
    corrupt_distances: bool,
    /// Write the JSON report here.
    #[arg(long, alias = "out")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// slim1-thin4, minsize1-insize3 or fat-insize1-N.
    #[arg(long)]
    kind: String,
    /// Candidate graphs to examine.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Directory receiving `<kind>.edges` and `<kind>.json`.
    #[arg(long, default_value = "fixtures/witnesses")]
    out: PathBuf,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) => 2,
        Error::TooLarge { .. } | Error::Capacity { .. } | Error::BudgetExhausted { .. } => 4,
        _ => 3,
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> CmdResult {
    let io = |e| Failure::Io(path.to_path_buf(), e);
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CmdResult {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io("<stdout>".into(), e)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for family {family}")))
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let mut rng = model_rng(a.seed);
    let labeled: LabeledGraph = match a.family {
        Family::Gauss => {
            let cloud = sample_gaussian_cloud(a.count, a.dim, a.seed)?;
            emit(a.out.as_deref(), cloud.to_csv().as_bytes())?;
            summary(
                a.out.is_some(),
                format!("{} points x {} dims", a.count, a.dim),
            );
            return Ok(());
        }
        Family::Gn => gen_gn(need(a.n, "n", "gn")?)?,
        Family::Hmn => gen_hmn(need(a.m, "m", "hmn")?, need(a.n, "n", "hmn")?)?,
        Family::Rrg => unlabeled(gen_rrg(need(a.n, "n", "rrg")?, a.d, &mut rng)?),
        Family::Er => unlabeled(gen_er(need(a.n, "n", "er")?, a.lambda, &mut rng)?),
    };
    let labeled = if a.giant {
        let giant = giant_component(&labeled.graph);
        let labels = match labeled.labels.is_empty() {
            true => Vec::new(),
            false => giant
                .new_to_old
                .iter()
                .map(|&v| labeled.labels[v as usize].clone())
                .collect(),
        };
        LabeledGraph {
            graph: giant.graph,
            labels,
        }
    } else {
        labeled
    };
    let g = &labeled.graph;
    emit(a.out.as_deref(), g.to_edge_list().as_bytes())?;
    if let (Some(out), false) = (&a.out, labeled.labels.is_empty()) {
        write_atomic(
            &out.with_extension("labels"),
            labeled.labels_text().as_bytes(),
        )?;
    }
    summary(
        a.out.is_some(),
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()),
    );
    Ok(())
}

/// One-line summary on stdout, or on stderr when stdout carries the data.
fn summary(to_stdout: bool, line: String) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn unlabeled(graph: Graph) -> LabeledGraph {
    LabeledGraph {
        graph,
        labels: Vec::new(),
    }
}

fn load_weights(text: &str, n: usize) -> Result<Vec<f64>, Failure> {
    let mut weights = vec![0.0; n];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || {
            Failure::Lib(Error::Parse {
                line: i + 1,
                message: format!("expected `id weight`, got {line:?}"),
            })
        };
        let mut parts = line.split_whitespace();
        let id: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let w: f64 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        *weights
            .get_mut(id)
            .ok_or(Failure::Lib(Error::VertexOutOfRange {
                vertex: id as u32,
                vertex_count: n,
            }))? = w;
    }
    Ok(weights)
}

struct Loaded {
    metric: GraphMetric,
    /// Original id of each vertex when the giant component was extracted.
    kept: Option<Vec<u32>>,
    original_vertices: usize,
}

fn load_metric(path: &Path, giant: bool) -> Result<Loaded, Failure> {
    let graph = load_graph(&read(path)?)?;
    let original_vertices = graph.vertex_count();
    if giant {
        let c = giant_component(&graph);
        let metric = GraphMetric::new(c.graph)?;
        return Ok(Loaded {
            metric,
            kept: Some(c.new_to_old),
            original_vertices,
        });
    }
    let metric = GraphMetric::new(graph)?;
    if !metric.is_connected() {
        return Err(Error::NotConnected {
            components: metric.component_count(),
        }
        .into());
    }
    Ok(Loaded {
        metric,
        kept: None,
        original_vertices,
    })
}

fn cmd_estimate(a: EstimateArgs) -> CmdResult {
    let Loaded {
        metric: g,
        kept,
        original_vertices,
    } = load_metric(&a.graph, a.giant)?;
    let dist = match &a.dist {
        None => VertexDistribution::uniform(g.vertex_count()),
        Some(p) => {
            let all = load_weights(&read(p)?, original_vertices)?;
            let weights: Vec<f64> = match &kept {
                Some(k) => k.iter().map(|&v| all[v as usize]).collect(),
                None => all,
            };
            VertexDistribution::from_weights(&weights)?
        }
    };
    let name = a
        .graph
        .file_stem()
        .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let config = SampleConfig::new(a.samples, a.seed);
    let mut report = estimate_all(&name, &g, &dist, &config)?;
    if a.exact {
        let hyp = exact_avg_fp(&g, &dist, DEFAULT_EXACT_CAP)?;
        let tri = exact_avg_triangles(&g, &dist, a.geodesic_cap, DEFAULT_EXACT_CAP)?;
        report.exact = Some(ExactReport::new(&hyp, &tri));
    }
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    emit(a.json.as_deref(), json.as_bytes())?;
    if a.json.is_some() {
        eprintln!(
            "{}: hyp {:.4} slim {:.4} thin {:.4} minsize {:.4} insize {:.4}",
            name,
            report.hyp.mean,
            report.slim.mean,
            report.thin.mean,
            report.minsize.mean,
            report.insize.mean
        );
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> CmdResult {
    let scan: Scan = a.scan.parse()?;
    let mut spec = ExperimentSpec::preset(scan);
    let grid = if scan == Scan::Gauss { a.dim } else { a.n };
    if !grid.is_empty() {
        spec.grid = grid;
    }
    spec.m = a.m.unwrap_or(spec.m);
    spec.d = a.d.unwrap_or(spec.d);
    spec.lambda = a.lambda.unwrap_or(spec.lambda);
    spec.count = a.count.unwrap_or(spec.count);
    spec.samples = a.samples.unwrap_or(spec.samples);
    spec.quad_samples = a.quad_samples.unwrap_or(spec.quad_samples);
    spec.seed = a.seed;
    let rows = run_experiment(&spec)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(a.out.as_deref(), &buf)?;
    for r in rows.iter().filter(|r| !r.error.is_empty()) {
        eprintln!("cell n={:?} dim={:?} failed: {}", r.n, r.dim, r.error);
    }
    Ok(())
}

/// Adds two to the distance between vertex 0 and the vertex farthest from it.
fn corrupt(g: &GraphMetric) -> Result<GraphMetric, Failure> {
    let n = g.vertex_count() as u32;
    let far = (0..n).max_by_key(|&v| g.hop(0, v)).unwrap_or(0);
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let d = g.hop(u, v);
                    if (u, v) == (0, far) || (u, v) == (far, 0) {
                        d + 2
                    } else {
                        d
                    }
                })
                .collect()
        })
        .collect();
    Ok(GraphMetric::with_distances(
        g.graph().clone(),
        DistanceMatrix::from_rows(&rows)?,
    )?)
}

fn cmd_audit(a: AuditArgs) -> CmdResult {
    if a.graphs.is_empty() && a.exhaustive_small.is_none() {
        return Err(Failure::Usage(
            "nothing to audit: give graph files or --exhaustive-small".into(),
        ));
    }
    let opts = AuditOptions {
        samples: a.samples,
        seed: a.seed,
        geodesic_cap: a.geodesic_cap,
        ..AuditOptions::default()
    };
    let mut auditor = Auditor::new();
    for path in &a.graphs {
        let mut g = load_metric(path, a.giant)?.metric;
        if a.corrupt_distances {
            g = corrupt(&g)?;
        }
        auditor.merge(audit_graph(&path.display().to_string(), &g, &opts)?);
    }
    if let Some(max) = a.exhaustive_small {
        auditor.merge(audit_catalog(max, a.geodesic_cap)?);
    }
    let report = auditor.finish();
    if let Some(p) = &a.json {
        let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
        write_atomic(p, json.as_bytes())?;
    }
    for r in &report.inequalities {
        let status = if r.violation_count == 0 {
            "ok"
        } else {
            "VIOLATED"
        };
        println!(
            "{status:>8}  {:<48} {:>10} checked {:>6} violations",
            r.id, r.checked, r.violation_count
        );
    }
    if report.passed() {
        return Ok(());
    }
    for r in report.inequalities.iter().filter(|r| r.violation_count > 0) {
        for v in &r.violations {
            println!("witness for '{}': {} {}", r.id, v.detail, v.witness);
        }
    }
    Err(Failure::Violations)
}

fn cmd_witness(a: WitnessArgs) -> CmdResult {
    let kind: WitnessKind = a.kind.parse()?;
    let w = find_witness(kind, a.budget)?;
    w.verify()?;
    w.save(&a.out)?;
    let r = &w.report;
    println!(
        "{kind}: {} vertices, slim {} thin {} minsize {} insize {} -> {}",
        w.graph.graph.vertex_count(),
        r.slim,
        r.thin,
        r.minsize,
        r.insize,
        a.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(threads) = std::env::var("HYPAVG_THREADS")
        .ok()
        .and_then(|t| t.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Witness(a) => cmd_witness(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(p, e)) => {
            eprintln!("error: {}: {e}", p.display());
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
