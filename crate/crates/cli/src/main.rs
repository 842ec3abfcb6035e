//! `pwgraph`: command-line front end for Paley-Wiener sampling on graphs.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pwgraph::eigbounds::{count_eigs, lambda_k_lower_bound};
use pwgraph::graph::diameter;
use pwgraph::poincare::{certify, lambda_union, nyquist_size_1d, omega_star_global};
use pwgraph::sampling::{
    certify_uniqueness_by_lambda, dual_frame, frame_bounds, reconstruct_direct,
    reconstruct_neumann, FrameOptions, NeumannOptions,
};
use pwgraph::{io, Error, Graph, GraphKind, RunConfig, SpectralDecomposition, VertexSet};

const CONFIG_ENV: &str = "PWGRAPH_CONFIG";

#[derive(Parser)]
#[command(
    name = "pwgraph",
    version,
    about = "Paley-Wiener sampling and reconstruction on finite graphs"
)]
struct Cli {
    /// JSON run configuration (overrides PWGRAPH_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model graph as an edge list
    Gen {
        /// path | cycle | grid | torus | tree
        kind: String,
        /// Size parameters (tree: q depth)
        #[arg(required = true)]
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Eigenvalues of the normalized Laplacian
    Spectrum {
        graph: PathBuf,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// CSV with columns index,eigenvalue
        #[arg(long)]
        csv: bool,
        /// Include eigenvectors (JSON only)
        #[arg(long)]
        vectors: bool,
    },
    /// Poincaré certificates for vertex sets
    Lambda {
        graph: PathBuf,
        #[command(flatten)]
        target: LambdaTarget,
        /// Vertices left between consecutive blocks
        #[arg(long, default_value_t = 2, requires = "blocks")]
        gap: usize,
        /// Also decide uniqueness of the complement for this bandwidth
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Reconstruct a bandlimited signal from samples
    Reconstruct {
        graph: PathBuf,
        #[arg(long)]
        omega: f64,
        /// JSON object mapping vertex id to sampled value
        #[arg(long)]
        samples: PathBuf,
        #[command(flatten)]
        sampling: SamplingSet,
        #[arg(long, value_enum, default_value_t = Method::Neumann)]
        method: Method,
        /// Write the reconstructed signal (one value per line)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Known signal to measure the reconstruction error against
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Neumann iteration cap (overrides the configured limit)
        #[arg(long)]
        max_iter: Option<usize>,
        /// Neumann stopping tolerance (overrides the configured one)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Spectrum summary, thresholds and eigenvalue counts as one JSON bundle
    Report {
        graph: PathBuf,
        #[arg(long)]
        omega: Option<f64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LambdaTarget {
    /// Vertex ids of S (comma or space separated)
    #[arg(long)]
    set: Option<String>,
    /// Certificate of every single vertex
    #[arg(long)]
    singletons: bool,
    /// Block lengths laid out as gap, block, gap, block, ... from vertex 0
    #[arg(long)]
    blocks: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SamplingSet {
    /// Removed set S (ids or a file of ids); samples are taken on its complement
    #[arg(long)]
    set: Option<String>,
    /// Sampling set U (ids or a file of ids)
    #[arg(long)]
    u: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Method {
    Neumann,
    Direct,
}

/// Failure carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Parse { .. } | Error::SelfLoop(_) | Error::EmptyGraph | Error::Disconnected => 3,
            Error::OverlappingClosures { .. }
            | Error::EmptyBoundary
            | Error::SingularRestriction { .. } => 4,
            Error::NotAFrame { .. } => 5,
            Error::InvalidParameter(_)
            | Error::OutOfRange { .. }
            | Error::ValueOutOfRange { .. }
            | Error::MissingSample(_)
            | Error::LengthMismatch { .. } => 2,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("pwgraph: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Gen {
            kind,
            params,
            output,
        } => {
            let g = Graph::generate(&GraphKind::parse(&kind, &params)?)?;
            emit_text(output.as_deref(), &g.to_edge_list())
        }
        Command::Spectrum {
            graph,
            json: _,
            csv,
            vectors,
        } => cmd_spectrum(&config, &graph, csv, vectors),
        Command::Lambda {
            graph,
            target,
            gap,
            omega,
        } => cmd_lambda(&config, &graph, &target, gap, omega),
        Command::Reconstruct {
            graph,
            omega,
            samples,
            sampling,
            method,
            output,
            truth,
            max_iter,
            tol,
        } => {
            let neumann = NeumannOptions {
                tol: tol.unwrap_or(config.tolerances.recon_tol),
                max_iter: max_iter.unwrap_or(config.limits.neumann_max_iter),
                upper: None,
            };
            cmd_reconstruct(
                &config,
                &graph,
                omega,
                &samples,
                &sampling,
                method,
                &neumann,
                output.as_deref(),
                truth.as_deref(),
            )
        }
        Command::Report { graph, omega } => cmd_report(&config, &graph, omega),
    }
}

fn load_config(flag: Option<&Path>) -> CliResult<RunConfig> {
    let path = flag
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    match path {
        Some(p) => {
            RunConfig::load(&p).map_err(|e| Failure::usage(format!("config {}: {e}", p.display())))
        }
        None => Ok(RunConfig::default()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    let g = Graph::from_edge_list(&read(path)?)?;
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    Ok(g)
}

fn decompose(config: &RunConfig, g: &Graph) -> CliResult<SpectralDecomposition> {
    let dec = SpectralDecomposition::new(g)?.with_band_slack(config.tolerances.eps_eig);
    let allowed = config.tolerances.eig_residual * g.n() as f64;
    if dec.residual() > allowed {
        return Err(Failure {
            code: 1,
            message: format!(
                "eigensolver residual {:e} exceeds {allowed:e}",
                dec.residual()
            ),
        });
    }
    Ok(dec)
}

fn emit_text(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => write_stdout(text),
    }
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn write_stdout(text: &str) -> CliResult<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure {
            code: 1,
            message: e.to_string(),
        }),
        _ => Ok(()),
    }
}

fn emit_json(value: &impl Serialize) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    write_stdout(&(text + "\n"))
}

/// Vertex ids given inline or as the path of a file holding them.
fn parse_set(g: &Graph, arg: &str) -> CliResult<VertexSet> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        read(path)?
    } else {
        arg.to_owned()
    };
    let set = io::parse_vertex_set(&text)?;
    set.check_in(g)?;
    Ok(set)
}

fn cmd_spectrum(config: &RunConfig, path: &Path, csv: bool, vectors: bool) -> CliResult<()> {
    let g = load_graph(path)?;
    let dec = decompose(config, &g)?;
    if csv {
        let mut out = String::from("index,eigenvalue\n");
        for (j, l) in dec.eigenvalues().iter().enumerate() {
            out.push_str(&format!("{j},{l:.16e}\n"));
        }
        return emit_text(None, &out);
    }
    let mut report = json!({
        "n": g.n(),
        "eigenvalues": dec.eigenvalues(),
        "residual": dec.residual(),
    });
    if vectors {
        let columns: Vec<Vec<f64>> = (0..g.n()).map(|j| dec.eigenvectors().column(j)).collect();
        report["eigenvectors"] = json!(columns);
    }
    emit_json(&report)
}

/// Blocks placed left to right: `gap` skipped vertices before every block.
fn block_layout(g: &Graph, spec: &str, gap: usize) -> CliResult<Vec<VertexSet>> {
    let mut blocks = Vec::new();
    let mut next = 0;
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let len: usize = token
            .parse()
            .map_err(|_| Failure::usage(format!("invalid block length {token:?}")))?;
        if len == 0 {
            return Err(Failure::usage("block lengths must be positive"));
        }
        let start = next + gap;
        next = start + len;
        if next > g.n() {
            return Err(Failure::usage(format!(
                "blocks need {next} vertices, graph has {}",
                g.n()
            )));
        }
        blocks.push((start..next).collect());
    }
    if blocks.is_empty() {
        return Err(Failure::usage("no blocks given"));
    }
    Ok(blocks)
}

fn cmd_lambda(
    config: &RunConfig,
    path: &Path,
    target: &LambdaTarget,
    gap: usize,
    omega: Option<f64>,
) -> CliResult<()> {
    let g = load_graph(path)?;
    let limit = config.limits.cheeger_max_n;
    let verdict = |cert: &pwgraph::LambdaCertificate| -> CliResult<Value> {
        Ok(match omega {
            Some(w) => json!(certify_uniqueness_by_lambda(&g, w, cert)?),
            None => Value::Null,
        })
    };

    if target.singletons {
        let certs = (0..g.n())
            .map(|v| certify::<f64>(&g, &VertexSet::new(vec![v]), limit))
            .collect::<pwgraph::Result<Vec<_>>>()?;
        return emit_json(&json!({
            "omega_G": omega_star_global::<f64>(&g)?,
            "certificates": certs,
        }));
    }

    let (cert, parts) = if let Some(spec) = &target.blocks {
        let blocks = block_layout(&g, spec, gap)?;
        let certs = blocks
            .iter()
            .map(|b| certify::<f64>(&g, b, limit))
            .collect::<pwgraph::Result<Vec<_>>>()?;
        (lambda_union(&g, &certs)?, Some(certs))
    } else {
        let set = parse_set(&g, target.set.as_deref().unwrap_or_default())?;
        (certify::<f64>(&g, &set, limit)?, None)
    };
    let mut out = serde_json::to_value(&cert).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    if let Some(parts) = parts {
        out["parts"] = json!(parts);
    }
    let v = verdict(&cert)?;
    if !v.is_null() {
        out["uniqueness"] = v;
    }
    emit_json(&out)
}

#[derive(Serialize)]
struct ReconstructOutput {
    #[serde(flatten)]
    frame: pwgraph::sampling::FrameSummary<f64>,
    method: Method,
    report: Option<pwgraph::ReconstructionReport>,
    /// Distance between the Neumann and direct reconstructions; absent when
    /// the Neumann iteration did not converge.
    cross_check: Option<f64>,
    final_error: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_reconstruct(
    config: &RunConfig,
    path: &Path,
    omega: f64,
    samples_path: &Path,
    sampling: &SamplingSet,
    method: Method,
    neumann_options: &NeumannOptions<f64>,
    output: Option<&Path>,
    truth: Option<&Path>,
) -> CliResult<()> {
    let g = load_graph(path)?;
    let dec = decompose(config, &g)?;
    let u = match (&sampling.set, &sampling.u) {
        (Some(s), _) => parse_set(&g, s)?.complement(&g),
        (None, Some(u)) => parse_set(&g, u)?,
        (None, None) => return Err(Failure::usage("either --set or --u is required")),
    };
    let options = FrameOptions {
        normalization: config.frame_normalization,
        rank_tol: config.tolerances.rank_tol,
    };
    let frame = frame_bounds(&dec, omega, &u, options)?;
    let frame = dual_frame(frame)?;
    let map: BTreeMap<usize, f64> = io::parse_samples(&read(samples_path)?)?;
    let samples = frame.samples_from_map(&map)?;

    let direct = reconstruct_direct(&frame, &samples)?;
    let neumann = reconstruct_neumann(&frame, &samples, neumann_options);
    let (signal, mut report, cross_check) = match (method, neumann) {
        (Method::Neumann, Err(e)) => return Err(e.into()),
        (Method::Neumann, Ok((signal, report))) => {
            let diff = signal.distance(&direct);
            (signal, Some(report), Some(diff))
        }
        (Method::Direct, Ok((signal, _))) => {
            let diff = signal.distance(&direct);
            (direct, None, Some(diff))
        }
        (Method::Direct, Err(_)) => (direct, None, None),
    };

    let final_error = match truth {
        Some(p) => {
            let values: Vec<f64> = io::parse_signal(&read(p)?)?;
            let truth = pwgraph::Signal::new(&g, values)?;
            Some(signal.distance(&truth))
        }
        None => None,
    };
    if let Some(r) = report.as_mut() {
        r.final_error = final_error;
    }
    if let Some(p) = output {
        emit_text(Some(p), &io::format_signal(signal.values()))?;
    }
    emit_json(&ReconstructOutput {
        frame: frame.summary(),
        method,
        report,
        cross_check,
        final_error,
    })
}

fn cmd_report(config: &RunConfig, path: &Path, omega: Option<f64>) -> CliResult<()> {
    let g = load_graph(path)?;
    let dec = decompose(config, &g)?;
    let eigs = dec.eigenvalues();
    let mut out = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "max_degree": g.max_degree(),
        "diameter": diameter(&g)?,
        "spectrum": {
            "lambda_min": eigs[0],
            "lambda_1": eigs[1],
            "lambda_max": dec.lambda_max(),
            "residual": dec.residual(),
        },
        "omega_G": omega_star_global::<f64>(&g)?,
    });
    if let Some(w) = omega {
        out["pw_dim"] = json!(dec.pw_space(w).dim);
        out["eigen_counts"] = json!(count_eigs(&dec, w, None));
        if g.max_degree() <= 2 && w > 0.0 && w < 2.0 {
            out["nyquist_1d"] = json!(nyquist_size_1d(w)?);
        }
    }
    if g.n() <= config.limits.exhaustive_max_n {
        let bounds = (1..g.n())
            .map(|k| lambda_k_lower_bound(&g, &dec, k, None, config.limits.exhaustive_max_n))
            .collect::<pwgraph::Result<Vec<_>>>()?;
        out["lambda_k_bounds"] = json!(bounds);
    }
    emit_json(&out)
}
