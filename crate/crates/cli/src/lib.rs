//! `tsync`: command-line front end. All file-system access lives here.
//!
//! Exit codes: 0 on success, 1 on a domain or I/O error with a single
//! `ERR <TAG>: <message>` line on stderr, 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use threshold_sync::certifier::{audit_config, certify, verify_certificate, VerificationFailure};
use threshold_sync::dynamics::{ensemble, integrate, IntegrationParams};
use threshold_sync::equilibria::multistart_search;
use threshold_sync::graph::{
    build_threshold, format_edge_list, parse_code, parse_edge_list, recognize_threshold, Graph,
    ThresholdCode,
};
use threshold_sync::json;
use threshold_sync::landscape::{classify, PhaseConfig, Tolerances};
use threshold_sync::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File { path: PathBuf, source: Error },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn tag(&self) -> &'static str {
        match self {
            CliError::Domain(e) | CliError::File { source: e, .. } => e.tag(),
            CliError::Io { .. } => "IO",
            CliError::Verification(_) => "VERIFICATION_FAILED",
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "tsync", version, about = "Kuramoto energy landscapes on threshold graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file ("n <count>" header, 1-indexed "u v" lines)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Threshold code, a bare 0/1 string
    #[arg(long)]
    code: Option<String>,
}

#[derive(Debug, Args)]
struct FlowArgs {
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 1000.0)]
    tmax: f64,
    /// Stop once the gradient norm falls below this value
    #[arg(long, default_value_t = 1e-8)]
    stop_grad: f64,
}

impl FlowArgs {
    fn params(&self, record_every: usize) -> IntegrationParams {
        IntegrationParams {
            dt: self.dt,
            t_max: self.tmax,
            stop_grad_norm: self.stop_grad,
            record_every,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the threshold graph of a code
    Gen {
        #[arg(long)]
        code: String,
        /// Write the edge list here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the threshold code of an edge-list graph
    Recognize {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Energy, gradient, μ-values and classification of a configuration
    Landscape {
        #[command(flatten)]
        source: GraphSource,
        /// One angle per line
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        grad_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        psd_tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        sync_tol: f64,
    },
    /// Integrate the gradient flow and emit the trajectory as CSV
    Simulate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        theta0: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long, default_value_t = 1)]
        record_every: usize,
        /// CSV destination; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded random trials and report how many synchronize
    Ensemble {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        flow: FlowArgs,
    },
    /// Multistart Newton catalog of equilibria
    Equilibria {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gradient-norm tolerance for convergence
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Emit and verify the synchronization certificate of a connected code
    Certify {
        #[arg(long)]
        code: String,
    },
    /// Check a configuration against the certificate's phase equalities
    Audit {
        #[arg(long)]
        code: String,
        #[arg(long)]
        theta: PathBuf,
        /// Largest circular diameter accepted within a synchronized set
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn in_file<T>(path: &Path, r: threshold_sync::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = read_text(path)?;
    in_file(path, parse_edge_list(&text))
}

pub fn write_graph(g: &Graph, path: &Path) -> CliResult<()> {
    write_text(path, &format_edge_list(g))
}

fn read_phases(path: &Path) -> CliResult<PhaseConfig> {
    let text = read_text(path)?;
    in_file(path, PhaseConfig::parse(&text))
}

impl GraphSource {
    /// The graph and a label naming where it came from.
    fn load(&self) -> CliResult<(Graph, String)> {
        match (&self.graph, &self.code) {
            (Some(path), _) => Ok((read_graph(path)?, path.display().to_string())),
            (None, Some(code)) => {
                let c = parse_code(code)?;
                Ok((build_threshold(&c), c.to_string()))
            }
            (None, None) => unreachable!("clap requires one graph source"),
        }
    }
}

fn connected_code(text: &str) -> CliResult<ThresholdCode> {
    let c = parse_code(text)?;
    if !c.is_connected() {
        return Err(Error::Disconnected.into());
    }
    Ok(c)
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match command {
        Command::Gen { code, out: path } => {
            let c = parse_code(&code)?;
            let g = build_threshold(&c);
            if let Some(path) = path {
                write_graph(&g, &path)?;
            }
            writeln!(out, "n={} |E|={} density={:?}", g.n(), g.edge_count(), g.density()).map_err(io)?;
        }
        Command::Recognize { graph } => {
            let g = read_graph(&graph)?;
            match recognize_threshold(&g) {
                Ok(c) => writeln!(out, "{c}").map_err(io)?,
                Err(e) => {
                    writeln!(out, "NOT_THRESHOLD").map_err(io)?;
                    return Err(e.into());
                }
            }
        }
        Command::Landscape {
            source,
            theta,
            grad_tol,
            psd_tol,
            sync_tol,
        } => {
            let (g, _) = source.load()?;
            let theta = read_phases(&theta)?;
            let tol = Tolerances {
                grad: grad_tol,
                psd: psd_tol,
                sync: sync_tol,
            };
            let report = classify(&g, &theta, &tol)?;
            writeln!(out, "{}", json::to_string(&report)).map_err(io)?;
        }
        Command::Simulate {
            source,
            theta0,
            flow,
            record_every,
            out: path,
        } => {
            let (g, _) = source.load()?;
            let theta0 = read_phases(&theta0)?;
            let traj = integrate(&g, &theta0, &flow.params(record_every))?;
            let csv = traj.to_csv();
            match path {
                Some(path) => {
                    write_text(&path, &csv)?;
                    let t_final = traj.times.last().copied().unwrap_or(0.0);
                    writeln!(
                        out,
                        "termination={:?} t_final={} rows={}",
                        traj.termination,
                        json::format_f64(t_final),
                        traj.times.len()
                    )
                    .map_err(io)?;
                }
                None => out.write_all(csv.as_bytes()).map_err(io)?,
            }
        }
        Command::Ensemble {
            source,
            trials,
            seed,
            flow,
        } => {
            let (g, _) = source.load()?;
            let report = ensemble(&g, trials, seed, &flow.params(1))?;
            writeln!(out, "{}", json::to_string(&report)).map_err(io)?;
        }
        Command::Equilibria {
            source,
            starts,
            seed,
            tol,
        } => {
            let (g, label) = source.load()?;
            let catalog = multistart_search(&g, starts, seed, tol)?.with_graph_id(label);
            writeln!(out, "{}", json::to_string(&catalog)).map_err(io)?;
        }
        Command::Certify { code } => {
            let c = connected_code(&code)?;
            let cert = certify(&c)?;
            let report = verify_certificate(&build_threshold(&c), &cert)?;
            writeln!(out, "{}", cert.to_json()).map_err(io)?;
            if !report.pass {
                let reason = match report.failure {
                    Some(VerificationFailure::StepPrecondition { step, detail }) => {
                        format!("step {step}: {detail}")
                    }
                    Some(f) => format!("{f:?}"),
                    None => String::new(),
                };
                writeln!(out, "verification: FAIL").map_err(io)?;
                return Err(CliError::Verification(reason));
            }
            writeln!(out, "verification: PASS ({} steps)", cert.steps.len()).map_err(io)?;
        }
        Command::Audit { code, theta, tol } => {
            let c = connected_code(&code)?;
            let theta = read_phases(&theta)?;
            let cert = certify(&c)?;
            let report = audit_config(&build_threshold(&c), &cert, &theta, tol)?;
            writeln!(out, "{}", report.to_json()).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "ERR {}: {message}", e.tag());
            1
        }
    }
}
