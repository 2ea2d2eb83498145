//! `metzler`: identity checks, spectra, zeta values, SIS simulation and the
//! discrepancy ledger, each emitted as a JSON result document.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! invalid input or a numerical error.

mod commands;
mod document;
mod source;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metzler_core::sis::DecayOptions;
use metzler_core::{Complex64, Error, Result};

use commands::sis::SisArgs;
use commands::zeta::CoinKind;
use document::{Output, ResultDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Document,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "metzler",
    version,
    about = "Digraph Metzler matrices: identities, spectra, zeta functions, SIS decay"
)]
struct Cli {
    /// Seed for every random choice (random coins, simulation streams).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the tolerance of every check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for parallel kernels.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Document)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct GraphArgs {
    /// Generator (torus:d=2,N=3, petersen, cycle:n=5, dicycle:n=4,
    /// complete:n=4, path1, edge, random:n=6,seed=7) or a graph document.
    #[arg(long)]
    graph: String,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run identity checks on a graph.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated: prop1, thm1, thm2, thm4, thm5, cor1..cor5, all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
    /// Walk-type zeta functions on tori.
    Zeta {
        #[command(subcommand)]
        kind: ZetaCommand,
    },
    /// Simulate SIS dynamics and compare decay rates with the spectral bound.
    Sis {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        /// Grid intervals on [0, t_max].
        #[arg(long, default_value_t = 400)]
        grid: usize,
        /// Fit window, as fractions of N.
        #[arg(long, default_value_t = 0.05)]
        window_lo: f64,
        #[arg(long, default_value_t = 0.5)]
        window_hi: f64,
        #[arg(long, default_value_t = 200)]
        bootstrap: usize,
    },
    /// Eigenvalues of the Metzler matrix and the decay bound.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Printed-versus-rederived coefficient report.
    Ledger,
}

#[derive(Debug, Subcommand)]
enum ZetaCommand {
    /// Metzler zeta of the torus: finite N and the N -> infinity limit.
    Metzler {
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Comma-separated torus sides.
        #[arg(long = "N", value_delimiter = ',', default_value = "4,8,16")]
        sides: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.1)]
        u: f64,
        /// Quadrature resolution for the limit.
        #[arg(long, default_value_t = 64)]
        q: usize,
    },
    /// Coin-walk zeta of the torus.
    Walk {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long = "N", value_delimiter = ',', default_value = "4")]
        sides: Vec<usize>,
        /// identity, grover, random-unitary or random-stochastic.
        #[arg(long, default_value = "identity")]
        coin: String,
        #[arg(long, default_value_t = 0.5)]
        u: f64,
        /// Imaginary part of u.
        #[arg(long, default_value_t = 0.0)]
        u_im: f64,
    },
}

/// Arguments echoed into the document: everything except output routing.
fn command_echo(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut args = args.into_iter();
    while let Some(a) = args.next() {
        match a.as_str() {
            "--out" | "--jobs" => {
                args.next();
            }
            _ if a.starts_with("--out=") || a.starts_with("--jobs=") => {}
            _ => out.push(a),
        }
    }
    out
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<Output> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!("--tol must be positive, got {t}")));
        }
    }
    let doc = ResultDocument::new(echo, cli.seed);
    match &cli.command {
        Command::Verify { graph, checks } => {
            let src = source::resolve(&graph.graph, graph.beta, graph.delta)?;
            commands::verify::run(doc, &graph.graph, &src, checks, cli.tol)
        }
        Command::Zeta { kind } => match kind {
            ZetaCommand::Metzler {
                d,
                sides,
                beta,
                delta,
                u,
                q,
            } => commands::zeta::metzler(doc, *d, sides, *beta, *delta, *u, *q, cli.tol),
            ZetaCommand::Walk {
                d,
                sides,
                coin,
                u,
                u_im,
            } => {
                let coin: CoinKind = coin.parse()?;
                commands::zeta::walk(doc, *d, sides, coin, Complex64::new(*u, *u_im), cli.tol)
            }
        },
        Command::Sis {
            graph,
            trials,
            t_max,
            grid,
            window_lo,
            window_hi,
            bootstrap,
        } => {
            let src = source::resolve(&graph.graph, graph.beta, graph.delta)?;
            let args = SisArgs {
                trials: *trials,
                t_max: *t_max,
                options: DecayOptions {
                    grid: *grid,
                    window: (*window_lo, *window_hi),
                    bootstrap: *bootstrap,
                },
            };
            commands::sis::run(doc, &graph.graph, &src, &args, cli.tol)
        }
        Command::Spectrum { graph } => {
            let src = source::resolve(&graph.graph, graph.beta, graph.delta)?;
            commands::spectrum::run(doc, &graph.graph, &src, cli.tol)
        }
        Command::Ledger => commands::ledger::run(doc),
    }
}

fn emit(cli: &Cli, out: &Output) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Document => {
            let mut s = serde_json::to_string_pretty(&out.document).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Csv => out.table.render(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli, command_echo(std::env::args().skip(1))) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.document.passed {
        ExitCode::SUCCESS
    } else {
        for c in out.document.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "failed: {} (measured {:e}, tolerance {:e})",
                c.name, c.measured, c.tolerance
            );
        }
        ExitCode::from(1)
    }
}
