use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lpsum_cli::{
    execute, parse_config, parse_request, render, CliError, Command, Options, Request, DEFAULT_TOL,
};

/// Geometry queries on l_p- and c_0-direct sums of normed spaces.
///
/// Each subcommand reads one JSON request (from --input or standard input)
/// and writes one JSON document to standard output.
#[derive(Parser)]
#[command(name = "lpsum", version)]
struct Cli {
    /// Request file; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Tolerance of the brute-force orthogonality oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// JSON file overriding oracle settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Norm of x.
    Norm,
    /// Dual space; with f, its dual norm and a norming element.
    Dual,
    /// Support functionals J(x): canonical member, structure, extreme points.
    Support,
    /// Smoothness diameter D(x) and the space constant.
    Diam,
    /// Smoothness report for x at threshold eps.
    Smooth,
    /// Birkhoff-James orthogonality x ⊥ y with a witness functional.
    Orth,
    /// Semi-inner product values [x, y].
    Sip,
    /// t with x ⊥ (y + t x).
    Complete,
    /// Left or right symmetry of orthogonality at x.
    Symmetric,
    /// Counterexample to symmetry at x, when one is constructed.
    Falsify,
    /// Closed forms against brute-force oracles.
    Crosscheck,
    /// Components with 𝒟(X_n) = 2 − 1/n and witnesses of 𝒟 = 2.
    DgapReport {
        /// Number of components.
        #[arg(long)]
        n: Option<usize>,
        /// Exponent of the sum, in (1, ∞).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Request whose `command` field selects the query.
    Run,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Validation(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    let mut opts = Options {
        tol: cli.tol,
        ..Options::default()
    };
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        opts.config = parse_config(&text)?;
    }
    let (command, request) = match cli.command {
        Cmd::DgapReport { n, p } => {
            let mut req = match &cli.input {
                Some(_) => parse_request(&read_input(&cli.input)?)?,
                None => Request::default(),
            };
            req.n = n.or(req.n);
            req.p = p.or(req.p);
            (Some(Command::DgapReport), req)
        }
        cmd => {
            let command = match cmd {
                Cmd::Norm => Some(Command::Norm),
                Cmd::Dual => Some(Command::Dual),
                Cmd::Support => Some(Command::Support),
                Cmd::Diam => Some(Command::Diam),
                Cmd::Smooth => Some(Command::Smooth),
                Cmd::Orth => Some(Command::Orth),
                Cmd::Sip => Some(Command::Sip),
                Cmd::Complete => Some(Command::Complete),
                Cmd::Symmetric => Some(Command::Symmetric),
                Cmd::Falsify => Some(Command::Falsify),
                Cmd::Crosscheck => Some(Command::Crosscheck),
                Cmd::Run => None,
                Cmd::DgapReport { .. } => unreachable!(),
            };
            (command, parse_request(&read_input(&cli.input)?)?)
        }
    };
    execute(command, &request, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            print!("{}", render(&v));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lpsum: {e}");
            print!("{}", render(&e.to_json()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
