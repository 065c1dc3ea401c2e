use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rootchain::ingest::{emit_error, emit_report, run, Command, Format};
use rootchain::spectra::NumericConfig;
use rootchain::Error;

#[derive(Parser)]
#[command(
    name = "rootchain",
    version,
    about = "Eigenvalues, Jordan chains and root functions of rational matrix functions"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Relative residual tolerance for numeric roots.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,
    /// Radius for merging numeric roots.
    #[arg(long, default_value_t = 1e-6, global = true)]
    cluster_radius: f64,
    /// Iteration cap for the numeric root finder.
    #[arg(long, default_value_t = 200, global = true)]
    max_iter: usize,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Sub {
    /// Zeros, poles and mixed points of det Q.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Jordan chain at an eigenvalue.
    Chain {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Also report all partial multiplicities and a maximal chain.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Root function built from a chain, with its zero order.
    Rootfn {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Use a chain of maximal length instead of the greedy one.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check the zero order of a given root function.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        rootfn: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Exponential solutions of a reciprocal system.
    OdeRecip {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
    /// Solution of a linear system from a Jordan chain.
    OdeLinear {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        chain: PathBuf,
    },
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Analyze { input } => Command::Analyze { input },
            Sub::Chain {
                input,
                alpha,
                max_len,
                exhaustive,
            } => Command::Chain {
                input,
                alpha,
                max_len,
                exhaustive,
            },
            Sub::Rootfn {
                input,
                alpha,
                max_len,
                exhaustive,
            } => Command::RootFn {
                input,
                alpha,
                max_len,
                exhaustive,
            },
            Sub::Verify {
                input,
                alpha,
                rootfn,
                order,
            } => Command::Verify {
                input,
                alpha,
                rootfn,
                order,
            },
            Sub::OdeRecip { input, candidate } => Command::OdeRecip { input, candidate },
            Sub::OdeLinear { input, alpha, chain } => Command::OdeLinear { input, alpha, chain },
        }
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::File {
            path: p.display().to_string(),
            msg: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Human => Format::Human,
        OutputFormat::Structured => Format::Structured,
    };
    let cfg = NumericConfig {
        residual_tol: cli.tol,
        cluster_radius: cli.cluster_radius,
        max_iter: cli.max_iter,
    };
    let outcome =
        run(&cli.command.into(), &cfg).and_then(|report| write_out(&cli.output, &emit_report(&report, format)));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            if matches!(format, Format::Structured) {
                let _ = write_out(&cli.output, &emit_error(&e));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
