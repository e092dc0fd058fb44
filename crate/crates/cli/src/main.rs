use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use homcat::{cmd_check, cmd_construct, cmd_roundtrip, Options};

#[derive(Parser)]
#[command(name = "homcat", version, about = "Check hom-Lie, hom-Poisson, hom-Gerstenhaber and hom-Lie algebroid structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Maximal monomial degree for polynomial identities
    #[arg(long, default_value_t = 3)]
    degree_bound: u32,
    /// Maximal total exterior degree for graded checks
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Maximal coefficient degree of sampled basis elements in graded checks
    #[arg(long, default_value_t = 1)]
    poly_degree: u32,
    /// Seed for randomized suites
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
}

impl Common {
    fn options(self) -> Options {
        Options {
            degree_bound: self.degree_bound,
            max_degree: self.max_degree,
            poly_degree: self.poly_degree,
            seed: self.seed,
            report: self.report,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run an axiom suite on a structure file
    Check {
        /// Structure file, or a name looked up in $HOMCAT_FIXTURES
        input: PathBuf,
        /// Suite to run; defaults to the main axiom suite of the file's kind
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a new structure file from an input file
    Construct {
        /// composition, exterior, sym_poisson, action, line_bundle, cotangent, to_gerstenhaber or to_algebroid
        #[arg(long)]
        kind: String,
        /// Structure file, or a name looked up in $HOMCAT_FIXTURES
        input: PathBuf,
        /// Where to write the constructed structure
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Algebroid to Gerstenhaber model and back, compared exactly
    Roundtrip {
        /// Hom-Lie algebroid file, or a name looked up in $HOMCAT_FIXTURES
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let out = match Cli::parse().command {
        Command::Check { input, suite, common } => cmd_check(&input, suite.as_deref(), &common.options()),
        Command::Construct {
            kind,
            input,
            output,
            common,
        } => cmd_construct(&kind, &input, &output, &common.options()),
        Command::Roundtrip { input, common } => cmd_roundtrip(&input, &common.options()),
    };
    if out.code == homcat::commands::EXIT_MALFORMED {
        eprintln!("error: {}", out.message);
    } else {
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.message);
        if let Some(r) = &out.report {
            for v in &r.checks {
                if writeln!(stdout, "  {v}").is_err() {
                    break;
                }
            }
        }
    }
    ExitCode::from(out.code)
}
