use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gradid::{run, Command, RunOptions};

/// Graded simple algebras: classification, identities and witnesses.
#[derive(Debug, Parser)]
#[command(name = "gradid", version)]
struct Args {
    /// Session document (TOML); `-` reads standard input.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short, value_enum)]
    command: Command,
    /// Worker threads for the identity oracle.
    #[arg(long)]
    threads: Option<usize>,
    /// Refuse polynomials above this degree.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::init();
    let args = Args::parse();
    let text = if args.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&args.input)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            println!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        threads: args.threads,
        max_degree: args.max_degree,
        seed: args.seed,
    };
    let out = run(args.command, &text, &opts);
    print!("{}", out.stdout);
    ExitCode::from(out.code as u8)
}
