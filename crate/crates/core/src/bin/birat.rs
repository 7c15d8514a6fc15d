use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use birat::cli::{run_str, Options};

/// Reads one JSON request (stdin or --file) and prints one JSON response.
#[derive(Parser, Debug)]
#[command(name = "birat", version)]
struct Args {
    /// Read the request from this file instead of stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Probe corpus fixture for coverage-style commands.
    #[arg(long)]
    probes: Option<PathBuf>,
    /// Degree bound for normalizations, integrality and gluing searches.
    #[arg(long, default_value_t = 3)]
    degree_bound: u32,
    /// Seed for the default probe corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match read(&args.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("birat: cannot read request: {e}");
            return ExitCode::from(2);
        }
    };
    let probes = match &args.probes {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("birat: cannot read probes: {e}");
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let opts = Options { degree_bound: args.degree_bound, seed: args.seed, probes };
    let (resp, code) = run_str(&input, &opts);
    print!("{}", resp.to_canonical_string());
    ExitCode::from(code as u8)
}
