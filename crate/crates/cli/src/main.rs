mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "tpn",
    version,
    about = "Center-preserving automorphisms of the finite Heisenberg group and their Weil lifts"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = tpn_core::weil::DEFAULT_TOL, value_parser = positive_f64)]
    pub tol: f64,
    /// Allow exhaustive sweeps over at most this many tuples, lifting the
    /// default caps on N.
    #[arg(long, global = true)]
    pub max_pairs: Option<u64>,
    /// Check this many random tuples instead of all of them.
    #[arg(long, global = true)]
    pub sample: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or test elements of Sp_N.
    Sp {
        #[command(subcommand)]
        action: SpAction,
    },
    /// Print the splitting Σ(S) as images of Q and P.
    Split {
        #[arg(long, value_parser = modulus)]
        n: i64,
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        mat: [i64; 4],
    },
    /// Run a verification sweep.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, value_parser = modulus)]
        n: i64,
    },
    /// Evaluate the 2-cocycle C(S1, S2) of the simple section.
    Cocycle {
        #[arg(long, value_parser = modulus)]
        n: i64,
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        s1: [i64; 4],
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        s2: [i64; 4],
    },
    /// Print the lifted Weil unitary of S.
    Weil {
        #[arg(long, value_parser = modulus)]
        n: i64,
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        mat: [i64; 4],
    },
    /// Chinese remainder decomposition of residues.
    Crt {
        #[command(subcommand)]
        action: CrtAction,
    },
}

#[derive(Subcommand, Debug)]
enum SpAction {
    List {
        #[arg(long, value_parser = modulus)]
        n: i64,
    },
    /// Membership in Sp_N and, read mod 2N, in the tilde group.
    Check {
        #[arg(long, value_parser = modulus)]
        n: i64,
        #[arg(long, value_parser = matrix, allow_hyphen_values = true)]
        mat: [i64; 4],
    },
}

#[derive(Subcommand, Debug)]
enum CrtAction {
    Decompose {
        #[arg(long, value_parser = modulus)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
        /// First factor; defaults to the largest power of 2 dividing N.
        #[arg(long, value_parser = modulus)]
        d1: Option<i64>,
    },
    Compose {
        #[arg(long, value_parser = modulus)]
        d1: i64,
        #[arg(long, value_parser = modulus)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        r1: i64,
        #[arg(long, allow_hyphen_values = true)]
        r2: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Splitting,
    Cocycle,
    Weil,
    Crt,
}

fn modulus(s: &str) -> Result<i64, String> {
    match s.trim().parse::<i64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected an integer N >= 1, got {s:?}")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("expected a positive tolerance, got {s:?}")),
    }
}

/// Row-major `a,b,c,d`.
fn matrix(s: &str) -> Result<[i64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated entries a,b,c,d, got {s:?}"
        ));
    }
    let mut out = [0; 4];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| format!("matrix entry {p:?} is not an integer"))?;
    }
    Ok(out)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HEIS_THREADS") else {
        return Ok(());
    };
    let threads: usize = v.trim().parse().ok().filter(|&t| t >= 1).ok_or_else(|| {
        Failure::usage(format!(
            "HEIS_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<output::Report, Failure> {
    configure_threads()?;
    let g = &cli.global;
    match cli.command {
        Command::Sp { action } => match action {
            SpAction::List { n } => commands::sp_list(n),
            SpAction::Check { n, mat } => commands::sp_check(n, mat),
        },
        Command::Split { n, mat } => commands::split(n, mat),
        Command::Verify { target, n } => commands::verify(target, n, g),
        Command::Cocycle { n, s1, s2 } => commands::cocycle(n, s1, s2),
        Command::Weil { n, mat } => commands::weil(n, mat, g),
        Command::Crt { action } => match action {
            CrtAction::Decompose { n, value, d1 } => commands::crt_decompose(n, value, d1),
            CrtAction::Compose { d1, d2, r1, r2 } => commands::crt_compose(d1, d2, r1, r2),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(report) => {
            report.print(format);
            ExitCode::from(report.exit_code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
