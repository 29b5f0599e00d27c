//! `gentrig`: command-line front end for the gentrig library.

mod commands;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gentrig::{ErrorKind, C64};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "gentrig",
    version,
    about = "Generalized trigonometric functions and rational series sums"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
struct GlobalOpts {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Default output format when --json is absent.
    #[arg(
        long,
        global = true,
        env = "GENTRIG_FORMAT",
        value_enum,
        default_value = "text",
        hide_env_values = true
    )]
    format: Format,
    /// Print C(P) with columns from the highest power of n down.
    #[arg(long, global = true)]
    descending_columns: bool,
    /// Root-finder tolerance.
    #[arg(long, global = true, default_value_t = gentrig::poly::DEFAULT_TOL)]
    tol: f64,
    /// Tolerance override for sum comparisons in `verify`.
    #[arg(long, global = true)]
    sum_tol: Option<f64>,
    /// Number of terms for the brute-force oracle (at least 1000).
    #[arg(long, global = true, default_value_t = gentrig::oracle::DEFAULT_ORACLE_N)]
    oracle_n: usize,
    /// Seed for sampled points and random families.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
}

#[derive(Debug, Clone, Args)]
struct PolyArg {
    /// Polynomial, e.g. "x^3+x^2+1" or "(1+2i)x^2-3".
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    poly: Option<String>,
    /// Comma-separated coefficients in ascending powers, e.g. "1,0,1".
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CycloCheck {
    Identity,
    Addition,
    Taylor,
    Factorial,
    MatrixA,
    Delta,
    Rescale,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    gentrig::poly::parse_complex_literal(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots of P with their residual.
    Roots {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Evaluate S_l(x); all l when --l is omitted.
    Eval {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        x: C64,
    },
    /// Taylor coefficients b_0..b_K of S_l.
    Taylor {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Identity certificate and det M(x) at sample points.
    Identity {
        #[command(flatten)]
        poly: PolyArg,
        /// Sample points (repeatable); defaults to seeded points with |x| <= 1.
        #[arg(long = "x", allow_hyphen_values = true, value_parser = parse_complex)]
        xs: Vec<C64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Checks for the P = x^m - 1 functions.
    Cyclo {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        check: CycloCheck,
        /// n for the factorial check (a multiple of 3).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Associated matrix C(P).
    MatrixC {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Sums of n^k/P(n) and (-1)^n n^k/P(n) over the integers.
    Sum {
        #[command(flatten)]
        poly: PolyArg,
        /// Skip the brute-force comparison.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Run every acceptance criterion.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.global.json {
        Format::Json
    } else {
        cli.global.format
    };
    let outcome = commands::run(&cli.command, &cli.global);
    match outcome {
        Ok((doc, code)) => {
            render::emit(&doc, format);
            ExitCode::from(code)
        }
        Err(failure) => {
            let code = match failure.error.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Numerical => 3,
            };
            render::emit_error(&failure, format);
            ExitCode::from(code)
        }
    }
}
