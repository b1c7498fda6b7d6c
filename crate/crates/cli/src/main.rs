//! `zmw`: tables, verifications and samplers for z-measures on `S_n(G)`.
//!
//! Exit codes: 0 success, 1 a checked identity failed, 2 bad input,
//! 3 a resource bound was hit.

mod commands;
mod load;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zmw_core::par::{self, Mode};
use zmw_core::wreath::DEFAULT_ENUMERATION_BOUND;
use zmw_core::Error;

use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "zmw", version, about = "Exact z-measures, Ewens measures and characters for wreath products S_n(G)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Decimal digits for approximate roots of unity and decimal output.
    #[arg(long, global = true, env = "ZMW_PRECISION", default_value_t = zmw_core::scalar::DEFAULT_PRECISION)]
    precision: u32,
    /// Output format; `zmeasure table` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest |S_n(G)| enumerated by exhaustive commands.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    bound: u64,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model document path, or a built-in name: trivial, z2, z3, z2xz2, s3, z<m>.
    #[arg(long)]
    pub model: String,
    /// `z` document path, or comma-separated class values such as `3,1`.
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// z-measure tables.
    Zmeasure {
        #[command(subcommand)]
        cmd: ZmeasureCmd,
    },
    /// Check a family of identities; exits 1 if any fails.
    Verify {
        suite: Suite,
        #[command(flatten)]
        m: ModelArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Seeded JSON-lines stream of draws.
    Sample {
        target: Target,
        #[command(flatten)]
        m: ModelArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ewens measures on S_n(G).
    Ewens {
        #[command(subcommand)]
        cmd: EwensCmd,
    },
    /// Irreducible characters of S_n(G).
    Characters {
        #[command(subcommand)]
        cmd: CharactersCmd,
    },
    /// Thoma kernel evaluation.
    Thoma {
        #[command(subcommand)]
        cmd: ThomaCmd,
    },
}

#[derive(Subcommand, Debug)]
enum ZmeasureCmd {
    /// Rows (family, M, DIM, phi) for all families of size n, then a checksum.
    Table {
        #[command(flatten)]
        m: ModelArgs,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum EwensCmd {
    /// Exact total Ewens mass of S_n(G).
    Sum {
        #[command(flatten)]
        m: ModelArgs,
        #[arg(long)]
        n: usize,
    },
    /// Same as `sample ewens`.
    Sample {
        #[command(flatten)]
        m: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CharactersCmd {
    /// Values of every irreducible character on every class.
    Table {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ThomaCmd {
    /// K(Lambda, omega) as an exact value and a decimal.
    Kernel {
        #[arg(long)]
        model: String,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        omega: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Normalization,
    Harmonicity,
    Ewens,
    Projection,
    Characters,
    Parseval,
    U1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ewens,
    Family,
    Thoma,
}

pub struct Ctx {
    pub precision: u32,
    pub format: Format,
    pub bound: u64,
    pub out: Output,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Contract(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.precision < 15 {
        eprintln!("zmw: precision must be at least 15 digits, got {}", cli.precision);
        return ExitCode::from(2);
    }
    if cli.sequential {
        par::set_mode(Mode::Sequential);
    }
    let format = cli.format.unwrap_or(match cli.command {
        Command::Zmeasure { .. } => Format::Csv,
        _ => Format::Json,
    });
    let mut ctx = Ctx { precision: cli.precision, format, bound: cli.bound, out: Output::new(format) };
    let result = match cli.command {
        Command::Zmeasure { cmd: ZmeasureCmd::Table { m, n } } => commands::zmeasure_table(&mut ctx, &m, n),
        Command::Verify { suite, m, n } => verify::run(&mut ctx, suite, &m, n),
        Command::Sample { target, m, n, count, seed } => commands::sample(&mut ctx, target, &m, n, count, seed),
        Command::Ewens { cmd: EwensCmd::Sum { m, n } } => commands::ewens_sum(&mut ctx, &m, n),
        Command::Ewens { cmd: EwensCmd::Sample { m, n, count, seed } } => {
            commands::sample(&mut ctx, Target::Ewens, &m, n, count, seed)
        }
        Command::Characters { cmd: CharactersCmd::Table { model, n } } => commands::characters_table(&mut ctx, &model, n),
        Command::Thoma { cmd: ThomaCmd::Kernel { model, family, omega } } => {
            commands::thoma_kernel(&mut ctx, &model, &family, &omega)
        }
    };
    let flushed = ctx.out.flush();
    match result {
        Ok(code) => {
            if let Err(e) = flushed {
                eprintln!("zmw: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("zmw: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
