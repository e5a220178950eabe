//! `apery`: term generation, binomial transforms, congruence certificates
//! and the verification suite from the command line.

mod commands;
mod output;
mod store;

use std::path::PathBuf;
use std::process::ExitCode;

use apery_core::sequences::{Normalization, SequenceId};
use apery_core::suite::Group;
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;
use store::Source;

#[derive(Debug, Parser)]
#[command(name = "apery", version)]
#[command(about = "Exact Apéry-like sequences, binomial transforms and congruence certificates")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    parallelism: Option<u16>,

    /// Term cache file, read if present and updated with new tables.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Reading of eta and s18.
    #[arg(long, global = true, value_enum, default_value = "formula")]
    eta_normalization: EtaNormalization,

    /// Upper bound accepted for --n-max.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EtaNormalization {
    Formula,
    Recurrence,
}

impl From<EtaNormalization> for Normalization {
    fn from(e: EtaNormalization) -> Self {
        match e {
            EtaNormalization::Formula => Normalization::Formula,
            EtaNormalization::Recurrence => Normalization::Recurrence,
        }
    }
}

/// Sequence ids; none means all fifteen.
#[derive(Debug, Args)]
pub struct Selection {
    /// Sequence ids (A..F, delta, eta, alpha, epsilon, zeta, gamma, s7, s10, s18) or `all`.
    seq_ids: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print u_0..u_N.
    Terms {
        #[command(flatten)]
        selection: Selection,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "canonical")]
        source: Source,
    },
    /// Print the binomial transform v_0(alpha)..v_N(alpha).
    Transform {
        #[command(flatten)]
        selection: Selection,
        /// Defaults to u_1 of each sequence.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "canonical")]
        source: Source,
    },
    /// Certify u_n ≡ u_1^n (mod M_{u_1}) and, with --alpha, u_n ≡ alpha^n (mod radical(M_alpha)).
    Certify {
        #[command(flatten)]
        selection: Selection,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
        #[arg(long, default_value_t = 500)]
        n_max: usize,
        /// Smallest alpha whose M_alpha is checked against M_{u_1}.
        #[arg(long, default_value_t = -25, allow_hyphen_values = true)]
        alpha_min: i64,
        #[arg(long, default_value_t = 25, allow_hyphen_values = true)]
        alpha_max: i64,
    },
    /// Reproduce the (u_1, N) table for all fifteen sequences.
    Tables {
        /// Largest gcd depth K checked for stability.
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
    /// Check v_{n p^k} ≡ v_{n p^(k-1)} (mod p^k).
    Gauss {
        #[command(flatten)]
        selection: Selection,
        /// Defaults to both 0 and u_1.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1500)]
        n_max: usize,
    },
    /// Print the recurrence satisfied by v_n(alpha).
    Recurrence {
        seq_id: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        alpha: i64,
    },
    /// Run the verification suite.
    Verify {
        /// Restrict to these groups.
        #[arg(long, value_delimiter = ',', value_parser = parse_group)]
        only: Vec<Group>,
        /// Report per-check wall time.
        #[arg(long)]
        timings: bool,
        /// Reduced problem sizes for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse()
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const INTEGRITY: u8 = 3;
}

pub fn parse_ids(selection: &Selection) -> Result<Vec<SequenceId>, String> {
    if selection.seq_ids.is_empty() || selection.seq_ids.iter().any(|s| s == "all") {
        return Ok(SequenceId::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for s in &selection.seq_ids {
        let id: SequenceId = s.parse().map_err(|e| format!("{e}"))?;
        if !ids.contains(&id) {
            ids.push(id);
        }
    }
    Ok(ids)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(cli);
    ExitCode::from(code)
}
