//! Argument parsing and subcommand dispatch.

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use real_hurwitz_core::cutjoin::{block_matrix, OperatorKind};
use real_hurwitz_core::evolution::HurwitzTable;
use real_hurwitz_core::nonsep::{compare_operators, tilde_operator_matrix, transcribed_operator_matrix, TildeGraph};
use real_hurwitz_core::oracle::{hurwitz_by_paths_upto, mult_c2_matrix, GroundSet, StateGraph};
use real_hurwitz_core::spectral::{common_eigenbasis, compare_with_reference, DEFAULT_TOLERANCE};
use real_hurwitz_core::Bidegree;

use crate::output::{self, Format, OracleReport, TableRow, TildeRow};
use crate::verify::{self, Suite};
use crate::{compute, notation, CliError};

#[derive(Debug, Parser)]
#[command(name = "real-hurwitz", version, about = "Framed simple purely real Hurwitz numbers")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Largest degree n⁺ + n⁻ to compute.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: u32,

    /// Largest number of critical values m.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_m: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    /// Report connected numbers (the logarithm of the series).
    #[arg(long, global = true)]
    pub connected: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hurwitz numbers for every (m, type) within the caps.
    Table {
        /// Restrict to one type, e.g. `k+:[3] k-:[] l:[]` or `(3^1, ∅, ∅)`.
        #[arg(long = "type")]
        mu: Option<String>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Size cap for the oracle, spectral and nonsep suites.
        #[arg(long)]
        max_size: Option<u32>,
    },
    /// Matrix of one operator on one block.
    Block {
        #[arg(long)]
        nplus: u32,
        #[arg(long)]
        nminus: u32,
        #[arg(long, default_value = "wplus", value_parser = parse_operator)]
        operator: OperatorKind,
    },
    /// Common eigenvectors of W⁺ and W⁻ on one block.
    Spectrum {
        #[arg(long)]
        nplus: u32,
        #[arg(long)]
        nminus: u32,
        /// Residual bound for eigenvectors found numerically.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Walk counts on the transition state graph for one ground set.
    Oracle {
        #[arg(long)]
        nplus: u32,
        #[arg(long)]
        nminus: u32,
        #[arg(long)]
        m: usize,
    },
    /// Counts for real functions on non-separating curves.
    Nonsep {
        /// Compare the transcribed operator with the oracle one instead.
        #[arg(long)]
        compare: bool,
        #[arg(long = "type")]
        mu: Option<String>,
    },
}

fn parse_operator(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e: real_hurwitz_core::Error| e.to_string())
}

/// Executes a parsed command, writing to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let cfg = &cli.config;
    let (text, code) = compute::with_threads(cfg.threads.into(), || dispatch(cli))??;
    out.write_all(text.as_bytes())?;
    Ok(code)
}

fn dispatch(cli: &Cli) -> Result<(String, u8), CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Table { mu } => {
            let mu = mu.as_deref().map(notation::parse_type).transpose()?;
            let table = HurwitzTable::from_series(&compute::series(cfg.max_degree, cfg.max_m, cfg.connected)?);
            let rows: Vec<TableRow> = table
                .records
                .iter()
                .filter(|r| mu.as_ref().map_or(true, |mu| &r.mu == mu))
                .map(TableRow::from)
                .collect();
            Ok((output::render_table(&rows, cfg.format)?, 0))
        }
        Command::Verify { suite, max_size } => {
            let checks = verify::run_suite(*suite, *max_size)?;
            let code = if verify::all_passed(&checks) { 0 } else { 1 };
            Ok((verify::render(&checks, cfg.format)?, code))
        }
        Command::Block { nplus, nminus, operator } => {
            let block = block_matrix(*operator, Bidegree::new(*nplus, *nminus))?;
            Ok((output::render_block(&block, operator.name(), cfg.format)?, 0))
        }
        Command::Spectrum { nplus, nminus, tol } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(CliError::Usage("--tol must be positive".into()));
            }
            let b = Bidegree::new(*nplus, *nminus);
            let report = common_eigenbasis(b, *tol)?;
            let refs = if b == Bidegree::new(1, 1) {
                compare_with_reference(&report, &verify::reference_eigenbasis())
            } else {
                Vec::new()
            };
            Ok((output::render_spectrum(&report, &refs, cfg.format)?, 0))
        }
        Command::Oracle { nplus, nminus, m } => {
            let b = Bidegree::new(*nplus, *nminus);
            let graph = StateGraph::new(GroundSet::of_bidegree(b));
            let counts: Vec<_> = hurwitz_by_paths_upto(&graph, *m).pop().unwrap_or_default().into_iter().collect();
            let matches = mult_c2_matrix(b)? == block_matrix(OperatorKind::WPlus, b)?;
            let report = OracleReport::new(b, *m, graph.len(), matches, &counts);
            Ok((output::render_oracle(&report, cfg.format)?, 0))
        }
        Command::Nonsep { compare: true, .. } => {
            let comparisons: Vec<_> = (1..=cfg.max_degree)
                .map(|n| compare_operators(&tilde_operator_matrix(&TildeGraph::new(n as usize)), &transcribed_operator_matrix(n)))
                .collect();
            Ok((output::render_comparisons(&comparisons, cfg.format)?, 0))
        }
        Command::Nonsep { compare: false, mu } => {
            let mu = mu.as_deref().map(notation::parse_tilde_type).transpose()?;
            let h = compute::tilde_series(cfg.max_degree, cfg.max_m, cfg.connected)?;
            let mut rows = Vec::new();
            for (m, p) in h.coeffs().iter().enumerate() {
                for (t, v) in p.iter() {
                    if mu.as_ref().map_or(true, |mu| t == mu) {
                        rows.push(TildeRow::new(m, t, cfg.connected, v));
                    }
                }
            }
            Ok((output::render_tilde_table(&rows, cfg.format)?, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (String, u8) {
        let cli = Cli::try_parse_from(std::iter::once("real-hurwitz").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = run(&cli, &mut out).unwrap();
        (String::from_utf8(out).unwrap(), code)
    }

    #[test]
    fn connected_table_csv() {
        let (out, code) = run_args(&["table", "--max-degree", "4", "--max-m", "3", "--connected", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.contains("3,4,,,2,true,2,1\n"), "{out}");
    }

    #[test]
    fn degree_zero_table() {
        let (out, _) = run_args(&["table", "--max-degree", "0", "--max-m", "5", "--format", "csv"]);
        assert_eq!(out.lines().collect::<Vec<_>>(), ["m,kappa_plus,kappa_minus,lambda,chi,connected,value_num,value_den", "0,,,,0,false,1,1"]);
    }

    #[test]
    fn rejects_zero_threads() {
        assert!(Cli::try_parse_from(["real-hurwitz", "--threads", "0", "table"]).is_err());
    }
}
