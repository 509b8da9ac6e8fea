//! `minrep`: builds complexity tables, answers witness queries, and
//! reproduces the reference tables, histograms and verification suite.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minrep::analysis::{enumerate_values, histogram, ugly_numbers, OracleConfig};
use minrep::engine::{build_table_with_progress, ComplexityTable, EngineConfig};
use minrep::extremal::max_table;
use minrep::ops::OperatorSet;
use minrep_cli::{ocmp, verify, CliError};

#[derive(Parser)]
#[command(name = "minrep", version, about = "Minimal-representation complexity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complexity table and persist it.
    Compute {
        /// Operator set id: 1S, 1S+, 1S*, 1S+* or 1S^.
        #[arg(long)]
        opset: String,
        /// Largest n to tabulate.
        #[arg(long)]
        limit: u64,
        /// Destination table file.
        #[arg(long)]
        out: PathBuf,
        /// Extend an existing table file instead of rebuilding.
        #[arg(long)]
        resume: bool,
        /// Also write a text export (n,complexity,witness), "-" for stdout.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Print n, c(n) and a minimal witness from a stored table.
    Witness {
        /// Table file produced by `compute`.
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        n: u64,
    },
    /// Smallest number of each complexity class, with primality.
    Ugly {
        #[arg(long)]
        opset: String,
        #[arg(long)]
        limit: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest value writable with exactly k symbols, for k = 1..=kmax.
    Maxrep {
        #[arg(long)]
        opset: String,
        #[arg(long)]
        kmax: u64,
        /// Decimal-digit budget before a value is reported as truncated.
        #[arg(long, default_value_t = 1000)]
        digit_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complexity histogram: how many n <= N have c(n) = k.
    Hist {
        #[arg(long)]
        opset: String,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run named checks against freshly built tables.
    Verify {
        /// "all" or a comma-separated list such as "thm_1_5,obs_3_4".
        #[arg(long, default_value = "all")]
        checks: String,
        /// Operator set for the opset-generic checks; checks whose claim
        /// names a specific alphabet always use that alphabet.
        #[arg(long, default_value = "1S*")]
        opset: String,
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        /// Extremal-table depth for the structural and closed-form checks.
        #[arg(long, default_value_t = 60)]
        kmax: u64,
        /// Exhaustive-enumeration depth for the oracle checks.
        #[arg(long, default_value_t = 12)]
        oracle_depth: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive term census: l(k) and distinct values per length.
    Oracle {
        #[arg(long)]
        opset: String,
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn preset(id: &str) -> Result<OperatorSet, CliError> {
    OperatorSet::preset(id).map_err(|e| CliError::Usage(e.to_string()))
}

fn build(ops: &OperatorSet, limit: u64) -> Result<ComplexityTable, CliError> {
    if limit == 0 {
        return Err(CliError::Usage("--limit must be at least 1".into()));
    }
    Ok(build_table_with_progress(ops, limit, &EngineConfig::default(), |done| {
        eprintln!("computed {done}/{limit}");
    })?)
}

/// Writes `lines` (header included) to `out`, or stdout for `None`/"-".
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) if path.as_os_str() != "-" => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let tmp = dir.join(format!(
                ".{}.tmp",
                path.file_name().and_then(|f| f.to_str()).unwrap_or("export")
            ));
            fs::write(&tmp, text)?;
            fs::rename(&tmp, path)?;
            Ok(())
        }
        _ => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { opset, limit, out, resume, export } => {
            let ops = preset(&opset)?;
            let table = if resume && out.exists() {
                let mut table = ocmp::load(&out)?;
                if table.ops().id() != ops.id() {
                    return Err(CliError::Format(format!(
                        "stored table is for opset {}, not {}",
                        table.ops().id(),
                        ops.id()
                    )));
                }
                table.extend_to(limit, &EngineConfig::default(), |done| {
                    eprintln!("computed {done}/{limit}");
                })?;
                table
            } else {
                build(&ops, limit)?
            };
            ocmp::save(&table, &out)?;
            if let Some(export) = export {
                let mut text = String::from("n,complexity,witness\n");
                for n in 1..=table.limit() {
                    let c = table.complexity_of(n)?;
                    let w = table.witness(n)?.serialize(table.ops()).expect("closed alphabet");
                    text.push_str(&format!("{n},{c},{w}\n"));
                }
                emit(Some(&export), &text)?;
            }
            Ok(())
        }
        Command::Witness { table, n } => {
            let table = ocmp::load(&table)?;
            let c = table.complexity_of(n).map_err(|e| CliError::Usage(e.to_string()))?;
            let w = table.witness(n)?.serialize(table.ops()).expect("closed alphabet");
            println!("{n},{c},{w}");
            Ok(())
        }
        Command::Ugly { opset, limit, out } => {
            let ops = preset(&opset)?;
            let table = build(&ops, limit)?;
            let mut text = String::from("n,witness,complexity,primality\n");
            for u in ugly_numbers(&table)? {
                let w = u.witness.serialize(&ops).expect("closed alphabet");
                let p = if u.is_prime { "Prime" } else { "Not Prime" };
                text.push_str(&format!("{},{w},{},{p}\n", u.n, u.complexity));
            }
            emit(out.as_deref(), &text)
        }
        Command::Maxrep { opset, kmax, digit_cap, out } => {
            let ops = preset(&opset)?;
            if kmax == 0 {
                return Err(CliError::Usage("--kmax must be at least 1".into()));
            }
            let mut text = String::from("k,value,witness\n");
            for r in max_table(&ops, kmax, digit_cap) {
                match (r.value(), r.witness()) {
                    (Some(v), Some(w)) => {
                        let w = w.serialize(&ops).expect("closed alphabet");
                        text.push_str(&format!("{},{v},{w}\n", r.k));
                    }
                    _ => text.push_str(&format!("{},{},\n", r.k, minrep::extremal::TRUNCATED_NOTE)),
                }
            }
            emit(out.as_deref(), &text)
        }
        Command::Hist { opset, limit, out } => {
            let ops = preset(&opset)?;
            let table = build(&ops, limit)?;
            let mut text = String::from("k,count,complete\n");
            for b in histogram(&table) {
                text.push_str(&format!("{},{},{}\n", b.k, b.count, b.complete));
            }
            emit(out.as_deref(), &text)
        }
        Command::Verify { checks, opset, limit, kmax, oracle_depth, out } => {
            let ops = preset(&opset)?;
            if limit == 0 {
                return Err(CliError::Usage("--limit must be at least 1".into()));
            }
            let plan = verify::parse_checks(&checks)?;
            let reports = verify::run_checks(&plan, &ops, limit, kmax, oracle_depth)?;
            let mut text = String::from("check,opset,range,outcome,counterexample\n");
            let mut failures = Vec::new();
            for r in &reports {
                text.push_str(&verify::report_line(r));
                if !r.passed {
                    failures.push(r.check.to_string());
                }
            }
            emit(out.as_deref(), &text)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(failures.join(", ")))
            }
        }
        Command::Oracle { opset, depth, out } => {
            let ops = preset(&opset)?;
            let census = enumerate_values(&ops, depth, &OracleConfig::default())?;
            let mut text = String::from("k,terms,values\n");
            for (i, (&terms, &values)) in census
                .terms_per_length
                .iter()
                .zip(&census.values_per_length)
                .enumerate()
            {
                text.push_str(&format!("{},{terms},{values}\n", i + 1));
            }
            emit(out.as_deref(), &text)
        }
    }
}
