//! Check runner for the `verify` subcommand.
//!
//! Checks whose statement names a specific alphabet (the linear laws,
//! the multiplicative bounds, the tower bound) always run on that
//! alphabet; the remaining checks run on the alphabet passed on the
//! command line.

use std::collections::HashMap;

use minrep::analysis::{
    enumerate_values, verify_bound_tightness, verify_closed_form, verify_extremal_complexity,
    verify_gamma_lower_bound, verify_histogram_monotone, verify_linear, verify_logstar_bound,
    verify_obs_growth, verify_obs_upper, verify_oracle_match, verify_strong_lower_bound,
    verify_structure, verify_tables_match, verify_term_count_bound, verify_ugly_monotone,
    verify_ugly_predecessor, verify_upper_bound, CheckId, OracleConfig, VerificationReport,
};
use minrep::engine::{build_table_with_progress, ComplexityTable, EngineConfig};
use minrep::extremal::{max_table, ExtremalRecord};
use minrep::ops::OperatorSet;
use num_bigint::BigUint;

use crate::CliError;

/// The linear laws cost nothing to check but quadratic time to tabulate
/// (no useful sum pruning when c(n) = n), so their sweep is capped.
const LINEAR_CAP: u64 = 1000;

pub fn parse_checks(spec: &str) -> Result<Vec<CheckId>, CliError> {
    if spec == "all" {
        return Ok(CheckId::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<CheckId>().map_err(CliError::Usage))
        .collect()
}

struct Context {
    limit: u64,
    kmax: u64,
    oracle_depth: u64,
    tables: HashMap<String, ComplexityTable>,
}

impl Context {
    fn table(&mut self, id: &str, limit: u64) -> Result<&ComplexityTable, CliError> {
        if !self.tables.contains_key(id) {
            let ops = OperatorSet::preset(id).map_err(|e| CliError::Usage(e.to_string()))?;
            let table = build_table_with_progress(&ops, limit, &EngineConfig::default(), |done| {
                eprintln!("[{id}] computed {done}/{limit}");
            })?;
            self.tables.insert(id.to_string(), table);
        }
        Ok(&self.tables[id])
    }

    fn records(&self, ops: &OperatorSet) -> Vec<ExtremalRecord> {
        max_table(ops, self.kmax, 1000)
    }

    /// Extremal records whose value fits in the table, for checks that
    /// look the value up.
    fn records_in_range(&self, ops: &OperatorSet) -> Vec<ExtremalRecord> {
        let cap = BigUint::from(self.limit);
        self.records(ops)
            .into_iter()
            .filter(|r| r.value().is_some_and(|v| *v <= cap))
            .collect()
    }
}

pub fn run_checks(
    plan: &[CheckId],
    generic_ops: &OperatorSet,
    limit: u64,
    kmax: u64,
    oracle_depth: u64,
) -> Result<Vec<VerificationReport>, CliError> {
    let mut ctx = Context { limit, kmax, oracle_depth, tables: HashMap::new() };
    let mul = OperatorSet::preset("1S*").expect("stock id");
    let generic_id = generic_ops.id().to_string();
    let mut out = Vec::with_capacity(plan.len());
    for &check in plan {
        out.push(run_one(check, &mut ctx, &generic_id, &mul)?);
    }
    Ok(out)
}

fn run_one(
    check: CheckId,
    ctx: &mut Context,
    generic_id: &str,
    mul: &OperatorSet,
) -> Result<VerificationReport, CliError> {
    let limit = ctx.limit;
    let linear_limit = limit.min(LINEAR_CAP);
    let report = match check {
        CheckId::Thm1_1 => verify_linear(ctx.table("1S", linear_limit)?)?,
        CheckId::Thm1_2 => verify_linear(ctx.table("1S+", linear_limit)?)?,
        CheckId::Thm1_3 => {
            let records = ctx.records_in_range(mul);
            verify_extremal_complexity(ctx.table("1S*", limit)?, &records)?
        }
        CheckId::Thm1_4 => {
            let ops = OperatorSet::preset(generic_id).expect("validated id");
            let census = enumerate_values(&ops, ctx.oracle_depth, &OracleConfig::default())?;
            verify_term_count_bound(&ops, &census)?
        }
        CheckId::Thm1_5 => verify_ugly_monotone(ctx.table(generic_id, limit)?)?,
        CheckId::Thm1_6 => verify_ugly_predecessor(ctx.table(generic_id, limit)?)?,
        CheckId::Thm2_1 => verify_gamma_lower_bound(ctx.table("1S+*", limit)?)?,
        CheckId::Thm2_1Strong => verify_strong_lower_bound(ctx.table("1S*", limit)?)?,
        CheckId::Thm2_2 => verify_upper_bound(ctx.table("1S*", limit)?)?,
        CheckId::Cor2_1 => verify_bound_tightness(ctx.table("1S*", limit)?)?,
        CheckId::Thm2_3 => verify_closed_form(mul, &ctx.records(mul))?,
        CheckId::Prop2_1 => verify_structure(mul, &ctx.records(mul))?,
        CheckId::Thm4_1 => verify_logstar_bound(ctx.table("1S^", limit)?)?,
        CheckId::Obs3_1 => verify_obs_growth(ctx.table("1S+*", limit)?)?,
        CheckId::Obs3_2 => verify_obs_upper(ctx.table("1S+*", limit)?)?,
        CheckId::Obs3_3 => {
            ctx.table("1S*", limit)?;
            ctx.table("1S+*", limit)?;
            verify_tables_match(&ctx.tables["1S*"], &ctx.tables["1S+*"])?
        }
        CheckId::Obs3_4 => verify_histogram_monotone(ctx.table("1S+*", limit)?)?,
        CheckId::OracleMatch => {
            let ops = OperatorSet::preset(generic_id).expect("validated id");
            let config = OracleConfig { value_cap: limit, ..OracleConfig::default() };
            let census = enumerate_values(&ops, ctx.oracle_depth, &config)?;
            verify_oracle_match(ctx.table(generic_id, limit)?, &census)?
        }
    };
    Ok(report)
}

/// One comma-separated line per report; commas inside the
/// counterexample text are softened so the line stays five fields.
pub fn report_line(r: &VerificationReport) -> String {
    let outcome = if r.passed { "pass" } else { "fail" };
    let detail = match &r.counterexample {
        Some(c) => format!("at {}: expected {}; got {}", c.location, c.expected, c.actual)
            .replace(',', ";"),
        None if r.notes.is_empty() => String::new(),
        None => r.notes.join("; ").replace(',', ";"),
    };
    format!("{},{},{},{outcome},{detail}\n", r.check, r.opset, r.range.replace(',', ";"))
}
