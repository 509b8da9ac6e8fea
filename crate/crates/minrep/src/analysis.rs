//! Derived data and verifiers: ugly and efficient numbers, the
//! exhaustive brute-force oracle, histograms, and one named check per
//! claim about the computed tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::engine::{solve_gamma, ComplexityTable, EngineError, Provenance};
use crate::extremal::{check_structure, closed_form_max, max_table, ExtremalRecord};
use crate::ops::{HyperOp, OperatorSet};
use crate::term::Term;

// ---------------------------------------------------------------------
// small number-theoretic helpers

/// Iterated logarithm base 3: the number of times `log3` must be applied
/// before the result drops to 1 or below. Computed by exact comparison
/// against the tower 1, 3, 27, 3^27; the next tower level exceeds u64.
pub fn logstar3(n: u64) -> u32 {
    const TOWER: [u64; 4] = [1, 3, 27, 7_625_597_484_987];
    for (j, &t) in TOWER.iter().enumerate() {
        if n <= t {
            return j as u32;
        }
    }
    4
}

/// Smallest `a` with `a^a >= n`.
pub fn obs_a(n: u64) -> u64 {
    let mut a = 1u64;
    loop {
        let mut pow = 1u128;
        for _ in 0..a {
            pow = pow.saturating_mul(a as u128);
        }
        if pow >= n as u128 {
            return a;
        }
        a += 1;
    }
}

/// Deterministic primality by trial division; exact for all u64 inputs
/// we ever see (tables stay far below 2^52).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

// ---------------------------------------------------------------------
// ugly and efficient numbers

/// The smallest number of one complexity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UglyRecord {
    pub n: u64,
    pub complexity: u16,
    pub witness: Term,
    pub is_prime: bool,
}

/// Smallest `n` with `c(n) = k`, for `k = 1, 2, ...` while the table can
/// still prove the minimum: ugly numbers grow with `k`, so the list stops
/// at the first `k` with no hit in range.
pub fn ugly_numbers(table: &ComplexityTable) -> Result<Vec<UglyRecord>, EngineError> {
    let mut first: BTreeMap<u16, u64> = BTreeMap::new();
    for (i, &c) in table.complexities().iter().enumerate() {
        if c != 0 {
            first.entry(c).or_insert(i as u64 + 1);
        }
    }
    let mut out = Vec::new();
    let mut k = 1u16;
    while let Some(&n) = first.get(&k) {
        out.push(UglyRecord {
            n,
            complexity: k,
            witness: table.witness(n)?,
            is_prime: is_prime(n),
        });
        k += 1;
    }
    Ok(out)
}

/// Largest number of each complexity class: `n_e(k) = v(M(k))`, taken
/// from the extremal records rather than any finite table.
pub fn efficient_numbers(records: &[ExtremalRecord]) -> Vec<(u64, BigUint)> {
    records
        .iter()
        .filter_map(|r| r.value().map(|v| (r.k, v.clone())))
        .collect()
}

// ---------------------------------------------------------------------
// the brute-force oracle

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Cap on the total number of distinct values kept.
    pub max_values: usize,
    /// Values above this are dropped from the value sets (term counts
    /// are unaffected; they are combinatorial).
    pub value_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_values: 1 << 22, value_cap: u64::MAX }
    }
}

/// Exhaustive enumeration by term length, independent of the engine's
/// per-`n` minimization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCensus {
    /// `l(k)`: number of length-`k` terms, indexed by `k - 1`.
    pub terms_per_length: Vec<u128>,
    /// Distinct values achievable with exactly `k` symbols.
    pub values_per_length: Vec<usize>,
    /// True minimal length of every reachable value.
    pub minimal_length: BTreeMap<u64, u64>,
}

/// Composes achievable-value sets length by length: length 1 is `{1}`,
/// length `k` applies successor to the `k-1` set and every binary
/// operation across all `k1 + k2 = k - 1` pairs. The first length at
/// which a value appears is its exact complexity.
pub fn enumerate_values(
    ops: &OperatorSet,
    max_len: u64,
    config: &OracleConfig,
) -> Result<TermCensus, AnalysisError> {
    if max_len == 0 || max_len > 30 {
        return Err(AnalysisError::BudgetExceeded {
            detail: format!("oracle depth {max_len} outside 1..=30"),
        });
    }
    let has_succ = ops.has_successor();
    let binops: Vec<HyperOp> = ops.binary_ops().collect();

    let mut sets: Vec<BTreeSet<u64>> = Vec::new();
    let mut minimal_length = BTreeMap::new();
    let mut total = 0usize;
    for k in 1..=max_len {
        let mut s: BTreeSet<u64> = BTreeSet::new();
        if k == 1 {
            s.insert(1);
        } else {
            if has_succ {
                for &v in &sets[(k - 2) as usize] {
                    if v < config.value_cap {
                        s.insert(v + 1);
                    }
                }
            }
            for &op in &binops {
                for k1 in 1..=k - 2 {
                    let k2 = k - 1 - k1;
                    for &a in &sets[(k1 - 1) as usize] {
                        for &b in &sets[(k2 - 1) as usize] {
                            if let Some(v) = apply_u64(op, a, b) {
                                if v <= config.value_cap {
                                    s.insert(v);
                                }
                            }
                        }
                    }
                }
            }
        }
        total += s.len();
        if total > config.max_values {
            return Err(AnalysisError::BudgetExceeded {
                detail: format!("oracle value sets exceed {}", config.max_values),
            });
        }
        for &v in &s {
            minimal_length.entry(v).or_insert(k);
        }
        sets.push(s);
    }

    // l(k) is combinatorial: every well-formed term here evaluates to a
    // natural number.
    let mut terms_per_length: Vec<u128> = Vec::with_capacity(max_len as usize);
    for k in 1..=max_len as usize {
        let count = if k == 1 {
            1u128
        } else {
            let mut c = if has_succ { terms_per_length[k - 2] } else { 0 };
            for _ in &binops {
                for k1 in 1..=k - 2 {
                    c += terms_per_length[k1 - 1] * terms_per_length[k - 2 - k1];
                }
            }
            c
        };
        terms_per_length.push(count);
    }

    Ok(TermCensus {
        terms_per_length,
        values_per_length: sets.iter().map(|s| s.len()).collect(),
        minimal_length,
    })
}

fn apply_u64(op: HyperOp, a: u64, b: u64) -> Option<u64> {
    match op {
        HyperOp::Add => a.checked_add(b),
        HyperOp::Mul => a.checked_mul(b),
        HyperOp::Pow => {
            if a == 1 {
                return Some(1);
            }
            let e: u32 = b.try_into().ok()?;
            a.checked_pow(e)
        }
    }
}

// ---------------------------------------------------------------------
// histograms

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistogramBin {
    pub k: u16,
    pub count: u64,
    /// True when `v(M(k)) <= N`, i.e. the bin cannot gain members from
    /// beyond the table.
    pub complete: bool,
}

/// Counts of `n <= N` with `c(n) = k`, per `k`.
pub fn histogram(table: &ComplexityTable) -> Vec<HistogramBin> {
    let mut counts: BTreeMap<u16, u64> = BTreeMap::new();
    for &c in table.complexities() {
        if c != 0 {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    let k_max = counts.keys().next_back().copied().unwrap_or(0);
    // 40 digits comfortably covers any value that could still be <= N
    let maxima = max_table(table.ops(), k_max as u64, 40);
    let limit = BigUint::from(table.limit());
    counts
        .into_iter()
        .map(|(k, count)| {
            let complete = maxima
                .get(k as usize - 1)
                .and_then(|r| r.value())
                .is_some_and(|v| *v <= limit);
            HistogramBin { k, count, complete }
        })
        .collect()
}

// ---------------------------------------------------------------------
// verification

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// A table or record set does not cover the requested range.
    InsufficientRange { detail: String },
    BudgetExceeded { detail: String },
    Engine(EngineError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::InsufficientRange { detail } => write!(f, "insufficient range: {detail}"),
            AnalysisError::BudgetExceeded { detail } => write!(f, "budget exceeded: {detail}"),
            AnalysisError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

impl From<EngineError> for AnalysisError {
    fn from(e: EngineError) -> Self {
        AnalysisError::Engine(e)
    }
}

/// Named checks, one per verifiable claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    Thm1_1,
    Thm1_2,
    Thm1_3,
    Thm1_4,
    Thm1_5,
    Thm1_6,
    Thm2_1,
    Thm2_1Strong,
    Thm2_2,
    Cor2_1,
    Thm2_3,
    Prop2_1,
    Thm4_1,
    Obs3_1,
    Obs3_2,
    Obs3_3,
    Obs3_4,
    OracleMatch,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::Thm1_1,
        CheckId::Thm1_2,
        CheckId::Thm1_3,
        CheckId::Thm1_4,
        CheckId::Thm1_5,
        CheckId::Thm1_6,
        CheckId::Thm2_1,
        CheckId::Thm2_1Strong,
        CheckId::Thm2_2,
        CheckId::Cor2_1,
        CheckId::Thm2_3,
        CheckId::Prop2_1,
        CheckId::Thm4_1,
        CheckId::Obs3_1,
        CheckId::Obs3_2,
        CheckId::Obs3_3,
        CheckId::Obs3_4,
        CheckId::OracleMatch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Thm1_1 => "thm_1_1",
            CheckId::Thm1_2 => "thm_1_2",
            CheckId::Thm1_3 => "thm_1_3",
            CheckId::Thm1_4 => "thm_1_4",
            CheckId::Thm1_5 => "thm_1_5",
            CheckId::Thm1_6 => "thm_1_6",
            CheckId::Thm2_1 => "thm_2_1",
            CheckId::Thm2_1Strong => "thm_2_1_strong",
            CheckId::Thm2_2 => "thm_2_2",
            CheckId::Cor2_1 => "cor_2_1",
            CheckId::Thm2_3 => "thm_2_3",
            CheckId::Prop2_1 => "prop_2_1",
            CheckId::Thm4_1 => "thm_4_1",
            CheckId::Obs3_1 => "obs_3_1",
            CheckId::Obs3_2 => "obs_3_2",
            CheckId::Obs3_3 => "obs_3_3",
            CheckId::Obs3_4 => "obs_3_4",
            CheckId::OracleMatch => "oracle_match",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// The `n` or `k` at which the claim first fails.
    pub location: u64,
    pub expected: String,
    pub actual: String,
}

/// Pass/fail outcome of one named check over a concrete range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: CheckId,
    pub opset: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn pass(check: CheckId, opset: &str, range: String) -> Self {
        VerificationReport {
            check,
            opset: opset.to_string(),
            range,
            passed: true,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    fn fail(check: CheckId, opset: &str, range: String, cx: Counterexample) -> Self {
        VerificationReport {
            check,
            opset: opset.to_string(),
            range,
            passed: false,
            counterexample: Some(cx),
            notes: Vec::new(),
        }
    }
}

fn n_range(table: &ComplexityTable) -> String {
    format!("n=1..={}", table.limit())
}

/// `c(n) = n` sweep: thm_1_1 for `{1,S}`, thm_1_2 for `{1,S,+}`.
pub fn verify_linear(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let check = if table.ops().id() == "1S+" { CheckId::Thm1_2 } else { CheckId::Thm1_1 };
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as u64;
        if c != n {
            return Ok(VerificationReport::fail(
                check,
                table.ops().id(),
                range,
                Counterexample { location: n, expected: n.to_string(), actual: c.to_string() },
            ));
        }
    }
    Ok(VerificationReport::pass(check, table.ops().id(), range))
}

/// thm_1_3: `c(v(M(k))) = k` for every supplied extremal record.
pub fn verify_extremal_complexity(
    table: &ComplexityTable,
    records: &[ExtremalRecord],
) -> Result<VerificationReport, AnalysisError> {
    let k_max = records.last().map(|r| r.k).unwrap_or(0);
    let range = format!("k=1..={k_max}");
    for r in records {
        let v = r.value().ok_or_else(|| AnalysisError::InsufficientRange {
            detail: format!("extremal record k={} is truncated", r.k),
        })?;
        let n = v.to_u64().filter(|&n| n <= table.limit()).ok_or_else(|| {
            AnalysisError::InsufficientRange {
                detail: format!("v(M({})) = {v} exceeds table limit {}", r.k, table.limit()),
            }
        })?;
        let c = table.complexity_of(n)? as u64;
        if c != r.k {
            return Ok(VerificationReport::fail(
                CheckId::Thm1_3,
                table.ops().id(),
                range,
                Counterexample { location: r.k, expected: r.k.to_string(), actual: c.to_string() },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm1_3, table.ops().id(), range))
}

/// thm_1_4, finite form: `l(k) < |O|^k` for every census length.
pub fn verify_term_count_bound(
    ops: &OperatorSet,
    census: &TermCensus,
) -> Result<VerificationReport, AnalysisError> {
    let k_max = census.terms_per_length.len() as u64;
    let range = format!("k=1..={k_max}");
    let base = ops.len() as u128;
    for (i, &l) in census.terms_per_length.iter().enumerate() {
        let k = i as u64 + 1;
        let bound = base.pow(k as u32);
        if l >= bound {
            return Ok(VerificationReport::fail(
                CheckId::Thm1_4,
                ops.id(),
                range,
                Counterexample {
                    location: k,
                    expected: format!("l(k) < {bound}"),
                    actual: l.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm1_4, ops.id(), range))
}

/// thm_1_5: ugly numbers are strictly increasing in `k`.
pub fn verify_ugly_monotone(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let uglies = ugly_numbers(table)?;
    let range = format!("k=1..={}", uglies.len());
    for w in uglies.windows(2) {
        if w[1].n <= w[0].n {
            return Ok(VerificationReport::fail(
                CheckId::Thm1_5,
                table.ops().id(),
                range,
                Counterexample {
                    location: w[1].complexity as u64,
                    expected: format!("> {}", w[0].n),
                    actual: w[1].n.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm1_5, table.ops().id(), range))
}

/// thm_1_6: every ugly `n_u` with `c(n_u) = k+1` has `c(n_u - 1) = k`,
/// hence a successor-form minimal witness; the engine's tie-break must
/// have produced one.
pub fn verify_ugly_predecessor(
    table: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let uglies = ugly_numbers(table)?;
    let range = format!("k=2..={}", uglies.len());
    for u in uglies.iter().filter(|u| u.complexity >= 2) {
        let prev = table.complexity_of(u.n - 1)?;
        if prev != u.complexity - 1 || !matches!(table.provenance(u.n)?, Provenance::Successor) {
            return Ok(VerificationReport::fail(
                CheckId::Thm1_6,
                table.ops().id(),
                range,
                Counterexample {
                    location: u.n,
                    expected: format!("c(n-1) = {} and S-form witness", u.complexity - 1),
                    actual: format!("c(n-1) = {prev}, rule {:?}", table.provenance(u.n)?),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm1_6, table.ops().id(), range))
}

/// thm_2_1 (and its `{1,S,+,*}` corollary): the gamma-form lower bound.
pub fn verify_gamma_lower_bound(
    table: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let g = solve_gamma();
    let coeff = (g + 1.0) / libm::log(g);
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as f64;
        let bound = coeff * libm::log(n as f64) - 1.0;
        if c < bound - 1e-9 {
            return Ok(VerificationReport::fail(
                CheckId::Thm2_1,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!(">= {bound:.6}"),
                    actual: format!("{c}"),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm2_1, table.ops().id(), range))
}

/// Compares `4^(c+1)` with `n^5` exactly; `c >= 5 log4(n) - 1` holds iff
/// the result is not `Less`, with equality exactly at `Equal`.
fn strong_bound_cmp(c: u16, n: u64) -> Ordering {
    debug_assert!(n <= (1 << 25));
    let e = 2 * (c as u32 + 1);
    if e >= 126 {
        return Ordering::Greater;
    }
    let lhs: u128 = 1u128 << e;
    let rhs: u128 = (n as u128).pow(5);
    lhs.cmp(&rhs)
}

fn is_pow4(n: u64) -> bool {
    n >= 4 && n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)
}

/// thm_2_1_strong: `c(n) >= 5 log4(n) - 1`, checked in exact integers.
pub fn verify_strong_lower_bound(
    table: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)?;
        if strong_bound_cmp(c, n) == Ordering::Less {
            return Ok(VerificationReport::fail(
                CheckId::Thm2_1Strong,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: "4^(c+1) >= n^5".to_string(),
                    actual: format!("c = {c}"),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm2_1Strong, table.ops().id(), range))
}

/// cor_2_1: the strong bound is attained exactly at powers of 4.
pub fn verify_bound_tightness(
    table: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)?;
        let tight = strong_bound_cmp(c, n) == Ordering::Equal;
        if tight != is_pow4(n) {
            return Ok(VerificationReport::fail(
                CheckId::Cor2_1,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!("bound tight iff n = 4^j; n {} a power of 4",
                        if is_pow4(n) { "is" } else { "is not" }),
                    actual: format!("c = {c}, tight = {tight}"),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Cor2_1, table.ops().id(), range))
}

/// thm_2_2: `c(n) <= 8 log4(n) + 2`.
pub fn verify_upper_bound(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as f64;
        let bound = 8.0 * libm::log2(n as f64) / 2.0 + 2.0;
        if c > bound + 1e-9 {
            return Ok(VerificationReport::fail(
                CheckId::Thm2_2,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!("<= {bound:.6}"),
                    actual: format!("{c}"),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm2_2, table.ops().id(), range))
}

/// thm_2_3: DP maxima match the closed form `3^r 4^(m-r)` for `k >= 11`.
pub fn verify_closed_form(
    ops: &OperatorSet,
    records: &[ExtremalRecord],
) -> Result<VerificationReport, AnalysisError> {
    let k_max = records.last().map(|r| r.k).unwrap_or(0);
    let range = format!("k=11..={k_max}");
    for r in records.iter().filter(|r| r.k >= 11) {
        let dp = r.value().ok_or_else(|| AnalysisError::InsufficientRange {
            detail: format!("extremal record k={} is truncated", r.k),
        })?;
        let closed = closed_form_max(r.k).expect("k >= 11");
        if *dp != closed {
            return Ok(VerificationReport::fail(
                CheckId::Thm2_3,
                ops.id(),
                range,
                Counterexample {
                    location: r.k,
                    expected: closed.to_string(),
                    actual: dp.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm2_3, ops.id(), range))
}

/// prop_2_1: factor-structure constraints on every maximal witness.
pub fn verify_structure(
    ops: &OperatorSet,
    records: &[ExtremalRecord],
) -> Result<VerificationReport, AnalysisError> {
    let k_max = records.last().map(|r| r.k).unwrap_or(0);
    let range = format!("k=1..={k_max}");
    for r in records {
        let report = check_structure(r);
        if !report.passed() {
            return Ok(VerificationReport::fail(
                CheckId::Prop2_1,
                ops.id(),
                range,
                Counterexample {
                    location: r.k,
                    expected: "no structure violations".to_string(),
                    actual: format!("{:?}", report.violations),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Prop2_1, ops.id(), range))
}

/// thm_4_1: `c(n) >= 4 log*_3(n) - 1` under `{1,S,^}`, exact integers.
///
/// The iterated logarithm here counts applications of `log3` until the
/// value drops to 3 or below — one fewer than [`logstar3`], which
/// iterates down to 1. The stricter convention is already false at
/// `n = 2` (`c = 2` against a bound of 3), so this is the reading the
/// data supports.
pub fn verify_logstar_bound(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as i64;
        let bound = 4 * (logstar3(n) as i64 - 1) - 1;
        if c < bound {
            return Ok(VerificationReport::fail(
                CheckId::Thm4_1,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!(">= {bound}"),
                    actual: c.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Thm4_1, table.ops().id(), range))
}

/// obs_3_1: `c(n) < (c(n_u)+1)(a+1) - 2` with `a` minimal s.t.
/// `n <= a^a` and `n_u` the largest ugly number of complexity at most
/// `a`. Boundary hits (equality) are recorded as notes, not failures.
pub fn verify_obs_growth(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let uglies = ugly_numbers(table)?;
    let range = n_range(table);
    let ugly_complexity_at = |a: u64| -> Option<u16> {
        uglies
            .iter()
            .rev()
            .find(|u| (u.complexity as u64) <= a)
            .map(|u| u.complexity)
    };
    let mut boundary_hits = 0u64;
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as u64;
        let a = obs_a(n);
        let cu = ugly_complexity_at(a).ok_or_else(|| AnalysisError::InsufficientRange {
            detail: format!("no ugly number with complexity <= {a}"),
        })? as u64;
        let bound = (cu + 1) * (a + 1) - 2;
        if c > bound {
            return Ok(VerificationReport::fail(
                CheckId::Obs3_1,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!("< {bound}"),
                    actual: c.to_string(),
                },
            ));
        }
        if c == bound {
            boundary_hits += 1;
        }
    }
    let mut report = VerificationReport::pass(CheckId::Obs3_1, table.ops().id(), range);
    if boundary_hits > 0 {
        report
            .notes
            .push(format!("{boundary_hits} boundary hits (c equal to the bound)"));
    }
    Ok(report)
}

/// obs_3_2: `c(n) <= ceil(5 log4(n) + a + 1)`.
pub fn verify_obs_upper(table: &ComplexityTable) -> Result<VerificationReport, AnalysisError> {
    let range = n_range(table);
    for n in 1..=table.limit() {
        let c = table.complexity_of(n)? as f64;
        let a = obs_a(n) as f64;
        let bound = libm::ceil(5.0 * libm::log2(n as f64) / 2.0 + a + 1.0 - 1e-9);
        if c > bound {
            return Ok(VerificationReport::fail(
                CheckId::Obs3_2,
                table.ops().id(),
                range,
                Counterexample {
                    location: n,
                    expected: format!("<= {bound}"),
                    actual: format!("{c}"),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Obs3_2, table.ops().id(), range))
}

/// obs_3_3: element-wise equality of two tables over their common range.
pub fn verify_tables_match(
    a: &ComplexityTable,
    b: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let limit = a.limit().min(b.limit());
    let opset = format!("{}={}", a.ops().id(), b.ops().id());
    let range = format!("n=1..={limit}");
    for n in 1..=limit {
        let (ca, cb) = (a.complexity_of(n)?, b.complexity_of(n)?);
        if ca != cb {
            return Ok(VerificationReport::fail(
                CheckId::Obs3_3,
                &opset,
                range,
                Counterexample {
                    location: n,
                    expected: ca.to_string(),
                    actual: cb.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Obs3_3, &opset, range))
}

/// obs_3_4: histogram counts nondecreasing over complete `k`.
pub fn verify_histogram_monotone(
    table: &ComplexityTable,
) -> Result<VerificationReport, AnalysisError> {
    let bins: Vec<HistogramBin> = histogram(table).into_iter().filter(|b| b.complete).collect();
    let range = format!(
        "complete k, n=1..={}",
        table.limit()
    );
    for w in bins.windows(2) {
        if w[1].count < w[0].count {
            return Ok(VerificationReport::fail(
                CheckId::Obs3_4,
                table.ops().id(),
                range,
                Counterexample {
                    location: w[1].k as u64,
                    expected: format!(">= {} (count at k={})", w[0].count, w[0].k),
                    actual: w[1].count.to_string(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::Obs3_4, table.ops().id(), range))
}

/// oracle_match: engine complexity equals the exhaustive minimum for
/// every value the oracle reached.
pub fn verify_oracle_match(
    table: &ComplexityTable,
    census: &TermCensus,
) -> Result<VerificationReport, AnalysisError> {
    let depth = census.terms_per_length.len();
    let range = format!("values reachable in <= {depth} symbols");
    for (&v, &k) in &census.minimal_length {
        if v > table.limit() {
            return Err(AnalysisError::InsufficientRange {
                detail: format!("oracle value {v} exceeds table limit {}", table.limit()),
            });
        }
        let c = table.complexity_of(v)? as u64;
        if c != k {
            return Ok(VerificationReport::fail(
                CheckId::OracleMatch,
                table.ops().id(),
                range,
                Counterexample { location: v, expected: k.to_string(), actual: c.to_string() },
            ));
        }
    }
    Ok(VerificationReport::pass(CheckId::OracleMatch, table.ops().id(), range))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_table, EngineConfig};

    fn table(id: &str, n: u64) -> ComplexityTable {
        build_table(&OperatorSet::preset(id).unwrap(), n, &EngineConfig::default()).unwrap()
    }

    #[test]
    fn logstar3_examples() {
        assert_eq!(logstar3(1), 0);
        assert_eq!(logstar3(2), 1);
        assert_eq!(logstar3(3), 1);
        assert_eq!(logstar3(4), 2);
        assert_eq!(logstar3(27), 2);
        assert_eq!(logstar3(28), 3);
        assert_eq!(logstar3(7_625_597_484_987), 3);
        assert_eq!(logstar3(7_625_597_484_988), 4);
    }

    #[test]
    fn obs_a_examples() {
        assert_eq!(obs_a(1), 1);
        assert_eq!(obs_a(27), 3);
        assert_eq!(obs_a(28), 4);
        assert_eq!(obs_a(4_500_000), 8);
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(11));
        assert!(!is_prime(15118));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(4_344_479));
    }

    #[test]
    fn ugly_first_rows() {
        let t = table("1S*", 200);
        let uglies = ugly_numbers(&t).unwrap();
        let k8 = uglies.iter().find(|u| u.complexity == 8).unwrap();
        assert_eq!(k8.n, 10);
        assert!(!k8.is_prime);
        let k9 = uglies.iter().find(|u| u.complexity == 9).unwrap();
        assert_eq!(k9.n, 11);
        assert!(k9.is_prime);
    }

    #[test]
    fn ugly_list_stops_within_range() {
        let t = table("1S*", 100);
        let uglies = ugly_numbers(&t).unwrap();
        // every emitted minimum is provably global: strictly below the
        // limit and contiguous in k
        for (i, u) in uglies.iter().enumerate() {
            assert_eq!(u.complexity as usize, i + 1);
            assert!(u.n <= 100);
        }
    }

    #[test]
    fn oracle_successor_only() {
        let ops = OperatorSet::preset("1S").unwrap();
        let census = enumerate_values(&ops, 10, &OracleConfig::default()).unwrap();
        for k in 1..=10u64 {
            assert_eq!(census.terms_per_length[k as usize - 1], 1);
            assert_eq!(census.minimal_length[&k], k);
        }
    }

    #[test]
    fn oracle_star_max_at_8() {
        let ops = OperatorSet::preset("1S*").unwrap();
        let census = enumerate_values(&ops, 8, &OracleConfig::default()).unwrap();
        let max = census.minimal_length.keys().max().unwrap();
        assert_eq!(*max, 12);
    }

    #[test]
    fn census_bounded_by_alphabet_power() {
        let ops = OperatorSet::preset("1S*").unwrap();
        let census = enumerate_values(&ops, 14, &OracleConfig::default()).unwrap();
        let report = verify_term_count_bound(&ops, &census).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn oracle_matches_engine_small() {
        for id in ["1S", "1S+", "1S*", "1S+*"] {
            let ops = OperatorSet::preset(id).unwrap();
            let census = enumerate_values(&ops, 14, &OracleConfig::default()).unwrap();
            let t = table(id, *census.minimal_length.keys().max().unwrap());
            let report = verify_oracle_match(&t, &census).unwrap();
            assert!(report.passed, "{id}: {:?}", report.counterexample);
        }
    }

    #[test]
    fn histogram_small() {
        let t = table("1S*", 1000);
        let bins = histogram(&t);
        let k1 = bins.iter().find(|b| b.k == 1).unwrap();
        assert_eq!(k1.count, 1);
        assert!(k1.complete);
        // k=8 range is (9, 12]: complexities 8, 9, 8
        let k8 = bins.iter().find(|b| b.k == 8).unwrap();
        assert_eq!(k8.count, 2);
    }

    #[test]
    fn linear_checks_pass() {
        assert!(verify_linear(&table("1S", 1000)).unwrap().passed);
        assert!(verify_linear(&table("1S+", 1000)).unwrap().passed);
    }

    #[test]
    fn bound_checks_pass_small() {
        let t = table("1S*", 5000);
        assert!(verify_strong_lower_bound(&t).unwrap().passed);
        assert!(verify_upper_bound(&t).unwrap().passed);
        assert!(verify_bound_tightness(&t).unwrap().passed);
        let tp = table("1S+*", 5000);
        assert!(verify_gamma_lower_bound(&tp).unwrap().passed);
    }

    #[test]
    fn tightness_catches_forged_table() {
        // strong lower bound sweeps must reject a table where c(64) is
        // too small
        let t = table("1S*", 64);
        assert_eq!(t.complexity_of(64).unwrap(), 14);
        assert_eq!(strong_bound_cmp(14, 64), Ordering::Equal);
        assert_eq!(strong_bound_cmp(13, 64), Ordering::Less);
        assert!(is_pow4(64));
        assert!(!is_pow4(32));
    }

    #[test]
    fn logstar_bound_small() {
        let t = table("1S^", 2000);
        assert!(verify_logstar_bound(&t).unwrap().passed);
    }

    #[test]
    fn obs_checks_small() {
        let t = table("1S+*", 5000);
        assert!(verify_obs_growth(&t).unwrap().passed);
        assert!(verify_obs_upper(&t).unwrap().passed);
        let s = table("1S*", 5000);
        assert!(verify_tables_match(&s, &t).unwrap().passed);
    }

    #[test]
    fn ugly_checks_small() {
        let t = table("1S*", 20_000);
        assert!(verify_ugly_monotone(&t).unwrap().passed);
        assert!(verify_ugly_predecessor(&t).unwrap().passed);
    }
}
