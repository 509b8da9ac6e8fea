//! Maximal values reachable with exactly `k` symbols, computed exactly
//! over big integers, plus the closed form for `{1,S,*}` and structural
//! checks on maximal witnesses.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::ops::{HyperOp, OperatorSet};
use crate::term::Term;

/// Note attached to entries past the digit budget: towers of `3` take
/// over and the values stop being materializable.
pub const TRUNCATED_NOTE: &str = "3↑↑b-dominated";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalEntry {
    Exact { value: BigUint, witness: Term },
    /// The maximum's digit count exceeds the budget; only reachable with
    /// `^` in the alphabet.
    Truncated,
}

/// Best value for one length `k` and a witness achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub k: u64,
    pub entry: ExtremalEntry,
}

impl ExtremalRecord {
    pub fn value(&self) -> Option<&BigUint> {
        match &self.entry {
            ExtremalEntry::Exact { value, .. } => Some(value),
            ExtremalEntry::Truncated => None,
        }
    }

    pub fn witness(&self) -> Option<&Term> {
        match &self.entry {
            ExtremalEntry::Exact { witness, .. } => Some(witness),
            ExtremalEntry::Truncated => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalError {
    /// The closed form only applies from `k = 11` on.
    KTooSmall { k: u64 },
}

impl fmt::Display for ExtremalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalError::KTooSmall { k } => {
                write!(f, "closed form needs k >= 11, got {k}")
            }
        }
    }
}

impl core::error::Error for ExtremalError {}

#[derive(Debug, Clone, Copy)]
enum Prov {
    Base,
    Succ,
    Split { op: HyperOp, left_len: u64 },
}

/// Maximal values for `k = 1..=k_max`.
///
/// `best(1) = 1`; `best(k)` is the larger of `best(k-1) + 1` and the best
/// `best(k1) op best(k2)` over `k1 + k2 = k - 1` and the binary
/// operations present. Ties keep the successor form, then the earlier
/// split; multiplication-chain witnesses are canonicalized to ascending
/// factors, right-nested, which is how the maximal terms are usually
/// written.
pub fn max_table(ops: &OperatorSet, k_max: u64, digit_cap: u64) -> Vec<ExtremalRecord> {
    let has_succ = ops.has_successor();
    let binops: Vec<HyperOp> = ops.binary_ops().collect();

    // index k-1; None = truncated
    let mut values: Vec<Option<BigUint>> = Vec::with_capacity(k_max as usize);
    let mut prov: Vec<Prov> = Vec::with_capacity(k_max as usize);

    for k in 1..=k_max {
        if k == 1 {
            values.push(Some(BigUint::one()));
            prov.push(Prov::Base);
            continue;
        }
        let mut best: Option<BigUint> = None;
        let mut rule = Prov::Base;
        let mut truncated = false;

        if has_succ {
            match &values[(k - 2) as usize] {
                Some(v) => {
                    best = Some(v + 1u32);
                    rule = Prov::Succ;
                }
                None => truncated = true,
            }
        }
        for &op in &binops {
            if truncated {
                break;
            }
            for k1 in 1..=k - 2 {
                let k2 = k - 1 - k1;
                let (Some(a), Some(b)) = (&values[(k1 - 1) as usize], &values[(k2 - 1) as usize])
                else {
                    truncated = true;
                    break;
                };
                match combine(op, a, b, digit_cap) {
                    None => {
                        // the true maximum is at least this candidate
                        truncated = true;
                        break;
                    }
                    Some(cand) => {
                        if best.as_ref().is_none_or(|b| cand > *b) {
                            best = Some(cand);
                            rule = Prov::Split { op, left_len: k1 };
                        }
                    }
                }
            }
        }

        if truncated {
            values.push(None);
            prov.push(Prov::Base);
        } else {
            values.push(best);
            prov.push(rule);
        }
    }

    (1..=k_max)
        .map(|k| {
            let entry = match values[(k - 1) as usize].take() {
                None => ExtremalEntry::Truncated,
                Some(value) => {
                    let witness = canonicalize(build_witness(&prov, k), digit_cap);
                    ExtremalEntry::Exact { value, witness }
                }
            };
            ExtremalRecord { k, entry }
        })
        .collect()
}

fn build_witness(prov: &[Prov], k: u64) -> Term {
    match prov[(k - 1) as usize] {
        Prov::Base => Term::One,
        Prov::Succ => Term::succ(build_witness(prov, k - 1)),
        Prov::Split { op, left_len } => Term::apply(
            op,
            build_witness(prov, left_len),
            build_witness(prov, k - 1 - left_len),
        ),
    }
}

/// Rewrites multiplication chains as ascending factors, right-nested
/// (`*SS1*SSS1SSS1` rather than some other association). Other shapes
/// pass through unchanged.
fn canonicalize(t: Term, digit_cap: u64) -> Term {
    if !matches!(t, Term::Apply(HyperOp::Mul, _, _)) {
        return t;
    }
    let mut raw: Vec<Term> = Vec::new();
    flatten_mul(&t, &mut raw);
    let factors: Vec<Term> = raw.into_iter().map(|f| canonicalize(f, digit_cap)).collect();
    let mut keys: Vec<BigUint> = Vec::with_capacity(factors.len());
    for f in &factors {
        match f.evaluate(digit_cap) {
            Ok(v) => keys.push(v),
            // unmeasurable factor: keep the original order
            Err(_) => return rebuild_mul(factors),
        }
    }
    let mut pairs: Vec<(BigUint, Term)> = keys.into_iter().zip(factors).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    rebuild_mul(pairs.into_iter().map(|(_, f)| f).collect())
}

fn flatten_mul(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Apply(HyperOp::Mul, l, r) => {
            flatten_mul(l, out);
            flatten_mul(r, out);
        }
        other => out.push(other.clone()),
    }
}

fn rebuild_mul(mut factors: Vec<Term>) -> Term {
    let last = factors.pop().expect("at least one factor");
    factors
        .into_iter()
        .rev()
        .fold(last, |acc, f| Term::apply(HyperOp::Mul, f, acc))
}

/// `op(a, b)` unless the result would exceed `digit_cap` decimal digits.
fn combine(op: HyperOp, a: &BigUint, b: &BigUint, digit_cap: u64) -> Option<BigUint> {
    const LOG10_2: f64 = core::f64::consts::LOG10_2;
    let v = match op {
        HyperOp::Add => a + b,
        HyperOp::Mul => a * b,
        HyperOp::Pow => {
            if a.is_one() {
                BigUint::one()
            } else {
                let e = b.to_u64()?;
                let est = (e as f64) * (a.bits() as f64) * LOG10_2;
                if est > digit_cap as f64 + 1.0 {
                    return None;
                }
                num_traits::Pow::pow(a.clone(), e)
            }
        }
    };
    if (v.bits() as f64) * LOG10_2 > digit_cap as f64 + 1.0 {
        return None;
    }
    Some(v)
}

/// `v(M(k))` for `{1,S,*}` and `k >= 11` in closed form: write
/// `k = 5m - 1 - r` with `r` in `0..=4`; the maximum is `3^r * 4^(m-r)`.
pub fn closed_form_max(k: u64) -> Result<BigUint, ExtremalError> {
    if k < 11 {
        return Err(ExtremalError::KTooSmall { k });
    }
    let r = (5 - (k + 1) % 5) % 5;
    let m = (k + 1 + r) / 5;
    let three = BigUint::from(3u32);
    let four = BigUint::from(4u32);
    Ok(num_traits::Pow::pow(three, r) * num_traits::Pow::pow(four, m - r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    /// A factor of 6 or 7 in a product; never maximal.
    ForbiddenFactor(u64),
    /// More than one factor equal to the given value (2 or 5).
    RepeatedFactor { factor: u64, count: usize },
    /// More than four factors of 3.
    TooManyThrees(usize),
    /// For `k >= 11` every factor must be 3 or 4.
    NonCanonicalFactor(u64),
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::ForbiddenFactor(v) => write!(f, "factor {v} present"),
            StructureViolation::RepeatedFactor { factor, count } => {
                write!(f, "factor {factor} appears {count} times")
            }
            StructureViolation::TooManyThrees(c) => write!(f, "{c} factors of 3"),
            StructureViolation::NonCanonicalFactor(v) => {
                write!(f, "factor {v} outside {{3,4}} at k >= 11")
            }
        }
    }
}

/// Outcome of the factor-multiset checks on one maximal witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub k: u64,
    pub violations: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the factor multiset of a maximal witness over `{1,S,*}` or
/// `{1,S,+,*}`: no factor 6 or 7, at most one 2, at most one 5, at most
/// four 3s, and only 3s and 4s once `k >= 11`. A witness that is not a
/// product (a bare successor chain, `k <= 6`) has nothing to check.
pub fn check_structure(record: &ExtremalRecord) -> StructureReport {
    let mut violations = Vec::new();
    let witness = match record.witness() {
        Some(w) => w,
        None => return StructureReport { k: record.k, violations },
    };
    if !matches!(witness, Term::Apply(HyperOp::Mul, _, _)) {
        return StructureReport { k: record.k, violations };
    }
    let mut factors: Vec<Term> = Vec::new();
    flatten_mul(witness, &mut factors);
    let values: Vec<u64> = factors
        .iter()
        .filter_map(|f| f.evaluate(64).ok()?.to_u64())
        .collect();

    let count_of = |v: u64| values.iter().filter(|&&x| x == v).count();
    for forbidden in [6u64, 7] {
        if count_of(forbidden) > 0 {
            violations.push(StructureViolation::ForbiddenFactor(forbidden));
        }
    }
    for single in [2u64, 5] {
        let c = count_of(single);
        if c > 1 {
            violations.push(StructureViolation::RepeatedFactor { factor: single, count: c });
        }
    }
    let threes = count_of(3);
    if threes > 4 {
        violations.push(StructureViolation::TooManyThrees(threes));
    }
    if record.k >= 11 {
        for &v in &values {
            if v != 3 && v != 4 {
                violations.push(StructureViolation::NonCanonicalFactor(v));
            }
        }
    }
    StructureReport { k: record.k, violations }
}
