//! Dynamic-programming engine for complexities `c_O(n)` over `n = 1..N`.
//!
//! Recurrence: `c(1) = 1`; `c(n)` is the minimum over the applicable
//! rules of `c(n-1) + 1` (successor), `c(a) + c(b) + 1` over `a + b = n`,
//! `a * b = n` (divisors `a <= sqrt(n)`) and `a ^ b = n` (perfect-power
//! decompositions). Addition splits are cut off with a sound lower-bound
//! prune; without it the sweep over `a` would be quadratic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::analysis::logstar3;
use crate::ops::{HyperOp, OperatorSet, Semantics};
use crate::term::Term;

/// How a minimal length for `n` was achieved. `Split` keeps only the left
/// operand; the right one is recomputed from `n` and the operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Base,
    Successor,
    Split { op: HyperOp, left: u32 },
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Hard cap on the table size, as a memory-budget guard.
    pub max_limit: u64,
    /// Lower-bound pruning of addition splits. Disabling it is only
    /// useful for equivalence testing.
    pub prune_sums: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_limit: 1 << 27, prune_sums: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// Requested limit exceeds the configured memory budget.
    LimitTooLarge { limit: u64, max_limit: u64 },
    /// The operator set has no constant symbol.
    NoConstant,
    /// `n` is zero or beyond the table limit.
    OutOfRange { n: u64, limit: u64 },
    /// `n` has no representation under the operator set.
    Unreachable { n: u64 },
    /// A complexity value would not fit the 16-bit store.
    ComplexityOverflow { n: u64 },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::LimitTooLarge { limit, max_limit } => {
                write!(f, "limit {limit} exceeds the configured budget {max_limit}")
            }
            EngineError::NoConstant => write!(f, "operator set has no constant symbol"),
            EngineError::OutOfRange { n, limit } => {
                write!(f, "{n} is outside the table range 1..={limit}")
            }
            EngineError::Unreachable { n } => write!(f, "{n} is not representable"),
            EngineError::ComplexityOverflow { n } => {
                write!(f, "complexity of {n} does not fit 16 bits")
            }
        }
    }
}

impl core::error::Error for EngineError {}

/// Complexities and witness provenance for `n = 1..=limit`.
///
/// Unreachable entries hold the sentinel complexity 0. Finished tables
/// are immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    ops: OperatorSet,
    limit: u64,
    complexity: Vec<u16>,
    provenance: Vec<Provenance>,
}

impl ComplexityTable {
    pub fn ops(&self) -> &OperatorSet {
        &self.ops
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `c_O(n)`.
    pub fn complexity_of(&self, n: u64) -> Result<u16, EngineError> {
        let c = *self
            .complexity
            .get(index(n, self.limit)?)
            .expect("index checked");
        if c == 0 {
            return Err(EngineError::Unreachable { n });
        }
        Ok(c)
    }

    pub fn provenance(&self, n: u64) -> Result<Provenance, EngineError> {
        Ok(*self
            .provenance
            .get(index(n, self.limit)?)
            .expect("index checked"))
    }

    /// Raw complexity array, indexed by `n - 1`; 0 marks unreachable.
    pub fn complexities(&self) -> &[u16] {
        &self.complexity
    }

    /// Rebuilds a table from stored parts (the load path).
    pub fn from_parts(
        ops: OperatorSet,
        complexity: Vec<u16>,
        provenance: Vec<Provenance>,
    ) -> Result<Self, EngineError> {
        let limit = complexity.len() as u64;
        if limit == 0 || provenance.len() as u64 != limit {
            return Err(EngineError::OutOfRange { n: 0, limit });
        }
        Ok(ComplexityTable { ops, limit, complexity, provenance })
    }

    /// A minimal witness term for `n`: applying the stored rule
    /// recursively. Successor runs are unrolled iteratively, so deep
    /// chains (opsets without a binary operation) are safe.
    pub fn witness(&self, n: u64) -> Result<Term, EngineError> {
        self.complexity_of(n)?;
        let mut target = n;
        let mut succs = 0u64;
        let core = loop {
            match self.provenance(target)? {
                Provenance::Successor => {
                    succs += 1;
                    target -= 1;
                }
                Provenance::Base => break Term::One,
                Provenance::Split { op, left } => {
                    let a = left as u64;
                    let b = right_operand(op, a, target);
                    break Term::apply(op, self.witness(a)?, self.witness(b)?);
                }
                Provenance::Absent => return Err(EngineError::Unreachable { n: target }),
            }
        };
        let mut t = core;
        for _ in 0..succs {
            t = Term::succ(t);
        }
        Ok(t)
    }

    /// Extends the table in place up to `new_limit`. The recurrence only
    /// looks backward, so the existing prefix is reused unchanged.
    pub fn extend_to(
        &mut self,
        new_limit: u64,
        config: &EngineConfig,
        mut progress: impl FnMut(u64),
    ) -> Result<(), EngineError> {
        if new_limit > config.max_limit || new_limit > u32::MAX as u64 {
            return Err(EngineError::LimitTooLarge { limit: new_limit, max_limit: config.max_limit });
        }
        if new_limit <= self.limit {
            return Ok(());
        }
        let from = self.limit + 1;
        self.complexity.resize(new_limit as usize, 0);
        self.provenance.resize(new_limit as usize, Provenance::Absent);
        self.limit = new_limit;
        self.fill(from, new_limit, config, &mut progress)
    }

    fn fill(
        &mut self,
        from: u64,
        to: u64,
        config: &EngineConfig,
        progress: &mut impl FnMut(u64),
    ) -> Result<(), EngineError> {
        const INF: u32 = u32::MAX;
        let has_succ = self.ops.has_successor();
        let has_add = self.ops.has_op(HyperOp::Add);
        let has_mul = self.ops.has_op(HyperOp::Mul);
        let has_pow = self.ops.has_op(HyperOp::Pow);
        let lb = LowerBound::for_set(&self.ops);

        let c = |table: &Vec<u16>, m: u64| -> u32 {
            let v = table[(m - 1) as usize];
            if v == 0 { INF } else { v as u32 }
        };

        for n in from..=to {
            if n == 1 {
                self.complexity[0] = 1;
                self.provenance[0] = Provenance::Base;
                continue;
            }
            let mut best = INF;
            let mut rule = Provenance::Absent;

            if has_succ {
                let prev = c(&self.complexity, n - 1);
                if prev < INF {
                    best = prev + 1;
                    rule = Provenance::Successor;
                }
            }
            if has_add {
                for a in 1..=n / 2 {
                    if config.prune_sums
                        && sum_split_prune(a, n, best, &lb) == SplitDecision::Stop
                    {
                        break;
                    }
                    let (ca, cb) = (c(&self.complexity, a), c(&self.complexity, n - a));
                    if ca < INF && cb < INF {
                        let cand = ca + cb + 1;
                        if cand < best {
                            best = cand;
                            rule = Provenance::Split { op: HyperOp::Add, left: a as u32 };
                        }
                    }
                }
            }
            if has_mul {
                let mut a = 2u64;
                while a * a <= n {
                    if n % a == 0 {
                        let (ca, cb) = (c(&self.complexity, a), c(&self.complexity, n / a));
                        if ca < INF && cb < INF {
                            let cand = ca + cb + 1;
                            if cand < best {
                                best = cand;
                                rule = Provenance::Split { op: HyperOp::Mul, left: a as u32 };
                            }
                        }
                    }
                    a += 1;
                }
            }
            if has_pow {
                // b descending gives bases ascending, the preferred
                // tie-break order.
                let mut b = n.ilog2() as u64;
                while b >= 2 {
                    if let Some(a) = exact_root(n, b) {
                        let (ca, cb) = (c(&self.complexity, a), c(&self.complexity, b));
                        if ca < INF && cb < INF {
                            let cand = ca + cb + 1;
                            if cand < best {
                                best = cand;
                                rule = Provenance::Split { op: HyperOp::Pow, left: a as u32 };
                            }
                        }
                    }
                    b -= 1;
                }
            }

            if best < INF {
                if best > u16::MAX as u32 {
                    return Err(EngineError::ComplexityOverflow { n });
                }
                self.complexity[(n - 1) as usize] = best as u16;
            }
            self.provenance[(n - 1) as usize] = rule;
            if n % 100_000 == 0 {
                progress(n);
            }
        }
        Ok(())
    }
}

fn index(n: u64, limit: u64) -> Result<usize, EngineError> {
    if n == 0 || n > limit {
        return Err(EngineError::OutOfRange { n, limit });
    }
    Ok((n - 1) as usize)
}

/// Right operand of a stored split: `n - a`, `n / a`, or the `b` with
/// `a^b = n`.
fn right_operand(op: HyperOp, a: u64, n: u64) -> u64 {
    match op {
        HyperOp::Add => n - a,
        HyperOp::Mul => n / a,
        HyperOp::Pow => {
            let mut pow = a;
            let mut b = 1;
            while pow < n {
                pow *= a;
                b += 1;
            }
            b
        }
    }
}

/// `a` with `a^b = n` exactly, if any.
fn exact_root(n: u64, b: u64) -> Option<u64> {
    let guess = libm::round(libm::pow(n as f64, 1.0 / b as f64)) as u64;
    for a in guess.saturating_sub(1)..=guess + 1 {
        if a >= 2 {
            let mut pow = 1u128;
            for _ in 0..b {
                pow *= a as u128;
                if pow > n as u128 {
                    break;
                }
            }
            if pow == n as u128 {
                return Some(a);
            }
        }
    }
    None
}

/// Builds the full table for `n = 1..=limit`.
pub fn build_table(
    ops: &OperatorSet,
    limit: u64,
    config: &EngineConfig,
) -> Result<ComplexityTable, EngineError> {
    build_table_with_progress(ops, limit, config, |_| {})
}

/// As [`build_table`], reporting every 10^5 finished entries.
pub fn build_table_with_progress(
    ops: &OperatorSet,
    limit: u64,
    config: &EngineConfig,
    mut progress: impl FnMut(u64),
) -> Result<ComplexityTable, EngineError> {
    if !ops.symbols().iter().any(|s| s.semantics == Semantics::One) {
        return Err(EngineError::NoConstant);
    }
    if limit == 0 {
        return Err(EngineError::OutOfRange { n: 0, limit });
    }
    if limit > config.max_limit || limit > u32::MAX as u64 {
        return Err(EngineError::LimitTooLarge { limit, max_limit: config.max_limit });
    }
    let mut table = ComplexityTable {
        ops: ops.clone(),
        limit,
        complexity: vec![0u16; limit as usize],
        provenance: vec![Provenance::Absent; limit as usize],
    };
    table.fill(1, limit, config, &mut progress)?;
    Ok(table)
}

/// Valid, nondecreasing lower bound on `c_O(n)`, selected per operator
/// set. Used both as a published bound and as the addition-split prune.
#[derive(Debug, Clone, Copy)]
pub struct LowerBound {
    kind: BoundKind,
}

#[derive(Debug, Clone, Copy)]
enum BoundKind {
    /// `c(n) = n` for `{1,S}` and `{1,S,+}`.
    Identity,
    /// `5 log4(n) - 1` for `{1,S,*}`.
    FiveLog4,
    /// `(gamma+1) log(n)/log(gamma) - 1` for `{1,S,+,*}`.
    GammaLog { coeff: f64 },
    /// `4 log*_3(n) - 1` for `{1,S,^}`.
    LogStar3,
    /// `c(n) >= 1`, for sets with no proven bound.
    Trivial,
}

impl LowerBound {
    pub fn for_set(ops: &OperatorSet) -> Self {
        let kind = match ops.id() {
            "1S" | "1S+" => BoundKind::Identity,
            "1S*" => BoundKind::FiveLog4,
            "1S+*" => {
                let g = solve_gamma();
                BoundKind::GammaLog { coeff: (g + 1.0) / libm::log(g) }
            }
            "1S^" => BoundKind::LogStar3,
            _ => BoundKind::Trivial,
        };
        LowerBound { kind }
    }

    pub fn eval(&self, n: u64) -> f64 {
        match self.kind {
            BoundKind::Identity => n as f64,
            BoundKind::FiveLog4 => 5.0 * libm::log2(n as f64) / 2.0 - 1.0,
            BoundKind::GammaLog { coeff } => coeff * libm::log(n as f64) - 1.0,
            BoundKind::LogStar3 => 4.0 * logstar3(n) as f64 - 1.0,
            BoundKind::Trivial => 1.0,
        }
    }
}

/// The real maximizer of `log(w)/(w+1)`: the root of `ln w = 1 + 1/w`,
/// about 3.591. Solved by bisection; the bracketing function is strictly
/// increasing on [2, 8].
pub fn solve_gamma() -> f64 {
    let f = |w: f64| libm::log(w) - 1.0 - 1.0 / w;
    let (mut lo, mut hi) = (2.0f64, 8.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Tightest proven lower bound on `c_O(n)` for the stock operator sets.
pub fn lower_bound(ops: &OperatorSet, n: u64) -> f64 {
    LowerBound::for_set(ops).eval(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitDecision {
    Keep,
    Stop,
}

/// Addition-split cutoff. With `a` scanned in increasing order, once
/// `lb(a) + lb(ceil(n/2)) + 1 >= best`, no later split can improve:
/// `c(n - a') >= lb(n - a') >= lb(ceil(n/2))` for `a' <= n/2` and `lb`
/// is nondecreasing, so every remaining candidate costs at least the
/// left-hand side.
pub fn sum_split_prune(a: u64, n: u64, best_so_far: u32, lb: &LowerBound) -> SplitDecision {
    if best_so_far == u32::MAX {
        return SplitDecision::Keep;
    }
    let floor = lb.eval(a) + lb.eval(n.div_ceil(2)) + 1.0;
    if floor >= best_so_far as f64 - 1e-9 {
        SplitDecision::Stop
    } else {
        SplitDecision::Keep
    }
}

/// A valid (not necessarily minimal) witness for `n` over `{1,S,*}` of
/// length at most `8 log4(n) + 2`, by Horner evaluation of the base-4
/// digit expansion: `n = d + 4q` becomes `S^d(rep(q) * SSS1)`.
pub fn upper_bound_witness(n: u64) -> Term {
    assert!(n >= 1);
    if n <= 3 {
        return Term::from_successors(n);
    }
    let d = n % 4;
    let mut t = Term::apply(HyperOp::Mul, upper_bound_witness(n / 4), Term::from_successors(4));
    for _ in 0..d {
        t = Term::succ(t);
    }
    t
}
