//! Prefix-notation terms: parsing, serialization, evaluation, length.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::mem;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::ops::{HyperOp, OperatorSet, Semantics};

/// A term over an operator set: the constant one, a successor
/// application, or a binary hyperoperation.
///
/// Traversals (parse, serialize, evaluate, length, drop) are iterative,
/// so terms may be arbitrarily deep — a pure successor chain for a large
/// `n` is a linked list of that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    One,
    Succ(Box<Term>),
    Apply(HyperOp, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermError {
    /// A glyph not in the operator set, at a 0-based position in the
    /// cleaned input.
    UnknownGlyph { position: usize, glyph: char },
    /// Input ended before all operands were supplied.
    TruncatedTerm,
    /// Input continued past a complete term.
    TrailingGlyphs { position: usize },
    /// The value's decimal digit count exceeded the caller's budget.
    ValueOverflowBudget { digit_cap: u64 },
    /// Empty input (after stripping whitespace and quotes).
    EmptyInput,
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::UnknownGlyph { position, glyph } => {
                write!(f, "unknown glyph '{glyph}' at position {position}")
            }
            TermError::TruncatedTerm => write!(f, "input ends before all operands are supplied"),
            TermError::TrailingGlyphs { position } => {
                write!(f, "trailing glyphs after a complete term, at position {position}")
            }
            TermError::ValueOverflowBudget { digit_cap } => {
                write!(f, "value exceeds the digit budget of {digit_cap}")
            }
            TermError::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl core::error::Error for TermError {}

impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn apply(op: HyperOp, left: Term, right: Term) -> Term {
        Term::Apply(op, Box::new(left), Box::new(right))
    }

    /// The successor chain `S^(n-1) 1` for `n >= 1`.
    pub fn from_successors(n: u64) -> Term {
        let mut t = Term::One;
        for _ in 1..n {
            t = Term::succ(t);
        }
        t
    }

    /// Parses a prefix glyph string. Whitespace and single-quote
    /// delimiters are stripped; positions in errors count remaining
    /// glyphs only.
    pub fn parse(text: &str, ops: &OperatorSet) -> Result<Term, TermError> {
        let glyphs: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '\'').collect();
        if glyphs.is_empty() {
            return Err(TermError::EmptyInput);
        }

        // Frames awaiting operands: successor needs one, binary ops two.
        enum Frame {
            Succ,
            Binary(HyperOp, Option<Term>),
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut done: Option<Term> = None;

        for (pos, &g) in glyphs.iter().enumerate() {
            if done.is_some() {
                return Err(TermError::TrailingGlyphs { position: pos });
            }
            match ops.lookup(g) {
                None => return Err(TermError::UnknownGlyph { position: pos, glyph: g }),
                Some(Semantics::One) => {
                    // Complete a term and reduce any frames it fills.
                    let mut t = Term::One;
                    loop {
                        match stack.pop() {
                            None => {
                                done = Some(t);
                                break;
                            }
                            Some(Frame::Succ) => t = Term::succ(t),
                            Some(Frame::Binary(op, Some(left))) => t = Term::apply(op, left, t),
                            Some(Frame::Binary(op, None)) => {
                                stack.push(Frame::Binary(op, Some(t)));
                                break;
                            }
                        }
                    }
                }
                Some(Semantics::Successor) => stack.push(Frame::Succ),
                Some(Semantics::Hyper(op)) => stack.push(Frame::Binary(op, None)),
            }
        }
        done.ok_or(TermError::TruncatedTerm)
    }

    /// The prefix glyph string of this term over `ops`. Operators absent
    /// from `ops` yield `None`.
    pub fn serialize(&self, ops: &OperatorSet) -> Option<String> {
        let mut out = String::new();
        let mut stack: Vec<&Term> = alloc::vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::One => out.push(ops.one_glyph()),
                Term::Succ(c) => {
                    out.push(ops.successor_glyph()?);
                    stack.push(c);
                }
                Term::Apply(op, l, r) => {
                    out.push(ops.op_glyph(*op)?);
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        Some(out)
    }

    /// Number of glyphs in the serialization.
    pub fn len(&self) -> u64 {
        let mut n = 0u64;
        let mut stack: Vec<&Term> = alloc::vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            match t {
                Term::One => {}
                Term::Succ(c) => stack.push(c),
                Term::Apply(_, l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Evaluates the term to its (positive) value. `digit_cap` bounds the
    /// decimal size of every intermediate value; the check is by bit
    /// length, so it is sharp to within one digit. Only `^` can
    /// realistically trip it.
    pub fn evaluate(&self, digit_cap: u64) -> Result<BigUint, TermError> {
        enum Step<'a> {
            Visit(&'a Term),
            CombineSucc,
            CombineOp(HyperOp),
        }
        let over = |v: &BigUint| -> bool {
            (v.bits() as f64) * core::f64::consts::LOG10_2 > digit_cap as f64 + 1.0
        };
        let mut todo: Vec<Step> = alloc::vec![Step::Visit(self)];
        let mut values: Vec<BigUint> = Vec::new();
        while let Some(step) = todo.pop() {
            match step {
                Step::Visit(Term::One) => values.push(BigUint::one()),
                Step::Visit(Term::Succ(c)) => {
                    todo.push(Step::CombineSucc);
                    todo.push(Step::Visit(c));
                }
                Step::Visit(Term::Apply(op, l, r)) => {
                    todo.push(Step::CombineOp(*op));
                    todo.push(Step::Visit(r));
                    todo.push(Step::Visit(l));
                }
                Step::CombineSucc => {
                    let v = values.last_mut().expect("operand on stack");
                    *v += 1u32;
                }
                Step::CombineOp(op) => {
                    let right = values.pop().expect("operand on stack");
                    let left = values.pop().expect("operand on stack");
                    let v = match op {
                        HyperOp::Add => left + right,
                        HyperOp::Mul => left * right,
                        HyperOp::Pow => pow_capped(&left, &right, digit_cap)?,
                    };
                    if over(&v) {
                        return Err(TermError::ValueOverflowBudget { digit_cap });
                    }
                    values.push(v);
                }
            }
        }
        Ok(values.pop().expect("result on stack"))
    }
}

/// `base^exp` with a pre-flight size check so towers fail fast instead of
/// exhausting memory.
fn pow_capped(base: &BigUint, exp: &BigUint, digit_cap: u64) -> Result<BigUint, TermError> {
    if base.is_one() {
        return Ok(BigUint::one());
    }
    let overflow = Err(TermError::ValueOverflowBudget { digit_cap });
    let Some(e) = exp.to_u64() else { return overflow };
    // digits(base^exp) ~ exp * bits(base) * log10(2)
    let est_digits = (e as f64) * (base.bits() as f64) * core::f64::consts::LOG10_2;
    if est_digits > digit_cap as f64 + 1.0 {
        return overflow;
    }
    Ok(num_traits::Pow::pow(base.clone(), e))
}

impl Drop for Term {
    // Unlink children iteratively so deep successor chains do not blow
    // the stack on drop.
    fn drop(&mut self) {
        let mut pending: Vec<Term> = Vec::new();
        let grab = |t: &mut Term, pending: &mut Vec<Term>| match t {
            Term::One => {}
            Term::Succ(c) => pending.push(mem::replace(&mut **c, Term::One)),
            Term::Apply(_, l, r) => {
                pending.push(mem::replace(&mut **l, Term::One));
                pending.push(mem::replace(&mut **r, Term::One));
            }
        };
        grab(self, &mut pending);
        while let Some(mut t) = pending.pop() {
            grab(&mut t, &mut pending);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::OperatorSet;
    use num_traits::ToPrimitive;

    fn opset(id: &str) -> OperatorSet {
        OperatorSet::preset(id).unwrap()
    }

    fn eval_u64(text: &str, id: &str) -> u64 {
        Term::parse(text, &opset(id))
            .unwrap()
            .evaluate(1_000_000)
            .unwrap()
            .to_u64()
            .unwrap()
    }

    #[test]
    fn parse_leaf() {
        assert_eq!(Term::parse("1", &opset("1S*")).unwrap(), Term::One);
    }

    #[test]
    fn parse_three_times_four() {
        let t = Term::parse("*SS1SSS1", &opset("1S*")).unwrap();
        let three = Term::succ(Term::succ(Term::One));
        let four = Term::succ(three.clone());
        assert_eq!(t, Term::apply(HyperOp::Mul, three, four));
    }

    #[test]
    fn parse_truncated() {
        assert_eq!(
            Term::parse("*SS1SS", &opset("1S*")),
            Err(TermError::TruncatedTerm)
        );
    }

    #[test]
    fn parse_trailing() {
        assert_eq!(
            Term::parse("1S", &opset("1S*")),
            Err(TermError::TrailingGlyphs { position: 1 })
        );
    }

    #[test]
    fn parse_unknown_glyph() {
        assert_eq!(
            Term::parse("*SS1S+S1", &opset("1S*")),
            Err(TermError::UnknownGlyph { position: 5, glyph: '+' })
        );
    }

    #[test]
    fn parse_strips_quotes_and_whitespace() {
        let t = Term::parse("'*SS1 SSS1'", &opset("1S*")).unwrap();
        assert_eq!(t.serialize(&opset("1S*")).unwrap(), "*SS1SSS1");
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(eval_u64("*SS1SSS1", "1S*"), 12);
        assert_eq!(eval_u64("*SSS1SS1", "1S*"), 12); // abstract's orientation
        assert_eq!(eval_u64("SSSSSSSSSSS1", "1S"), 12);
        assert_eq!(eval_u64("^SS1SSS1", "1S^"), 81);
    }

    #[test]
    fn length_examples() {
        let ops = opset("1S*");
        assert_eq!(Term::parse("1", &ops).unwrap().len(), 1);
        assert_eq!(Term::parse("*SS1SSS1", &ops).unwrap().len(), 8);
        assert_eq!(Term::parse("SS*S1SSSS1", &ops).unwrap().len(), 10);
    }

    #[test]
    fn serialize_roundtrip() {
        let ops = opset("1S+*");
        for s in ["1", "S1", "*SS1SSS1", "+SS1*SS1SS1", "SS*S1SSSS1"] {
            let t = Term::parse(s, &ops).unwrap();
            assert_eq!(t.serialize(&ops).unwrap(), s);
        }
    }

    #[test]
    fn serialize_missing_operator() {
        let t = Term::parse("+1 1", &opset("1S+")).unwrap();
        assert_eq!(t.serialize(&opset("1S*")), None);
    }

    #[test]
    fn digit_budget_trips_on_towers() {
        // 9^(9^9) has ~370 million digits
        let t = Term::parse("^SSSSSSSS1^SSSSSSSS1SSSSSSSS1", &opset("1S^")).unwrap();
        assert_eq!(
            t.evaluate(1000),
            Err(TermError::ValueOverflowBudget { digit_cap: 1000 })
        );
    }

    #[test]
    fn deep_chain_survives_construction_and_drop() {
        let t = Term::from_successors(2_000_000);
        assert_eq!(t.len(), 2_000_000);
        assert_eq!(t.evaluate(100).unwrap().to_u64().unwrap(), 2_000_000);
        drop(t);
    }
}
