//! Operator alphabets: the constant `1`, the successor `S` and the binary
//! hyperoperations `+`, `*`, `^` (orders 1, 2, 3).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Binary hyperoperation, identified by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HyperOp {
    /// Order 1: addition.
    Add,
    /// Order 2: multiplication.
    Mul,
    /// Order 3: exponentiation.
    Pow,
}

impl HyperOp {
    pub fn order(self) -> u8 {
        match self {
            HyperOp::Add => 1,
            HyperOp::Mul => 2,
            HyperOp::Pow => 3,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            HyperOp::Add => '+',
            HyperOp::Mul => '*',
            HyperOp::Pow => '^',
        }
    }
}

/// Meaning of one symbol in the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Arity 0: the constant 1.
    One,
    /// Arity 1: successor.
    Successor,
    /// Arity 2: a hyperoperation.
    Hyper(HyperOp),
}

impl Semantics {
    pub fn arity(self) -> u8 {
        match self {
            Semantics::One => 0,
            Semantics::Successor => 1,
            Semantics::Hyper(_) => 2,
        }
    }
}

/// One symbol: a glyph plus its meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symbol {
    pub glyph: char,
    pub semantics: Semantics,
}

/// The alphabet `O`: an ordered list of symbols with a canonical id such
/// as `"1S*"`.
///
/// Exactly one constant-one symbol must be present, at most one
/// successor, and glyphs must be unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSet {
    symbols: Vec<Symbol>,
    id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpsError {
    /// No constant-one symbol, or more than one.
    BadConstantCount(usize),
    /// More than one successor symbol.
    DuplicateSuccessor,
    /// The same glyph appears twice.
    DuplicateGlyph(char),
    /// Unrecognized operator-set id string.
    UnknownId(String),
}

impl fmt::Display for OpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpsError::BadConstantCount(n) => {
                write!(f, "operator set needs exactly one constant-one symbol, found {n}")
            }
            OpsError::DuplicateSuccessor => write!(f, "operator set has more than one successor symbol"),
            OpsError::DuplicateGlyph(g) => write!(f, "duplicate glyph '{g}' in operator set"),
            OpsError::UnknownId(id) => write!(f, "unknown operator set id '{id}'"),
        }
    }
}

impl core::error::Error for OpsError {}

/// Ids of the five stock alphabets.
pub const PRESET_IDS: &[&str] = &["1S", "1S+", "1S*", "1S+*", "1S^"];

impl OperatorSet {
    /// Builds an alphabet from explicit symbols, validating the
    /// structural invariants. The id is the concatenation of the glyphs.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, OpsError> {
        let ones = symbols
            .iter()
            .filter(|s| s.semantics == Semantics::One)
            .count();
        if ones != 1 {
            return Err(OpsError::BadConstantCount(ones));
        }
        let succs = symbols
            .iter()
            .filter(|s| s.semantics == Semantics::Successor)
            .count();
        if succs > 1 {
            return Err(OpsError::DuplicateSuccessor);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.glyph == s.glyph) {
                return Err(OpsError::DuplicateGlyph(s.glyph));
            }
        }
        let id: String = symbols.iter().map(|s| s.glyph).collect();
        Ok(OperatorSet { symbols, id })
    }

    /// One of the stock alphabets: `1S`, `1S+`, `1S*`, `1S+*`, `1S^`.
    pub fn preset(id: &str) -> Result<Self, OpsError> {
        let mut symbols = alloc::vec![
            Symbol { glyph: '1', semantics: Semantics::One },
            Symbol { glyph: 'S', semantics: Semantics::Successor },
        ];
        match id {
            "1S" => {}
            "1S+" => symbols.push(Symbol { glyph: '+', semantics: Semantics::Hyper(HyperOp::Add) }),
            "1S*" => symbols.push(Symbol { glyph: '*', semantics: Semantics::Hyper(HyperOp::Mul) }),
            "1S+*" => {
                symbols.push(Symbol { glyph: '+', semantics: Semantics::Hyper(HyperOp::Add) });
                symbols.push(Symbol { glyph: '*', semantics: Semantics::Hyper(HyperOp::Mul) });
            }
            "1S^" => symbols.push(Symbol { glyph: '^', semantics: Semantics::Hyper(HyperOp::Pow) }),
            other => return Err(OpsError::UnknownId(String::from(other))),
        }
        OperatorSet::new(symbols)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of symbols in the alphabet.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid set always holds the constant
    }

    pub fn lookup(&self, glyph: char) -> Option<Semantics> {
        self.symbols
            .iter()
            .find(|s| s.glyph == glyph)
            .map(|s| s.semantics)
    }

    pub fn has_successor(&self) -> bool {
        self.symbols
            .iter()
            .any(|s| s.semantics == Semantics::Successor)
    }

    pub fn has_op(&self, op: HyperOp) -> bool {
        self.symbols
            .iter()
            .any(|s| s.semantics == Semantics::Hyper(op))
    }

    /// Binary operations present, in order of increasing hyperoperation
    /// order.
    pub fn binary_ops(&self) -> impl Iterator<Item = HyperOp> + '_ {
        [HyperOp::Add, HyperOp::Mul, HyperOp::Pow]
            .into_iter()
            .filter(|&op| self.has_op(op))
    }

    pub fn one_glyph(&self) -> char {
        self.symbols
            .iter()
            .find(|s| s.semantics == Semantics::One)
            .map(|s| s.glyph)
            .expect("validated set has a constant")
    }

    pub fn successor_glyph(&self) -> Option<char> {
        self.symbols
            .iter()
            .find(|s| s.semantics == Semantics::Successor)
            .map(|s| s.glyph)
    }

    pub fn op_glyph(&self, op: HyperOp) -> Option<char> {
        self.symbols
            .iter()
            .find(|s| s.semantics == Semantics::Hyper(op))
            .map(|s| s.glyph)
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}
