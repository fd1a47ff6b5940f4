use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A variable index. Always at least 1.
///
/// Indices produced by the truth operator grow very quickly with formula
/// depth, so they are arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(BigUint);

impl Index {
    /// Returns `None` for zero.
    pub fn new(n: BigUint) -> Option<Self> {
        if n.is_zero() {
            None
        } else {
            Some(Index(n))
        }
    }

    /// # Panics
    /// If `n` is zero.
    pub fn from_u64(n: u64) -> Self {
        assert!(n >= 1, "variable indices start at 1");
        Index(BigUint::from(n))
    }

    pub fn one() -> Self {
        Index(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// Parses a decimal string. Rejects zero, signs and empty input.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigUint::parse_bytes(s.as_bytes(), 10).and_then(Index::new)
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for Index {
    fn from(n: u64) -> Self {
        Index::from_u64(n)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Propositional formula.
///
/// `Top` belongs to the extended language used by reduction; the official
/// language has no `Top`. Negation and the biconditional are abbreviations
/// (`~A` is `A -> bot`) and have no node of their own.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Index),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: u64) -> Formula {
        Formula::Var(Index::from_u64(i))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::Bot | Formula::Top)
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Whether `Top` occurs anywhere, i.e. whether this is outside the
    /// official language.
    pub fn contains_top(&self) -> bool {
        match self {
            Formula::Top => true,
            Formula::Var(_) | Formula::Bot => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_top() || b.contains_top()
            }
        }
    }

    pub fn contains_constant(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot => true,
            Formula::Var(_) => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_constant() || b.contains_constant()
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.node_count() + b.node_count(),
            None => 1,
        }
    }

    /// Connective nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self.children() {
            Some((a, b)) => 1 + a.depth().max(b.depth()),
            None => 0,
        }
    }

    /// The exact set of variable indices occurring in the formula.
    pub fn variables(&self) -> BTreeSet<Index> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<Index>) {
        match self {
            Formula::Var(i) => {
                out.insert(i.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// All subformulas, the formula itself included.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.contains(self) {
            return;
        }
        out.insert(self.clone());
        if let Some((a, b)) = self.children() {
            a.collect_subformulas(out);
            b.collect_subformulas(out);
        }
    }

    /// Replaces every variable for which `f` returns `Some`.
    pub fn substitute<F>(&self, f: &F) -> Formula
    where
        F: Fn(&Index) -> Option<Formula>,
    {
        match self {
            Formula::Var(i) => f(i).unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::And(a, b) => Formula::and(a.substitute(f), b.substitute(f)),
            Formula::Or(a, b) => Formula::or(a.substitute(f), b.substitute(f)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(f), b.substitute(f)),
        }
    }

    /// Classical evaluation with `top` true and `bot` false.
    pub fn eval_classical<F>(&self, valuation: &F) -> bool
    where
        F: Fn(&Index) -> bool,
    {
        match self {
            Formula::Var(i) => valuation(i),
            Formula::Bot => false,
            Formula::Top => true,
            Formula::And(a, b) => a.eval_classical(valuation) && b.eval_classical(valuation),
            Formula::Or(a, b) => a.eval_classical(valuation) || b.eval_classical(valuation),
            Formula::Imp(a, b) => !a.eval_classical(valuation) || b.eval_classical(valuation),
        }
    }

    pub fn to_text(&self) -> String {
        crate::parse::print(self)
    }
}

/// The exact set of variable indices occurring in `f`.
pub fn variables_of(f: &Formula) -> BTreeSet<Index> {
    f.variables()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::write_formula(f, self)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`")?;
        crate::parse::write_formula(f, self)?;
        write!(f, "`")
    }
}
