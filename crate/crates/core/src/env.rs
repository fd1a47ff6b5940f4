//! The enumeration `i -> A_i`: finitely many user overrides layered over the
//! canonical coding.
//!
//! Canonical codes are rank-shifted past the override indices, so the
//! canonical part of the enumeration is a bijection between all formulas and
//! the indices no override uses.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use thiserror::Error;

use crate::coding::{self, CodingError};
use crate::formula::{Formula, Index};
use crate::parse::{self, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("line {line}: index {index} is defined twice")]
    DuplicateIndex { line: usize, index: Index },
    #[error("line {line}: formula `{formula}` is already the definition of index {first}")]
    DuplicateFormula {
        line: usize,
        formula: Formula,
        first: Index,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("override {index} uses `top`, which is not part of the formula language")]
    TopInOverride { index: Index },
}

/// Non-fatal observations made while loading an environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnvWarning {
    /// The override's formula also owns a canonical index; `T(..)` resolves
    /// to the override.
    CanonicalDuplicate { index: Index, canonical: Index },
}

impl core::fmt::Display for EnvWarning {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EnvWarning::CanonicalDuplicate { index, canonical } => write!(
                f,
                "override {index} also has canonical index {canonical}; T(..) resolves to {index}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    overrides: BTreeMap<Index, Formula>,
    by_formula: BTreeMap<Formula, Index>,
}

impl Environment {
    /// The environment without overrides: the canonical coding alone.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_overrides<I>(overrides: I) -> Result<Self, EnvError>
    where
        I: IntoIterator<Item = (Index, Formula)>,
    {
        let mut env = Environment::empty();
        for (n, (index, formula)) in overrides.into_iter().enumerate() {
            env.insert(n + 1, index, formula)?;
        }
        Ok(env)
    }

    fn insert(&mut self, line: usize, index: Index, formula: Formula) -> Result<(), EnvError> {
        if formula.contains_top() {
            return Err(EnvError::TopInOverride { index });
        }
        if self.overrides.contains_key(&index) {
            return Err(EnvError::DuplicateIndex { line, index });
        }
        if let Some(first) = self.by_formula.get(&formula) {
            return Err(EnvError::DuplicateFormula {
                line,
                formula,
                first: first.clone(),
            });
        }
        self.by_formula.insert(formula.clone(), index.clone());
        self.overrides.insert(index, formula);
        Ok(())
    }

    pub fn overrides(&self) -> &BTreeMap<Index, Formula> {
        &self.overrides
    }

    pub fn is_overridden(&self, i: &Index) -> bool {
        self.overrides.contains_key(i)
    }

    /// The `n`-th positive integer that is not an override index.
    fn shift(&self, code: BigUint) -> Index {
        let mut idx = code;
        for k in self.overrides.keys() {
            if k.as_biguint() <= &idx {
                idx += 1u32;
            } else {
                break;
            }
        }
        Index::new(idx).expect("codes are positive")
    }

    /// Inverse of `shift` on non-override indices.
    fn unshift(&self, i: &Index) -> Index {
        let below = self.overrides.range(..i.clone()).count();
        Index::new(i.as_biguint() - BigUint::from(below)).expect("rank is positive")
    }

    /// Index of `f` in the canonical part of the enumeration, ignoring any
    /// override with the same formula.
    pub fn canonical_index(&self, f: &Formula) -> Result<Index, CodingError> {
        Ok(self.shift(coding::code_of(f)?))
    }

    /// The index `T(f)` denotes: the override carrying `f` if there is one,
    /// otherwise its canonical index.
    pub fn index_of(&self, f: &Formula) -> Result<Index, CodingError> {
        if f.contains_top() {
            return Err(CodingError::TopInFormula);
        }
        match self.by_formula.get(f) {
            Some(i) => Ok(i.clone()),
            None => self.canonical_index(f),
        }
    }

    /// `T(f)` as a formula.
    pub fn truth_of(&self, f: &Formula) -> Result<Formula, CodingError> {
        self.index_of(f).map(Formula::Var)
    }

    /// `A_i`.
    pub fn definition_of(&self, i: &Index) -> Formula {
        match self.overrides.get(i) {
            Some(f) => f.clone(),
            None => coding::decode(&self.unshift(i)),
        }
    }

    /// Warnings for overrides whose formula also has a canonical index.
    pub fn warnings(&self) -> Vec<EnvWarning> {
        self.overrides
            .iter()
            .filter_map(|(index, f)| {
                self.canonical_index(f)
                    .ok()
                    .map(|canonical| EnvWarning::CanonicalDuplicate {
                        index: index.clone(),
                        canonical,
                    })
            })
            .collect()
    }

    /// Renders the overrides in the environment file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, f) in &self.overrides {
            out.push_str(&format!("{i} := {f}\n"));
        }
        out
    }
}

/// Parses the line-oriented environment format: `<index> := <formula>`,
/// `#` starts a comment, blank lines are ignored.
pub fn load_env(text: &str) -> Result<(Environment, Vec<EnvWarning>), EnvError> {
    let mut env = Environment::empty();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content.split_once(":=").ok_or_else(|| EnvError::Malformed {
            line,
            reason: "expected `<index> := <formula>`".into(),
        })?;
        let lhs = lhs.trim();
        let index = Index::parse_decimal(lhs).ok_or_else(|| EnvError::Malformed {
            line,
            reason: format!("`{lhs}` is not a positive index"),
        })?;
        let formula = parse::parse(rhs.trim()).map_err(|source| EnvError::Formula { line, source })?;
        env.insert(line, index, formula)?;
    }
    let warnings = env.warnings();
    Ok((env, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn liar() -> Environment {
        load_env("1 := ~p1").unwrap().0
    }

    #[test]
    fn liar_index_is_override() {
        let env = liar();
        assert_eq!(env.index_of(&parse("~p1").unwrap()).unwrap(), Index::one());
        assert_eq!(env.definition_of(&Index::one()), parse("~p1").unwrap());
    }

    #[test]
    fn liar_canonical_index_of_p1() {
        let env = liar();
        let c = env.index_of(&Formula::var(1)).unwrap();
        assert_ne!(c, Index::one());
        assert_eq!(env.definition_of(&c), Formula::var(1));
    }

    #[test]
    fn empty_env_bot_round_trip() {
        let env = Environment::empty();
        let i = env.index_of(&Formula::Bot).unwrap();
        assert_eq!(env.definition_of(&i), Formula::Bot);
    }

    #[test]
    fn truth_teller_override() {
        let env = load_env("2 := p2").unwrap().0;
        assert_eq!(env.definition_of(&Index::from_u64(2)), Formula::var(2));
    }

    #[test]
    fn duplicate_index_rejected() {
        let err = load_env("1 := ~p1\n1 := p2").unwrap_err();
        assert!(matches!(err, EnvError::DuplicateIndex { line: 2, .. }));
    }

    #[test]
    fn duplicate_formula_rejected() {
        let err = load_env("1 := p2\n2 := p2").unwrap_err();
        assert!(matches!(err, EnvError::DuplicateFormula { line: 2, .. }));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            load_env("1 = p2").unwrap_err(),
            EnvError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            load_env("\n0 := p2").unwrap_err(),
            EnvError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            load_env("1 := p2 &").unwrap_err(),
            EnvError::Formula { line: 1, .. }
        ));
        assert!(matches!(
            load_env("1 := top").unwrap_err(),
            EnvError::TopInOverride { .. }
        ));
    }

    #[test]
    fn comments_and_blanks() {
        let (env, warnings) = load_env("# liar\n\n1 := ~p1   # S = T(~S)\n").unwrap();
        assert_eq!(env.overrides().len(), 1);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn shift_skips_overrides() {
        let env = load_env("1 := ~p1\n3 := p5").unwrap().0;
        // canonical codes 1, 2, 3 land on 2, 4, 5
        assert_eq!(env.canonical_index(&Formula::Bot).unwrap(), Index::from_u64(2));
        assert_eq!(env.canonical_index(&Formula::var(1)).unwrap(), Index::from_u64(4));
        for n in [2u64, 4, 5, 6, 17, 100] {
            let i = Index::from_u64(n);
            assert_eq!(env.index_of(&env.definition_of(&i)).unwrap(), i);
        }
    }

    #[test]
    fn canonical_duplicate_prefers_override() {
        let env = load_env("7 := p1 & p2").unwrap().0;
        let f = parse("p1 & p2").unwrap();
        let canonical = env.canonical_index(&f).unwrap();
        assert_ne!(canonical, Index::from_u64(7));
        assert_eq!(env.definition_of(&canonical), f);
        assert_eq!(env.index_of(&f).unwrap(), Index::from_u64(7));
    }
}
