use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::coding::CodingError;
use crate::env::Environment;
use crate::formula::{Formula, Index};

/// The truth schemata. The biconditional for conjunction is split into its
/// two directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    /// `A -> T(A)`
    TIntro,
    /// `T(A) & T(B) -> T(A & B)`
    TAndForward,
    /// `T(A & B) -> T(A) & T(B)`
    TAndBackward,
    /// `T(A) | T(B) -> T(A | B)`
    TOrIntro,
    /// `T(A | B) & T(A -> C) & T(B -> C) -> T(C)`
    TOrElim,
    /// `T(A) & T(A -> B) -> T(B)`
    TMp,
}

impl Schema {
    pub const ALL: [Schema; 6] = [
        Schema::TIntro,
        Schema::TAndForward,
        Schema::TAndBackward,
        Schema::TOrIntro,
        Schema::TOrElim,
        Schema::TMp,
    ];

    pub fn arity(self) -> usize {
        match self {
            Schema::TIntro => 1,
            Schema::TOrElim => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::TIntro => "t-intro",
            Schema::TAndForward => "t-and-forward",
            Schema::TAndBackward => "t-and-backward",
            Schema::TOrIntro => "t-or-intro",
            Schema::TOrElim => "t-or-elim",
            Schema::TMp => "t-mp",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Schema::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{schema} takes {expected} parameter(s), got {got}")]
    Arity {
        schema: Schema,
        expected: usize,
        got: usize,
    },
    #[error("schema parameter: {0}")]
    Coding(#[from] CodingError),
}

/// A concrete axiom: a schema, its parameters, and the resulting formula
/// with every `T(..)` resolved to a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemaInstance {
    pub schema: Schema,
    pub params: Vec<Formula>,
    pub result: Formula,
}

impl fmt::Display for SchemaInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.schema)?;
        for (n, p) in self.params.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ") = {}", self.result)
    }
}

/// Builds the axiom for `schema` at `params`. The three-way antecedent of
/// `t-or-elim` is grouped to the left.
pub fn instantiate(
    schema: Schema,
    params: &[Formula],
    env: &Environment,
) -> Result<SchemaInstance, SchemaError> {
    if params.len() != schema.arity() {
        return Err(SchemaError::Arity {
            schema,
            expected: schema.arity(),
            got: params.len(),
        });
    }
    let t = |f: Formula| env.truth_of(&f);
    let result = match (schema, params) {
        (Schema::TIntro, [a]) => Formula::imp(a.clone(), t(a.clone())?),
        (Schema::TAndForward, [a, b]) => Formula::imp(
            Formula::and(t(a.clone())?, t(b.clone())?),
            t(Formula::and(a.clone(), b.clone()))?,
        ),
        (Schema::TAndBackward, [a, b]) => Formula::imp(
            t(Formula::and(a.clone(), b.clone()))?,
            Formula::and(t(a.clone())?, t(b.clone())?),
        ),
        (Schema::TOrIntro, [a, b]) => Formula::imp(
            Formula::or(t(a.clone())?, t(b.clone())?),
            t(Formula::or(a.clone(), b.clone()))?,
        ),
        (Schema::TOrElim, [a, b, c]) => Formula::imp(
            Formula::and(
                Formula::and(
                    t(Formula::or(a.clone(), b.clone()))?,
                    t(Formula::imp(a.clone(), c.clone()))?,
                ),
                t(Formula::imp(b.clone(), c.clone()))?,
            ),
            t(c.clone())?,
        ),
        (Schema::TMp, [a, b]) => Formula::imp(
            Formula::and(t(a.clone())?, t(Formula::imp(a.clone(), b.clone()))?),
            t(b.clone())?,
        ),
        _ => unreachable!("arity checked above"),
    };
    Ok(SchemaInstance {
        schema,
        params: params.to_vec(),
        result,
    })
}

/// If `f` is `T(A)` for some `A`, that is a variable `p_j` with
/// `index_of(A_j) = j`, returns `A`.
fn untruth(f: &Formula, env: &Environment) -> Option<Formula> {
    let Formula::Var(j) = f else {
        return None;
    };
    let a = env.definition_of(j);
    match env.index_of(&a) {
        Ok(ref i) if i == j => Some(a),
        _ => None,
    }
}

fn truth_is(f: &Formula, a: &Formula, env: &Environment) -> bool {
    match (f, env.index_of(a)) {
        (Formula::Var(j), Ok(i)) => *j == i,
        _ => false,
    }
}

fn var_index(f: &Formula) -> Option<&Index> {
    match f {
        Formula::Var(i) => Some(i),
        _ => None,
    }
}

/// Every schema instance whose formula is `f`. The antecedent of `t-or-elim`
/// is matched in either grouping; such an instance keeps `f` as its result.
pub fn recognize_axiom(f: &Formula, env: &Environment) -> Vec<SchemaInstance> {
    let mut out = Vec::new();
    let Formula::Imp(ante, cons) = f else {
        return out;
    };
    if f.contains_top() {
        return out;
    }
    let found = |schema: Schema, params: Vec<Formula>| SchemaInstance {
        schema,
        params,
        result: f.clone(),
    };

    // A -> T(A)
    if truth_is(cons, ante, env) {
        out.push(found(Schema::TIntro, vec![(**ante).clone()]));
    }

    if let Formula::And(l, r) = &**ante {
        if let (Some(a), Some(b)) = (untruth(l, env), untruth(r, env)) {
            // T(A) & T(B) -> T(A & B)
            if truth_is(cons, &Formula::and(a.clone(), b.clone()), env) {
                out.push(found(Schema::TAndForward, vec![a.clone(), b.clone()]));
            }
            // T(A) & T(A -> B) -> T(B)
            if let Formula::Imp(a2, target) = &b {
                if **a2 == a && truth_is(cons, target, env) {
                    out.push(found(Schema::TMp, vec![a.clone(), (**target).clone()]));
                }
            }
        }
    }

    // T(A & B) -> T(A) & T(B)
    if let (Some(Formula::And(a, b)), Formula::And(l, r)) = (untruth(ante, env), &**cons) {
        if truth_is(l, &a, env) && truth_is(r, &b, env) {
            out.push(found(Schema::TAndBackward, vec![*a, *b]));
        }
    }

    // T(A) | T(B) -> T(A | B)
    if let Formula::Or(l, r) = &**ante {
        if let (Some(a), Some(b)) = (untruth(l, env), untruth(r, env)) {
            if truth_is(cons, &Formula::or(a.clone(), b.clone()), env) {
                out.push(found(Schema::TOrIntro, vec![a, b]));
            }
        }
    }

    // T(A | B) & T(A -> C) & T(B -> C) -> T(C), either grouping
    if var_index(cons).is_some() {
        let mut groupings: Vec<[&Formula; 3]> = Vec::new();
        if let Formula::And(l, z) = &**ante {
            if let Formula::And(x, y) = &**l {
                groupings.push([x, y, z]);
            }
        }
        if let Formula::And(x, r) = &**ante {
            if let Formula::And(y, z) = &**r {
                groupings.push([x, y, z]);
            }
        }
        for [x, y, z] in groupings {
            let (Some(Formula::Or(a, b)), Some(Formula::Imp(a2, c)), Some(Formula::Imp(b2, c2))) =
                (untruth(x, env), untruth(y, env), untruth(z, env))
            else {
                continue;
            };
            if a == a2 && b == b2 && c == c2 && truth_is(cons, &c, env) {
                let inst = found(Schema::TOrElim, vec![*a, *b, *c]);
                if !out.contains(&inst) {
                    out.push(inst);
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::load_env;
    use crate::parse::{parse, parse_with};

    fn liar() -> Environment {
        load_env("1 := ~p1").unwrap().0
    }

    #[test]
    fn t_intro_liar() {
        let env = liar();
        let inst = instantiate(Schema::TIntro, &[Formula::var(1)], &env).unwrap();
        assert_eq!(inst.result, parse_with("p1 -> T(p1)", &env).unwrap());
        let m = env.index_of(&Formula::var(1)).unwrap();
        assert_eq!(inst.result, Formula::imp(Formula::var(1), Formula::Var(m)));
    }

    #[test]
    fn t_mp_shape() {
        let env = Environment::empty();
        let inst = instantiate(Schema::TMp, &[Formula::var(1), Formula::Bot], &env).unwrap();
        assert_eq!(
            inst.result,
            parse_with("T(p1) & T(p1 -> bot) -> T(bot)", &env).unwrap()
        );
    }

    #[test]
    fn t_and_forward_shape() {
        let env = Environment::empty();
        let inst =
            instantiate(Schema::TAndForward, &[Formula::var(1), Formula::var(2)], &env).unwrap();
        assert_eq!(
            inst.result,
            parse_with("T(p1) & T(p2) -> T(p1 & p2)", &env).unwrap()
        );
    }

    #[test]
    fn arity_and_top_errors() {
        let env = Environment::empty();
        assert!(matches!(
            instantiate(Schema::TMp, &[Formula::Bot], &env),
            Err(SchemaError::Arity { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            instantiate(Schema::TIntro, &[Formula::Top], &env),
            Err(SchemaError::Coding(CodingError::TopInFormula))
        ));
    }

    #[test]
    fn recognizes_t_intro() {
        let env = liar();
        let f = parse_with("p1 -> T(p1)", &env).unwrap();
        let found = recognize_axiom(&f, &env);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].schema, Schema::TIntro);
        assert_eq!(found[0].params, vec![Formula::var(1)]);
    }

    #[test]
    fn rejects_non_axiom() {
        let env = Environment::empty();
        // definition_of(2) is p1 in the empty environment, so use an override
        let env2 = load_env("2 := p3").unwrap().0;
        assert!(recognize_axiom(&parse("p1 -> p2").unwrap(), &env2).is_empty());
        assert!(recognize_axiom(&parse("p1 & p2").unwrap(), &env).is_empty());
        assert!(recognize_axiom(&Formula::Bot, &env).is_empty());
    }

    #[test]
    fn recognizes_t_mp_on_bot() {
        let env = Environment::empty();
        let f = parse_with("T(bot) & T(bot -> bot) -> T(bot)", &env).unwrap();
        let found = recognize_axiom(&f, &env);
        assert!(found
            .iter()
            .any(|i| i.schema == Schema::TMp && i.params == vec![Formula::Bot, Formula::Bot]));
    }

    #[test]
    fn or_elim_either_grouping() {
        let env = liar();
        let (a, b, c) = (Formula::var(2), Formula::var(3), Formula::Bot);
        let left = instantiate(Schema::TOrElim, &[a.clone(), b.clone(), c.clone()], &env).unwrap();
        assert!(recognize_axiom(&left.result, &env).contains(&left));
        let Formula::Imp(ante, cons) = &left.result else { panic!() };
        let Formula::And(l, z) = &**ante else { panic!() };
        let Formula::And(x, y) = &**l else { panic!() };
        let right = Formula::imp(
            Formula::and((**x).clone(), Formula::and((**y).clone(), (**z).clone())),
            (**cons).clone(),
        );
        let found = recognize_axiom(&right, &env);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].params, vec![a, b, c]);
    }

    #[test]
    fn canonical_duplicate_is_not_truth() {
        // p1 & p2 is overridden at 7; its canonical index is not T(p1 & p2)
        let env = load_env("7 := p1 & p2").unwrap().0;
        let f = parse("p1 & p2").unwrap();
        let canonical = env.canonical_index(&f).unwrap();
        let fake = Formula::imp(f.clone(), Formula::Var(canonical));
        assert!(recognize_axiom(&fake, &env).is_empty());
        let real = Formula::imp(f, Formula::var(7));
        assert_eq!(recognize_axiom(&real, &env).len(), 1);
    }
}
