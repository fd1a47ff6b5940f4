use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::env::Environment;
use crate::formula::Formula;
use crate::logic::schema::{instantiate, recognize_axiom, SchemaInstance};

/// Natural-deduction proof tree for minimal logic plus truth axioms.
///
/// There is deliberately no node for ex falso and none for `T(A) -> A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Hyp(Formula),
    AndI(Box<Derivation>, Box<Derivation>),
    AndELeft(Box<Derivation>),
    AndERight(Box<Derivation>),
    /// From `A` infer `A | added`.
    OrILeft(Box<Derivation>, Formula),
    /// From `B` infer `added | B`.
    OrIRight(Box<Derivation>, Formula),
    /// From `A | B`, `C` under `A`, and `C` under `B`, infer `C`.
    OrE(Box<Derivation>, Box<Derivation>, Box<Derivation>),
    /// Discharges the antecedent in the subderivation.
    ImpI(Formula, Box<Derivation>),
    /// Function first, argument second.
    ImpE(Box<Derivation>, Box<Derivation>),
    Axiom(SchemaInstance),
}

impl Derivation {
    pub fn hyp(f: Formula) -> Self {
        Derivation::Hyp(f)
    }

    pub fn and_i(a: Derivation, b: Derivation) -> Self {
        Derivation::AndI(Box::new(a), Box::new(b))
    }

    pub fn and_e_left(d: Derivation) -> Self {
        Derivation::AndELeft(Box::new(d))
    }

    pub fn and_e_right(d: Derivation) -> Self {
        Derivation::AndERight(Box::new(d))
    }

    pub fn or_i_left(d: Derivation, added: Formula) -> Self {
        Derivation::OrILeft(Box::new(d), added)
    }

    pub fn or_i_right(d: Derivation, added: Formula) -> Self {
        Derivation::OrIRight(Box::new(d), added)
    }

    pub fn or_e(d: Derivation, left: Derivation, right: Derivation) -> Self {
        Derivation::OrE(Box::new(d), Box::new(left), Box::new(right))
    }

    pub fn imp_i(antecedent: Formula, d: Derivation) -> Self {
        Derivation::ImpI(antecedent, Box::new(d))
    }

    pub fn imp_e(function: Derivation, argument: Derivation) -> Self {
        Derivation::ImpE(Box::new(function), Box::new(argument))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Derivation::Hyp(_) => "hyp",
            Derivation::AndI(..) => "and-i",
            Derivation::AndELeft(_) => "and-e-left",
            Derivation::AndERight(_) => "and-e-right",
            Derivation::OrILeft(..) => "or-i-left",
            Derivation::OrIRight(..) => "or-i-right",
            Derivation::OrE(..) => "or-e",
            Derivation::ImpI(..) => "imp-i",
            Derivation::ImpE(..) => "imp-e",
            Derivation::Axiom(_) => "axiom",
        }
    }

    pub fn children(&self) -> Vec<&Derivation> {
        match self {
            Derivation::Hyp(_) | Derivation::Axiom(_) => Vec::new(),
            Derivation::AndELeft(d)
            | Derivation::AndERight(d)
            | Derivation::OrILeft(d, _)
            | Derivation::OrIRight(d, _)
            | Derivation::ImpI(_, d) => alloc::vec![&**d],
            Derivation::AndI(a, b) | Derivation::ImpE(a, b) => alloc::vec![&**a, &**b],
            Derivation::OrE(a, b, c) => alloc::vec![&**a, &**b, &**c],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|d| d.size()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children().iter().map(|d| d.height()).max().unwrap_or(0)
    }
}

/// Path to a node: child positions from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            write!(f, ".{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckErrorKind {
    /// The premise does not have the shape the rule needs.
    Shape { rule: &'static str, expected: String, found: Formula },
    /// Two premises that must agree do not.
    Mismatch { rule: &'static str, left: Formula, right: Formula },
    /// The leaf's formula is not an instance of its stated schema.
    NotAnAxiom(SchemaInstance),
    /// `top` inside a derivation.
    Top(Formula),
}

impl fmt::Display for CheckErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckErrorKind::Shape { rule, expected, found } => {
                write!(f, "{rule}: expected {expected}, found `{found}`")
            }
            CheckErrorKind::Mismatch { rule, left, right } => {
                write!(f, "{rule}: `{left}` does not match `{right}`")
            }
            CheckErrorKind::NotAnAxiom(inst) => write!(f, "axiom: not an instance: {inst}"),
            CheckErrorKind::Top(g) => write!(f, "`top` is not part of the language: `{g}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {kind}")]
pub struct CheckError {
    pub path: NodePath,
    pub kind: CheckErrorKind,
}

/// What a derivation establishes: its conclusion under the multiset of
/// undischarged hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgement {
    pub conclusion: Formula,
    pub open: BTreeMap<Formula, usize>,
}

impl Judgement {
    pub fn is_theorem(&self) -> bool {
        self.open.is_empty()
    }

    fn discharge(&mut self, f: &Formula) {
        self.open.remove(f);
    }

    fn absorb(&mut self, other: Judgement) {
        for (f, n) in other.open {
            *self.open.entry(f).or_default() += n;
        }
    }
}

/// Checks every node and returns the conclusion with its open hypotheses.
pub fn check(d: &Derivation, env: &Environment) -> Result<Judgement, CheckError> {
    let mut path = Vec::new();
    go(d, env, &mut path)
}

fn err(path: &[usize], kind: CheckErrorKind) -> CheckError {
    CheckError {
        path: NodePath(path.to_vec()),
        kind,
    }
}

fn no_top(f: &Formula, path: &[usize]) -> Result<(), CheckError> {
    if f.contains_top() {
        Err(err(path, CheckErrorKind::Top(f.clone())))
    } else {
        Ok(())
    }
}

fn sub(
    d: &Derivation,
    env: &Environment,
    path: &mut Vec<usize>,
    at: usize,
) -> Result<Judgement, CheckError> {
    path.push(at);
    let out = go(d, env, path);
    path.pop();
    out
}

fn go(d: &Derivation, env: &Environment, path: &mut Vec<usize>) -> Result<Judgement, CheckError> {
    match d {
        Derivation::Hyp(f) => {
            no_top(f, path)?;
            let mut open = BTreeMap::new();
            open.insert(f.clone(), 1);
            Ok(Judgement {
                conclusion: f.clone(),
                open,
            })
        }
        Derivation::Axiom(inst) => {
            let expected = instantiate(inst.schema, &inst.params, env).ok();
            let recognized = recognize_axiom(&inst.result, env).contains(inst);
            if expected.as_ref().map(|e| e.result == inst.result).unwrap_or(false) || recognized {
                Ok(Judgement {
                    conclusion: inst.result.clone(),
                    open: BTreeMap::new(),
                })
            } else {
                Err(err(path, CheckErrorKind::NotAnAxiom(inst.clone())))
            }
        }
        Derivation::AndI(a, b) => {
            let mut ja = sub(a, env, path, 0)?;
            let jb = sub(b, env, path, 1)?;
            ja.conclusion = Formula::and(ja.conclusion.clone(), jb.conclusion.clone());
            ja.absorb(jb);
            Ok(ja)
        }
        Derivation::AndELeft(inner) | Derivation::AndERight(inner) => {
            let left = matches!(d, Derivation::AndELeft(_));
            let mut j = sub(inner, env, path, 0)?;
            match &j.conclusion {
                Formula::And(a, b) => {
                    j.conclusion = if left { (**a).clone() } else { (**b).clone() };
                    Ok(j)
                }
                other => Err(err(
                    path,
                    CheckErrorKind::Shape {
                        rule: d.kind(),
                        expected: "a conjunction".into(),
                        found: other.clone(),
                    },
                )),
            }
        }
        Derivation::OrILeft(inner, added) | Derivation::OrIRight(inner, added) => {
            no_top(added, path)?;
            let mut j = sub(inner, env, path, 0)?;
            j.conclusion = if matches!(d, Derivation::OrILeft(..)) {
                Formula::or(j.conclusion.clone(), added.clone())
            } else {
                Formula::or(added.clone(), j.conclusion.clone())
            };
            Ok(j)
        }
        Derivation::OrE(disj, left, right) => {
            let mut jd = sub(disj, env, path, 0)?;
            let (a, b) = match &jd.conclusion {
                Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
                other => {
                    return Err(err(
                        path,
                        CheckErrorKind::Shape {
                            rule: "or-e",
                            expected: "a disjunction".into(),
                            found: other.clone(),
                        },
                    ))
                }
            };
            let mut jl = sub(left, env, path, 1)?;
            let mut jr = sub(right, env, path, 2)?;
            if jl.conclusion != jr.conclusion {
                return Err(err(
                    path,
                    CheckErrorKind::Mismatch {
                        rule: "or-e",
                        left: jl.conclusion,
                        right: jr.conclusion,
                    },
                ));
            }
            jl.discharge(&a);
            jr.discharge(&b);
            jd.conclusion = jl.conclusion.clone();
            jd.absorb(jl);
            jd.absorb(jr);
            Ok(jd)
        }
        Derivation::ImpI(antecedent, inner) => {
            no_top(antecedent, path)?;
            let mut j = sub(inner, env, path, 0)?;
            j.discharge(antecedent);
            j.conclusion = Formula::imp(antecedent.clone(), j.conclusion.clone());
            Ok(j)
        }
        Derivation::ImpE(function, argument) => {
            let mut jf = sub(function, env, path, 0)?;
            let ja = sub(argument, env, path, 1)?;
            let consequent = match &jf.conclusion {
                Formula::Imp(a, b) if **a == ja.conclusion => (**b).clone(),
                Formula::Imp(a, _) => {
                    return Err(err(
                        path,
                        CheckErrorKind::Mismatch {
                            rule: "imp-e",
                            left: (**a).clone(),
                            right: ja.conclusion,
                        },
                    ))
                }
                other => {
                    return Err(err(
                        path,
                        CheckErrorKind::Shape {
                            rule: "imp-e",
                            expected: "an implication".into(),
                            found: other.clone(),
                        },
                    ))
                }
            };
            jf.conclusion = consequent;
            jf.absorb(ja);
            Ok(jf)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::schema::Schema;
    use alloc::string::ToString;
    use crate::parse::parse;

    fn p(i: u64) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn identity() {
        let d = Derivation::imp_i(p(1), Derivation::hyp(p(1)));
        let j = check(&d, &Environment::empty()).unwrap();
        assert!(j.is_theorem());
        assert_eq!(j.conclusion, parse("p1 -> p1").unwrap());
    }

    #[test]
    fn open_hypotheses_are_a_multiset() {
        let d = Derivation::and_i(Derivation::hyp(p(1)), Derivation::hyp(p(1)));
        let j = check(&d, &Environment::empty()).unwrap();
        assert_eq!(j.open.get(&p(1)), Some(&2));
        let closed = check(&Derivation::imp_i(p(1), d), &Environment::empty()).unwrap();
        assert!(closed.is_theorem());
    }

    #[test]
    fn or_elimination_discharges_cases() {
        // (p1 | p2) -> (p2 | p1)
        let d = Derivation::imp_i(
            parse("p1 | p2").unwrap(),
            Derivation::or_e(
                Derivation::hyp(parse("p1 | p2").unwrap()),
                Derivation::or_i_right(Derivation::hyp(p(1)), p(2)),
                Derivation::or_i_left(Derivation::hyp(p(2)), p(1)),
            ),
        );
        let j = check(&d, &Environment::empty()).unwrap();
        assert!(j.is_theorem());
        assert_eq!(j.conclusion, parse("p1 | p2 -> p2 | p1").unwrap());
    }

    #[test]
    fn misapplications_report_paths() {
        let env = Environment::empty();
        let bad = Derivation::imp_i(
            p(1),
            Derivation::imp_e(Derivation::hyp(p(2)), Derivation::hyp(p(1))),
        );
        let e = check(&bad, &env).unwrap_err();
        assert_eq!(e.path.to_string(), "root.0");
        assert!(matches!(e.kind, CheckErrorKind::Shape { rule: "imp-e", .. }));

        let bad = Derivation::and_e_left(Derivation::hyp(p(3)));
        assert!(check(&bad, &env).is_err());

        let bad = Derivation::or_e(
            Derivation::hyp(parse("p1 | p2").unwrap()),
            Derivation::hyp(p(1)),
            Derivation::hyp(p(2)),
        );
        assert!(matches!(
            check(&bad, &env).unwrap_err().kind,
            CheckErrorKind::Mismatch { rule: "or-e", .. }
        ));
    }

    #[test]
    fn fake_axiom_rejected() {
        let env = Environment::empty();
        let inst = SchemaInstance {
            schema: Schema::TIntro,
            params: alloc::vec![p(1)],
            result: parse("p1 -> p1").unwrap(),
        };
        let e = check(&Derivation::Axiom(inst), &env).unwrap_err();
        assert!(matches!(e.kind, CheckErrorKind::NotAnAxiom(_)));
    }

    #[test]
    fn top_rejected() {
        let d = Derivation::hyp(Formula::Top);
        assert!(matches!(
            check(&d, &Environment::empty()).unwrap_err().kind,
            CheckErrorKind::Top(_)
        ));
    }
}
