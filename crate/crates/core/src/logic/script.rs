//! Parenthesized proof scripts.
//!
//! ```text
//! script     := derivation | "(theorem" STRING derivation ")"
//! derivation := "(hyp" STRING ")"
//!             | "(and-i" derivation derivation ")"
//!             | "(and-e-left" derivation ")" | "(and-e-right" derivation ")"
//!             | "(or-i-left" derivation STRING ")"      ; A  =>  A | added
//!             | "(or-i-right" derivation STRING ")"     ; B  =>  added | B
//!             | "(or-e" derivation derivation derivation ")"
//!             | "(imp-i" STRING derivation ")"
//!             | "(imp-e" derivation derivation ")"      ; function, argument
//!             | "(axiom" SCHEMA STRING+ ")"
//! ```
//!
//! Strings hold formulas in the usual syntax, `T(..)` included. `;` starts a
//! comment. Rules that are not part of minimal logic (ex falso, truth
//! elimination, classical rules) are refused by name.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::env::Environment;
use crate::formula::Formula;
use crate::logic::derivation::Derivation;
use crate::logic::schema::{instantiate, Schema, SchemaError};
use crate::parse::{parse_with, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{keyword}` is not a rule of this system ({why})")]
    ForbiddenRule {
        line: usize,
        keyword: String,
        why: &'static str,
    },
    #[error("line {line}: unknown node kind `{keyword}`")]
    UnknownNode { line: usize, keyword: String },
    #[error("line {line}: unknown schema `{name}`")]
    UnknownSchema { line: usize, name: String },
    #[error("line {line}: formula \"{text}\": {source}")]
    Formula {
        line: usize,
        text: String,
        source: ParseError,
    },
    #[error("line {line}: {source}")]
    Schema { line: usize, source: SchemaError },
}

/// A parsed script: the derivation and the goal it claims, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub goal: Option<Formula>,
    pub derivation: Derivation,
}

const FORBIDDEN: &[(&str, &str)] = &[
    ("efq", "ex falso quodlibet is not available in minimal logic"),
    ("ex-falso", "ex falso quodlibet is not available in minimal logic"),
    ("bot-e", "ex falso quodlibet is not available in minimal logic"),
    ("absurd", "ex falso quodlibet is not available in minimal logic"),
    ("t-elim", "T(A) -> A is not an axiom"),
    ("t-out", "T(A) -> A is not an axiom"),
    ("raa", "classical reductio is not available"),
    ("dne", "double-negation elimination is not available"),
    ("lem", "excluded middle is not available"),
];

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::Str(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax {
        line,
        message: message.into(),
    }
}

struct Reader<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
}

impl Reader<'_> {
    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                for c in self.chars.by_ref() {
                    if c == '\n' {
                        self.line += 1;
                        break;
                    }
                }
            } else if c.is_whitespace() {
                if c == '\n' {
                    self.line += 1;
                }
                self.chars.next();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<Sexp>, ScriptError> {
        self.skip_blank();
        let line = self.line;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.chars.next();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        Some(')') => {
                            self.chars.next();
                            return Ok(Some(Sexp::List(items, line)));
                        }
                        None => return Err(syntax(line, "unclosed `(`")),
                        _ => items.push(self.read()?.expect("input is not exhausted")),
                    }
                }
            }
            ')' => Err(syntax(line, "unexpected `)`")),
            '"' => {
                self.chars.next();
                let mut s = String::new();
                loop {
                    match self.chars.next() {
                        Some('"') => return Ok(Some(Sexp::Str(s, line))),
                        Some('\\') => match self.chars.next() {
                            Some(c) => s.push(c),
                            None => return Err(syntax(line, "unterminated string")),
                        },
                        Some('\n') | None => return Err(syntax(line, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.chars.next();
                }
                Ok(Some(Sexp::Atom(s, line)))
            }
        }
    }
}

struct Builder<'e> {
    env: &'e Environment,
}

impl Builder<'_> {
    fn formula(&self, s: &Sexp) -> Result<Formula, ScriptError> {
        match s {
            Sexp::Str(text, line) => parse_with(text, self.env).map_err(|source| ScriptError::Formula {
                line: *line,
                text: text.clone(),
                source,
            }),
            other => Err(syntax(other.line(), "expected a quoted formula")),
        }
    }

    fn derivation(&self, s: &Sexp) -> Result<Derivation, ScriptError> {
        let Sexp::List(items, line) = s else {
            return Err(syntax(s.line(), "expected `(` starting a derivation node"));
        };
        let line = *line;
        let Some(Sexp::Atom(head, _)) = items.first() else {
            return Err(syntax(line, "expected a node kind after `(`"));
        };
        if let Some((_, why)) = FORBIDDEN.iter().find(|(k, _)| *k == head.as_str()) {
            return Err(ScriptError::ForbiddenRule {
                line,
                keyword: head.clone(),
                why,
            });
        }
        let args = &items[1..];
        let arity = |n: usize| -> Result<(), ScriptError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    format!("`{head}` takes {n} argument(s), got {}", args.len()),
                ))
            }
        };
        let sub = |i: usize| self.derivation(&args[i]).map(Box::new);
        Ok(match head.as_str() {
            "hyp" => {
                arity(1)?;
                Derivation::Hyp(self.formula(&args[0])?)
            }
            "and-i" => {
                arity(2)?;
                Derivation::AndI(sub(0)?, sub(1)?)
            }
            "and-e-left" => {
                arity(1)?;
                Derivation::AndELeft(sub(0)?)
            }
            "and-e-right" => {
                arity(1)?;
                Derivation::AndERight(sub(0)?)
            }
            "or-i-left" => {
                arity(2)?;
                Derivation::OrILeft(sub(0)?, self.formula(&args[1])?)
            }
            "or-i-right" => {
                arity(2)?;
                Derivation::OrIRight(sub(0)?, self.formula(&args[1])?)
            }
            "or-e" => {
                arity(3)?;
                Derivation::OrE(sub(0)?, sub(1)?, sub(2)?)
            }
            "imp-i" => {
                arity(2)?;
                Derivation::ImpI(self.formula(&args[0])?, sub(1)?)
            }
            "imp-e" => {
                arity(2)?;
                Derivation::ImpE(sub(0)?, sub(1)?)
            }
            "axiom" => {
                let Some(Sexp::Atom(name, _)) = args.first() else {
                    return Err(syntax(line, "`axiom` needs a schema name"));
                };
                if let Some((_, why)) = FORBIDDEN.iter().find(|(k, _)| *k == name.as_str()) {
                    return Err(ScriptError::ForbiddenRule {
                        line,
                        keyword: name.clone(),
                        why,
                    });
                }
                let schema: Schema = name.parse().map_err(|_| ScriptError::UnknownSchema {
                    line,
                    name: name.clone(),
                })?;
                let params = args[1..]
                    .iter()
                    .map(|a| self.formula(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let inst = instantiate(schema, &params, self.env)
                    .map_err(|source| ScriptError::Schema { line, source })?;
                Derivation::Axiom(inst)
            }
            other => {
                return Err(ScriptError::UnknownNode {
                    line,
                    keyword: other.to_owned(),
                })
            }
        })
    }
}

/// Parses a proof script, resolving `T(..)` through `env`.
pub fn parse_script(text: &str, env: &Environment) -> Result<Script, ScriptError> {
    let mut reader = Reader {
        chars: text.chars().peekable(),
        line: 1,
    };
    let top = reader.read()?.ok_or_else(|| syntax(1, "empty script"))?;
    if let Some(extra) = reader.read()? {
        return Err(syntax(extra.line(), "trailing input after the derivation"));
    }
    let builder = Builder { env };
    if let Sexp::List(items, line) = &top {
        if let Some(Sexp::Atom(head, _)) = items.first() {
            if head == "theorem" {
                if items.len() != 3 {
                    return Err(syntax(*line, "`theorem` takes a goal and a derivation"));
                }
                return Ok(Script {
                    goal: Some(builder.formula(&items[1])?),
                    derivation: builder.derivation(&items[2])?,
                });
            }
        }
    }
    Ok(Script {
        goal: None,
        derivation: builder.derivation(&top)?,
    })
}

fn quoted(f: &Formula) -> String {
    format!("\"{f}\"")
}

fn write_node(out: &mut String, d: &Derivation, indent: usize) {
    let pad = "  ".repeat(indent);
    let _ = write!(out, "{pad}({}", d.kind());
    match d {
        Derivation::Hyp(f) => {
            let _ = write!(out, " {})", quoted(f));
            return;
        }
        Derivation::Axiom(inst) => {
            let _ = write!(out, " {}", inst.schema);
            for p in &inst.params {
                let _ = write!(out, " {}", quoted(p));
            }
            out.push(')');
            return;
        }
        Derivation::ImpI(a, _) => {
            let _ = write!(out, " {}", quoted(a));
        }
        _ => {}
    }
    for child in d.children() {
        out.push('\n');
        write_node(out, child, indent + 1);
    }
    match d {
        Derivation::OrILeft(_, added) | Derivation::OrIRight(_, added) => {
            let _ = write!(out, "\n{pad}  {}", quoted(added));
        }
        _ => {}
    }
    out.push(')');
}

/// Renders a derivation in the script format, one node per line.
pub fn print_script(d: &Derivation, goal: Option<&Formula>) -> String {
    let mut out = String::new();
    match goal {
        Some(g) => {
            let _ = writeln!(out, "(theorem {}", quoted(g));
            write_node(&mut out, d, 1);
            out.push_str(")\n");
        }
        None => {
            write_node(&mut out, d, 0);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::load_env;
    use crate::logic::derivation::check;

    #[test]
    fn parses_and_checks_identity() {
        let env = Environment::empty();
        let s = parse_script("(imp-i \"p1\" (hyp \"p1\")) ; identity", &env).unwrap();
        assert!(s.goal.is_none());
        assert!(check(&s.derivation, &env).unwrap().is_theorem());
    }

    #[test]
    fn theorem_wrapper_and_truth_sugar() {
        let env = load_env("1 := ~p1").unwrap().0;
        let text = r#"
            (theorem "~S -> S"
              (imp-i "~p1"
                (imp-e (axiom t-intro "~p1") (hyp "~p1"))))
        "#
        .replace("~S -> S", "~p1 -> T(~p1)");
        let s = parse_script(&text, &env).unwrap();
        let j = check(&s.derivation, &env).unwrap();
        assert_eq!(Some(j.conclusion), s.goal);
    }

    #[test]
    fn ex_falso_is_refused() {
        let env = Environment::empty();
        let e = parse_script("(imp-i \"bot\" (efq (hyp \"bot\") \"p1\"))", &env).unwrap_err();
        assert!(matches!(e, ScriptError::ForbiddenRule { ref keyword, .. } if keyword == "efq"));
        let e = parse_script("(axiom t-elim \"p1\")", &env).unwrap_err();
        assert!(matches!(e, ScriptError::ForbiddenRule { ref keyword, .. } if keyword == "t-elim"));
    }

    #[test]
    fn syntax_errors() {
        let env = Environment::empty();
        assert!(matches!(
            parse_script("(hyp \"p1\"", &env),
            Err(ScriptError::Syntax { .. })
        ));
        assert!(matches!(
            parse_script("(hyp \"p1\") (hyp \"p2\")", &env),
            Err(ScriptError::Syntax { .. })
        ));
        assert!(matches!(
            parse_script("(frob \"p1\")", &env),
            Err(ScriptError::UnknownNode { .. })
        ));
        assert!(matches!(
            parse_script("(axiom t-nope \"p1\")", &env),
            Err(ScriptError::UnknownSchema { .. })
        ));
        assert!(matches!(
            parse_script("(axiom t-mp \"p1\")", &env),
            Err(ScriptError::Schema { .. })
        ));
        assert!(matches!(
            parse_script("\n\n(hyp \"p1 &\")", &env),
            Err(ScriptError::Formula { line: 3, .. })
        ));
    }

    #[test]
    fn print_then_parse() {
        let env = load_env("1 := ~p1").unwrap().0;
        let text = r#"(imp-i "p1 | p2" (or-e (hyp "p1 | p2")
            (or-i-right (hyp "p1") "p2")
            (or-i-left (hyp "p2") "p1")))"#;
        let s = parse_script(text, &env).unwrap();
        let printed = print_script(&s.derivation, Some(&Formula::var(1)));
        let again = parse_script(&printed, &env).unwrap();
        assert_eq!(again.derivation, s.derivation);
        assert_eq!(again.goal, Some(Formula::var(1)));
    }
}
