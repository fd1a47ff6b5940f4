//! Formula text syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp [ "<->" imp ]          (non-associative)
//! imp     := or [ "->" imp ]            (right-associative)
//! or      := and { "|" and }            (left-associative)
//! and     := unary { "&" unary }        (left-associative)
//! unary   := "~" unary | atom
//! atom    := "p" N | "bot" | "top" | "T(" formula ")" | "(" formula ")"
//! ```
//!
//! `~A` abbreviates `A -> bot` and `A <-> B` abbreviates
//! `(A -> B) & (B -> A)`. `T(A)` is the variable whose definition is `A`, so it
//! needs an [`Environment`]. The symbols `¬ ∧ ∨ → ↔ ⊥ ⊤` are accepted as
//! alternatives.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use thiserror::Error;

use crate::coding::CodingError;
use crate::env::Environment;
use crate::formula::{Formula, Index};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    TrailingInput(String),
    BadVariable(String),
    /// `T(..)` without an environment to resolve it.
    TruthWithoutEnvironment,
    /// `T(..)` around a formula containing `top`.
    TruthOfTop,
    TruthOverflow(CodingError),
    /// `a <-> b <-> c`.
    ChainedIff,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::TrailingInput(t) => write!(f, "trailing input starting at `{t}`"),
            ParseErrorKind::BadVariable(v) => {
                write!(f, "`{v}` is not a variable (expected p1, p2, ...)")
            }
            ParseErrorKind::TruthWithoutEnvironment => {
                write!(f, "T(..) needs an environment to resolve the index")
            }
            ParseErrorKind::TruthOfTop => write!(f, "T(..) of a formula containing `top`"),
            ParseErrorKind::TruthOverflow(e) => write!(f, "T(..): {e}"),
            ParseErrorKind::ChainedIff => write!(f, "`<->` is not associative; add parentheses"),
        }
    }
}

/// Parse failure at a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(Index),
    Bot,
    Top,
    Truth,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Imp,
    Iff,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Var(i) => alloc::format!("p{i}"),
            Tok::Bot => "bot".into(),
            Tok::Top => "top".into(),
            Tok::Truth => "T".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Not => "~".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Imp => "->".into(),
            Tok::Iff => "<->".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[pos..];
        let (tok, len) = if c.is_ascii_alphabetic() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_')
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                "T" => Tok::Truth,
                _ => match word.strip_prefix('p').and_then(Index::parse_decimal) {
                    Some(i) => Tok::Var(i),
                    None => {
                        return Err(ParseError {
                            pos,
                            kind: ParseErrorKind::BadVariable(word.into()),
                        })
                    }
                },
            };
            (tok, end)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Imp,
                '↔' => Tok::Iff,
                '⊥' => Tok::Bot,
                '⊤' => Tok::Top,
                other => {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            };
            (tok, c.len_utf8())
        };
        out.push((pos, tok));
        while let Some(&(p, _)) = chars.peek() {
            if p < pos + len {
                chars.next();
            } else {
                break;
            }
        }
        debug_assert!(pos + len <= bytes.len());
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    env: Option<&'a Environment>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::UnexpectedToken(t.text())),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            if self.peek() == Some(&Tok::Iff) {
                return Err(self.error(ParseErrorKind::ChainedIff));
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.at += 1;
                Ok(Formula::Var(i))
            }
            Some(Tok::Bot) => {
                self.at += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Top) => {
                self.at += 1;
                Ok(Formula::Top)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.iff()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Truth) => {
                self.at += 1;
                self.expect(&Tok::LParen)?;
                let inner = self.iff()?;
                self.expect(&Tok::RParen)?;
                let env = self.env.ok_or(ParseError {
                    pos: start,
                    kind: ParseErrorKind::TruthWithoutEnvironment,
                })?;
                if inner.contains_top() {
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::TruthOfTop,
                    });
                }
                env.truth_of(&inner).map_err(|e| ParseError {
                    pos: start,
                    kind: ParseErrorKind::TruthOverflow(e),
                })
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn run(text: &str, env: Option<&Environment>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        env,
    };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        let kind = ParseErrorKind::TrailingInput(t.text());
        return Err(p.error(kind));
    }
    Ok(f)
}

/// Parses a formula without `T(..)` sugar.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    run(text, None)
}

/// Parses a formula, resolving `T(..)` through `env`.
pub fn parse_with(text: &str, env: &Environment) -> Result<Formula, ParseError> {
    run(text, Some(env))
}

// Binding strength, loosest first.
const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Imp(a, b), Formula::Imp(c, d)) = (&**l, &**r) {
            if a == d && b == c {
                return Some((a, b));
            }
        }
    }
    None
}

fn level(f: &Formula) -> u8 {
    if as_iff(f).is_some() {
        return IFF;
    }
    match f {
        Formula::Var(_) | Formula::Bot | Formula::Top => ATOM,
        Formula::Imp(_, b) if **b == Formula::Bot => NOT,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
    }
}

fn write_at<W: Write>(out: &mut W, f: &Formula, min: u8) -> fmt::Result {
    let lvl = level(f);
    if lvl < min {
        out.write_char('(')?;
        write_bare(out, f, lvl)?;
        out.write_char(')')
    } else {
        write_bare(out, f, lvl)
    }
}

fn write_bare<W: Write>(out: &mut W, f: &Formula, lvl: u8) -> fmt::Result {
    if lvl == IFF {
        let (a, b) = as_iff(f).expect("classified as iff");
        write_at(out, a, IMP)?;
        out.write_str(" <-> ")?;
        return write_at(out, b, IMP);
    }
    match f {
        Formula::Var(i) => write!(out, "p{i}"),
        Formula::Bot => out.write_str("bot"),
        Formula::Top => out.write_str("top"),
        Formula::Imp(a, _) if lvl == NOT => {
            out.write_char('~')?;
            write_at(out, a, NOT)
        }
        Formula::Imp(a, b) => {
            write_at(out, a, OR)?;
            out.write_str(" -> ")?;
            write_at(out, b, IMP)
        }
        Formula::Or(a, b) => {
            write_at(out, a, OR)?;
            out.write_str(" | ")?;
            write_at(out, b, AND)
        }
        Formula::And(a, b) => {
            write_at(out, a, AND)?;
            out.write_str(" & ")?;
            write_at(out, b, NOT)
        }
    }
}

pub(crate) fn write_formula<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    write_at(out, f, IFF)
}

/// Minimal-parenthesis rendering; `~` and `<->` are used where they apply.
pub fn print(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f).expect("writing to a String cannot fail");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::load_env;

    fn v(i: u64) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn negation_desugars() {
        assert_eq!(parse("~p1").unwrap(), Formula::imp(v(1), Formula::Bot));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("p1 & p2 -> p3").unwrap(),
            Formula::imp(Formula::and(v(1), v(2)), v(3))
        );
        assert_eq!(
            parse("p1 -> p2 -> p3").unwrap(),
            Formula::imp(v(1), Formula::imp(v(2), v(3)))
        );
        assert_eq!(
            parse("p1 | p2 & p3").unwrap(),
            Formula::or(v(1), Formula::and(v(2), v(3)))
        );
        assert_eq!(
            parse("p1 | p2 | p3").unwrap(),
            Formula::or(Formula::or(v(1), v(2)), v(3))
        );
        assert_eq!(
            parse("~p1 & p2").unwrap(),
            Formula::and(Formula::not(v(1)), v(2))
        );
        assert_eq!(
            parse("p1 <-> p2 -> p3").unwrap(),
            Formula::iff(v(1), Formula::imp(v(2), v(3)))
        );
    }

    #[test]
    fn truth_sugar_resolves_to_override() {
        let env = load_env("1 := ~p1").unwrap().0;
        assert_eq!(parse_with("T(~p1)", &env).unwrap(), v(1));
    }

    #[test]
    fn truth_sugar_errors() {
        assert_eq!(
            parse("T(p1)").unwrap_err().kind,
            ParseErrorKind::TruthWithoutEnvironment
        );
        let env = Environment::empty();
        let err = parse_with("p2 & T(p1 & top)", &env).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::TruthOfTop);
        assert_eq!(err.pos, 5);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse("p1 & ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(e.pos, 5);
        let e = parse("p1 p2").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(matches!(e.kind, ParseErrorKind::TrailingInput(_)));
        let e = parse("p0").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadVariable(_)));
        let e = parse("p1 $ p2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(parse("p1 <-> p2 <-> p3").unwrap_err().kind, ParseErrorKind::ChainedIff);
        assert!(parse("(p1").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("¬p1 ∧ ⊤ → ⊥").unwrap(), parse("~p1 & top -> bot").unwrap());
    }

    #[test]
    fn printing() {
        assert_eq!(print(&Formula::imp(v(1), Formula::Bot)), "~p1");
        assert_eq!(print(&Formula::and(v(1), Formula::not(v(1)))), "p1 & ~p1");
        assert_eq!(print(&Formula::Top), "top");
        assert_eq!(print(&parse("(p1 -> p2) -> p3").unwrap()), "(p1 -> p2) -> p3");
        assert_eq!(print(&parse("p1 -> (p2 -> p3)").unwrap()), "p1 -> p2 -> p3");
        assert_eq!(print(&parse("p1 & (p2 & p3)").unwrap()), "p1 & (p2 & p3)");
        assert_eq!(print(&parse("~(p1 & p2)").unwrap()), "~(p1 & p2)");
        assert_eq!(print(&parse("~~p1").unwrap()), "~~p1");
        assert_eq!(print(&parse("(p1 <-> p2) & p3").unwrap()), "(p1 <-> p2) & p3");
        assert_eq!(print(&parse("(p1 | p2) & p3").unwrap()), "(p1 | p2) & p3");
    }

    #[test]
    fn big_indices_round_trip() {
        let text = "p123456789012345678901234567890 -> bot";
        assert_eq!(print(&parse(text).unwrap()), "~p123456789012345678901234567890");
    }
}
