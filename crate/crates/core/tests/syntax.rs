mod common;

use ht_core::parse::print;
use ht_core::{load_env, parse, parse_with, EnvError, Formula};
use proptest::prelude::*;

use common::formula;

#[test]
fn precedence_and_associativity() {
    let p = |s: &str| parse(s).unwrap();
    assert_eq!(p("p1 -> p2 -> p3"), p("p1 -> (p2 -> p3)"));
    assert_eq!(p("p1 | p2 & p3"), p("p1 | (p2 & p3)"));
    assert_eq!(p("~p1 & p2"), p("(p1 -> bot) & p2"));
    assert_eq!(p("p1 <-> p2"), p("(p1 -> p2) & (p2 -> p1)"));
    assert_eq!(p("⊥ → p1 ∧ ¬p2"), p("bot -> p1 & ~p2"));
    assert!(parse("p1 <-> p2 <-> p3").is_err());
}

#[test]
fn errors_report_positions() {
    let err = parse("p1 & (p2 | ").unwrap_err();
    assert_eq!(err.pos, 11);
    assert!(parse("p0").is_err());
    assert!(parse("T(bot)").is_err());
}

#[test]
fn truth_operator_needs_an_environment() {
    let (env, _) = load_env("1 := ~p1").unwrap();
    assert_eq!(parse_with("T(~p1)", &env).unwrap(), Formula::var(1));
}

#[test]
fn environment_files() {
    let (env, warnings) = load_env("# liar\n1 := ~p1\n\n").unwrap();
    assert_eq!(env.overrides().len(), 1);
    assert!(!warnings.is_empty());
    assert!(matches!(load_env("1 := p1\n1 := p2"), Err(EnvError::DuplicateIndex { .. })));
    assert!(load_env("1 := top").is_err());
    assert!(load_env("1 = p1").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn print_then_parse(f in formula(12, 6, true)) {
        prop_assert_eq!(parse(&print(&f)).unwrap(), f);
    }
}
