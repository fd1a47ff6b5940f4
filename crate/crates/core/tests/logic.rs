mod common;

use ht_core::logic::{parse_script, print_script, CheckErrorKind, ScriptError};
use ht_core::{
    check, instantiate, load_env, parse_with, recognize_axiom, search, Derivation, Environment,
    Formula, Schema, SearchConfig, SearchOutcome,
};
use proptest::prelude::*;

use common::formula;

fn liar() -> Environment {
    load_env("1 := ~p1").unwrap().0
}

fn f(text: &str, env: &Environment) -> Formula {
    parse_with(text, env).unwrap()
}

fn schema() -> impl Strategy<Value = Schema> {
    proptest::sample::select(Schema::ALL.to_vec())
}

#[test]
fn axiom_leaf_is_a_theorem() {
    let e = liar();
    let inst = instantiate(Schema::TIntro, &[f("p1", &e)], &e).unwrap();
    let j = check(&Derivation::Axiom(inst), &e).unwrap();
    assert!(j.is_theorem());
    assert_eq!(j.conclusion, f("p1 -> T(p1)", &e));
}

#[test]
fn tampered_axiom_is_rejected() {
    let e = liar();
    let mut inst = instantiate(Schema::TIntro, &[f("p2", &e)], &e).unwrap();
    inst.result = f("p2 -> p2", &e);
    let err = check(&Derivation::Axiom(inst), &e).unwrap_err();
    assert!(matches!(err.kind, CheckErrorKind::NotAnAxiom(_)));
}

#[test]
fn errors_point_at_the_failing_node() {
    let e = liar();
    let bad = Derivation::imp_i(
        f("p2", &e),
        Derivation::and_i(Derivation::hyp(f("p2", &e)), Derivation::and_e_left(Derivation::hyp(f("p3", &e)))),
    );
    let err = check(&bad, &e).unwrap_err();
    assert_eq!(err.path.to_string(), "root.0.1");
}

#[test]
fn discharge_removes_every_copy() {
    let e = liar();
    let a = f("p2", &e);
    let both = Derivation::and_i(Derivation::hyp(a.clone()), Derivation::hyp(a.clone()));
    assert_eq!(check(&both, &e).unwrap().open[&a], 2);
    let closed = Derivation::imp_i(a.clone(), both);
    assert!(check(&closed, &e).unwrap().is_theorem());
}

#[test]
fn forbidden_rules_are_refused() {
    let e = liar();
    for script in [
        r#"(efq (hyp "bot") "p2")"#,
        r#"(ex-falso (hyp "bot") "p2")"#,
        r#"(t-elim (hyp "T(p2)"))"#,
        r#"(theorem "p2 | ~p2" (lem "p2"))"#,
        r#"(raa "p2" (hyp "~p2"))"#,
    ] {
        let err = parse_script(script, &e).unwrap_err();
        assert!(matches!(err, ScriptError::ForbiddenRule { .. }), "{script}: {err}");
    }
}

#[test]
fn scripts_round_trip() {
    let e = liar();
    let text = r#"
        ; S -> T(S)
        (theorem "p1 -> T(p1)"
          (imp-i "p1" (imp-e (axiom t-intro "p1") (hyp "p1"))))
    "#;
    let script = parse_script(text, &e).unwrap();
    let j = check(&script.derivation, &e).unwrap();
    assert!(j.is_theorem());
    assert_eq!(Some(&j.conclusion), script.goal.as_ref());
    let again = parse_script(&print_script(&script.derivation, script.goal.as_ref()), &e).unwrap();
    assert_eq!(again, script);
}

#[test]
fn search_finds_one_step_liar_theorems() {
    let e = liar();
    for goal in ["p1 -> T(p1)", "~~p1", "~p1 -> p1"] {
        let g = f(goal, &e);
        match search(&g, &e, &SearchConfig::default()).unwrap() {
            SearchOutcome::Found { derivation, .. } => {
                let j = check(&derivation, &e).unwrap();
                assert!(j.is_theorem());
                assert_eq!(j.conclusion, g);
            }
            SearchOutcome::NotFound(r) => panic!("{goal}: {r:?}"),
        }
    }
}

#[test]
fn search_does_not_prove_falsity() {
    for e in [Environment::empty(), liar(), load_env("2 := p2").unwrap().0] {
        for goal in ["bot", "T(bot)"] {
            let out = search(&f(goal, &e), &e, &SearchConfig::default()).unwrap();
            assert!(out.derivation().is_none(), "{goal}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn instances_are_recognized(s in schema(), ps in proptest::collection::vec(formula(5, 3, false), 3)) {
        let e = liar();
        let inst = instantiate(s, &ps[..s.arity()], &e).unwrap();
        prop_assert!(recognize_axiom(&inst.result, &e).contains(&inst));
        prop_assert!(ht_core::classical_sanity(&inst));
    }

    #[test]
    fn modus_ponens_composes(a in formula(4, 2, false), b in formula(4, 2, false)) {
        let e = liar();
        let ab = Derivation::imp_i(a.clone(), Derivation::hyp(b.clone()));
        let both = Derivation::imp_e(ab, Derivation::hyp(a.clone()));
        let j = check(&both, &e).unwrap();
        prop_assert_eq!(&j.conclusion, &b);
        prop_assert!(j.open.contains_key(&b));
        let closed = Derivation::imp_i(b.clone(), Derivation::imp_i(a.clone(), both));
        prop_assert!(check(&closed, &e).unwrap().is_theorem());
    }
}
