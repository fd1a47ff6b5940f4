use ht_core::logic::parse_script;
use ht_core::{check, load_env, parse_with, TauConfig, TauEngine};
use ht_workbench::corpus::{run_scenario, scenario, SCENARIOS};

#[test]
fn every_scenario_passes() {
    for s in SCENARIOS {
        let report = run_scenario(s, &TauConfig::default());
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn grelling_is_the_liar() {
    let g = scenario("grelling").unwrap();
    let l = scenario("liar").unwrap();
    assert_eq!(g.alias_of, Some("liar"));
    assert_eq!(g.env_text, l.env_text);
}

#[test]
fn liar_is_false_while_its_double_negation_is_a_theorem() {
    let s = scenario("liar").unwrap();
    let env = load_env(s.env_text).unwrap().0;
    let (_, text) = s.proofs.iter().find(|(l, _)| *l == "not_not_s").unwrap();
    let j = check(&parse_script(text, &env).unwrap().derivation, &env).unwrap();
    assert!(j.is_theorem());
    assert_eq!(j.conclusion, parse_with("~~p1", &env).unwrap());

    let mut engine = TauEngine::new(&env, TauConfig::default());
    assert!(!engine.tau(&parse_with("p1", &env).unwrap()).unwrap().value);
    assert!(engine.tau(&j.conclusion).unwrap().value);
    assert!(!engine.tau(&parse_with("T(bot)", &env).unwrap()).unwrap().value);
}
