//! Stored scenarios: an environment, closed derivations and expected values.

use std::fmt;

use ht_core::logic::parse_script;
use ht_core::semantics::TauStatus;

use crate::render::status_stage;
use ht_core::{check, load_env, parse_with, Environment, Formula, TauConfig, TauEngine};

pub struct Scenario {
    pub name: &'static str,
    /// Set when the scenario reuses another scenario's files.
    pub alias_of: Option<&'static str>,
    pub note: &'static str,
    pub env_text: &'static str,
    pub proofs: &'static [(&'static str, &'static str)],
    pub expectations: &'static str,
}

const LIAR_PROOFS: &[(&str, &str)] = &[
    ("s_to_t_s", include_str!("../corpus/liar/s_to_t_s.proof")),
    ("liar_s_to_tbot", include_str!("../corpus/liar/liar_s_to_tbot.proof")),
    ("not_not_s", include_str!("../corpus/liar/not_not_s.proof")),
    ("not_s_prime", include_str!("../corpus/liar/not_s_prime.proof")),
    ("not_not_t_s_prime", include_str!("../corpus/liar/not_not_t_s_prime.proof")),
    ("excluded_middle_to_tbot", include_str!("../corpus/liar/excluded_middle_to_tbot.proof")),
    ("not_not_t_bot", include_str!("../corpus/liar/not_not_t_bot.proof")),
    ("not_t_bot_to_not_t_s", include_str!("../corpus/liar/not_t_bot_to_not_t_s.proof")),
];

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "liar",
        alias_of: None,
        note: "S is p1 with S = T(~S)",
        env_text: include_str!("../corpus/liar/liar.env"),
        proofs: LIAR_PROOFS,
        expectations: include_str!("../corpus/liar/tau.expect"),
    },
    Scenario {
        name: "grelling",
        alias_of: Some("liar"),
        note: "h is p1: `heterological` is heterological iff T(~h), the liar again",
        env_text: include_str!("../corpus/liar/liar.env"),
        proofs: LIAR_PROOFS,
        expectations: include_str!("../corpus/liar/tau.expect"),
    },
    Scenario {
        name: "truthteller",
        alias_of: None,
        note: "p2 = T(p2)",
        env_text: include_str!("../corpus/truthteller/truthteller.env"),
        proofs: &[],
        expectations: include_str!("../corpus/truthteller/tau.expect"),
    },
];

pub fn scenario(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

/// A parsed line of a `tau.expect` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub formula: Formula,
    pub text: String,
    pub value: bool,
    pub status: String,
    pub stage: Option<usize>,
}

pub fn parse_expectations(text: &str, env: &Environment) -> Result<Vec<Expectation>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| format!("line {}: {m}", n + 1);
        let (lhs, rhs) = line.split_once("=>").ok_or_else(|| err("missing `=>`"))?;
        let formula = parse_with(lhs.trim(), env).map_err(|e| err(&e.to_string()))?;
        let fields: Vec<&str> = rhs.split_whitespace().collect();
        let value = match fields.first() {
            Some(&"0") => false,
            Some(&"1") => true,
            _ => return Err(err("value must be 0 or 1")),
        };
        let status = fields.get(1).ok_or_else(|| err("missing status"))?.to_string();
        let stage = match fields.get(2) {
            Some(s) => Some(s.parse().map_err(|_| err("bad stage"))?),
            None => None,
        };
        out.push(Expectation {
            formula,
            text: lhs.trim().to_string(),
            value,
            status,
            stage,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub name: String,
    pub items: Vec<Item>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.name)?;
        for item in &self.items {
            let mark = if item.ok { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {:<28} {}", item.label, item.detail)?;
        }
        Ok(())
    }
}

/// Checks every stored derivation (closed, matching its stated goal, value
/// 1) and every expected value of a scenario.
pub fn run_scenario(s: &Scenario, config: &TauConfig) -> ScenarioReport {
    let mut items = Vec::new();
    let env = match load_env(s.env_text) {
        Ok((env, _)) => env,
        Err(e) => {
            items.push(Item {
                label: "environment".into(),
                ok: false,
                detail: e.to_string(),
            });
            return ScenarioReport {
                name: s.name.into(),
                items,
            };
        }
    };
    let mut engine = TauEngine::new(&env, config.clone());

    for (label, text) in s.proofs {
        items.push(check_proof(label, text, &env, &mut engine));
    }

    match parse_expectations(s.expectations, &env) {
        Ok(expectations) => {
            for e in expectations {
                items.push(check_expectation(&e, &mut engine));
            }
        }
        Err(e) => items.push(Item {
            label: "tau.expect".into(),
            ok: false,
            detail: e,
        }),
    }

    ScenarioReport {
        name: s.name.into(),
        items,
    }
}

fn check_proof(label: &str, text: &str, env: &Environment, engine: &mut TauEngine) -> Item {
    let item = |ok: bool, detail: String| Item {
        label: label.into(),
        ok,
        detail,
    };
    let script = match parse_script(text, env) {
        Ok(s) => s,
        Err(e) => return item(false, format!("script: {e}")),
    };
    let judgement = match check(&script.derivation, env) {
        Ok(j) => j,
        Err(e) => return item(false, format!("rejected: {e}")),
    };
    if !judgement.is_theorem() {
        return item(false, format!("{} open hypotheses", judgement.open.len()));
    }
    if let Some(goal) = &script.goal {
        if goal != &judgement.conclusion {
            return item(false, format!("proves {} instead of {goal}", judgement.conclusion));
        }
    }
    match engine.tau(&judgement.conclusion) {
        Ok(v) if v.value && v.status.is_sound() => {
            item(true, format!("|- {}  tau = 1 ({})", judgement.conclusion, v.status))
        }
        Ok(v) => item(false, format!("|- {}  but tau = {} ({})", judgement.conclusion, v.value_bit(), v.status)),
        Err(e) => item(false, e.to_string()),
    }
}

fn check_expectation(e: &Expectation, engine: &mut TauEngine) -> Item {
    let label = format!("tau({})", e.text);
    let v = match engine.tau(&e.formula) {
        Ok(v) => v,
        Err(err) => {
            return Item {
                label,
                ok: false,
                detail: err.to_string(),
            }
        }
    };
    let ok = v.value == e.value && status_matches(e, &v.status);
    Item {
        label,
        ok,
        detail: format!("= {} ({})", v.value_bit(), v.status),
    }
}

/// Whether `status` has the label and stage that `e` records.
pub fn status_matches(e: &Expectation, status: &TauStatus) -> bool {
    status.label() == e.status && (e.stage.is_none() || e.stage == status_stage(status))
}
