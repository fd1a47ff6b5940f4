use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ht_core::logic::{parse_script, print_script};
use ht_core::{
    check, dependency_closure, load_env, parse_with, recognize_axiom, reduce_traced, search,
    valuation_index, Environment, Formula, SearchConfig, SearchOutcome, TauConfig, TauEngine,
};
use ht_workbench::corpus::{run_scenario, scenario, SCENARIOS};
use ht_workbench::render;

const GRAMMAR: &str = "\
Formula syntax:
  formula := iff
  iff     := imp [ \"<->\" imp ]          (non-associative)
  imp     := or [ \"->\" imp ]            (right-associative)
  or      := and { \"|\" and }            (left-associative)
  and     := unary { \"&\" unary }        (left-associative)
  unary   := \"~\" unary | atom
  atom    := \"p\" N | \"bot\" | \"top\" | \"T(\" formula \")\" | \"(\" formula \")\"

  ~A is A -> bot, A <-> B is (A -> B) & (B -> A). T(A) is the variable
  whose definition is A. `top` is accepted only by `reduce`.
  Unicode: ¬ ∧ ∨ → ↔ ⊥ ⊤.

Environment files: one `N := formula` per line, `#` comments, no T(..).

Exit codes: 0 ok, 1 rejected / not found / mismatch, 2 usage or input error,
3 tau gave up at a cap (value 1 is then a default, not a verdict).";

#[derive(Parser)]
#[command(name = "ht", version, about = "Truth-predicate kernel workbench", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Environment file with index overrides (empty by default).
    #[arg(long, value_name = "FILE")]
    env: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct Caps {
    /// Maximum stage before giving up.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Maximum dependency-closure size before giving up.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    closure_bound: u64,
}

impl Caps {
    fn config(&self) -> TauConfig {
        TauConfig {
            stage_cap: self.cap as usize,
            closure_bound: self.closure_bound as usize,
            ..TauConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a formula over bot/top constants.
    Reduce {
        formula: String,
        /// Print every rule application.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Staged truth value of a formula.
    Tau {
        formula: String,
        #[command(flatten)]
        caps: Caps,
        /// Print the stage formulas of the dependency closure.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Indices the value of a formula depends on.
    Closure {
        formula: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        closure_bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check a proof script.
    Check {
        script: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Is a formula an instance of a truth axiom?
    Axiom {
        formula: String,
        #[command(flatten)]
        common: Common,
    },
    /// Bounded proof search; prints the proof as a script.
    Search {
        formula: String,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        /// Number of axiom instances offered to the prover.
        #[arg(long, default_value_t = 64)]
        pool: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check the stored scenarios.
    Corpus {
        #[arg(long, value_name = "NAME")]
        scenario: Option<String>,
        #[command(flatten)]
        caps: Caps,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A one-line failure with its exit code.
struct Failure {
    code: u8,
    reason: String,
}

fn usage(kind: &str, detail: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        reason: format!("{kind}: {detail}"),
    }
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.reason.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}

fn load_environment(path: Option<&Path>) -> Result<Environment, Failure> {
    let Some(path) = path else {
        return Ok(Environment::empty());
    };
    let text = fs::read_to_string(path).map_err(|e| usage("env", format!("{}: {e}", path.display())))?;
    let (env, warnings) = load_env(&text).map_err(|e| usage("env", format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(env)
}

fn formula(text: &str, env: &Environment) -> Result<Formula, Failure> {
    parse_with(text, env).map_err(|e| usage("parse", format!("{e} in `{text}`")))
}

fn no_top(f: &Formula) -> Result<(), Failure> {
    if f.contains_top() {
        Err(usage("parse", "`top` is only accepted by `reduce`"))
    } else {
        Ok(())
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Reduce { formula: text, trace, common } => {
            let env = load_environment(common.env.as_deref())?;
            let f = formula(&text, &env)?;
            let (g, steps) = reduce_traced(&f);
            let text = match common.format {
                Format::Text => {
                    let mut s = String::new();
                    if trace {
                        s.push_str(&render::rewrites_text(&steps));
                    }
                    s.push_str(&format!("{g}\n"));
                    s
                }
                Format::Json => json_text(&json!({
                    "formula": f.to_string(),
                    "reduced": g.to_string(),
                    "trace": if trace { render::rewrites_json(&steps) } else { Value::Null },
                })),
            };
            Ok(Output { text, code: 0 })
        }

        Command::Tau { formula: text, caps, trace, common } => {
            let env = load_environment(common.env.as_deref())?;
            let f = formula(&text, &env)?;
            no_top(&f)?;
            let mut engine = TauEngine::new(&env, caps.config());
            let v = engine.tau(&f).map_err(|e| usage("coding", e))?;
            let text = match common.format {
                Format::Text => render::verdict_text(&text, &f, &v, trace),
                Format::Json => json_text(&render::verdict_json(&text, &f, &v)),
            };
            let code = if v.status.is_sound() { 0 } else { 3 };
            Ok(Output { text, code })
        }

        Command::Closure { formula: text, closure_bound, common } => {
            let env = load_environment(common.env.as_deref())?;
            let f = formula(&text, &env)?;
            no_top(&f)?;
            let i = valuation_index(&f, &env).map_err(|e| usage("coding", e))?;
            let c = dependency_closure(&i, &env, closure_bound as usize);
            let text = match common.format {
                Format::Text => {
                    let mut s = format!(
                        "closure of p{i}: {} indices{}\n",
                        c.members.len(),
                        if c.complete { "" } else { " (incomplete)" }
                    );
                    for j in &c.members {
                        s.push_str(&format!("{j}  {}\n", env.definition_of(j)));
                    }
                    s
                }
                Format::Json => json_text(&json!({
                    "index": i.to_string(),
                    "complete": c.complete,
                    "members": c.members.iter().map(|j| json!({
                        "index": j.to_string(),
                        "definition": env.definition_of(j).to_string(),
                    })).collect::<Vec<_>>(),
                })),
            };
            Ok(Output { text, code: if c.complete { 0 } else { 3 } })
        }

        Command::Check { script, common } => {
            let env = load_environment(common.env.as_deref())?;
            let source = fs::read_to_string(&script)
                .map_err(|e| usage("script", format!("{}: {e}", script.display())))?;
            let parsed = parse_script(&source, &env)
                .map_err(|e| usage("script", format!("{}: {e}", script.display())))?;
            let judgement = check(&parsed.derivation, &env).map_err(|e| Failure {
                code: 1,
                reason: format!("rejected: {e}"),
            })?;
            let open: Vec<String> = judgement
                .open
                .iter()
                .flat_map(|(f, n)| std::iter::repeat_n(f.to_string(), *n))
                .collect();
            let goal_ok = parsed.goal.as_ref().is_none_or(|g| g == &judgement.conclusion);
            let ok = goal_ok && judgement.is_theorem();
            let text = match common.format {
                Format::Text => {
                    let mut s = format!("{} |- {}\n", open.join(", "), judgement.conclusion);
                    if let Some(g) = parsed.goal.as_ref().filter(|_| !goal_ok) {
                        s.push_str(&format!("stated goal {g} differs\n"));
                    }
                    s.push_str(if ok { "accepted\n" } else { "not a proof of the stated theorem\n" });
                    s.trim_start().to_string()
                }
                Format::Json => json_text(&json!({
                    "accepted": ok,
                    "conclusion": judgement.conclusion.to_string(),
                    "open": open,
                    "goal": parsed.goal.as_ref().map(|g| g.to_string()),
                })),
            };
            Ok(Output { text, code: if ok { 0 } else { 1 } })
        }

        Command::Axiom { formula: text, common } => {
            let env = load_environment(common.env.as_deref())?;
            let f = formula(&text, &env)?;
            no_top(&f)?;
            let found = recognize_axiom(&f, &env);
            let text = match common.format {
                Format::Text => {
                    let mut s = String::new();
                    for inst in &found {
                        let params: Vec<String> = inst.params.iter().map(|p| format!("\"{p}\"")).collect();
                        s.push_str(&format!("(axiom {} {})\n", inst.schema.name(), params.join(" ")));
                    }
                    if found.is_empty() {
                        s.push_str("not an axiom instance\n");
                    }
                    s
                }
                Format::Json => json_text(&json!({
                    "formula": f.to_string(),
                    "instances": found.iter().map(|i| json!({
                        "schema": i.schema.name(),
                        "params": i.params.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })),
            };
            Ok(Output { text, code: if found.is_empty() { 1 } else { 0 } })
        }

        Command::Search { formula: text, depth, pool, common } => {
            let env = load_environment(common.env.as_deref())?;
            let f = formula(&text, &env)?;
            no_top(&f)?;
            let config = SearchConfig {
                depth: depth as usize,
                pool_size: pool,
                ..SearchConfig::default()
            };
            let outcome = search(&f, &env, &config).map_err(|e| usage("coding", e))?;
            let report = outcome.report();
            let (text, code) = match (&outcome, common.format) {
                (SearchOutcome::Found { derivation, depth, .. }, Format::Text) => (
                    format!("; found at depth {depth}, {} steps\n{}", report.nodes, print_script(derivation, Some(&f))),
                    0,
                ),
                (SearchOutcome::NotFound(_), Format::Text) => (
                    format!(
                        "not found up to depth {} with {} axioms ({} steps{})\n",
                        report.depth,
                        report.pool,
                        report.nodes,
                        if report.budget_exhausted { ", budget exhausted" } else { "" }
                    ),
                    1,
                ),
                (_, Format::Json) => (
                    json_text(&json!({
                        "formula": f.to_string(),
                        "found": outcome.derivation().is_some(),
                        "script": outcome.derivation().map(|d| print_script(d, Some(&f))),
                        "depth": report.depth,
                        "pool": report.pool,
                        "steps": report.nodes,
                        "budget_exhausted": report.budget_exhausted,
                    })),
                    if outcome.derivation().is_some() { 0 } else { 1 },
                ),
            };
            Ok(Output { text, code })
        }

        Command::Corpus { scenario: name, caps, format } => {
            let selected: Vec<_> = match &name {
                Some(n) => vec![scenario(n).ok_or_else(|| {
                    let names: Vec<&str> = SCENARIOS.iter().map(|s| s.name).collect();
                    usage("corpus", format!("unknown scenario `{n}` (known: {})", names.join(", ")))
                })?],
                None => SCENARIOS.iter().collect(),
            };
            let reports: Vec<_> = selected.iter().map(|s| run_scenario(s, &caps.config())).collect();
            let ok = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (sc, r) in selected.iter().zip(&reports) {
                        s.push_str(&r.to_string());
                        if let Some(base) = sc.alias_of {
                            s.push_str(&format!("  (alias of {base}: {})\n", sc.note));
                        }
                    }
                    s.push_str(if ok { "all scenarios pass\n" } else { "corpus mismatch\n" });
                    s
                }
                Format::Json => json_text(&Value::Array(
                    reports
                        .iter()
                        .map(|r| json!({
                            "scenario": r.name,
                            "passed": r.passed(),
                            "items": r.items.iter().map(|i| json!({
                                "label": i.label, "ok": i.ok, "detail": i.detail,
                            })).collect::<Vec<_>>(),
                        }))
                        .collect(),
                )),
            };
            Ok(Output { text, code: if ok { 0 } else { 1 } })
        }
    }
}
