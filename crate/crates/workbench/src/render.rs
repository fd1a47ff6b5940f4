//! Text and JSON renderings of verdicts and traces.

use std::fmt::Write;

use ht_core::semantics::{StageTrace, TauStatus};
use ht_core::{Formula, Rewrite, TauVerdict};
use serde_json::{json, Map, Value};

/// The stage reported with a status: the decision stage, or the stage at
/// which an undecided closure froze.
pub fn status_stage(status: &TauStatus) -> Option<usize> {
    match status {
        TauStatus::DecidedFalse { stage } | TauStatus::DecidedTrue { stage } => Some(*stage),
        TauStatus::StableUndecided { frozen_at } => Some(*frozen_at),
        TauStatus::CapUndetermined { .. } => None,
    }
}

/// `k  i  <A_i^k>  [decided v]`, one line per stage and index.
pub fn trace_text(trace: &StageTrace) -> String {
    let mut out = String::new();
    for (n, record) in trace.stages.iter().enumerate() {
        if trace.elided > 0 && n > 0 && record.stage != trace.stages[n - 1].stage + 1 {
            let _ = writeln!(out, "...  {} stages elided", trace.elided);
        }
        for (i, f) in &record.formulas {
            let _ = write!(out, "{}  {}  {}", record.stage, i, f);
            if let Some(v) = record.decided.get(i) {
                let _ = write!(out, "  decided {}", u8::from(*v));
            }
            out.push('\n');
        }
    }
    out
}

/// `input` is the formula as the user wrote it, `T(..)` sugar included.
pub fn verdict_text(input: &str, formula: &Formula, v: &TauVerdict, with_trace: bool) -> String {
    let mut out = format!(
        "tau({input}) = {}  {}\nformula {formula}  index {}  closure {}\n",
        v.value_bit(),
        v.status,
        v.index,
        v.closure_size
    );
    if !v.status.is_sound() {
        out.push_str("warning: value 1 is a default after giving up, not a verdict\n");
    }
    if with_trace {
        out.push_str(&trace_text(&v.trace));
    }
    out
}

pub fn trace_json(trace: &StageTrace) -> Value {
    let stages: Vec<Value> = trace
        .stages
        .iter()
        .map(|r| {
            let formulas: Map<String, Value> = r
                .formulas
                .iter()
                .map(|(i, f)| (i.to_string(), Value::String(f.to_string())))
                .collect();
            let decided: Map<String, Value> = r
                .decided
                .iter()
                .map(|(i, v)| (i.to_string(), json!(u8::from(*v))))
                .collect();
            json!({"stage": r.stage, "formulas": formulas, "decided": decided})
        })
        .collect();
    json!({"stages": stages, "elided": trace.elided})
}

/// Indices are strings because they may exceed 64 bits. The trace is
/// always included.
pub fn verdict_json(input: &str, formula: &Formula, v: &TauVerdict) -> Value {
    json!({
        "input": input,
        "formula": formula.to_string(),
        "index": v.index.to_string(),
        "verdict": v.value_bit(),
        "status": v.status.label(),
        "stage": status_stage(&v.status),
        "sound": v.status.is_sound(),
        "closure_size": v.closure_size,
        "trace": trace_json(&v.trace),
    })
}

/// `position  (rule)  before  =>  after`, one rewrite per line.
pub fn rewrites_text(steps: &[Rewrite]) -> String {
    let mut out = String::new();
    for r in steps {
        let _ = writeln!(out, "{}  {}  {}  =>  {}", r.position_text(), r.rule, r.before, r.after);
    }
    out
}

pub fn rewrites_json(steps: &[Rewrite]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|r| {
                json!({
                    "position": r.position_text(),
                    "rule": r.rule.number(),
                    "before": r.before.to_string(),
                    "after": r.after.to_string(),
                })
            })
            .collect(),
    )
}
