//! Staged 0/1 valuation.
//!
//! For every index `i` the stage formulas are
//!
//! ```text
//! A_i^1     = reduce(A_i)
//! A_i^(k+1) = reduce(A_i^k with each p_j decided at a stage <= k
//!             replaced by its constant)
//! ```
//!
//! `p_i` is decided at the first stage where `A_i^k` is `top` (value 1) or
//! `bot` (value 0). Indices that are never decided get value 1. The value of
//! a compound formula `A` is the value of `p_(index_of(A))`; a variable is
//! valued by its own index.
//!
//! [`TauEngine`] only looks at the dependency closure of the index being
//! evaluated. Under the canonical coding every closure is finite, and once a
//! whole stage leaves every stage formula of the closure unchanged nothing can
//! change again, which is how "never decided" is established. The stage cap
//! and the closure bound exist only as safety valves; hitting either gives
//! [`TauStatus::CapUndetermined`], which is never treated as a sound verdict.
//!
//! [`reference_tau`] fills in the full stage table for a fixed number of
//! stages with no shortcuts and is meant as a test oracle.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::coding::CodingError;
use crate::env::Environment;
use crate::formula::{Formula, Index};
use crate::logic::SchemaInstance;
use crate::reduce::reduce;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauConfig {
    /// Maximum number of stages computed.
    pub stage_cap: usize,
    /// Maximum dependency-closure size.
    pub closure_bound: usize,
    /// Closures up to this size keep every stage in the trace.
    pub trace_full_limit: usize,
    /// Larger closures keep this many stages from each end.
    pub trace_window: usize,
}

impl Default for TauConfig {
    fn default() -> Self {
        TauConfig {
            stage_cap: 1000,
            closure_bound: 100_000,
            trace_full_limit: 64,
            trace_window: 10,
        }
    }
}

impl TauConfig {
    pub fn with_cap(stage_cap: usize) -> Self {
        TauConfig {
            stage_cap,
            ..TauConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapReason {
    StageCap { cap: usize },
    ClosureBound { bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauStatus {
    DecidedFalse { stage: usize },
    DecidedTrue { stage: usize },
    /// Never decided; the closure stopped changing at `frozen_at`.
    StableUndecided { frozen_at: usize },
    /// Gave up. Carries value 1 but is not a verdict.
    CapUndetermined { reason: CapReason },
}

impl TauStatus {
    pub fn value(&self) -> bool {
        !matches!(self, TauStatus::DecidedFalse { .. })
    }

    pub fn is_sound(&self) -> bool {
        !matches!(self, TauStatus::CapUndetermined { .. })
    }

    /// Stage of decision, if decided.
    pub fn stage(&self) -> Option<usize> {
        match self {
            TauStatus::DecidedFalse { stage } | TauStatus::DecidedTrue { stage } => Some(*stage),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TauStatus::DecidedFalse { .. } => "decided-false",
            TauStatus::DecidedTrue { .. } => "decided-true",
            TauStatus::StableUndecided { .. } => "stable-undecided",
            TauStatus::CapUndetermined { .. } => "cap-undetermined",
        }
    }
}

impl fmt::Display for TauStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauStatus::DecidedFalse { stage } | TauStatus::DecidedTrue { stage } => {
                write!(f, "{} (stage {stage})", self.label())
            }
            TauStatus::StableUndecided { frozen_at } => {
                write!(f, "{} (frozen at stage {frozen_at})", self.label())
            }
            TauStatus::CapUndetermined {
                reason: CapReason::StageCap { cap },
            } => write!(f, "{} (stage cap {cap} reached)", self.label()),
            TauStatus::CapUndetermined {
                reason: CapReason::ClosureBound { bound },
            } => write!(f, "{} (closure exceeds {bound} indices)", self.label()),
        }
    }
}

/// Stage formulas of one stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub formulas: BTreeMap<Index, Formula>,
    /// Indices first decided at this stage, with their value.
    pub decided: BTreeMap<Index, bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageTrace {
    pub stages: Vec<StageRecord>,
    /// Number of stages dropped from the middle of the trace.
    pub elided: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauVerdict {
    pub index: Index,
    pub value: bool,
    pub status: TauStatus,
    pub closure_size: usize,
    pub trace: StageTrace,
}

impl TauVerdict {
    pub fn value_bit(&self) -> u8 {
        u8::from(self.value)
    }

    fn undetermined(index: Index, reason: CapReason, closure_size: usize) -> Self {
        TauVerdict {
            index,
            value: true,
            status: TauStatus::CapUndetermined { reason },
            closure_size,
            trace: StageTrace::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("stage {requested} is beyond the stage cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("dependency closure exceeds {bound} indices")]
    ClosureIncomplete { bound: usize },
    #[error("stages are numbered from 1")]
    StageZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub members: BTreeSet<Index>,
    pub complete: bool,
}

/// Least set containing `i` and closed under "the variables of `A_j`",
/// truncated once it would exceed `bound` members.
pub fn dependency_closure(i: &Index, env: &Environment, bound: usize) -> Closure {
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    members.insert(i.clone());
    queue.push_back(i.clone());
    while let Some(j) = queue.pop_front() {
        for v in env.definition_of(&j).variables() {
            if members.contains(&v) {
                continue;
            }
            if members.len() >= bound {
                return Closure {
                    members,
                    complete: false,
                };
            }
            members.insert(v.clone());
            queue.push_back(v);
        }
    }
    Closure {
        members,
        complete: true,
    }
}

fn constant(value: bool) -> Formula {
    if value {
        Formula::Top
    } else {
        Formula::Bot
    }
}

fn constant_value(f: &Formula) -> Option<bool> {
    match f {
        Formula::Top => Some(true),
        Formula::Bot => Some(false),
        _ => None,
    }
}

/// Stage history of an index whose future is fixed: either decided, or a
/// member of a closure that froze. Stages past the end repeat the last entry.
#[derive(Debug, Clone)]
struct History {
    formulas: Vec<Formula>,
    decided: Option<(usize, bool)>,
}

impl History {
    fn at(&self, stage: usize) -> &Formula {
        let k = stage.min(self.formulas.len());
        &self.formulas[k - 1]
    }
}

enum Outcome {
    Frozen(usize),
    Stopped,
    Cap,
}

struct Run {
    members: Vec<Index>,
    histories: BTreeMap<Index, History>,
    last_stage: usize,
    outcome: Outcome,
}

impl Run {
    fn formula_at(&self, j: &Index, stage: usize) -> &Formula {
        self.histories[j].at(stage)
    }

    fn decided_at(&self, j: &Index, stage: usize) -> Option<bool> {
        match self.histories[j].decided {
            Some((s, v)) if s == stage => Some(v),
            _ => None,
        }
    }
}

/// Lazy staged evaluator over one environment.
///
/// Settled stage histories are memoized per index, so evaluating many
/// formulas over the same environment reuses work. An engine is used by one
/// caller at a time; separate engines may share an environment freely.
pub struct TauEngine<'e> {
    env: &'e Environment,
    config: TauConfig,
    memo: BTreeMap<Index, History>,
}

impl<'e> TauEngine<'e> {
    pub fn new(env: &'e Environment, config: TauConfig) -> Self {
        TauEngine {
            env,
            config,
            memo: BTreeMap::new(),
        }
    }

    pub fn env(&self) -> &'e Environment {
        self.env
    }

    pub fn config(&self) -> &TauConfig {
        &self.config
    }

    /// Value of `f`; see [`valuation_index`].
    pub fn tau(&mut self, f: &Formula) -> Result<TauVerdict, CodingError> {
        let i = valuation_index(f, self.env)?;
        Ok(self.tau_index(&i))
    }

    pub fn tau_index(&mut self, i: &Index) -> TauVerdict {
        let closure = dependency_closure(i, self.env, self.config.closure_bound);
        if !closure.complete {
            return TauVerdict::undetermined(
                i.clone(),
                CapReason::ClosureBound {
                    bound: self.config.closure_bound,
                },
                closure.members.len(),
            );
        }
        let run = self.run(i, closure, None);
        let status = match (run.histories[i].decided, &run.outcome) {
            (Some((stage, false)), _) => TauStatus::DecidedFalse { stage },
            (Some((stage, true)), _) => TauStatus::DecidedTrue { stage },
            (None, Outcome::Frozen(k)) => TauStatus::StableUndecided { frozen_at: *k },
            (None, _) => TauStatus::CapUndetermined {
                reason: CapReason::StageCap {
                    cap: self.config.stage_cap,
                },
            },
        };
        TauVerdict {
            index: i.clone(),
            value: status.value(),
            status,
            closure_size: run.members.len(),
            trace: self.trace_of(&run),
        }
    }

    /// `A_i^k`.
    pub fn stage_formula(&mut self, i: &Index, stage: usize) -> Result<Formula, StageError> {
        if stage == 0 {
            return Err(StageError::StageZero);
        }
        if stage > self.config.stage_cap {
            return Err(StageError::CapExceeded {
                requested: stage,
                cap: self.config.stage_cap,
            });
        }
        let closure = dependency_closure(i, self.env, self.config.closure_bound);
        if !closure.complete {
            return Err(StageError::ClosureIncomplete {
                bound: self.config.closure_bound,
            });
        }
        let run = self.run(i, closure, Some(stage));
        Ok(run.formula_at(i, stage).clone())
    }

    /// Advances the closure of `root` stage by stage. Without `until` it
    /// stops as soon as `root` is decided; with it, it runs to that stage.
    fn run(&mut self, root: &Index, closure: Closure, until: Option<usize>) -> Run {
        let members: Vec<Index> = closure.members.into_iter().collect();
        let mut histories: BTreeMap<Index, History> = BTreeMap::new();
        let mut fresh: Vec<Index> = Vec::new();

        for j in &members {
            match self.memo.get(j) {
                Some(h) => {
                    histories.insert(j.clone(), h.clone());
                }
                None => {
                    let f = reduce(&self.env.definition_of(j));
                    let decided = constant_value(&f).map(|v| (1, v));
                    histories.insert(
                        j.clone(),
                        History {
                            formulas: alloc::vec![f],
                            decided,
                        },
                    );
                    fresh.push(j.clone());
                }
            }
        }

        let cap = self.config.stage_cap;
        let mut stage = 1;
        let outcome = loop {
            if until.is_none() && histories[root].decided.is_some_and(|(s, _)| s <= stage) {
                break Outcome::Stopped;
            }
            if until.is_some_and(|u| stage >= u) {
                break Outcome::Stopped;
            }
            if stage >= cap {
                break Outcome::Cap;
            }
            let next = stage + 1;
            // Decisions visible to stage `next`: those made at stages <= `stage`.
            let visible: BTreeMap<Index, bool> = histories
                .iter()
                .filter_map(|(j, h)| match h.decided {
                    Some((s, v)) if s <= stage => Some((j.clone(), v)),
                    _ => None,
                })
                .collect();
            for j in &fresh {
                let h = &histories[j];
                if h.decided.is_some() {
                    continue;
                }
                let prev = h.formulas.last().expect("stage 1 is always present");
                let f = reduce(&prev.substitute(&|v: &Index| visible.get(v).map(|&b| constant(b))));
                let h = histories.get_mut(j).expect("member");
                if let Some(v) = constant_value(&f) {
                    h.decided = Some((next, v));
                }
                h.formulas.push(f);
            }
            let changed = members
                .iter()
                .any(|j| histories[j].at(next) != histories[j].at(stage));
            stage = next;
            if !changed {
                break Outcome::Frozen(stage);
            }
        };

        for j in &fresh {
            let h = &histories[j];
            let settled = h.decided.is_some() || matches!(outcome, Outcome::Frozen(_));
            if settled {
                self.memo.insert(j.clone(), h.clone());
            }
        }

        Run {
            members,
            histories,
            last_stage: stage,
            outcome,
        }
    }

    fn trace_of(&self, run: &Run) -> StageTrace {
        let total = run.last_stage;
        let window = self.config.trace_window;
        let keep_all = run.members.len() <= self.config.trace_full_limit || total <= 2 * window;
        let kept: Vec<usize> = if keep_all {
            (1..=total).collect()
        } else {
            (1..=window).chain(total - window + 1..=total).collect()
        };
        let stages = kept
            .iter()
            .map(|&k| StageRecord {
                stage: k,
                formulas: run
                    .members
                    .iter()
                    .map(|j| (j.clone(), run.formula_at(j, k).clone()))
                    .collect(),
                decided: run
                    .members
                    .iter()
                    .filter_map(|j| run.decided_at(j, k).map(|v| (j.clone(), v)))
                    .collect(),
            })
            .collect();
        StageTrace {
            stages,
            elided: total - kept.len(),
        }
    }
}

/// The index whose stages decide `f`: `i` itself for a variable `p_i`,
/// otherwise `index_of(f)`, whose definition is `f`.
pub fn valuation_index(f: &Formula, env: &Environment) -> Result<Index, CodingError> {
    match f {
        Formula::Var(i) => Ok(i.clone()),
        _ => env.index_of(f),
    }
}

/// One-shot evaluation with a fresh engine.
pub fn tau(f: &Formula, env: &Environment, config: &TauConfig) -> Result<TauVerdict, CodingError> {
    TauEngine::new(env, config.clone()).tau(f)
}

/// The instance's formula gets value 1 with a sound status.
pub fn check_axiom_tau(inst: &SchemaInstance, env: &Environment, config: &TauConfig) -> bool {
    match tau(&inst.result, env, config) {
        Ok(v) => v.value && v.status.is_sound(),
        Err(_) => false,
    }
}

/// Classical evaluation of the instance with every variable true.
pub fn classical_sanity(inst: &SchemaInstance) -> bool {
    inst.result.eval_classical(&|_: &Index| true)
}

/// Table-based oracle: computes `A_j^k` for every `j` in the closure and
/// every `k` in `1..=stages`, then reads the verdict off the table.
///
/// The status is `StableUndecided` when the root is never decided and two
/// consecutive rows of the table are identical; the first such row is
/// reported as the freeze stage.
pub fn reference_tau(
    f: &Formula,
    env: &Environment,
    stages: usize,
) -> Result<TauVerdict, CodingError> {
    let root = match f {
        Formula::Var(i) => i.clone(),
        _ => env.index_of(f)?,
    };

    let bound = TauConfig::default().closure_bound;
    let mut closure: BTreeSet<Index> = BTreeSet::new();
    let mut pending = alloc::vec![root.clone()];
    while let Some(j) = pending.pop() {
        if closure.insert(j.clone()) {
            pending.extend(env.definition_of(&j).variables());
        }
        if closure.len() > bound {
            return Ok(TauVerdict::undetermined(
                root,
                CapReason::ClosureBound { bound },
                closure.len(),
            ));
        }
    }

    let mut table: Vec<BTreeMap<Index, Formula>> = Vec::with_capacity(stages);
    if stages >= 1 {
        table.push(
            closure
                .iter()
                .map(|j| (j.clone(), reduce(&env.definition_of(j))))
                .collect(),
        );
    }
    while table.len() < stages {
        let done = table.len();
        // p_m with a constant somewhere in rows 1..=done
        let decided: BTreeMap<Index, Formula> = closure
            .iter()
            .filter_map(|m| {
                table
                    .iter()
                    .find_map(|row| constant_value(&row[m]))
                    .map(|v| (m.clone(), constant(v)))
            })
            .collect();
        let last = &table[done - 1];
        let row = closure
            .iter()
            .map(|j| {
                let g = last[j].substitute(&|v: &Index| decided.get(v).cloned());
                (j.clone(), reduce(&g))
            })
            .collect();
        table.push(row);
    }

    let first_decision = table
        .iter()
        .enumerate()
        .find_map(|(k, row)| constant_value(&row[&root]).map(|v| (k + 1, v)));
    let status = match first_decision {
        Some((stage, false)) => TauStatus::DecidedFalse { stage },
        Some((stage, true)) => TauStatus::DecidedTrue { stage },
        None => match (1..table.len()).find(|&k| table[k] == table[k - 1]) {
            Some(k) => TauStatus::StableUndecided { frozen_at: k + 1 },
            None => TauStatus::CapUndetermined {
                reason: CapReason::StageCap { cap: stages },
            },
        },
    };

    let trace = StageTrace {
        stages: table
            .iter()
            .enumerate()
            .map(|(k, row)| StageRecord {
                stage: k + 1,
                formulas: row.clone(),
                decided: row
                    .iter()
                    .filter(|(j, f)| {
                        f.is_constant() && (k == 0 || !table[k - 1][*j].is_constant())
                    })
                    .map(|(j, f)| (j.clone(), *f == Formula::Top))
                    .collect(),
            })
            .collect(),
        elided: 0,
    };

    Ok(TauVerdict {
        index: root,
        value: status.value(),
        status,
        closure_size: closure.len(),
        trace,
    })
}
