//! Bounded backward proof search.
//!
//! Iterative deepening over sequents `Γ ⊢ G` where `Γ` holds hypotheses and
//! a fixed pool of axiom instances:
//!
//! * `->I` and `&I` are applied eagerly (they are invertible);
//! * disjunctive hypotheses are split with `or-e`;
//! * an assumption is used by a focused chain of `&E` / `->E` steps, tried
//!   only when the goal occurs in a strictly positive position of it;
//! * `or-i` is tried last.
//!
//! Sequents already on the current branch are cut (loop check), and failures
//! are remembered per sequent together with the depth they failed at.
//! Everything returned has been re-checked by the kernel. Not finding a
//! proof says nothing about provability.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::coding::CodingError;
use crate::env::Environment;
use crate::formula::Formula;
use crate::logic::derivation::{check, Derivation};
use crate::logic::schema::{instantiate, Schema, SchemaInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: usize,
    pub pool_size: usize,
    /// Total proof-search steps before giving up.
    pub node_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: 6,
            pool_size: 64,
            node_budget: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub depth: usize,
    pub pool: usize,
    pub nodes: usize,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        derivation: Derivation,
        depth: usize,
        report: SearchReport,
    },
    NotFound(SearchReport),
}

impl SearchOutcome {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SearchOutcome::Found { derivation, .. } => Some(derivation),
            SearchOutcome::NotFound(_) => None,
        }
    }

    pub fn report(&self) -> &SearchReport {
        match self {
            SearchOutcome::Found { report, .. } | SearchOutcome::NotFound(report) => report,
        }
    }
}

/// Axiom instances available to [`search`]: parameters range over the
/// subformulas of the goal and of the override definitions, smallest first.
/// `t-intro` instances come first, then `t-mp`, `t-and-forward`,
/// `t-and-backward`, `t-or-intro` and `t-or-elim`, up to `pool_size`.
pub fn axiom_pool(goal: &Formula, env: &Environment, pool_size: usize) -> Vec<SchemaInstance> {
    let mut subs = BTreeSet::new();
    goal.collect_subformulas(&mut subs);
    for f in env.overrides().values() {
        f.collect_subformulas(&mut subs);
    }
    let mut params: Vec<Formula> = subs.into_iter().filter(|f| !f.contains_top()).collect();
    params.sort_by(|a, b| a.node_count().cmp(&b.node_count()).then_with(|| a.cmp(b)));

    let mut pool = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |pool: &mut Vec<SchemaInstance>, schema: Schema, ps: &[Formula]| -> bool {
        if pool.len() >= pool_size {
            return false;
        }
        if let Ok(inst) = instantiate(schema, ps, env) {
            if seen.insert(inst.result.clone()) {
                pool.push(inst);
            }
        }
        true
    };

    for a in &params {
        if !push(&mut pool, Schema::TIntro, core::slice::from_ref(a)) {
            return pool;
        }
    }
    for schema in [
        Schema::TMp,
        Schema::TAndForward,
        Schema::TAndBackward,
        Schema::TOrIntro,
    ] {
        for a in &params {
            for b in &params {
                if !push(&mut pool, schema, &[a.clone(), b.clone()]) {
                    return pool;
                }
            }
        }
    }
    for a in &params {
        for b in &params {
            for c in &params {
                if !push(&mut pool, Schema::TOrElim, &[a.clone(), b.clone(), c.clone()]) {
                    return pool;
                }
            }
        }
    }
    pool
}

/// `target` occurs in `h` at a position reachable by elimination.
fn reaches(h: &Formula, target: &Formula) -> bool {
    if h == target {
        return true;
    }
    match h {
        Formula::And(a, b) => reaches(a, target) || reaches(b, target),
        Formula::Imp(_, b) => reaches(b, target),
        Formula::Or(..) => true,
        _ => false,
    }
}

type Sequent = (Vec<Formula>, Formula);

struct Prover {
    axioms: Vec<SchemaInstance>,
    axiom_by_formula: BTreeMap<Formula, usize>,
    nodes: usize,
    budget: usize,
    exhausted: bool,
    failed: BTreeMap<Sequent, usize>,
    on_branch: BTreeSet<Sequent>,
    loop_cut: bool,
}

impl Prover {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn leaf(&self, ctx: &BTreeSet<Formula>, goal: &Formula) -> Option<Derivation> {
        if ctx.contains(goal) {
            return Some(Derivation::Hyp(goal.clone()));
        }
        self.axiom_by_formula
            .get(goal)
            .map(|&i| Derivation::Axiom(self.axioms[i].clone()))
    }

    fn prove(&mut self, ctx: &BTreeSet<Formula>, goal: &Formula, depth: usize) -> Option<Derivation> {
        if depth == 0 || !self.tick() {
            return None;
        }
        if let Some(d) = self.leaf(ctx, goal) {
            return Some(d);
        }
        let key: Sequent = (ctx.iter().cloned().collect(), goal.clone());
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return None;
        }
        if self.on_branch.contains(&key) {
            self.loop_cut = true;
            return None;
        }
        self.on_branch.insert(key.clone());
        let outer_cut = core::mem::replace(&mut self.loop_cut, false);
        let found = self.prove_step(ctx, goal, depth);
        self.on_branch.remove(&key);
        if found.is_none() && !self.loop_cut && !self.exhausted {
            let entry = self.failed.entry(key).or_insert(0);
            *entry = (*entry).max(depth);
        }
        self.loop_cut |= outer_cut;
        found
    }

    fn prove_step(
        &mut self,
        ctx: &BTreeSet<Formula>,
        goal: &Formula,
        depth: usize,
    ) -> Option<Derivation> {
        match goal {
            Formula::Imp(a, b) => {
                let mut inner = ctx.clone();
                inner.insert((**a).clone());
                return self
                    .prove(&inner, b, depth - 1)
                    .map(|d| Derivation::imp_i((**a).clone(), d));
            }
            Formula::And(a, b) => {
                let da = self.prove(ctx, a, depth - 1)?;
                let db = self.prove(ctx, b, depth - 1)?;
                return Some(Derivation::and_i(da, db));
            }
            _ => {}
        }

        let disjunctions: Vec<(Formula, Formula, Formula)> = ctx
            .iter()
            .filter_map(|h| match h {
                Formula::Or(a, b) if !ctx.contains(a) && !ctx.contains(b) => {
                    Some((h.clone(), (**a).clone(), (**b).clone()))
                }
                _ => None,
            })
            .collect();
        for (h, a, b) in disjunctions {
            if let Some(d) = self.split(ctx, Derivation::Hyp(h), &a, &b, goal, depth - 1) {
                return Some(d);
            }
        }

        let mut assumptions: Vec<(Derivation, Formula)> = ctx
            .iter()
            .filter(|h| !matches!(h, Formula::Or(..)))
            .map(|h| (Derivation::Hyp(h.clone()), h.clone()))
            .collect();
        assumptions.extend(
            self.axioms
                .iter()
                .map(|inst| (Derivation::Axiom(inst.clone()), inst.result.clone())),
        );
        for (d, h) in assumptions {
            if reaches(&h, goal) {
                if let Some(found) = self.elim(ctx, d, &h, goal, depth - 1) {
                    return Some(found);
                }
            }
        }

        if let Formula::Or(a, b) = goal {
            if let Some(d) = self.prove(ctx, a, depth - 1) {
                return Some(Derivation::or_i_left(d, (**b).clone()));
            }
            if let Some(d) = self.prove(ctx, b, depth - 1) {
                return Some(Derivation::or_i_right(d, (**a).clone()));
            }
        }
        None
    }

    fn split(
        &mut self,
        ctx: &BTreeSet<Formula>,
        disjunction: Derivation,
        a: &Formula,
        b: &Formula,
        goal: &Formula,
        depth: usize,
    ) -> Option<Derivation> {
        let mut with_a = ctx.clone();
        with_a.insert(a.clone());
        let left = self.prove(&with_a, goal, depth)?;
        let mut with_b = ctx.clone();
        with_b.insert(b.clone());
        let right = self.prove(&with_b, goal, depth)?;
        Some(Derivation::or_e(disjunction, left, right))
    }

    fn elim(
        &mut self,
        ctx: &BTreeSet<Formula>,
        d: Derivation,
        h: &Formula,
        goal: &Formula,
        depth: usize,
    ) -> Option<Derivation> {
        if h == goal {
            return Some(d);
        }
        if depth == 0 || !self.tick() {
            return None;
        }
        match h {
            Formula::And(a, b) => {
                if reaches(a, goal) {
                    if let Some(found) =
                        self.elim(ctx, Derivation::and_e_left(d.clone()), a, goal, depth - 1)
                    {
                        return Some(found);
                    }
                }
                if reaches(b, goal) {
                    return self.elim(ctx, Derivation::and_e_right(d), b, goal, depth - 1);
                }
                None
            }
            Formula::Imp(a, b) => {
                if !reaches(b, goal) {
                    return None;
                }
                let arg = self.prove(ctx, a, depth - 1)?;
                self.elim(ctx, Derivation::imp_e(d, arg), b, goal, depth - 1)
            }
            Formula::Or(a, b) => self.split(ctx, d, a, b, goal, depth - 1),
            _ => None,
        }
    }
}

/// Looks for a closed derivation of `goal` within `config`'s bounds.
pub fn search(
    goal: &Formula,
    env: &Environment,
    config: &SearchConfig,
) -> Result<SearchOutcome, CodingError> {
    if goal.contains_top() {
        return Err(CodingError::TopInFormula);
    }
    let axioms = axiom_pool(goal, env, config.pool_size);
    let axiom_by_formula = axioms
        .iter()
        .enumerate()
        .map(|(i, inst)| (inst.result.clone(), i))
        .collect();
    let mut prover = Prover {
        axioms,
        axiom_by_formula,
        nodes: 0,
        budget: config.node_budget,
        exhausted: false,
        failed: BTreeMap::new(),
        on_branch: BTreeSet::new(),
        loop_cut: false,
    };
    let report = |p: &Prover| SearchReport {
        depth: config.depth,
        pool: p.axioms.len(),
        nodes: p.nodes,
        budget_exhausted: p.exhausted,
    };
    for depth in 1..=config.depth {
        if let Some(d) = prover.prove(&BTreeSet::new(), goal, depth) {
            let verified = check(&d, env)
                .map(|j| j.is_theorem() && j.conclusion == *goal)
                .unwrap_or(false);
            if verified {
                return Ok(SearchOutcome::Found {
                    derivation: d,
                    depth,
                    report: report(&prover),
                });
            }
        }
        if prover.exhausted {
            break;
        }
    }
    Ok(SearchOutcome::NotFound(report(&prover)))
}
