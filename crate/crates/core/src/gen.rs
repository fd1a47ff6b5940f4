//! Random formulas, axiom instances and closed derivations for testing.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::env::Environment;
use crate::formula::Formula;
use crate::logic::{check, instantiate, Derivation, Schema, SchemaInstance};

/// Shape of random formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaShape {
    /// Maximum nesting of connectives; atoms have depth 0.
    pub depth: usize,
    /// Variables are drawn from `p1 ..= p_max_var`.
    pub max_var: u64,
    pub bot: bool,
    pub top: bool,
}

impl FormulaShape {
    pub fn new(depth: usize, max_var: u64) -> Self {
        FormulaShape {
            depth,
            max_var,
            bot: true,
            top: false,
        }
    }
}

pub fn random_atom<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape) -> Formula {
    let constants = shape.bot as u64 + shape.top as u64;
    let pick = rng.gen_range(0..shape.max_var.max(1) + constants);
    if pick < shape.max_var {
        Formula::var(pick + 1)
    } else if shape.bot && pick == shape.max_var {
        Formula::Bot
    } else {
        Formula::Top
    }
}

pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape) -> Formula {
    gen_formula(rng, shape, shape.depth)
}

fn gen_formula<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return random_atom(rng, shape);
    }
    let a = gen_formula(rng, shape, depth - 1);
    let b = gen_formula(rng, shape, depth - 1);
    match rng.gen_range(0..3) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        _ => Formula::imp(a, b),
    }
}

/// A random instance of a random schema with parameters of the given shape.
/// Returns `None` only if the instance cannot be coded.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    env: &Environment,
    shape: &FormulaShape,
) -> Option<SchemaInstance> {
    let schema = *Schema::ALL.choose(rng).expect("schemata");
    random_instance_of(rng, schema, env, shape)
}

pub fn random_instance_of<R: Rng + ?Sized>(
    rng: &mut R,
    schema: Schema,
    env: &Environment,
    shape: &FormulaShape,
) -> Option<SchemaInstance> {
    let shape = FormulaShape {
        top: false,
        ..shape.clone()
    };
    let params: Vec<Formula> = (0..schema.arity())
        .map(|_| random_formula(rng, &shape))
        .collect();
    instantiate(schema, &params, env).ok()
}

/// A random closed derivation: a few forward steps over axioms and
/// hypotheses, then every open hypothesis is discharged by `->I`.
pub fn random_theorem<R: Rng + ?Sized>(
    rng: &mut R,
    env: &Environment,
    shape: &FormulaShape,
    steps: usize,
) -> Derivation {
    let small = FormulaShape {
        depth: shape.depth.min(2),
        top: false,
        ..shape.clone()
    };
    let mut items: Vec<(Derivation, Formula)> = Vec::new();
    while items.len() < 2 {
        if let Some(inst) = random_instance(rng, env, &small) {
            let f = inst.result.clone();
            items.push((Derivation::Axiom(inst), f));
        }
    }
    for _ in 0..2 {
        let h = random_formula(rng, &small);
        items.push((Derivation::hyp(h.clone()), h));
    }

    for _ in 0..steps {
        if let Some(item) = step(rng, env, &small, &items) {
            items.push(item);
        }
    }

    let (d, _) = items
        .into_iter()
        .max_by_key(|(d, _)| d.size())
        .expect("non-empty");
    close(d, env)
}

fn step<R: Rng + ?Sized>(
    rng: &mut R,
    env: &Environment,
    shape: &FormulaShape,
    items: &[(Derivation, Formula)],
) -> Option<(Derivation, Formula)> {
    let (d, f) = items.choose(rng)?.clone();
    match rng.gen_range(0..8) {
        0 => {
            let (e, g) = items.choose(rng)?.clone();
            Some((Derivation::and_i(d, e), Formula::and(f, g)))
        }
        1 => match f {
            Formula::And(a, b) => Some(if rng.gen_bool(0.5) {
                (Derivation::and_e_left(d), *a)
            } else {
                (Derivation::and_e_right(d), *b)
            }),
            _ => None,
        },
        2 => {
            let added = random_formula(rng, shape);
            Some(if rng.gen_bool(0.5) {
                (Derivation::or_i_left(d, added.clone()), Formula::or(f, added))
            } else {
                (Derivation::or_i_right(d, added.clone()), Formula::or(added, f))
            })
        }
        3 => {
            let a = match check(&d, env).ok()?.open.keys().next() {
                Some(h) if rng.gen_bool(0.7) => h.clone(),
                _ => random_formula(rng, shape),
            };
            Some((Derivation::imp_i(a.clone(), d), Formula::imp(a, f)))
        }
        4 => {
            let Formula::Imp(a, b) = &f else { return None };
            let arg = items
                .iter()
                .filter(|(_, g)| g == &**a)
                .collect::<Vec<_>>()
                .choose(rng)
                .map(|(e, _)| e.clone())
                .unwrap_or_else(|| Derivation::hyp((**a).clone()));
            Some((Derivation::imp_e(d, arg), (**b).clone()))
        }
        5 => {
            let Formula::Or(a, _) = &f else { return None };
            let (c, g) = items.choose(rng)?.clone();
            let left = Derivation::imp_e(
                Derivation::imp_i((**a).clone(), c.clone()),
                Derivation::hyp((**a).clone()),
            );
            Some((Derivation::or_e(d, left, c), g))
        }
        6 => {
            let inst = random_instance(rng, env, shape)?;
            let g = inst.result.clone();
            Some((Derivation::Axiom(inst), g))
        }
        _ => {
            let h = random_formula(rng, shape);
            Some((Derivation::hyp(h.clone()), h))
        }
    }
}

fn close(mut d: Derivation, env: &Environment) -> Derivation {
    let open: Vec<Formula> = check(&d, env)
        .expect("generated derivations are well formed")
        .open
        .into_keys()
        .collect();
    for h in open.into_iter().rev() {
        d = Derivation::imp_i(h, d);
    }
    d
}
