//! Constant propagation over the language extended with `top`.
//!
//! A formula is *reduced* when it is `top`, `bot`, or mentions neither
//! constant. [`reduce`] works bottom-up: both children are reduced first,
//! then at most one of the eight rules fires at the node. Every rule returns
//! a reduced child or a constant, so one application per node suffices.
//!
//! | rule | pattern                          | result |
//! |------|----------------------------------|--------|
//! | 1    | `top & A`, `A & top`             | `A`    |
//! | 2    | `top \| A`, `A \| top`           | `top`  |
//! | 3    | `bot & A`, `A & bot`             | `bot`  |
//! | 4    | `bot \| A`, `A \| bot`           | `A`    |
//! | 5    | `top -> A`                       | `A`    |
//! | 6    | `A -> top`                       | `top`  |
//! | 7    | `bot -> A`                       | `top`  |
//! | 8    | `A -> bot`, `A` not `bot`        | `bot`  |
//!
//! Where two rules match, they are tried in the order 1, 3, 2, 4, 5, 7, 6, 8.
//! Overlapping rules always agree, so the order only fixes traces.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::Formula;

/// One of the eight reduction rules, numbered 1 to 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule(u8);

impl Rule {
    pub fn number(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// A single rule application recorded by [`reduce_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    /// Path from the root: `0` is the left child, `1` the right child.
    pub position: Vec<u8>,
    pub rule: Rule,
    pub before: Formula,
    pub after: Formula,
}

impl Rewrite {
    /// `root`, or a dotted path such as `root.0.1`.
    pub fn position_text(&self) -> String {
        let mut s = String::from("root");
        for step in &self.position {
            s.push('.');
            s.push(if *step == 0 { '0' } else { '1' });
        }
        s
    }
}

pub fn is_reduced(f: &Formula) -> bool {
    f.is_constant() || !f.contains_constant()
}

/// Applies the first matching rule at a node whose children are reduced.
/// Returns `None` when the node is already reduced.
fn step(f: &Formula) -> Option<(Rule, Formula)> {
    use Formula::{And, Bot, Imp, Or, Top};
    match f {
        And(a, b) => {
            if **a == Top {
                Some((Rule(1), (**b).clone()))
            } else if **b == Top {
                Some((Rule(1), (**a).clone()))
            } else if **a == Bot || **b == Bot {
                Some((Rule(3), Bot))
            } else {
                None
            }
        }
        Or(a, b) => {
            if **a == Top || **b == Top {
                Some((Rule(2), Top))
            } else if **a == Bot {
                Some((Rule(4), (**b).clone()))
            } else if **b == Bot {
                Some((Rule(4), (**a).clone()))
            } else {
                None
            }
        }
        Imp(a, b) => {
            if **a == Top {
                Some((Rule(5), (**b).clone()))
            } else if **a == Bot {
                Some((Rule(7), Top))
            } else if **b == Top {
                Some((Rule(6), Top))
            } else if **b == Bot {
                Some((Rule(8), Bot))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn rebuild(f: &Formula, a: Formula, b: Formula) -> Formula {
    match f {
        Formula::And(..) => Formula::and(a, b),
        Formula::Or(..) => Formula::or(a, b),
        Formula::Imp(..) => Formula::imp(a, b),
        _ => unreachable!("rebuild on a leaf"),
    }
}

fn go(f: &Formula, path: &mut Vec<u8>, log: &mut Option<&mut Vec<Rewrite>>) -> Formula {
    let Some((a, b)) = f.children() else {
        return f.clone();
    };
    if !f.contains_constant() {
        return f.clone();
    }
    path.push(0);
    let ra = go(a, path, log);
    path.pop();
    path.push(1);
    let rb = go(b, path, log);
    path.pop();
    let node = rebuild(f, ra, rb);
    match step(&node) {
        Some((rule, after)) => {
            if let Some(log) = log.as_mut() {
                log.push(Rewrite {
                    position: path.clone(),
                    rule,
                    before: node,
                    after: after.clone(),
                });
            }
            after
        }
        None => node,
    }
}

/// The reduction `A'` of a formula.
pub fn reduce(f: &Formula) -> Formula {
    go(f, &mut Vec::new(), &mut None)
}

/// [`reduce`], also returning every rule application in the order applied
/// (children before parents, left before right).
pub fn reduce_traced(f: &Formula) -> (Formula, Vec<Rewrite>) {
    let mut log = Vec::new();
    let out = go(f, &mut Vec::new(), &mut Some(&mut log));
    (out, log)
}
