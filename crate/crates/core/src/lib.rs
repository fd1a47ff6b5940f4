//! Kernel for a propositional system with a self-applicative truth operator.
//!
//! Formulas are built from variables `p1, p2, ...`, `bot`, `&`, `|` and `->`.
//! Every formula `A` is assigned an index through an [`Environment`], and the
//! truth operator `T(A)` is the variable carrying that index. On top of this
//! the crate provides:
//!
//! * [`reduce`]: constant propagation over the language extended with `top`;
//! * [`semantics`]: the staged 0/1 valuation, with a lazy engine and a
//!   literal table-based reference;
//! * [`logic`]: a natural-deduction checker for minimal logic (no ex falso)
//!   whose only extra leaves are instances of the truth schemata, a
//!   proof-script format, and a bounded backward prover.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coding;
pub mod env;
pub mod formula;
#[cfg(feature = "rand")]
pub mod gen;
pub mod logic;
pub mod parse;
pub mod reduce;
pub mod semantics;

pub use coding::{code_of, decode, CodingError, MAX_CODE_BITS};
pub use env::{load_env, EnvError, EnvWarning, Environment};
pub use formula::{Formula, Index};
pub use logic::{
    check, instantiate, recognize_axiom, search, CheckError, Derivation, Judgement, Schema,
    SchemaInstance, SearchConfig, SearchOutcome,
};
pub use parse::{parse, parse_with, ParseError};
pub use reduce::{is_reduced, reduce, reduce_traced, Rewrite, Rule};
pub use semantics::{
    classical_sanity, dependency_closure, reference_tau, tau, valuation_index, Closure, TauConfig, TauEngine,
    TauStatus, TauVerdict,
};
