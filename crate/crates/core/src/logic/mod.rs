//! Natural deduction for minimal propositional logic with the truth schemata
//! as additional axiom leaves.

mod derivation;
mod schema;
pub mod script;
mod search;

pub use derivation::{check, CheckError, CheckErrorKind, Derivation, Judgement, NodePath};
pub use schema::{instantiate, recognize_axiom, Schema, SchemaError, SchemaInstance};
pub use script::{parse_script, print_script, Script, ScriptError};
pub use search::{axiom_pool, search, SearchConfig, SearchOutcome, SearchReport};
