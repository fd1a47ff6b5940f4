//! File formats, stored scenarios and report rendering behind the `ht`
//! command.

pub mod corpus;
pub mod render;
