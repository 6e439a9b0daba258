//! IO, file formats, verification harness and CLI for the recognizable-set
//! calculus in `reczoo-core`.

pub mod cay;
pub mod cli;
pub mod doc;
pub mod expr;
pub mod oracle;
pub mod table;
