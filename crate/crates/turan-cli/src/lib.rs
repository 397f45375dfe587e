//! Campaign engine and command implementations behind the `turan` binary.

pub mod campaign;
pub mod commands;
pub mod rows;
