//! Session language and command runner for the `lipsat` binary.

pub mod dsl;
pub mod run;

pub use dsl::{parse, Session};
pub use run::{exit_code, run, Model, Settings, VerdictDocument};
