//! Scenario runner and built-in demos for the `fluxform` library.
//!
//! The `fluxform` binary is a thin wrapper around [`app::run`].

pub mod app;
pub mod demos;
pub mod expr;
pub mod json;
pub mod report;
pub mod scenario;
pub mod sweep;

pub use app::{run, Outcome, EXIT_STRUCTURAL};
