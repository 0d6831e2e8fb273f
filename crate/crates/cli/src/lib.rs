//! Command-line front end for the rigidity certification library.
//!
//! The binary reads and writes small JSON files describing frameworks and
//! certificates ([`format`]), renders static SVG figures ([`svg`]), and maps
//! certification verdicts to process exit codes so shell pipelines can
//! branch on them ([`commands`]):
//!
//! * `0` — certified yes, or the command succeeded;
//! * `1` — certified no, or a randomized search found no witness;
//! * `2` — a construction went through but its witness missed its rank
//!   target (inconclusive, distinct from "no" because randomized rank
//!   trials can under-report);
//! * `3` — malformed input, bad flags, or I/O failure.

pub mod commands;
pub mod format;
pub mod svg;

pub use commands::{run_command, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NO, EXIT_OK};
