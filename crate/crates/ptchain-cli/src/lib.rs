//! Support modules for the `ptchain` binary, exposed as a library so
//! the integration tests can reuse the exact formatting and parsing.

pub mod format;
pub mod grid;
