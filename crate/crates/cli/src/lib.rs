//! Command-line companion to `orbmeas-core`.
//!
//! The core crate does all exact arithmetic; this crate adds the pieces
//! that want `std`: a polynomial expression parser, JSON/CSV rendering,
//! a threaded Monte-Carlo oracle for the unitary (A-series) case, and
//! the `orbmeas` binary itself.

pub mod app;
pub mod oracle;
pub mod output;
pub mod parse;
