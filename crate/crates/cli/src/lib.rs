//! Command-line surface and file formats for the Jordan (super)algebra
//! toolkit: construct and dump algebras as canonical JSON, run the
//! identity checks, solve for delta-derivation spaces, run the symbolic
//! pencil analysis, and emit the full verification report.

pub mod json;
pub mod names;
pub mod report;
