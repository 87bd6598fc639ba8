//! Documents, emitters and reports.

pub mod document;
pub mod dot;
pub mod report;

pub use document::{parse_evolution, parse_grammar, serialize_evolution, serialize_grammar};
pub use dot::emit_dot;
