//! The linear-algebraic lambda calculus with a scalar-tracking System F type
//! system: parser and printer, AC rewriting engine, type checkers, and a
//! property harness for the calculus' metatheory.

#![allow(clippy::result_large_err)]

pub mod check;
pub mod harness;
pub mod rewrite;
pub mod scalar;
pub mod source;
pub mod syntax;
pub mod term;
pub mod types;

pub use scalar::Scalar;
pub use term::Term;
pub use types::{Canonical, Type, UnitType};
