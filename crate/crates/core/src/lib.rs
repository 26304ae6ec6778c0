//! Syntactic forgetting of auxiliary atoms in propositional logic programs.
//!
//! The crate is organised bottom-up:
//!
//! - [`syntax`]: programs, rules, formulas, parsing and canonical printing;
//! - [`semantics`]: Here-and-There models, equilibrium models, a reduct-based
//!   stable model oracle and strong equivalence;
//! - [`depgraph`]: the positive/negative dependency graph and the structural
//!   side conditions of the forgetting operator;
//! - [`forget`]: `behead`, external support and the forgetting operator;
//! - [`verify`]: bounded falsification of strong persistence and the complete
//!   uniform (fact-context) check;
//! - [`cli`]: the `esforget` command-line front end.
//!
//! Enumeration loops run on rayon when the `parallel` feature is enabled
//! (the default) and [`SemanticsConfig::parallel`] is set; results never
//! depend on scheduling.

pub mod cli;
pub mod corpus;
pub mod depgraph;
mod exec;
pub mod forget;
pub mod semantics;
pub mod syntax;
pub mod verify;

pub use semantics::SemanticsConfig;
pub use syntax::{atom, atoms, parse_program, parse_theory, Atom, Formula, Program, Rule, Theory};
