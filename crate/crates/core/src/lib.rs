//! Nonpermutational transformation semigroups and decision procedures for
//! definite and generalized definite regular languages.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line tool and random instance generation live in the `defsyc` crate.
//!
//! States are 0-based internally. Everything that prints or parses a
//! transformation uses 1-based vector notation, so the transformation
//! sending 1 to 2, 2 to 3 and 3 to 3 reads `(2,3,3)`.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod automata;
pub mod classify;
pub mod constructions;
mod error;
pub mod search;
pub mod semigroup;
pub mod transformation;

pub use automata::{ComponentGraph, Dfa, PairAutomaton};
pub use classify::{ClassificationReport, PatternWitness};
pub use error::{Error, Result};
pub use semigroup::TransformationSemigroup;
pub use transformation::{IlaStructure, PartialFunction, Transformation};
