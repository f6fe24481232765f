//! Searches for large subsemigroups of `T_n` made of nonpermutational
//! transformations, and for the largest ones that are the transition
//! semigroup of a reduced automaton on `n` states.
//!
//! Every witness leaving this module is re-checked by [`certify`], which
//! works on plain transformations and shares nothing with the search's
//! lookup tables.

mod bitset;
mod bnb;
mod realize;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::semigroup::closure_violation;
use crate::transformation::{enumerate_np, Transformation};

pub use bnb::{max_np_subsemigroup_bnb, BNB_LIMIT};
pub use realize::{max_definite_syc, realizing_choice, RealizableResult, REALIZE_LIMIT};

/// Why a set is not an all-nonpermutational semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DegreeMismatch(Transformation, Transformation),
    Permutational(Transformation),
    NotClosed(Transformation, Transformation),
}

/// Passing certificate: the set is closed and every element is nonpermutational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub size: usize,
}

/// Checks closure under composition and the nonpermutational property.
pub fn certify(set: &[Transformation]) -> core::result::Result<Certificate, Violation> {
    if let Some(first) = set.first() {
        if let Some(f) = set.iter().find(|f| f.degree() != first.degree()) {
            return Err(Violation::DegreeMismatch(first.clone(), f.clone()));
        }
    }
    if let Some(f) = set.iter().find(|f| !f.is_nonpermutational()) {
        return Err(Violation::Permutational(f.clone()));
    }
    if let Some((f, g)) = closure_violation(set) {
        return Err(Violation::NotClosed(f, g));
    }
    Ok(Certificate { size: set.len() })
}

/// Hooks into a running search: cancellation and incumbent notifications.
pub trait Monitor {
    /// Polled once per explored node; `true` stops the search.
    fn interrupted(&mut self, explored: u64) -> bool;

    /// Called with every new (strictly better) incumbent.
    fn incumbent(&mut self, _witness: &[Transformation]) {}

    /// Node limit to echo in the result, if any.
    fn node_limit(&self) -> Option<u64> {
        None
    }
}

/// Stops after a fixed number of nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeBudget(pub u64);

impl Monitor for NodeBudget {
    fn interrupted(&mut self, explored: u64) -> bool {
        explored > self.0
    }

    fn node_limit(&self) -> Option<u64> {
        Some(self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub degree: usize,
    pub best_size: usize,
    /// Lexicographically sorted elements of the best set found.
    pub witness: Vec<Transformation>,
    /// The whole search space was explored, so `best_size` is a proven maximum.
    pub exhaustive: bool,
    pub explored_nodes: u64,
    pub node_budget: Option<u64>,
}

/// Largest all-nonpermutational subsemigroup of `T_n` for `n ∈ {2, 3}`, by
/// checking every subset of `NP_n`.
pub fn max_np_subsemigroup_exact(n: usize) -> Result<SearchResult> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "max_np_subsemigroup_exact",
            n,
            min: 2,
        });
    }
    if n > 3 {
        return Err(Error::TooLarge {
            what: "max_np_subsemigroup_exact",
            n,
            limit: 3,
        });
    }
    let universe = enumerate_np(n)?;
    let m = universe.len();
    let mut best: Vec<Transformation> = Vec::new();
    for mask in 0u32..(1 << m) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let subset: Vec<Transformation> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| universe[i].clone())
            .collect();
        if certify(&subset).is_ok() {
            best = subset;
        }
    }
    Ok(SearchResult {
        degree: n,
        best_size: best.len(),
        witness: best,
        exhaustive: true,
        explored_nodes: 1 << m,
        node_budget: None,
    })
}
