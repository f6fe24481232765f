//! Which closed sets are the transition semigroup of a reduced automaton.
//!
//! A closed set `S ⊆ T_n` is realized by taking `S` itself as the alphabet:
//! the transition semigroup is then `S`. What remains is a start state from
//! which every state is reachable and a final set making all states
//! pairwise distinguishable. Adding letters keeps both properties, so
//! realizability is monotone upward and a search only has to test maximal
//! closed sets.

use alloc::vec::Vec;

use super::bnb::{Engine, Universe};
use super::{certify, Monitor, SearchResult};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Largest degree accepted by [`max_definite_syc`].
pub const REALIZE_LIMIT: usize = 4;

/// A start state and final set under which the letters form a reduced automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizableResult {
    pub search: SearchResult,
    pub start: usize,
    pub finals: Vec<bool>,
}

/// The least `(start, finals)` making the automaton with letter set `set`
/// reduced, ordering final sets by bitmask. `None` if there is none.
pub fn realizing_choice(degree: usize, set: &[Transformation]) -> Option<(usize, Vec<bool>)> {
    if set.is_empty() || degree == 0 || degree > 16 || set.iter().any(|f| f.degree() != degree) {
        return None;
    }
    for start in 0..degree {
        if !reaches_all(set, start) {
            continue;
        }
        for mask in 0u32..(1 << degree) {
            let finals: Vec<bool> = (0..degree).map(|q| mask >> q & 1 == 1).collect();
            let dfa = Dfa::from_transformations(set, start, finals.clone()).ok()?;
            if dfa.is_reduced() {
                return Some((start, finals));
            }
        }
    }
    None
}

fn reaches_all(set: &[Transformation], start: usize) -> bool {
    let n = set[0].degree();
    let mut seen = alloc::vec![false; n];
    seen[start] = true;
    let mut stack = alloc::vec![start];
    while let Some(q) = stack.pop() {
        for f in set {
            let r = f.image(q);
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Largest transition semigroup of a reduced `n`-state automaton whose
/// elements are all nonpermutational, for `2 ≤ n ≤ 4`.
///
/// Returns the semigroup together with the least realizing start and final
/// set. Without interruption the size is the maximum syntactic complexity
/// of a definite language with `n` states.
pub fn max_definite_syc<M: Monitor>(n: usize, monitor: &mut M) -> Result<RealizableResult> {
    if n > REALIZE_LIMIT {
        return Err(Error::TooLarge {
            what: "max_definite_syc",
            n,
            limit: REALIZE_LIMIT,
        });
    }
    let universe = Universe::new(n)?;
    let engine = Engine::new(&universe, monitor, |set: &[Transformation]| {
        realizing_choice(n, set).is_some()
    });
    let search = engine.run();
    certify(&search.witness).map_err(|v| Error::Postcondition(alloc::format!("search witness rejected: {v:?}")))?;
    let (start, finals) = realizing_choice(n, &search.witness)
        .ok_or_else(|| Error::Postcondition(alloc::string::String::from("search witness is not realizable")))?;
    Ok(RealizableResult { search, start, finals })
}
