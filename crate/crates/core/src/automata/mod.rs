//! Complete deterministic automata and the structural operations the
//! classifiers need.

mod components;
mod minimize;
mod product;
pub mod scc;

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::semigroup::{self, TransformationSemigroup};
use crate::transformation::Transformation;

pub use components::ComponentGraph;
pub use product::PairAutomaton;

/// A complete DFA over states `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    /// Row-major: `delta[q * |Σ| + a]`.
    delta: Vec<u32>,
    start: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Validates and builds an automaton. `delta` is row-major by state.
    pub fn new(
        state_count: usize,
        alphabet: Vec<String>,
        delta: Vec<u32>,
        start: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::InvalidDfa("an automaton needs at least one state".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidDfa("alphabet is empty".into()));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a.chars().any(char::is_whitespace) {
                return Err(Error::InvalidDfa(format!("invalid symbol name `{a}`")));
            }
            if alphabet[..i].contains(a) {
                return Err(Error::InvalidDfa(format!("duplicate symbol `{a}`")));
            }
        }
        if delta.len() != state_count * alphabet.len() {
            return Err(Error::InvalidDfa(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                state_count * alphabet.len()
            )));
        }
        if let Some(&bad) = delta.iter().find(|&&q| q as usize >= state_count) {
            return Err(Error::InvalidDfa(format!(
                "transition target {} out of range",
                bad as usize + 1
            )));
        }
        if start >= state_count {
            return Err(Error::InvalidDfa(format!("start state {} out of range", start + 1)));
        }
        if finals.len() != state_count {
            return Err(Error::InvalidDfa("final flags do not match the state count".into()));
        }
        Ok(Self {
            alphabet,
            delta,
            start,
            finals,
        })
    }

    /// Automaton whose letters are the given transformations, named by their vector notation.
    pub fn from_transformations(letters: &[Transformation], start: usize, finals: Vec<bool>) -> Result<Self> {
        let first = letters
            .first()
            .ok_or_else(|| Error::InvalidDfa("alphabet is empty".into()))?;
        let n = first.degree();
        if let Some(f) = letters.iter().find(|f| f.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: f.degree(),
            });
        }
        let k = letters.len();
        let mut delta = vec![0u32; n * k];
        for (a, f) in letters.iter().enumerate() {
            for q in 0..n {
                delta[q * k + a] = f.images()[q];
            }
        }
        let alphabet = letters.iter().map(ToString::to_string).collect();
        Self::new(n, alphabet, delta, start, finals)
    }

    #[inline]
    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    #[inline]
    pub fn start(&self) -> usize {
        self.start
    }

    #[inline]
    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&q| self.finals[q]).collect()
    }

    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a] as usize
    }

    pub fn transition_table(&self) -> &[u32] {
        &self.delta
    }

    /// State reached from `q` by a word of symbol indices.
    pub fn run_from(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run_from(self.start, word)]
    }

    /// Resolves symbol names to indices.
    pub fn word(&self, symbols: &[&str]) -> Result<Vec<usize>> {
        symbols
            .iter()
            .map(|s| {
                self.symbol_index(s)
                    .ok_or_else(|| Error::UnknownSymbol((*s).to_string()))
            })
            .collect()
    }

    pub fn symbol_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&a| self.alphabet[a].clone()).collect()
    }

    /// The action `q ↦ q·a` of one letter.
    pub fn letter_transformation(&self, a: usize) -> Transformation {
        Transformation::from_vec_unchecked((0..self.state_count()).map(|q| self.next(q, a) as u32).collect())
    }

    pub fn letter_transformations(&self) -> Vec<Transformation> {
        (0..self.alphabet_size())
            .map(|a| self.letter_transformation(a))
            .collect()
    }

    /// The action of a word given by symbol names; the empty word gives the identity.
    pub fn word_transformation(&self, symbols: &[&str]) -> Result<Transformation> {
        let word = self.word(symbols)?;
        Ok(self.word_transformation_indices(&word))
    }

    pub fn word_transformation_indices(&self, word: &[usize]) -> Transformation {
        Transformation::from_vec_unchecked((0..self.state_count()).map(|q| self.run_from(q, word) as u32).collect())
    }

    /// Transformations induced by nonempty words; closure of the letter actions.
    pub fn transition_semigroup(&self, cap: usize) -> TransformationSemigroup {
        semigroup::close(&self.letter_transformations(), cap).expect("alphabet is nonempty and degrees agree")
    }

    /// Reachability flags from the start state.
    pub fn reachable_states(&self) -> Vec<bool> {
        reachable_from(self, self.start)
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_states().iter().all(|&r| r)
    }

    /// Restriction to states reachable from the start, keeping their relative
    /// order. Returns the automaton and the old-to-new state map.
    pub fn reachable_part(&self) -> (Dfa, Vec<Option<usize>>) {
        let reach = self.reachable_states();
        let mut map = vec![None; self.state_count()];
        let mut next_id = 0;
        for (q, &r) in reach.iter().enumerate() {
            if r {
                map[q] = Some(next_id);
                next_id += 1;
            }
        }
        let dfa = self.relabel(&map, next_id);
        (dfa, map)
    }

    /// Builds the automaton on `count` states given an old-to-new map that is
    /// a bijection from the mapped states. Unmapped states are dropped.
    pub(crate) fn relabel(&self, map: &[Option<usize>], count: usize) -> Dfa {
        let k = self.alphabet_size();
        let mut delta = vec![0u32; count * k];
        let mut finals = vec![false; count];
        for q in 0..self.state_count() {
            if let Some(nq) = map[q] {
                finals[nq] = self.finals[q];
                for a in 0..k {
                    let target = map[self.next(q, a)].expect("relabel map not closed under transitions");
                    delta[nq * k + a] = target as u32;
                }
            }
        }
        let start = map[self.start].expect("start state unmapped");
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            start,
            finals,
        }
    }

    /// Partition-refinement minimization; see [`minimize::minimize`].
    pub fn minimize(&self) -> (Dfa, Vec<Option<usize>>) {
        minimize::minimize(self)
    }

    /// Connected and every pair of distinct states distinguishable.
    pub fn is_reduced(&self) -> bool {
        self.is_connected() && minimize::minimize(self).0.state_count() == self.state_count()
    }

    /// Size of the transition semigroup of the minimal automaton.
    pub fn syntactic_complexity(&self, cap: usize) -> SyntacticComplexity {
        let s = self.minimize().0.transition_semigroup(cap);
        if s.is_truncated() {
            SyntacticComplexity::ExceedsCap(cap)
        } else {
            SyntacticComplexity::Exact(s.len())
        }
    }

    pub fn component_graph(&self) -> ComponentGraph {
        ComponentGraph::new(self)
    }

    pub fn product_square(&self) -> PairAutomaton<'_> {
        PairAutomaton::new(self)
    }

    /// Shortest nonempty word leading from `p` to `q`, if one exists.
    pub fn shortest_nonempty_path(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        let n = self.state_count();
        let k = self.alphabet_size();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::new();
        for a in 0..k {
            let r = self.next(p, a);
            if parent[r].is_none() {
                parent[r] = Some((usize::MAX, a));
                queue.push_back(r);
            }
        }
        while let Some(r) = queue.pop_front() {
            if r == q {
                let mut word = Vec::new();
                let mut cur = r;
                loop {
                    let (prev, a) = parent[cur].unwrap();
                    word.push(a);
                    if prev == usize::MAX {
                        break;
                    }
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..k {
                let s = self.next(r, a);
                if parent[s].is_none() {
                    parent[s] = Some((r, a));
                    queue.push_back(s);
                }
            }
        }
        None
    }

    /// Isomorphism of the reachable parts, respecting start, finals and symbol names.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        if self.state_count() != other.state_count() || self.alphabet != other.alphabet {
            return false;
        }
        let n = self.state_count();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut queue = VecDeque::new();
        map[self.start] = other.start;
        used[other.start] = true;
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            let oq = map[q];
            if self.finals[q] != other.finals[oq] {
                return false;
            }
            for a in 0..self.alphabet_size() {
                let (s, os) = (self.next(q, a), other.next(oq, a));
                if map[s] == usize::MAX {
                    if used[os] {
                        return false;
                    }
                    map[s] = os;
                    used[os] = true;
                    queue.push_back(s);
                } else if map[s] != os {
                    return false;
                }
            }
        }
        let mapped = map.iter().filter(|&&m| m != usize::MAX).count();
        mapped == other.reachable_states().iter().filter(|&&r| r).count()
    }
}

fn reachable_from(dfa: &Dfa, start: usize) -> Vec<bool> {
    let mut seen = vec![false; dfa.state_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(q) = stack.pop() {
        for a in 0..dfa.alphabet_size() {
            let r = dfa.next(q, a);
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    seen
}

/// Syntactic complexity, or the cap it ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyntacticComplexity {
    Exact(usize),
    ExceedsCap(usize),
}

impl SyntacticComplexity {
    pub fn exact(self) -> Option<usize> {
        match self {
            Self::Exact(v) => Some(v),
            Self::ExceedsCap(_) => None,
        }
    }
}
