use alloc::vec;
use alloc::vec::Vec;

use super::scc::tarjan;
use super::Dfa;

/// Strongly connected components of an automaton with trivial/sink flags
/// and the labelled condensation.
///
/// Component ids are ordered by the least state of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGraph {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    trivial: Vec<bool>,
    sink: Vec<bool>,
    /// `(from, symbol, to)` with `from != to`, sorted.
    edges: Vec<(usize, usize, usize)>,
}

impl ComponentGraph {
    /// Components of all states of `dfa`. Callers normally pass a connected automaton.
    pub fn new(dfa: &Dfa) -> Self {
        let n = dfa.state_count();
        let k = dfa.alphabet_size();
        let sccs = tarjan(n, k, |q, a| dfa.next(q, a));
        let mut rename = vec![usize::MAX; sccs.count()];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0; n];
        for q in 0..n {
            let raw = sccs.component[q] as usize;
            if rename[raw] == usize::MAX {
                rename[raw] = components.len();
                components.push(Vec::new());
            }
            component_of[q] = rename[raw];
            components[rename[raw]].push(q);
        }
        let c = components.len();
        let mut trivial = vec![false; c];
        let mut sink = vec![true; c];
        let mut edges = Vec::new();
        for (id, states) in components.iter().enumerate() {
            trivial[id] = states.len() == 1 && (0..k).all(|a| dfa.next(states[0], a) != states[0]);
            for &q in states {
                for a in 0..k {
                    let target = component_of[dfa.next(q, a)];
                    if target != id {
                        sink[id] = false;
                        edges.push((id, a, target));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self {
            component_of,
            components,
            trivial,
            sink,
            edges,
        }
    }

    pub fn component_of(&self, q: usize) -> usize {
        self.component_of[q]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_trivial(&self, c: usize) -> bool {
        self.trivial[c]
    }

    pub fn is_sink(&self, c: usize) -> bool {
        self.sink[c]
    }

    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&c| self.sink[c])
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Same component, in constant time.
    pub fn same_component(&self, p: usize, q: usize) -> bool {
        self.component_of[p] == self.component_of[q]
    }

    /// Components that are neither trivial nor sinks, in id order.
    pub fn nontrivial_non_sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&c| !self.trivial[c] && !self.sink[c])
    }
}
