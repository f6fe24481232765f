use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::scc::{tarjan, Sccs};
use super::Dfa;

/// The square `A × A` with `(p, q)·a = (p·a, q·a)`, indexed row-major as
/// `p * n + q`. Transitions are computed on demand from `A`.
#[derive(Clone, Copy, Debug)]
pub struct PairAutomaton<'a> {
    dfa: &'a Dfa,
}

impl<'a> PairAutomaton<'a> {
    pub fn new(dfa: &'a Dfa) -> Self {
        Self { dfa }
    }

    pub fn base(&self) -> &'a Dfa {
        self.dfa
    }

    pub fn state_count(&self) -> usize {
        let n = self.dfa.state_count();
        n * n
    }

    #[inline]
    pub fn index(&self, p: usize, q: usize) -> usize {
        p * self.dfa.state_count() + q
    }

    #[inline]
    pub fn pair(&self, index: usize) -> (usize, usize) {
        let n = self.dfa.state_count();
        (index / n, index % n)
    }

    #[inline]
    pub fn next(&self, index: usize, a: usize) -> usize {
        let (p, q) = self.pair(index);
        self.index(self.dfa.next(p, a), self.dfa.next(q, a))
    }

    /// Which pairs of the full square lie on a cycle.
    ///
    /// A cycle through `(p, q)` projects to cycles through `p` and `q`, so
    /// every component of the square sits inside `C × D` for components
    /// `C`, `D` of the automaton, and pairs with a coordinate in a trivial
    /// component are trivial themselves. The square is therefore searched
    /// one block `C × D` of cyclic components at a time, which keeps memory
    /// access local. [`Self::components_direct`] gives the same answer from
    /// a single search over all `n²` pairs.
    pub fn components(&self) -> PairComponents {
        let n = self.dfa.state_count();
        let k = self.dfa.alphabet_size();
        let base = tarjan(n, k, |q, a| self.dfa.next(q, a));
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); base.count()];
        let mut local = vec![0usize; n];
        for q in 0..n {
            let c = &mut members[base.component[q] as usize];
            local[q] = c.len();
            c.push(q);
        }
        let cyclic: Vec<usize> = (0..members.len())
            .filter(|&c| members[c].len() > 1 || (0..k).any(|a| self.dfa.next(members[c][0], a) == members[c][0]))
            .collect();
        let mut nontrivial = vec![0u64; (n * n).div_ceil(64)];
        for &ci in &cyclic {
            for &cj in &cyclic {
                let (left, right) = (&members[ci], &members[cj]);
                let width = right.len();
                let sccs = tarjan(left.len() * width, k, |v, a| {
                    let (p, q) = (self.dfa.next(left[v / width], a), self.dfa.next(right[v % width], a));
                    if base.component[p] as usize == ci && base.component[q] as usize == cj {
                        local[p] * width + local[q]
                    } else {
                        // edges leaving the block cannot return to it
                        v
                    }
                });
                for v in 0..left.len() * width {
                    let (p, q) = (left[v / width], right[v % width]);
                    let looped = || (0..k).any(|a| self.dfa.next(p, a) == p && self.dfa.next(q, a) == q);
                    if sccs.in_multi(v) || looped() {
                        let g = self.index(p, q);
                        nontrivial[g / 64] |= 1 << (g % 64);
                    }
                }
            }
        }
        PairComponents {
            n,
            block: None,
            local: Vec::new(),
            nontrivial,
        }
    }

    /// Same as [`Self::components`], by one SCC search over the whole square.
    pub fn components_direct(&self) -> PairComponents {
        let k = self.dfa.alphabet_size();
        let sccs = tarjan(self.state_count(), k, |v, a| self.next(v, a));
        PairComponents::from_sccs(self, sccs, None)
    }

    /// SCCs of the sub-square `block × block` for a set of states closed
    /// under every letter (a sink). The sub-square is closed as well, so its
    /// components coincide with those of the full square.
    pub fn components_within(&self, block: &[usize]) -> PairComponents {
        let n = self.dfa.state_count();
        let b = block.len();
        let mut local = vec![usize::MAX; n];
        for (i, &q) in block.iter().enumerate() {
            local[q] = i;
        }
        let k = self.dfa.alphabet_size();
        let sccs = tarjan(b * b, k, |v, a| {
            let (p, q) = (block[v / b], block[v % b]);
            let (pa, qa) = (local[self.dfa.next(p, a)], local[self.dfa.next(q, a)]);
            debug_assert!(pa != usize::MAX && qa != usize::MAX, "block is not closed");
            pa * b + qa
        });
        PairComponents::from_sccs(self, sccs, Some(block.to_vec()))
    }

    /// Shortest nonempty word `x` with `(p, q)·x = (p, q)`, if any.
    pub fn shortest_cycle(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        let root = self.index(p, q);
        let k = self.dfa.alphabet_size();
        let mut parent: hashbrown::HashMap<usize, (usize, usize)> = hashbrown::HashMap::new();
        let mut queue = VecDeque::new();
        for a in 0..k {
            let s = self.next(root, a);
            parent.entry(s).or_insert_with(|| {
                queue.push_back(s);
                (usize::MAX, a)
            });
        }
        while let Some(v) = queue.pop_front() {
            if v == root {
                let mut word = Vec::new();
                let mut cur = v;
                loop {
                    let (prev, a) = parent[&cur];
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
                let s = self.next(v, a);
                if !parent.contains_key(&s) {
                    parent.insert(s, (v, a));
                    queue.push_back(s);
                }
            }
        }
        None
    }
}

/// Which pair states lie on a cycle of the square.
#[derive(Clone, Debug)]
pub struct PairComponents {
    n: usize,
    /// `None`: the full square; `Some(block)`: the sub-square on `block`.
    block: Option<Vec<usize>>,
    local: Vec<usize>,
    /// One bit per analysed pair.
    nontrivial: Vec<u64>,
}

impl PairComponents {
    fn from_sccs(square: &PairAutomaton<'_>, sccs: Sccs, block: Option<Vec<usize>>) -> Self {
        let n = square.dfa.state_count();
        let k = square.dfa.alphabet_size();
        let node_count = sccs.component.len();
        let mut nontrivial = vec![0u64; node_count.div_ceil(64)];
        let b = block.as_ref().map_or(n, Vec::len);
        let global = |v: usize| match &block {
            None => v,
            Some(bl) => square.index(bl[v / b], bl[v % b]),
        };
        for v in 0..node_count {
            let on_cycle = sccs.in_multi(v) || {
                let g = global(v);
                (0..k).any(|a| square.next(g, a) == g)
            };
            if on_cycle {
                nontrivial[v / 64] |= 1 << (v % 64);
            }
        }
        let mut local = Vec::new();
        if let Some(bl) = &block {
            local = vec![usize::MAX; n];
            for (i, &q) in bl.iter().enumerate() {
                local[q] = i;
            }
        }
        Self {
            n,
            block,
            local,
            nontrivial,
        }
    }

    /// Does `(p, q)` lie on a nontrivial component of the square?
    /// Pairs outside the analysed block report `false`.
    pub fn on_cycle(&self, p: usize, q: usize) -> bool {
        match &self.block {
            None => bit(&self.nontrivial, p * self.n + q),
            Some(bl) => {
                let (lp, lq) = (self.local[p], self.local[q]);
                lp != usize::MAX && lq != usize::MAX && bit(&self.nontrivial, lp * bl.len() + lq)
            }
        }
    }

    /// Pairs `(p, q)`, `p != q`, on a nontrivial component, in lexicographic order.
    pub fn off_diagonal_cycle_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let states: Vec<usize> = match &self.block {
            None => (0..self.n).collect(),
            Some(bl) => {
                let mut s = bl.clone();
                s.sort_unstable();
                s
            }
        };
        let pairs: Vec<(usize, usize)> = states
            .iter()
            .flat_map(|&p| states.iter().map(move |&q| (p, q)))
            .filter(|&(p, q)| p != q && self.on_cycle(p, q))
            .collect();
        pairs.into_iter()
    }
}

#[inline]
fn bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn square_basics() {
        let d = a_sigma_b();
        let sq = d.product_square();
        assert_eq!(sq.state_count(), 16);
        for p in 0..4 {
            for a in 0..2 {
                let (x, y) = sq.pair(sq.next(sq.index(p, p), a));
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn parity_pairs_cycle() {
        let d = parity();
        let sq = d.product_square();
        assert_eq!(sq.pair(sq.next(sq.index(0, 1), 0)), (1, 0));
        let comps = sq.components();
        assert!(comps.on_cycle(0, 1) && comps.on_cycle(1, 0));
        assert_eq!(sq.shortest_cycle(0, 1), Some(alloc::vec![0, 0]));
        let within = sq.components_within(&[0, 1]);
        assert!(within.on_cycle(0, 1));
    }

    #[test]
    fn constant_sinks_have_no_off_diagonal_cycles() {
        let d = a_sigma_b();
        let sq = d.product_square();
        // p_a/p_b paired with r: (2,4), (3,4) and their mirrors
        assert_eq!(sq.components().off_diagonal_cycle_pairs().count(), 4);
        assert_eq!(sq.components_within(&[1, 2]).off_diagonal_cycle_pairs().count(), 0);
    }

    #[test]
    fn blockwise_matches_direct() {
        let mut seed = 7u64;
        for _ in 0..300 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = 1 + (seed >> 60) as usize % 7;
            let k = 1 + (seed >> 40) as usize % 3;
            let mut delta = alloc::vec::Vec::new();
            for _ in 0..n * k {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                delta.push(((seed >> 33) % n as u64) as u32);
            }
            let alphabet = (0..k).map(|a| alloc::format!("s{a}")).collect();
            let d = crate::Dfa::new(n, alphabet, delta, 0, alloc::vec![false; n]).unwrap();
            let sq = d.product_square();
            let (fast, direct) = (sq.components(), sq.components_direct());
            for p in 0..n {
                for q in 0..n {
                    assert_eq!(fast.on_cycle(p, q), direct.on_cycle(p, q), "{d:?} ({p},{q})");
                }
            }
        }
    }
}
