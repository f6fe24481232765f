//! Branch and bound over subsets of `NP_n`.
//!
//! A node fixes a closed set of included elements and a set of excluded
//! ones. An undecided element is blocked when some product with the
//! included set (or with itself) is permutational or excluded; blocking is
//! permanent along a branch since both sets only grow. Including an element
//! adds the closure it forces. The bound caps each fixed-point class of the
//! included and still viable elements at `(n-1)!`.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::bitset::BitSet;
use super::{certify, Monitor, SearchResult};
use crate::error::{Error, Result};
use crate::semigroup::candidate_b;
use crate::transformation::{enumerate_np, Transformation};

/// Largest degree accepted by the branch and bound; the product table grows as `n^(2n)`.
pub const BNB_LIMIT: usize = 5;

const PERM: u32 = u32::MAX;

pub(crate) struct Universe {
    pub n: usize,
    pub elements: Vec<Transformation>,
    product: Vec<u32>,
    /// For each `x`, the elements `u` with `ux`, `xu` or `uu` permutational.
    perm_partners: Vec<BitSet>,
    /// For each `t`, the pairs `(a, b)` with `ab = t`.
    preimages: Vec<Vec<(u32, u32)>>,
    class_masks: Vec<BitSet>,
    class_cap: usize,
    /// Conjugation orbits, ordered by least member.
    orbits: Vec<Vec<usize>>,
}

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall {
                what: "search degree",
                n,
                min: 2,
            });
        }
        if n > BNB_LIMIT {
            return Err(Error::TooLarge {
                what: "search degree",
                n,
                limit: BNB_LIMIT,
            });
        }
        let elements = enumerate_np(n)?;
        let m = elements.len();
        let index: HashMap<Transformation, u32> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i as u32))
            .collect();
        let mut product = Vec::with_capacity(m * m);
        let mut preimages = alloc::vec![Vec::new(); m];
        let mut perm_partners: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
        for (a, f) in elements.iter().enumerate() {
            for (b, g) in elements.iter().enumerate() {
                let p = f.then(g);
                match index.get(&p) {
                    Some(&t) => {
                        product.push(t);
                        preimages[t as usize].push((a as u32, b as u32));
                    }
                    None => {
                        product.push(PERM);
                        perm_partners[a].insert(b);
                        perm_partners[b].insert(a);
                    }
                }
            }
        }
        let mut class_masks: Vec<BitSet> = (0..n).map(|_| BitSet::new(m)).collect();
        for (i, f) in elements.iter().enumerate() {
            class_masks[f.fixed_points()[0]].insert(i);
        }
        let class_cap = (1..n).product();

        let perms = permutations(n);
        let mut orbit_of = alloc::vec![usize::MAX; m];
        let mut orbits = Vec::new();
        for i in 0..m {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            for sigma in &perms {
                let j = index[&elements[i].conjugate(sigma)] as usize;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbits.len();
                    members.push(j);
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        Ok(Self {
            n,
            elements,
            product,
            perm_partners,
            preimages,
            class_masks,
            class_cap,
            orbits,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn prod(&self, a: usize, b: usize) -> u32 {
        self.product[a * self.len() + b]
    }

    pub fn collect(&self, set: &BitSet) -> Vec<Transformation> {
        set.iter().map(|i| self.elements[i].clone()).collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..n as u32).collect();
    heap_permute(&mut current, n, &mut out);
    out
}

fn heap_permute(a: &mut [u32], k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(a.to_vec());
        return;
    }
    for i in 0..k {
        heap_permute(a, k - 1, out);
        if i + 1 < k {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
}

#[derive(Clone)]
struct Node {
    inc: BitSet,
    exc: BitSet,
    blocked: BitSet,
}

impl Node {
    fn root(m: usize) -> Self {
        Self {
            inc: BitSet::new(m),
            exc: BitSet::new(m),
            blocked: BitSet::new(m),
        }
    }

    fn decided(&self, i: usize) -> bool {
        self.inc.contains(i) || self.exc.contains(i)
    }
}

pub(crate) struct Engine<'a, M: Monitor, A: FnMut(&[Transformation]) -> bool> {
    universe: &'a Universe,
    monitor: &'a mut M,
    accept: A,
    best: usize,
    best_set: Vec<Transformation>,
    explored: u64,
    aborted: bool,
}

impl<'a, M: Monitor, A: FnMut(&[Transformation]) -> bool> Engine<'a, M, A> {
    pub fn new(universe: &'a Universe, monitor: &'a mut M, accept: A) -> Self {
        Self {
            universe,
            monitor,
            accept,
            best: 0,
            best_set: Vec::new(),
            explored: 0,
            aborted: false,
        }
    }

    /// Installs a known feasible set as the incumbent.
    pub fn seed(&mut self, set: Vec<Transformation>) {
        self.best = set.len();
        self.best_set = set;
    }

    pub fn run(mut self) -> SearchResult {
        let u = self.universe;
        let mut base = Node::root(u.len());
        if self.tick() {
            for orbit in &u.orbits {
                if let Some(child) = self.include(&base, orbit[0]) {
                    self.visit(child);
                }
                if self.aborted {
                    break;
                }
                for &j in orbit {
                    self.exclude(&mut base, j);
                }
            }
        }
        let mut witness = self.best_set;
        witness.sort();
        SearchResult {
            degree: u.n,
            best_size: self.best,
            witness,
            exhaustive: !self.aborted,
            explored_nodes: self.explored,
            node_budget: self.monitor.node_limit(),
        }
    }

    fn tick(&mut self) -> bool {
        self.explored += 1;
        if self.monitor.interrupted(self.explored) {
            self.aborted = true;
        }
        !self.aborted
    }

    fn visit(&mut self, node: Node) {
        if !self.tick() {
            return;
        }
        let u = self.universe;
        let m = u.len();
        let viable = BitSet::complement_of_union(&node.inc, &node.exc, &node.blocked, m);
        let Some(c) = viable.first() else {
            self.leaf(&node.inc);
            return;
        };
        let bound: usize = u
            .class_masks
            .iter()
            .map(|mask| node.inc.count_union_masked(&viable, mask).min(u.class_cap))
            .sum();
        if bound <= self.best {
            return;
        }
        if let Some(child) = self.include(&node, c) {
            self.visit(child);
            if self.aborted {
                return;
            }
        }
        let mut node = node;
        self.exclude(&mut node, c);
        self.visit(node);
    }

    fn leaf(&mut self, inc: &BitSet) {
        if inc.count() <= self.best {
            return;
        }
        let set = self.universe.collect(inc);
        if (self.accept)(&set) {
            self.best = set.len();
            self.monitor.incumbent(&set);
            self.best_set = set;
        }
    }

    /// The node with `c` and everything it forces included, unless that
    /// closure is permutational or hits an excluded or blocked element.
    fn include(&self, node: &Node, c: usize) -> Option<Node> {
        let u = self.universe;
        let m = u.len();
        let mut next = node.clone();
        let mut stack = alloc::vec![c];
        let mut added = Vec::new();
        let mut members: Vec<usize> = next.inc.iter().collect();
        while let Some(x) = stack.pop() {
            if next.inc.contains(x) {
                continue;
            }
            if next.exc.contains(x) || next.blocked.contains(x) {
                return None;
            }
            next.inc.insert(x);
            members.push(x);
            added.push(x);
            for &y in &members {
                let (p, q) = (u.prod(x, y), u.prod(y, x));
                if p == PERM || q == PERM {
                    return None;
                }
                for t in [p as usize, q as usize] {
                    if !next.inc.contains(t) {
                        stack.push(t);
                    }
                }
            }
        }
        for &x in &added {
            next.blocked.union_with(&u.perm_partners[x]);
        }
        for w in 0..m {
            if next.decided(w) || next.blocked.contains(w) {
                continue;
            }
            let hits = added.iter().any(|&x| {
                let (p, q) = (u.prod(w, x) as usize, u.prod(x, w) as usize);
                next.exc.contains(p) || next.exc.contains(q)
            });
            if hits {
                next.blocked.insert(w);
            }
        }
        Some(next)
    }

    fn exclude(&self, node: &mut Node, c: usize) {
        let u = self.universe;
        node.exc.insert(c);
        for &(a, b) in &u.preimages[c] {
            let (a, b) = (a as usize, b as usize);
            if a == b && !node.decided(a) {
                node.blocked.insert(a);
            } else if node.inc.contains(a) && !node.decided(b) {
                node.blocked.insert(b);
            } else if node.inc.contains(b) && !node.decided(a) {
                node.blocked.insert(a);
            }
        }
    }
}

/// Largest closed all-nonpermutational subset of `T_n` found by branch and
/// bound, for `2 ≤ n ≤ 5`. Seeded with the candidate semigroup `B(n)`.
///
/// The result is exhaustive unless the monitor interrupts the search, in
/// which case `best_size` is a lower bound.
pub fn max_np_subsemigroup_bnb<M: Monitor>(n: usize, monitor: &mut M) -> Result<SearchResult> {
    let universe = Universe::new(n)?;
    let seed = candidate_b(n)?.into_elements();
    let mut engine = Engine::new(&universe, monitor, |_: &[Transformation]| true);
    engine.seed(seed);
    let result = engine.run();
    certify(&result.witness).map_err(|v| Error::Postcondition(alloc::format!("search witness rejected: {v:?}")))?;
    Ok(result)
}
