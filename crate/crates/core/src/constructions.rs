//! From a reduced generalized definite automaton, build a reduced definite
//! automaton on the same states whose transition semigroup is at least as
//! large.
//!
//! The states split as `Q₀ ⊎ Q₁ ⊎ … ⊎ Q_c`: `Q₀` holds the trivial
//! components and `Q₁ … Q_c` are the sinks, sorted by size. After relabeling
//! so that every letter strictly increases every `Q₀` state, the new
//! alphabet consists of all source tuplings `[f₀, …, f_c]` where `f₀` is an
//! elevating map on `Q₀`, `f_j` maps `Q_j` anywhere into `Q_c` for
//! `0 < j < c`, and `f_c` is the action of some nonempty word on `Q_c`.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::automata::{Dfa, SyntacticComplexity};
use crate::classify::{admits_pd, is_generalized_definite};
use crate::error::{Error, Result};
use crate::semigroup::{close, closure_violation, TransformationSemigroup, DEFAULT_CAP};
use crate::transformation::Transformation;

/// Default limit on the size of the constructed alphabet.
pub const DEFAULT_MAX_ALPHABET: u128 = 10_000;

/// `Q₀` in topological order and the sinks by nondecreasing size.
/// All state ids refer to the input automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkPartition {
    pub q0_block: Vec<usize>,
    pub sinks: Vec<Vec<usize>>,
    /// `relabeling[old] = new`: `Q₀` first, then the sinks in order.
    pub relabeling: Vec<usize>,
}

impl SinkPartition {
    pub fn largest_sink(&self) -> &[usize] {
        self.sinks.last().expect("every automaton has a sink")
    }
}

fn require_reduced_gendef(dfa: &Dfa) -> Result<()> {
    if !dfa.is_reduced() {
        return Err(Error::NotReduced);
    }
    if !is_generalized_definite(dfa).holds() {
        return Err(Error::NotGeneralizedDefinite);
    }
    Ok(())
}

/// Requires a reduced automaton recognizing a generalized definite language.
pub fn sink_partition(dfa: &Dfa) -> Result<SinkPartition> {
    require_reduced_gendef(dfa)?;
    Ok(partition_unchecked(dfa))
}

fn partition_unchecked(dfa: &Dfa) -> SinkPartition {
    let n = dfa.state_count();
    let graph = dfa.component_graph();
    let mut sinks: Vec<Vec<usize>> = graph.sinks().map(|c| graph.components()[c].clone()).collect();
    sinks.sort_by_key(|s| (s.len(), s[0]));
    let in_q0: Vec<bool> = (0..n).map(|q| !graph.is_sink(graph.component_of(q))).collect();

    // Kahn's algorithm on the reachability order among Q₀, least state first
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for q in (0..n).filter(|&q| in_q0[q]) {
        for a in 0..dfa.alphabet_size() {
            let r = dfa.next(q, a);
            if in_q0[r] && !succ[q].contains(&r) {
                succ[q].push(r);
                indegree[r] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&q| in_q0[q] && indegree[q] == 0).map(Reverse).collect();
    let mut q0_block = Vec::new();
    while let Some(Reverse(q)) = heap.pop() {
        q0_block.push(q);
        for &r in &succ[q] {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                heap.push(Reverse(r));
            }
        }
    }
    let mut relabeling = vec![0; n];
    for (new, &old) in q0_block.iter().chain(sinks.iter().flatten()).enumerate() {
        relabeling[old] = new;
    }
    SinkPartition {
        q0_block,
        sinks,
        relabeling,
    }
}

/// Actions of nonempty words restricted to the sink `sink`, as
/// transformations of `0..|sink|` in the order of `sink`.
///
/// Restriction to a closed set is a homomorphism, so this is the closure of
/// the restricted letter actions.
pub fn sink_restriction_semigroup(dfa: &Dfa, sink: &[usize], cap: usize) -> Result<TransformationSemigroup> {
    let n = dfa.state_count();
    let mut local = vec![usize::MAX; n];
    for (i, &q) in sink.iter().enumerate() {
        local[q] = i;
    }
    let not_sink = || Error::NotASink { states: sink.to_vec() };
    if sink.is_empty() {
        return Err(not_sink());
    }
    let mut letters = Vec::with_capacity(dfa.alphabet_size());
    for a in 0..dfa.alphabet_size() {
        let mut images = Vec::with_capacity(sink.len());
        for &q in sink {
            let r = local[dfa.next(q, a)];
            if r == usize::MAX {
                return Err(not_sink());
            }
            images.push(r as u32);
        }
        letters.push(Transformation::from_vec_unchecked(images));
    }
    close(&letters, cap)
}

/// Checks on the constructed automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub reduced: bool,
    pub avoids_pd: bool,
    /// `None` when a semigroup ran into the closure cap.
    pub syc_monotone: Option<bool>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.reduced && self.avoids_pd && self.syc_monotone != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct Defized {
    /// The definite automaton over the transformation alphabet, on relabeled states.
    pub dfa: Dfa,
    pub partition: SinkPartition,
    pub alphabet_size: usize,
    pub input_syc: SyntacticComplexity,
    pub output_syc: SyntacticComplexity,
    pub verification: Verification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefizeOptions {
    pub max_alphabet: u128,
    pub cap: usize,
}

impl Default for DefizeOptions {
    fn default() -> Self {
        Self {
            max_alphabet: DEFAULT_MAX_ALPHABET,
            cap: DEFAULT_CAP,
        }
    }
}

/// Number of symbols the construction would use, or an overflow error.
pub fn transformation_alphabet_size(partition: &SinkPartition, top_semigroup_size: usize) -> Result<u128> {
    let n = partition.relabeling.len() as u128;
    let k = partition.q0_block.len() as u128;
    let qc = partition.largest_sink().len() as u128;
    let overflow = || Error::Overflow("transformation alphabet size");
    let mut size: u128 = top_semigroup_size as u128;
    for i in 0..k {
        size = size.checked_mul(n - 1 - i).ok_or_else(overflow)?;
    }
    let c = partition.sinks.len();
    for sink in &partition.sinks[..c - 1] {
        for _ in 0..sink.len() {
            size = size.checked_mul(qc).ok_or_else(overflow)?;
        }
    }
    Ok(size)
}

pub fn defize(dfa: &Dfa, options: DefizeOptions) -> Result<Defized> {
    require_reduced_gendef(dfa)?;
    let partition = partition_unchecked(dfa);
    let n = dfa.state_count();
    let top = partition.largest_sink();
    if top.len() == 1 {
        return Err(Error::SingletonSink);
    }
    let top_actions = sink_restriction_semigroup(dfa, top, options.cap)?;
    if top_actions.is_truncated() {
        return Err(Error::AlphabetTooLarge {
            size: u128::MAX,
            limit: options.max_alphabet,
        });
    }
    let size = transformation_alphabet_size(&partition, top_actions.len())?;
    if size > options.max_alphabet {
        return Err(Error::AlphabetTooLarge {
            size,
            limit: options.max_alphabet,
        });
    }

    let relabeled = dfa.relabel(&partition.relabeling.iter().map(|&r| Some(r)).collect::<Vec<_>>(), n);
    let k = partition.q0_block.len();
    let qc_start = n - top.len();
    let qc: Vec<u32> = (qc_start as u32..n as u32).collect();

    // mixed-radix enumeration: digits for Q₀ states, then non-top sink states, then the top action
    let mut radices: Vec<usize> = (0..k).map(|i| n - 1 - i).collect();
    radices.extend(core::iter::repeat_n(qc.len(), qc_start - k));
    radices.push(top_actions.len());
    let mut digits = vec![0usize; radices.len()];
    let mut letters = Vec::with_capacity(size as usize);
    loop {
        let mut images = vec![0u32; n];
        for i in 0..k {
            images[i] = (i + 1 + digits[i]) as u32;
        }
        for j in k..qc_start {
            images[j] = qc[digits[j]];
        }
        let action = &top_actions.elements()[digits[radices.len() - 1]];
        for (local, &v) in action.images().iter().enumerate() {
            images[qc_start + local] = qc[v as usize];
        }
        letters.push(Transformation::from_vec_unchecked(images));
        // increment; stop after the most significant digit wraps
        let mut pos = radices.len();
        let wrapped = loop {
            if pos == 0 {
                break true;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break false;
            }
            digits[pos] = 0;
        };
        if wrapped {
            break;
        }
    }
    letters.sort();
    letters.dedup();
    debug_assert_eq!(letters.len() as u128, size);

    let out = Dfa::from_transformations(&letters, relabeled.start(), relabeled.final_flags().to_vec())?;

    let reduced = out.is_reduced();
    let avoids_pd = reduced && admits_pd(&out).map(|w| w.is_none()).unwrap_or(false);
    let input = dfa.transition_semigroup(options.cap);
    let input_syc = exact_or_capped(&input, options.cap);
    // the tuplings are closed under composition, in which case no closure run is needed
    let output_syc = if closure_violation(&letters).is_none() {
        SyntacticComplexity::Exact(letters.len())
    } else {
        exact_or_capped(&out.transition_semigroup(options.cap), options.cap)
    };
    let syc_monotone = match (input_syc, output_syc) {
        (SyntacticComplexity::Exact(a), SyntacticComplexity::Exact(b)) => Some(a <= b),
        _ => None,
    };
    Ok(Defized {
        alphabet_size: letters.len(),
        dfa: out,
        partition,
        input_syc,
        output_syc,
        verification: Verification {
            reduced,
            avoids_pd,
            syc_monotone,
        },
    })
}

fn exact_or_capped(s: &TransformationSemigroup, cap: usize) -> SyntacticComplexity {
    if s.is_truncated() {
        SyntacticComplexity::ExceedsCap(cap)
    } else {
        SyntacticComplexity::Exact(s.len())
    }
}

/// Sanity description used in error messages and logs.
pub fn describe(partition: &SinkPartition) -> alloc::string::String {
    format!(
        "Q0 = {:?}, sinks = {:?}",
        partition.q0_block.iter().map(|q| q + 1).collect::<Vec<_>>(),
        partition
            .sinks
            .iter()
            .map(|s| s.iter().map(|q| q + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    )
}
