//! Forbidden-pattern tests for definite and generalized definite languages.
//!
//! A reduced automaton admits `P_d` when two distinct states `p, q` are both
//! fixed by one nonempty word `x`; it admits `P_g` when additionally some
//! nonempty `y` leads from `p` to `q`. Avoiding `P_d` characterises definite
//! languages, avoiding `P_g` generalized definite ones.

use alloc::vec;
use alloc::vec::Vec;

use crate::automata::{Dfa, SyntacticComplexity};
use crate::error::{Error, Result};
use crate::semigroup::{satisfies_definite_identity, satisfies_gendef_identity, IdentityViolation, DEFAULT_CAP};

/// States `p != q` with `p·x = p`, `q·x = q` and, for `P_g`, `p·y = q`.
/// Words are symbol indices of the automaton the witness was found in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub p: usize,
    pub q: usize,
    pub x: Vec<usize>,
    pub y: Option<Vec<usize>>,
}

impl PatternWitness {
    /// Replays the witness on `dfa` by direct simulation.
    pub fn replays(&self, dfa: &Dfa) -> bool {
        let n = dfa.state_count();
        if self.p >= n || self.q >= n || self.p == self.q || self.x.is_empty() {
            return false;
        }
        let loops = dfa.run_from(self.p, &self.x) == self.p && dfa.run_from(self.q, &self.x) == self.q;
        let linked = match &self.y {
            None => true,
            Some(y) => !y.is_empty() && dfa.run_from(self.p, y) == self.q,
        };
        loops && linked
    }
}

fn require_reduced(dfa: &Dfa) -> Result<()> {
    if dfa.is_reduced() {
        Ok(())
    } else {
        Err(Error::NotReduced)
    }
}

/// Lexicographically least witness of `P_d`, if `dfa` admits it.
pub fn admits_pd(dfa: &Dfa) -> Result<Option<PatternWitness>> {
    require_reduced(dfa)?;
    Ok(find_pd(dfa))
}

fn find_pd(dfa: &Dfa) -> Option<PatternWitness> {
    let square = dfa.product_square();
    let comps = square.components();
    let (p, q) = comps.off_diagonal_cycle_pairs().next()?;
    let x = square.shortest_cycle(p, q).expect("pair lies on a cycle");
    Some(PatternWitness { p, q, x, y: None })
}

/// Lexicographically least witness of `P_g`, if `dfa` admits it.
pub fn admits_pg(dfa: &Dfa) -> Result<Option<PatternWitness>> {
    require_reduced(dfa)?;
    Ok(find_pg(dfa))
}

fn find_pg(dfa: &Dfa) -> Option<PatternWitness> {
    let n = dfa.state_count();
    let square = dfa.product_square();
    let comps = square.components();
    for p in 0..n {
        let reach = nonempty_reach(dfa, p);
        for q in 0..n {
            if p != q && reach[q] && comps.on_cycle(p, q) {
                let x = square.shortest_cycle(p, q).expect("pair lies on a cycle");
                let y = dfa.shortest_nonempty_path(p, q).expect("q is reachable from p");
                return Some(PatternWitness { p, q, x, y: Some(y) });
            }
        }
    }
    None
}

/// States reachable from `p` by a nonempty word.
fn nonempty_reach(dfa: &Dfa, p: usize) -> Vec<bool> {
    let mut seen = vec![false; dfa.state_count()];
    let mut stack = Vec::new();
    for a in 0..dfa.alphabet_size() {
        let r = dfa.next(p, a);
        if !seen[r] {
            seen[r] = true;
            stack.push(r);
        }
    }
    while let Some(r) = stack.pop() {
        for a in 0..dfa.alphabet_size() {
            let s = dfa.next(r, a);
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
    }
    seen
}

/// Outcome of a decision procedure. Witness states refer to `minimal`.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub minimal: Dfa,
    pub witness: Option<PatternWitness>,
    pub rejection: Option<Rejection>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Why the generalized definite test rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// Some pair of distinct states lies on a common cycle of the square.
    PairCycle,
    /// Step 3: a nontrivial component that is not a sink.
    NontrivialNonSink { component: usize },
    /// Step 5: `(p, q)` in one sink lies on a nontrivial component of the square.
    SinkPairCycle { p: usize, q: usize },
}

/// Definite iff the minimal automaton avoids `P_d`.
pub fn is_definite(dfa: &Dfa) -> Verdict {
    let minimal = dfa.minimize().0;
    let witness = find_pd(&minimal);
    let rejection = witness.as_ref().map(|_| Rejection::PairCycle);
    Verdict {
        minimal,
        witness,
        rejection,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GendefOptions {
    /// Analyse only the sub-squares `C × C` of the sinks instead of the
    /// full square. Same answer, `Σ |C|²` pair states instead of `n²`.
    pub sink_pairs_only: bool,
}

pub fn is_generalized_definite(dfa: &Dfa) -> Verdict {
    is_generalized_definite_with(dfa, GendefOptions::default())
}

/// The quadratic test:
/// 1. minimize;
/// 2. build the component graph;
/// 3. reject if some nontrivial component is not a sink;
/// 4. build the square and its components;
/// 5. reject if some `(p, q)` with `p != q` in a common sink lies on a
///    nontrivial component of the square; otherwise accept.
pub fn is_generalized_definite_with(dfa: &Dfa, options: GendefOptions) -> Verdict {
    let minimal = dfa.minimize().0;
    let graph = minimal.component_graph();

    if let Some(c) = graph.nontrivial_non_sinks().next() {
        let witness = non_sink_witness(&minimal, &graph, c);
        return Verdict {
            minimal,
            witness: Some(witness),
            rejection: Some(Rejection::NontrivialNonSink { component: c }),
        };
    }

    let square = minimal.product_square();
    let hit = if options.sink_pairs_only {
        // least pair over all sinks
        graph
            .sinks()
            .filter_map(|c| {
                let comps = square.components_within(&graph.components()[c]);
                let first = comps.off_diagonal_cycle_pairs().next();
                first
            })
            .min()
    } else {
        let comps = square.components();
        let n = minimal.state_count();
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).find(|&(p, q)| {
            p != q && graph.same_component(p, q) && graph.is_sink(graph.component_of(p)) && comps.on_cycle(p, q)
        })
    };

    match hit {
        None => Verdict {
            minimal,
            witness: None,
            rejection: None,
        },
        Some((p, q)) => {
            let x = square.shortest_cycle(p, q).expect("pair lies on a cycle");
            let y = minimal.shortest_nonempty_path(p, q).expect("p and q share a component");
            let witness = PatternWitness { p, q, x, y: Some(y) };
            Verdict {
                minimal,
                witness: Some(witness),
                rejection: Some(Rejection::SinkPairCycle { p, q }),
            }
        }
    }
}

/// `P_g` witness for a nontrivial non-sink component `c`: take `p` in `c`
/// with a loop `u`, a sink reachable from `p`, and a state `q` on a cycle of
/// `u` inside that sink; then `x = u^len` fixes both.
fn non_sink_witness(dfa: &Dfa, graph: &crate::automata::ComponentGraph, c: usize) -> PatternWitness {
    let p = graph.components()[c][0];
    let u = dfa
        .shortest_nonempty_path(p, p)
        .expect("nontrivial component has a loop");
    // first sink state found breadth-first from p
    let n = dfa.state_count();
    let mut seen = vec![false; n];
    let mut queue = alloc::collections::VecDeque::from([p]);
    seen[p] = true;
    let mut sink_state = None;
    while let Some(r) = queue.pop_front() {
        if graph.is_sink(graph.component_of(r)) {
            sink_state = Some(r);
            break;
        }
        for a in 0..dfa.alphabet_size() {
            let s = dfa.next(r, a);
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    let start = sink_state.expect("every state reaches a sink");
    // iterate u from the least state of that sink until it repeats
    let sink = &graph.components()[graph.component_of(start)];
    let mut order = vec![usize::MAX; n];
    let mut r = sink[0];
    let mut step = 0;
    while order[r] == usize::MAX {
        order[r] = step;
        step += 1;
        r = dfa.run_from(r, &u);
    }
    let len = step - order[r];
    let mut cycle = Vec::with_capacity(len);
    for _ in 0..len {
        cycle.push(r);
        r = dfa.run_from(r, &u);
    }
    let q = *cycle.iter().min().unwrap();
    let x: Vec<usize> = u.iter().copied().cycle().take(u.len() * len).collect();
    let y = dfa.shortest_nonempty_path(p, q).expect("the sink is reachable from p");
    PatternWitness { p, q, x, y: Some(y) }
}

/// Result of checking one semigroup identity on the transition semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Satisfied,
    Violated(IdentityViolation),
    SkippedCapped,
}

impl OracleVerdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Self::Satisfied => Some(true),
            Self::Violated(_) => Some(false),
            Self::SkippedCapped => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub definite_identity: OracleVerdict,
    pub gendef_identity: OracleVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub oracle: bool,
    pub cap: usize,
    pub gendef: GendefOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            oracle: false,
            cap: DEFAULT_CAP,
            gendef: GendefOptions::default(),
        }
    }
}

/// Everything the classifier knows about one automaton.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    /// Canonical minimal automaton; witness states refer to it.
    pub minimal: Dfa,
    pub definite: bool,
    pub generalized_definite: bool,
    pub pd_witness: Option<PatternWitness>,
    pub pg_witness: Option<PatternWitness>,
    pub gendef_rejection: Option<Rejection>,
    pub syntactic_complexity: SyntacticComplexity,
    pub oracle: Option<OracleReport>,
}

impl ClassificationReport {
    pub fn minimized_size(&self) -> usize {
        self.minimal.state_count()
    }

    /// `Some(false)` if an oracle ran and disagrees with a pattern verdict.
    pub fn oracle_agreement(&self) -> Option<bool> {
        let o = self.oracle.as_ref()?;
        let d = o.definite_identity.holds().map(|h| h == self.definite);
        let g = o.gendef_identity.holds().map(|h| h == self.generalized_definite);
        match (d, g) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(true) && b.unwrap_or(true)),
        }
    }
}

pub fn classify_report(dfa: &Dfa, options: ReportOptions) -> ClassificationReport {
    let definite = is_definite(dfa);
    let gendef = is_generalized_definite_with(dfa, options.gendef);
    let minimal = definite.minimal;
    let semigroup = minimal.transition_semigroup(options.cap);
    let syntactic_complexity = if semigroup.is_truncated() {
        SyntacticComplexity::ExceedsCap(options.cap)
    } else {
        SyntacticComplexity::Exact(semigroup.len())
    };
    let oracle = options.oracle.then(|| {
        let run = |r: Result<Option<IdentityViolation>>| match r {
            Ok(None) => OracleVerdict::Satisfied,
            Ok(Some(v)) => OracleVerdict::Violated(v),
            Err(_) => OracleVerdict::SkippedCapped,
        };
        OracleReport {
            definite_identity: run(satisfies_definite_identity(&semigroup)),
            gendef_identity: run(satisfies_gendef_identity(&semigroup)),
        }
    });
    ClassificationReport {
        definite: definite.witness.is_none(),
        generalized_definite: gendef.witness.is_none(),
        pd_witness: definite.witness,
        pg_witness: gendef.witness,
        gendef_rejection: gendef.rejection,
        minimal,
        syntactic_complexity,
        oracle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::*;

    #[test]
    fn pd_examples() {
        assert_eq!(admits_pd(&one_state()).unwrap(), None);
        assert_eq!(admits_pd(&ends_with_a()).unwrap(), None);
        let w = admits_pd(&starts_with_a()).unwrap().unwrap();
        assert_eq!(
            w,
            PatternWitness {
                p: 1,
                q: 2,
                x: vec![0],
                y: None
            }
        );
        assert!(w.replays(&starts_with_a()));
    }

    #[test]
    fn pg_examples() {
        assert_eq!(admits_pg(&starts_with_a()).unwrap(), None);
        assert_eq!(admits_pg(&one_state()).unwrap(), None);
        let w = admits_pg(&parity()).unwrap().unwrap();
        assert_eq!(
            w,
            PatternWitness {
                p: 0,
                q: 1,
                x: vec![0, 0],
                y: Some(vec![0])
            }
        );
        assert!(w.replays(&parity()));
    }

    #[test]
    fn pattern_tests_require_reduced_input() {
        let d = build(
            3,
            &["a", "b"],
            &[(1, 2), (1, 3), (2, 2), (2, 2), (3, 3), (3, 3)],
            1,
            &[2, 3],
        );
        assert_eq!(admits_pd(&d), Err(Error::NotReduced));
        assert_eq!(admits_pg(&d), Err(Error::NotReduced));
        // unreachable state
        let d = build(2, &["a"], &[(1, 1), (2, 2)], 1, &[2]);
        assert_eq!(admits_pd(&d), Err(Error::NotReduced));
    }

    #[test]
    fn definite_examples() {
        assert!(is_definite(&ends_with_a()).holds());
        let v = is_definite(&starts_with_a());
        assert!(!v.holds());
        assert!(v.witness.unwrap().replays(&v.minimal));
        assert!(!is_definite(&parity()).holds());
        assert!(is_definite(&one_state()).holds());
    }

    #[test]
    fn gendef_examples() {
        assert!(is_generalized_definite(&starts_with_a()).holds());
        let v = is_generalized_definite(&parity());
        assert_eq!(v.rejection, Some(Rejection::SinkPairCycle { p: 0, q: 1 }));
        assert!(v.witness.unwrap().replays(&v.minimal));
        assert!(is_generalized_definite(&a_sigma_b()).holds());
        assert!(!is_definite(&a_sigma_b()).holds());
    }

    #[test]
    fn non_sink_rejection_has_a_witness() {
        // 1 -a-> 1, 1 -b-> 2, 2 sink; component {1} is nontrivial but not a sink
        let d = build(2, &["a", "b"], &[(1, 1), (1, 2), (2, 2), (2, 2)], 1, &[2]);
        for opts in [GendefOptions::default(), GendefOptions { sink_pairs_only: true }] {
            let v = is_generalized_definite_with(&d, opts);
            assert!(matches!(v.rejection, Some(Rejection::NontrivialNonSink { .. })));
            let w = v.witness.unwrap();
            assert!(w.replays(&v.minimal), "{w:?}");
        }
    }

    #[test]
    fn sink_pairs_only_agrees() {
        for d in [ends_with_a(), starts_with_a(), parity(), one_state(), a_sigma_b()] {
            let full = is_generalized_definite(&d);
            let fast = is_generalized_definite_with(&d, GendefOptions { sink_pairs_only: true });
            assert_eq!(full.holds(), fast.holds());
            assert_eq!(full.witness, fast.witness);
        }
    }

    #[test]
    fn reports() {
        let opts = ReportOptions {
            oracle: true,
            ..Default::default()
        };
        let r = classify_report(&ends_with_a(), opts);
        assert!(r.definite && r.generalized_definite);
        assert_eq!(r.syntactic_complexity, SyntacticComplexity::Exact(2));
        assert_eq!(r.oracle_agreement(), Some(true));

        let r = classify_report(&parity(), opts);
        assert!(!r.definite && !r.generalized_definite);
        assert_eq!(r.syntactic_complexity, SyntacticComplexity::Exact(2));
        assert_eq!(r.oracle_agreement(), Some(true));

        let r = classify_report(&one_state(), opts);
        assert!(r.definite && r.generalized_definite);
        assert_eq!(r.syntactic_complexity, SyntacticComplexity::Exact(1));
        assert_eq!(r.minimized_size(), 1);

        let capped = classify_report(
            &parity(),
            ReportOptions {
                oracle: true,
                cap: 1,
                ..Default::default()
            },
        );
        let o = capped.oracle.unwrap();
        assert_eq!(o.definite_identity, OracleVerdict::SkippedCapped);
        assert_eq!(o.gendef_identity, OracleVerdict::SkippedCapped);
    }
}
