mod common;

use defsyc_core::classify::is_definite;
use defsyc_core::search::{
    certify, max_definite_syc, max_np_subsemigroup_bnb, max_np_subsemigroup_exact, realizing_choice, Monitor,
    NodeBudget,
};
use defsyc_core::semigroup::{candidate_b, floor_e_factorial, theorem_bound};
use defsyc_core::transformation::enumerate_np;
use defsyc_core::{Dfa, Transformation};

/// Closed under composition, checked with a hand-rolled product.
fn closed(set: &[Transformation]) -> bool {
    set.iter().all(|f| {
        set.iter().all(|g| {
            let images: Vec<u32> = (0..f.degree()).map(|i| g.image(f.image(i)) as u32).collect();
            set.contains(&Transformation::new(images).unwrap())
        })
    })
}

/// Certifies every incumbent as it arrives.
#[derive(Default)]
struct Audit {
    sizes: Vec<usize>,
    failures: usize,
}

impl Monitor for Audit {
    fn interrupted(&mut self, explored: u64) -> bool {
        explored > 10_000_000
    }

    fn incumbent(&mut self, witness: &[Transformation]) {
        self.sizes.push(witness.len());
        self.failures += certify(witness).is_err() as usize;
    }
}

#[test]
fn exact_search_matches_subset_enumeration() {
    for n in 2..=3 {
        let np = enumerate_np(n).unwrap();
        let m = np.len();
        let best = (1u32..1 << m)
            .filter(|mask| {
                let s: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| np[i].clone()).collect();
                closed(&s)
            })
            .map(u32::count_ones)
            .max()
            .unwrap() as usize;
        let r = max_np_subsemigroup_exact(n).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.best_size, best);
        assert_eq!(r.explored_nodes, 1 << m);
        assert_eq!(certify(&r.witness).unwrap().size, best);
        assert_eq!(best as u128, floor_e_factorial(n).unwrap());
    }
}

#[test]
fn bnb_agrees_with_exact() {
    for n in 2..=3 {
        let r = max_np_subsemigroup_bnb(n, &mut NodeBudget(1_000_000)).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.best_size, max_np_subsemigroup_exact(n).unwrap().best_size);
    }
}

#[test]
fn bnb_degree_four_is_b() {
    let mut audit = Audit::default();
    let r = max_np_subsemigroup_bnb(4, &mut audit).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.best_size, 16);
    assert!(r.best_size as u128 <= theorem_bound(4).unwrap());
    assert!(closed(&r.witness));
    assert_eq!(audit.failures, 0);
    assert!(audit.sizes.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(r.witness, candidate_b(4).unwrap().elements());
}

#[test]
fn tiny_budget_keeps_seed() {
    let r = max_np_subsemigroup_bnb(4, &mut NodeBudget(0)).unwrap();
    assert!(!r.exhaustive);
    assert_eq!(r.best_size, 16);
    assert!(certify(&r.witness).is_ok());
}

#[test]
fn realizable_maxima_are_definite_automata() {
    for (n, expected) in [(2, 2), (3, 5), (4, 16)] {
        let r = max_definite_syc(n, &mut NodeBudget(10_000_000)).unwrap();
        assert!(r.search.exhaustive);
        assert_eq!(r.search.best_size, expected);
        assert_eq!(
            realizing_choice(n, &r.search.witness),
            Some((r.start, r.finals.clone()))
        );
        let dfa = Dfa::from_transformations(&r.search.witness, r.start, r.finals.clone()).unwrap();
        assert!(dfa.is_reduced());
        assert!(is_definite(&dfa).holds());
        assert_eq!(dfa.syntactic_complexity(1 << 20).exact(), Some(expected));
    }
}

#[test]
fn realizability_needs_distinguishable_states() {
    // images agree on states 2 and 3 for every element of B(3), yet
    // F = {2} separates them with the empty word
    let b = candidate_b(3).unwrap();
    assert!(b.elements().iter().all(|f| f.image(1) == f.image(2)));
    let (start, finals) = realizing_choice(3, b.elements()).unwrap();
    let dfa = Dfa::from_transformations(b.elements(), start, finals).unwrap();
    assert!(dfa.is_reduced());
    assert!(realizing_choice(2, &[common::t(&[1, 1])]).is_some());
    assert!(realizing_choice(3, &[common::t(&[1, 1, 1])]).is_none());
}
