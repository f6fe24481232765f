//! Moore-style partition refinement.
//!
//! Starts from the final/non-final split of the reachable states and
//! refines by successor classes until the number of blocks is stable. The
//! quotient is numbered canonically: breadth-first from the start state,
//! successors in alphabet order.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::Dfa;

pub(super) fn minimize(dfa: &Dfa) -> (Dfa, Vec<Option<usize>>) {
    let n = dfa.state_count();
    let k = dfa.alphabet_size();
    let reach = dfa.reachable_states();
    let live: Vec<usize> = (0..n).filter(|&q| reach[q]).collect();

    let mut class = vec![u32::MAX; n];
    let mut blocks = {
        let any_final = live.iter().any(|&q| dfa.is_final(q));
        let any_nonfinal = live.iter().any(|&q| !dfa.is_final(q));
        for &q in &live {
            class[q] = if any_final && any_nonfinal {
                dfa.is_final(q) as u32
            } else {
                0
            };
        }
        1 + (any_final && any_nonfinal) as usize
    };

    let mut signatures = vec![0u32; live.len() * (k + 1)];
    loop {
        for (i, &q) in live.iter().enumerate() {
            let sig = &mut signatures[i * (k + 1)..(i + 1) * (k + 1)];
            sig[0] = class[q];
            for a in 0..k {
                sig[a + 1] = class[dfa.next(q, a)];
            }
        }
        let mut ids: HashMap<&[u32], u32> = HashMap::with_capacity(blocks * 2);
        let mut next_class = vec![u32::MAX; n];
        for (i, &q) in live.iter().enumerate() {
            let sig = &signatures[i * (k + 1)..(i + 1) * (k + 1)];
            let fresh = ids.len() as u32;
            next_class[q] = *ids.entry(sig).or_insert(fresh);
        }
        let new_blocks = ids.len();
        drop(ids);
        class = next_class;
        if new_blocks == blocks {
            break;
        }
        blocks = new_blocks;
    }

    // canonical numbering of blocks
    let mut canon = vec![u32::MAX; blocks];
    let mut representative = vec![0usize; blocks];
    let mut queue = VecDeque::new();
    let start_block = class[dfa.start()] as usize;
    canon[start_block] = 0;
    representative[0] = dfa.start();
    queue.push_back(dfa.start());
    let mut count = 1;
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let r = dfa.next(q, a);
            let b = class[r] as usize;
            if canon[b] == u32::MAX {
                canon[b] = count as u32;
                representative[count] = r;
                count += 1;
                queue.push_back(r);
            }
        }
    }
    debug_assert_eq!(count, blocks);

    let mut delta = vec![0u32; blocks * k];
    let mut finals = vec![false; blocks];
    for (id, &q) in representative.iter().enumerate() {
        finals[id] = dfa.is_final(q);
        for a in 0..k {
            delta[id * k + a] = canon[class[dfa.next(q, a)] as usize];
        }
    }
    let map = (0..n)
        .map(|q| reach[q].then(|| canon[class[q] as usize] as usize))
        .collect();
    let min = Dfa {
        alphabet: dfa.alphabet.clone(),
        delta,
        start: 0,
        finals,
    };
    (min, map)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;

    #[test]
    fn reduced_automata_keep_their_size() {
        for d in [ends_with_a(), starts_with_a(), parity(), one_state(), a_sigma_b()] {
            let (m, _) = d.minimize();
            assert_eq!(m.state_count(), d.state_count());
            assert!(m.is_isomorphic(&d));
            assert!(d.is_reduced());
        }
    }

    #[test]
    fn merges_indistinguishable_sinks() {
        // 1 -a-> 2, 1 -b-> 3; 2 and 3 are both accepting sinks
        let d = build(
            3,
            &["a", "b"],
            &[(1, 2), (1, 3), (2, 2), (2, 2), (3, 3), (3, 3)],
            1,
            &[2, 3],
        );
        let (m, map) = d.minimize();
        assert_eq!(m.state_count(), 2);
        assert_eq!(map, vec![Some(0), Some(1), Some(1)]);
        assert!(!d.is_reduced());
    }

    #[test]
    fn collapses_redundant_copies_of_ends_with_a() {
        // five states recognizing Σ*a: {1,3,5} "last not a", {2,4} "last a"
        let d = build(
            5,
            &["a", "b"],
            &[
                (1, 2),
                (1, 3),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 1),
                (4, 2),
                (4, 5),
                (5, 2),
                (5, 3),
            ],
            1,
            &[2, 4],
        );
        let (m, _) = d.minimize();
        assert_eq!(m.state_count(), 2);
        assert!(m.is_isomorphic(&ends_with_a()));
    }

    #[test]
    fn empty_and_full_languages_have_one_state() {
        let empty = build(2, &["a"], &[(1, 2), (2, 1)], 1, &[]);
        let full = build(2, &["a"], &[(1, 2), (2, 1)], 1, &[1, 2]);
        assert_eq!(empty.minimize().0.state_count(), 1);
        assert_eq!(full.minimize().0.state_count(), 1);
        assert!(full.minimize().0.is_final(0));
    }

    #[test]
    fn drops_unreachable_states() {
        let d = build(3, &["a"], &[(1, 1), (2, 3), (3, 2)], 1, &[2]);
        let (m, map) = d.minimize();
        assert_eq!(m.state_count(), 1);
        assert_eq!(map, vec![Some(0), None, None]);
    }
}
