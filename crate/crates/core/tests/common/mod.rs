#![allow(dead_code)]

use defsyc_core::{Dfa, Transformation};

/// SplitMix64; enough for seeded fixtures without pulling a generator into the core crate.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed ^ 0x9e37_79b9_7f4a_7c15)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

pub fn t(v: &[usize]) -> Transformation {
    Transformation::from_one_based(v).unwrap()
}

pub fn random_dfa(rng: &mut Rng, n: usize, k: usize) -> Dfa {
    let delta = (0..n * k).map(|_| rng.below(n) as u32).collect();
    let finals = (0..n).map(|_| rng.below(2) == 1).collect();
    let alphabet = (0..k).map(|a| ((b'a' + a as u8) as char).to_string()).collect();
    Dfa::new(n, alphabet, delta, 0, finals).unwrap()
}

/// Transformations of all nonempty words, grown one letter at a time until
/// a length adds nothing new.
pub fn word_transformations(dfa: &Dfa) -> Vec<Transformation> {
    let n = dfa.state_count();
    let k = dfa.alphabet_size();
    let apply = |f: &[usize], a: usize| -> Vec<usize> { f.iter().map(|&q| dfa.next(q, a)).collect() };
    let identity: Vec<usize> = (0..n).collect();
    let mut all: std::collections::BTreeSet<Vec<usize>> = (0..k).map(|a| apply(&identity, a)).collect();
    let mut level: Vec<Vec<usize>> = all.iter().cloned().collect();
    loop {
        let mut next = Vec::new();
        for f in &level {
            for a in 0..k {
                let g = apply(f, a);
                if all.insert(g.clone()) {
                    next.push(g);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    all.into_iter()
        .map(|v| t(&v.iter().map(|q| q + 1).collect::<Vec<_>>()))
        .collect()
}

/// Row-major 1-based targets.
pub fn build(n: usize, symbols: &[&str], targets: &[usize], start: usize, finals: &[usize]) -> Dfa {
    let delta = targets.iter().map(|&q| (q - 1) as u32).collect();
    let f = (1..=n).map(|q| finals.contains(&q)).collect();
    Dfa::new(n, symbols.iter().map(|s| s.to_string()).collect(), delta, start - 1, f).unwrap()
}

pub fn ends_with_a() -> Dfa {
    build(2, &["a", "b"], &[2, 1, 2, 1], 1, &[2])
}

pub fn starts_with_a() -> Dfa {
    build(3, &["a", "b"], &[2, 3, 2, 2, 3, 3], 1, &[2])
}

pub fn parity() -> Dfa {
    build(2, &["a"], &[2, 1], 1, &[1])
}

pub fn one_state() -> Dfa {
    build(1, &["a", "b"], &[1, 1], 1, &[])
}

pub fn a_sigma_b() -> Dfa {
    build(4, &["a", "b"], &[2, 4, 2, 3, 2, 3, 4, 4], 1, &[3])
}
