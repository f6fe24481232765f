//! Seeded random automata.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`, so
//! a configuration determines its automaton on every platform.

use std::str::FromStr;

use defsyc_core::Dfa;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every transition and every finality bit drawn independently.
    Uniform,
    /// A forward-only prefix feeding one to three sinks on which every
    /// letter acts as a constant. Always generalized definite, and every
    /// state is reachable from the start.
    GendefPositive,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Mode::Uniform),
            "gendef-positive" => Ok(Mode::GendefPositive),
            other => Err(format!("unknown mode {other:?} (expected uniform or gendef-positive)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub state_count: usize,
    pub alphabet_size: usize,
    pub mode: Mode,
    /// Probability that a state is accepting, strictly between 0 and 1.
    pub final_density: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            state_count: 5,
            alphabet_size: 2,
            mode: Mode::Uniform,
            final_density: 0.5,
        }
    }
}

/// `a`, `b`, ..., `z`, then `s26`, `s27`, ...
pub fn symbol_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("s{i}")
    }
}

pub fn generate_random_dfa(cfg: &GeneratorConfig) -> Result<Dfa, String> {
    let n = cfg.state_count;
    let k = cfg.alphabet_size;
    if n == 0 || k == 0 {
        return Err("state count and alphabet size must be positive".into());
    }
    if !(cfg.final_density > 0.0 && cfg.final_density < 1.0) {
        return Err(format!("final density {} outside (0, 1)", cfg.final_density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let delta = match cfg.mode {
        Mode::Uniform => (0..n * k).map(|_| rng.random_range(0..n as u32)).collect(),
        Mode::GendefPositive => gendef_table(&mut rng, n, k),
    };
    let finals = (0..n).map(|_| rng.random_bool(cfg.final_density)).collect();
    let alphabet = (0..k).map(symbol_name).collect();
    Dfa::new(n, alphabet, delta, 0, finals).map_err(|e| e.to_string())
}

fn gendef_table(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<u32> {
    let sink_count = rng.random_range(1..=n.min(3));
    // small sinks keep most states in the prefix
    let extra = rng.random_range(0..=(n / 16).max(2));
    let sink_total = (sink_count + extra).min(n);
    let prefix = n - sink_total;

    // cut points splitting the sink states into nonempty blocks
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() + 1 < sink_count {
        let c = rng.random_range(1..sink_total);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(sink_total);

    let mut delta = vec![0u32; n * k];
    // the first letter walks the prefix in order so every state is reachable
    for q in 0..prefix {
        delta[q * k] = q as u32 + 1;
        for a in 1..k {
            delta[q * k + a] = rng.random_range(q as u32 + 1..n as u32);
        }
    }
    for w in bounds.windows(2) {
        let (lo, hi) = (prefix + w[0], prefix + w[1]);
        for a in 0..k {
            let target = rng.random_range(lo as u32..hi as u32);
            for q in lo..hi {
                delta[q * k + a] = target;
            }
        }
    }
    delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use defsyc_core::classify::is_generalized_definite;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig {
            seed: 42,
            state_count: 6,
            alphabet_size: 3,
            ..Default::default()
        };
        assert_eq!(generate_random_dfa(&cfg).unwrap(), generate_random_dfa(&cfg).unwrap());
        let other = GeneratorConfig { seed: 43, ..cfg };
        assert_ne!(generate_random_dfa(&cfg).unwrap(), generate_random_dfa(&other).unwrap());
    }

    #[test]
    fn single_state() {
        let cfg = GeneratorConfig {
            state_count: 1,
            ..Default::default()
        };
        let dfa = generate_random_dfa(&cfg).unwrap();
        assert_eq!(dfa.state_count(), 1);
        assert!(defsyc_core::classify::is_definite(&dfa).holds());
    }

    #[test]
    fn gendef_positive_is_generalized_definite() {
        for seed in 0..200 {
            for n in [1, 2, 5, 9] {
                let cfg = GeneratorConfig {
                    seed,
                    state_count: n,
                    mode: Mode::GendefPositive,
                    ..Default::default()
                };
                let dfa = generate_random_dfa(&cfg).unwrap();
                assert!(is_generalized_definite(&dfa).holds(), "seed {seed} n {n}");
            }
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(generate_random_dfa(&GeneratorConfig {
            state_count: 0,
            ..Default::default()
        })
        .is_err());
        assert!(generate_random_dfa(&GeneratorConfig {
            final_density: 1.0,
            ..Default::default()
        })
        .is_err());
        assert_eq!("uniform".parse(), Ok(Mode::Uniform));
        assert!("other".parse::<Mode>().is_err());
        assert_eq!(symbol_name(1), "b");
        assert_eq!(symbol_name(30), "s30");
    }
}
