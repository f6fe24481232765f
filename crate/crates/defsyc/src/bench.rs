//! Wall-clock timing of the generalized definite test.

use std::time::Instant;

use defsyc_core::classify::is_generalized_definite;

use crate::generate::{generate_random_dfa, GeneratorConfig, Mode};

pub const DEFAULT_SIZES: [usize; 4] = [500, 1000, 2000, 4000];
const REPETITIONS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub states: usize,
    /// States left after minimization, which is what the pair square is built on.
    pub minimized_states: usize,
    pub millis: f64,
}

/// Median of five timings of `is_generalized_definite` on one
/// gendef-positive instance per size. `cfg.state_count` and `cfg.mode` are
/// overridden.
pub fn bench_gendef(sizes: &[usize], cfg: &GeneratorConfig) -> Result<Vec<BenchRow>, String> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let dfa = generate_random_dfa(&GeneratorConfig {
            state_count: n,
            mode: Mode::GendefPositive,
            ..*cfg
        })?;
        let mut times = Vec::with_capacity(REPETITIONS);
        let mut minimized_states = 0;
        for _ in 0..REPETITIONS {
            let t0 = Instant::now();
            let verdict = is_generalized_definite(&dfa);
            times.push(t0.elapsed().as_secs_f64() * 1e3);
            if !verdict.holds() {
                return Err(format!("gendef-positive instance with {n} states was rejected"));
            }
            minimized_states = verdict.minimal.state_count();
        }
        times.sort_by(f64::total_cmp);
        rows.push(BenchRow {
            states: n,
            minimized_states,
            millis: times[REPETITIONS / 2],
        });
    }
    Ok(rows)
}

/// `t(next) / t(previous)` for consecutive rows.
pub fn ratios(rows: &[BenchRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[1].millis / w[0].millis.max(1e-9)).collect()
}
