//! Node and wall-clock limits for the searches.

use std::time::{Duration, Instant};

use defsyc_core::search::Monitor;
use defsyc_core::Transformation;

/// How often the clock is read, in nodes.
const CLOCK_INTERVAL: u64 = 4096;

/// Stops a search after a node count or a deadline, whichever comes first.
///
/// A time limit makes the explored node count depend on machine speed; use
/// a node limit alone for reproducible runs.
pub struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    timed_out: bool,
    incumbent_sizes: Vec<usize>,
}

impl Budget {
    pub fn new(max_nodes: Option<u64>, secs: Option<f64>) -> Self {
        let deadline = secs.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
        Self {
            max_nodes,
            deadline,
            timed_out: false,
            incumbent_sizes: Vec::new(),
        }
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }

    /// Sizes of the incumbents reported during the run, in order.
    pub fn incumbent_sizes(&self) -> &[usize] {
        &self.incumbent_sizes
    }
}

impl Monitor for Budget {
    fn interrupted(&mut self, explored: u64) -> bool {
        if self.max_nodes.is_some_and(|m| explored > m) {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if explored.is_multiple_of(CLOCK_INTERVAL) && Instant::now() >= deadline {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    fn incumbent(&mut self, witness: &[Transformation]) {
        self.incumbent_sizes.push(witness.len());
    }

    fn node_limit(&self) -> Option<u64> {
        self.max_nodes
    }
}
