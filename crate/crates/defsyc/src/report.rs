//! JSON report shapes shared by the command line tool and its tests.
//!
//! States are 1-based and refer to the minimal automaton; words are lists
//! of symbol names.

use defsyc_core::automata::SyntacticComplexity;
use defsyc_core::classify::{ClassificationReport, OracleVerdict};
use defsyc_core::constructions::Defized;
use defsyc_core::search::{RealizableResult, SearchResult};
use defsyc_core::{Dfa, PatternWitness};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub p: usize,
    pub q: usize,
    pub x: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<Vec<String>>,
}

impl WitnessJson {
    pub fn new(w: &PatternWitness, dfa: &Dfa) -> Self {
        Self {
            p: w.p + 1,
            q: w.q + 1,
            x: dfa.symbol_names(&w.x),
            y: w.y.as_ref().map(|y| dfa.symbol_names(y)),
        }
    }
}

/// A size, or `{"exceeds_cap": cap}` when the closure hit its cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SycJson {
    Exact(usize),
    Capped { exceeds_cap: usize },
}

impl From<SyntacticComplexity> for SycJson {
    fn from(s: SyntacticComplexity) -> Self {
        match s {
            SyntacticComplexity::Exact(n) => SycJson::Exact(n),
            SyntacticComplexity::ExceedsCap(cap) => SycJson::Capped { exceeds_cap: cap },
        }
    }
}

pub fn oracle_label(v: &OracleVerdict) -> &'static str {
    match v {
        OracleVerdict::Satisfied => "satisfied",
        OracleVerdict::Violated(_) => "violated",
        OracleVerdict::SkippedCapped => "skipped (capped)",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub definite_identity: String,
    pub gendef_identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub minimized_size: usize,
    pub definite: bool,
    pub generalized_definite: bool,
    pub pd_witness: Option<WitnessJson>,
    pub pg_witness: Option<WitnessJson>,
    pub syntactic_complexity: SycJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_agreement: Option<bool>,
}

impl From<&ClassificationReport> for ClassifyJson {
    fn from(r: &ClassificationReport) -> Self {
        Self {
            minimized_size: r.minimized_size(),
            definite: r.definite,
            generalized_definite: r.generalized_definite,
            pd_witness: r.pd_witness.as_ref().map(|w| WitnessJson::new(w, &r.minimal)),
            pg_witness: r.pg_witness.as_ref().map(|w| WitnessJson::new(w, &r.minimal)),
            syntactic_complexity: r.syntactic_complexity.into(),
            oracle: r.oracle.as_ref().map(|o| OracleJson {
                definite_identity: oracle_label(&o.definite_identity).into(),
                gendef_identity: oracle_label(&o.gendef_identity).into(),
            }),
            oracle_agreement: r.oracle_agreement(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedJson {
    pub reduced: bool,
    pub avoids_pd: bool,
    /// `null` when either semigroup hit the closure cap.
    pub syc_monotone: Option<bool>,
}

/// Sidecar written next to a constructed automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefizeJson {
    pub input_syc: SycJson,
    pub output_syc: SycJson,
    pub alphabet_size: usize,
    pub verified: VerifiedJson,
}

impl From<&Defized> for DefizeJson {
    fn from(d: &Defized) -> Self {
        Self {
            input_syc: d.input_syc.into(),
            output_syc: d.output_syc.into(),
            alphabet_size: d.alphabet_size,
            verified: VerifiedJson {
                reduced: d.verification.reduced,
                avoids_pd: d.verification.avoids_pd,
                syc_monotone: d.verification.syc_monotone,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub nodes: Option<u64>,
    pub secs: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchJson {
    pub degree: usize,
    pub best_size: usize,
    pub exhaustive: bool,
    pub explored_nodes: u64,
    pub budget: BudgetJson,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<usize>,
    #[serde(rename = "final", skip_serializing_if = "Option::is_none", default)]
    pub finals: Option<Vec<usize>>,
}

impl SearchJson {
    pub fn new(r: &SearchResult, secs: Option<f64>) -> Self {
        Self {
            degree: r.degree,
            best_size: r.best_size,
            exhaustive: r.exhaustive,
            explored_nodes: r.explored_nodes,
            budget: BudgetJson {
                nodes: r.node_budget,
                secs,
            },
            witness: r.witness.iter().map(ToString::to_string).collect(),
            start: None,
            finals: None,
        }
    }

    pub fn realizable(r: &RealizableResult, secs: Option<f64>) -> Self {
        Self {
            start: Some(r.start + 1),
            finals: Some((0..r.finals.len()).filter(|&q| r.finals[q]).map(|q| q + 1).collect()),
            ..Self::new(&r.search, secs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syc_shapes() {
        assert_eq!(serde_json::to_string(&SycJson::Exact(4)).unwrap(), "4");
        assert_eq!(
            serde_json::to_string(&SycJson::Capped { exceeds_cap: 10 }).unwrap(),
            r#"{"exceeds_cap":10}"#
        );
    }

    #[test]
    fn pd_witness_has_no_y() {
        let w = WitnessJson {
            p: 1,
            q: 2,
            x: vec!["a".into()],
            y: None,
        };
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"p":1,"q":2,"x":["a"]}"#);
    }
}
