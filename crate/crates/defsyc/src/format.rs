//! Text and JSON file formats for automata and transformation sets.
//!
//! Automaton text format, states 1-based, `#` to end of line is a comment:
//!
//! ```text
//! states: 2
//! alphabet: a b
//! start: 1
//! final: 2
//! 1 a 2
//! 1 b 1
//! 2 a 2
//! 2 b 1
//! ```
//!
//! Every (state, symbol) pair must appear exactly once. Semigroup files
//! start with `degree: n` followed by one transformation per line.

use std::fmt::Write as _;

use defsyc_core::{Dfa, Transformation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing transition for state {state} on symbol {symbol}")]
    MissingTransition { state: usize, symbol: String },
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("symbol {0:?} cannot be written in the text format")]
    UnwritableSymbol(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with their 1-based line number.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, &'a str), FormatError> {
    let (line, body) = lines
        .next()
        .ok_or_else(|| syntax(0, format!("missing `{key}:` line")))?;
    let rest = body
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| syntax(line, format!("expected `{key}:`")))?;
    Ok((line, rest.trim()))
}

fn parse_state(line: usize, token: &str, n: usize) -> Result<usize, FormatError> {
    let q: usize = token
        .parse()
        .map_err(|_| syntax(line, format!("bad state {token:?}")))?;
    if q == 0 || q > n {
        return Err(syntax(line, format!("state {q} outside 1..={n}")));
    }
    Ok(q - 1)
}

/// Parses the automaton text format.
///
/// With `complete` set, missing transitions go to an added non-accepting
/// dead state instead of being an error.
pub fn parse_dfa(text: &str, complete: bool) -> Result<Dfa, FormatError> {
    let mut lines = significant_lines(text);
    let (line, states) = header(&mut lines, "states")?;
    let n: usize = states.parse().map_err(|_| syntax(line, "bad state count"))?;
    if n == 0 {
        return Err(syntax(line, "an automaton needs at least one state"));
    }
    let (line, alphabet) = header(&mut lines, "alphabet")?;
    let alphabet: Vec<String> = alphabet.split_whitespace().map(String::from).collect();
    if alphabet.is_empty() {
        return Err(syntax(line, "empty alphabet"));
    }
    let (line, start) = header(&mut lines, "start")?;
    let start = parse_state(line, start, n)?;
    let (line, finals_line) = header(&mut lines, "final")?;
    let mut finals = vec![false; n];
    for token in finals_line.split_whitespace() {
        finals[parse_state(line, token, n)?] = true;
    }

    let k = alphabet.len();
    let mut delta: Vec<Option<u32>> = vec![None; n * k];
    for (line, body) in lines {
        let parts: Vec<&str> = body.split_whitespace().collect();
        let [from, symbol, to] = parts[..] else {
            return Err(syntax(line, "expected `<state> <symbol> <state>`"));
        };
        let from = parse_state(line, from, n)?;
        let to = parse_state(line, to, n)?;
        let a = alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| syntax(line, format!("unknown symbol {symbol:?}")))?;
        let slot = &mut delta[from * k + a];
        if slot.is_some() {
            return Err(syntax(
                line,
                format!("duplicate transition for state {} on {symbol}", from + 1),
            ));
        }
        *slot = Some(to as u32);
    }
    assemble(n, alphabet, delta, start, finals, complete)
}

fn assemble(
    n: usize,
    alphabet: Vec<String>,
    delta: Vec<Option<u32>>,
    start: usize,
    mut finals: Vec<bool>,
    complete: bool,
) -> Result<Dfa, FormatError> {
    let k = alphabet.len();
    let missing = delta.iter().position(Option::is_none);
    let (count, table) = match missing {
        None => (n, delta.into_iter().map(Option::unwrap).collect()),
        Some(i) if !complete => {
            return Err(FormatError::MissingTransition {
                state: i / k + 1,
                symbol: alphabet[i % k].clone(),
            })
        }
        Some(_) => {
            let dead = n as u32;
            let mut table: Vec<u32> = delta.into_iter().map(|t| t.unwrap_or(dead)).collect();
            table.extend(std::iter::repeat_n(dead, k));
            finals.push(false);
            (n + 1, table)
        }
    };
    Dfa::new(count, alphabet, table, start, finals).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Writes the automaton text format, transitions in row-major order.
pub fn write_dfa(dfa: &Dfa) -> Result<String, FormatError> {
    if let Some(s) = dfa.alphabet().iter().find(|s| s.contains('#')) {
        return Err(FormatError::UnwritableSymbol(s.clone()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", dfa.state_count());
    let _ = writeln!(out, "alphabet: {}", dfa.alphabet().join(" "));
    let _ = writeln!(out, "start: {}", dfa.start() + 1);
    out.push_str("final:");
    for q in dfa.final_states() {
        let _ = write!(out, " {}", q + 1);
    }
    out.push('\n');
    for q in 0..dfa.state_count() {
        for (a, symbol) in dfa.alphabet().iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", q + 1, symbol, dfa.next(q, a) + 1);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: usize,
    pub symbol: String,
    pub to: usize,
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub start: usize,
    #[serde(rename = "final")]
    pub finals: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
}

impl From<&Dfa> for DfaJson {
    fn from(dfa: &Dfa) -> Self {
        let mut transitions = Vec::with_capacity(dfa.state_count() * dfa.alphabet_size());
        for q in 0..dfa.state_count() {
            for (a, symbol) in dfa.alphabet().iter().enumerate() {
                transitions.push(TransitionJson {
                    from: q + 1,
                    symbol: symbol.clone(),
                    to: dfa.next(q, a) + 1,
                });
            }
        }
        Self {
            states: dfa.state_count(),
            alphabet: dfa.alphabet().to_vec(),
            start: dfa.start() + 1,
            finals: dfa.final_states().into_iter().map(|q| q + 1).collect(),
            transitions,
        }
    }
}

impl DfaJson {
    pub fn into_dfa(self, complete: bool) -> Result<Dfa, FormatError> {
        let n = self.states;
        if n == 0 {
            return Err(FormatError::Invalid("an automaton needs at least one state".into()));
        }
        let state = |q: usize| {
            if q == 0 || q > n {
                Err(FormatError::Invalid(format!("state {q} outside 1..={n}")))
            } else {
                Ok(q - 1)
            }
        };
        let start = state(self.start)?;
        let mut finals = vec![false; n];
        for q in &self.finals {
            finals[state(*q)?] = true;
        }
        let k = self.alphabet.len();
        let mut delta = vec![None; n * k];
        for t in &self.transitions {
            let from = state(t.from)?;
            let to = state(t.to)?;
            let a = self
                .alphabet
                .iter()
                .position(|s| *s == t.symbol)
                .ok_or_else(|| FormatError::Invalid(format!("unknown symbol {:?}", t.symbol)))?;
            if delta[from * k + a].replace(to as u32).is_some() {
                return Err(FormatError::Invalid(format!(
                    "duplicate transition for state {} on {}",
                    t.from, t.symbol
                )));
            }
        }
        assemble(n, self.alphabet, delta, start, finals, complete)
    }
}

pub fn parse_dfa_json(text: &str, complete: bool) -> Result<Dfa, FormatError> {
    let raw: DfaJson = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    raw.into_dfa(complete)
}

/// Text or JSON, told apart by a leading `{`.
pub fn parse_any_dfa(text: &str, complete: bool) -> Result<Dfa, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_dfa_json(text, complete)
    } else {
        parse_dfa(text, complete)
    }
}

pub fn write_dfa_json(dfa: &Dfa) -> String {
    serde_json::to_string_pretty(&DfaJson::from(dfa)).expect("automaton JSON serializes")
}

/// Parses a semigroup file: `degree: n`, then one vector per line.
pub fn parse_semigroup(text: &str) -> Result<(usize, Vec<Transformation>), FormatError> {
    let mut lines = significant_lines(text);
    let (line, degree) = header(&mut lines, "degree")?;
    let n: usize = degree.parse().map_err(|_| syntax(line, "bad degree"))?;
    if n == 0 {
        return Err(syntax(line, "degree must be positive"));
    }
    let mut elements = Vec::new();
    for (line, body) in lines {
        let f: Transformation = body
            .parse()
            .map_err(|e: defsyc_core::Error| syntax(line, e.to_string()))?;
        if f.degree() != n {
            return Err(syntax(line, format!("degree {} does not match header {n}", f.degree())));
        }
        elements.push(f);
    }
    Ok((n, elements))
}

pub fn write_semigroup(degree: usize, elements: &[Transformation]) -> String {
    let mut out = format!("degree: {degree}\n");
    for f in elements {
        let _ = writeln!(out, "{f}");
    }
    out
}

/// Is this text a semigroup file rather than an automaton?
pub fn looks_like_semigroup(text: &str) -> bool {
    significant_lines(text)
        .next()
        .is_some_and(|(_, body)| body.starts_with("degree"))
}
