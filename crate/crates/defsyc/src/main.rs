use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use defsyc::bench::{bench_gendef, ratios, DEFAULT_SIZES};
use defsyc::budget::Budget;
use defsyc::format::{
    looks_like_semigroup, parse_any_dfa, parse_semigroup, write_dfa, write_dfa_json, write_semigroup,
};
use defsyc::generate::{generate_random_dfa, GeneratorConfig, Mode};
use defsyc::report::{oracle_label, ClassifyJson, DefizeJson, SearchJson, SycJson};
use defsyc_core::classify::{classify_report, GendefOptions, ReportOptions};
use defsyc_core::constructions::{defize, DefizeOptions, DEFAULT_MAX_ALPHABET};
use defsyc_core::search::{max_definite_syc, max_np_subsemigroup_bnb, max_np_subsemigroup_exact, SearchResult};
use defsyc_core::semigroup::{
    candidate_b, closure_violation, floor_e_factorial, satisfies_definite_identity, satisfies_gendef_identity,
    theorem_bound, TransformationSemigroup, DEFAULT_CAP,
};
use defsyc_core::{Dfa, Transformation};
use serde_json::json;

/// Definite and generalized definite languages, nonpermutational
/// transformation semigroups, and searches for extremal ones.
///
/// Exit status: 0 on success, 1 when a checked property fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "defsyc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Automaton file, text format or its JSON mirror (detected from the content)
    file: PathBuf,
    /// Write JSON
    #[arg(long)]
    json: bool,
    /// Send missing transitions to an added dead state instead of rejecting the file
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
struct SearchArgs {
    n: usize,
    #[arg(long, default_value_t = 10_000_000)]
    budget_nodes: u64,
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Serial search with reproducible node counts (the only mode implemented)
    #[arg(long)]
    deterministic: bool,
    /// Also write the witness to this semigroup file
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Definite and generalized definite verdicts with witnesses
    Classify {
        #[command(flatten)]
        input: Input,
        /// Cross-check with the semigroup identities
        #[arg(long)]
        oracle: bool,
        /// Only build the square over sink pairs
        #[arg(long)]
        sink_pairs_only: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Minimal automaton with canonical numbering
    Minimize {
        #[command(flatten)]
        input: Input,
    },
    /// Transition semigroup of an automaton, or checks on a semigroup file
    Semigroup {
        /// Automaton file, or a semigroup file starting with `degree:`
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Missing automaton transitions go to an added dead state
        #[arg(long)]
        complete: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Size of the transition semigroup of the minimal automaton
    Syc {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Is a transformation such as (2,3,3) nonpermutational?
    NpCheck {
        vector: String,
        #[arg(long)]
        json: bool,
    },
    /// Size bounds for nonpermutational subsemigroups of T_n
    Bounds {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// The candidate semigroup B(n) in semigroup file format
    CandidateB {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Largest closed all-nonpermutational subset of T_n
    SearchMax(SearchArgs),
    /// Largest such subset that is the transition semigroup of a reduced n-state automaton
    SearchDefsyc(SearchArgs),
    /// Definite automaton over a transformation alphabet with at least the input's syntactic complexity
    Defize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MAX_ALPHABET)]
        max_alphabet: u128,
        /// Write the verification sidecar here as well
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Seeded random automaton
    Randgen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value = "uniform")]
        mode: Mode,
        #[arg(long, default_value_t = 0.5)]
        final_density: f64,
        #[arg(long)]
        json: bool,
    },
    /// Time the generalized definite test on growing gendef-positive automata
    BenchGendef {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// A checked property does not hold.
    Violation(String),
    /// The input could not be used.
    Input(String),
}

impl From<defsyc_core::Error> for Failure {
    fn from(e: defsyc_core::Error) -> Self {
        match e {
            defsyc_core::Error::Postcondition(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Text for stdout plus whether a checked property failed.
struct Output {
    text: String,
    violation: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, violation: false }
    }

    fn json(value: &impl serde::Serialize) -> Self {
        Self::ok(serde_json::to_string_pretty(value).expect("report serializes") + "\n")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_dfa(input: &Input) -> Result<Dfa, Failure> {
    let text = read(&input.file)?;
    parse_any_dfa(&text, input.complete).map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))
}

fn dfa_text(dfa: &Dfa, json: bool) -> Result<String, Failure> {
    if json {
        Ok(write_dfa_json(dfa) + "\n")
    } else {
        write_dfa(dfa).map_err(|e| Failure::Violation(e.to_string()))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify {
            input,
            oracle,
            sink_pairs_only,
            cap,
        } => {
            let dfa = load_dfa(&input)?;
            let options = ReportOptions {
                oracle,
                cap,
                gendef: GendefOptions { sink_pairs_only },
            };
            let report = classify_report(&dfa, options);
            let disagreement = report.oracle_agreement() == Some(false);
            let mut out = if input.json {
                Output::json(&ClassifyJson::from(&report))
            } else {
                classify_text(&report)
            };
            out.violation = disagreement;
            Ok(out)
        }
        Command::Minimize { input } => {
            let dfa = load_dfa(&input)?;
            Ok(Output::ok(dfa_text(&dfa.minimize().0, input.json)?))
        }
        Command::Semigroup {
            file,
            json,
            complete,
            cap,
        } => semigroup_command(&file, json, complete, cap),
        Command::Syc { input, cap } => {
            let dfa = load_dfa(&input)?;
            let syc = SycJson::from(dfa.syntactic_complexity(cap));
            if input.json {
                return Ok(Output::json(&json!({ "syntactic_complexity": syc })));
            }
            Ok(Output::ok(match syc {
                SycJson::Exact(n) => format!("{n}\n"),
                SycJson::Capped { exceeds_cap } => format!("exceeds cap {exceeds_cap}\n"),
            }))
        }
        Command::NpCheck { vector, json } => {
            let f: Transformation = vector.parse()?;
            let by_cycles = f.is_nonpermutational_by_cycles();
            let by_idempotent = f.is_nonpermutational_by_idempotent();
            let fixed = f.fix().ok().map(|p| p + 1);
            let omega = f.idempotent_power();
            let mut out = if json {
                Output::json(&json!({
                    "vector": f.to_string(),
                    "nonpermutational": by_cycles && by_idempotent,
                    "by_cycles": by_cycles,
                    "by_idempotent_power": by_idempotent,
                    "fixed_point": fixed,
                    "idempotent_power": omega.to_string(),
                }))
            } else {
                let mut s = format!(
                    "{f}: {}\n",
                    if by_cycles { "nonpermutational" } else { "permutational" }
                );
                if let Some(p) = fixed {
                    let _ = writeln!(s, "fixed point: {p}");
                }
                let _ = writeln!(s, "idempotent power: {omega}");
                Output::ok(s)
            };
            if by_cycles != by_idempotent {
                return Err(Failure::Violation(format!(
                    "the two nonpermutational tests disagree on {f}"
                )));
            }
            out.violation = !by_cycles;
            Ok(out)
        }
        Command::Bounds { n, json } => {
            let fe = floor_e_factorial(n)?;
            let tb = if n >= 3 { Some(theorem_bound(n)?) } else { None };
            // the single formula only dominates the candidate size from n = 4 on
            let flagged = tb.is_some_and(|t| t < fe);
            if json {
                return Ok(Output::json(&json!({
                    "n": n,
                    "floor_e_factorial": fe as u64,
                    "theorem_bound": tb.map(|t| t as u64),
                    "theorem_bound_below_floor_e_factorial": flagged,
                })));
            }
            let mut s = format!("floor_e_factorial: {fe}\n");
            match tb {
                Some(t) => {
                    let _ = writeln!(s, "theorem_bound: {t}");
                }
                None => s.push_str("theorem_bound: undefined for n < 3\n"),
            }
            if flagged {
                s.push_str("note: theorem_bound is below floor_e_factorial here, so it is not an upper bound\n");
            }
            Ok(Output::ok(s))
        }
        Command::CandidateB { n, json } => {
            let b = candidate_b(n)?;
            if json {
                let elements: Vec<String> = b.elements().iter().map(ToString::to_string).collect();
                return Ok(Output::json(
                    &json!({ "degree": n, "size": b.len(), "elements": elements }),
                ));
            }
            Ok(Output::ok(write_semigroup(n, b.elements())))
        }
        Command::SearchMax(args) => {
            let mut budget = Budget::new(Some(args.budget_nodes), args.budget_secs);
            let result = if args.n <= 3 {
                max_np_subsemigroup_exact(args.n)?
            } else {
                max_np_subsemigroup_bnb(args.n, &mut budget)?
            };
            search_output(&args, &result, None)
        }
        Command::SearchDefsyc(args) => {
            let mut budget = Budget::new(Some(args.budget_nodes), args.budget_secs);
            let r = max_definite_syc(args.n, &mut budget)?;
            let finals: Vec<usize> = (0..args.n).filter(|&q| r.finals[q]).map(|q| q + 1).collect();
            let extra = format!("# start: {}\n# final: {}\n", r.start + 1, join(&finals));
            if args.json {
                if let Some(path) = &args.output {
                    write_file(path, &write_semigroup(args.n, &r.search.witness))?;
                }
                return Ok(Output::json(&SearchJson::realizable(&r, args.budget_secs)));
            }
            search_output(&args, &r.search, Some(extra))
        }
        Command::Defize {
            input,
            max_alphabet,
            sidecar,
            cap,
        } => {
            let dfa = load_dfa(&input)?;
            let minimal = dfa.minimize().0;
            let d = defize(&minimal, DefizeOptions { max_alphabet, cap })?;
            let report = DefizeJson::from(&d);
            let sidecar_text = serde_json::to_string_pretty(&report).expect("sidecar serializes");
            if let Some(path) = &sidecar {
                write_file(path, &(sidecar_text.clone() + "\n"))?;
            }
            let mut out = if input.json {
                Output::json(&json!({ "automaton": defsyc::format::DfaJson::from(&d.dfa), "sidecar": report }))
            } else {
                let mut text = dfa_text(&d.dfa, false)?;
                let _ = writeln!(
                    text,
                    "# sidecar: {}",
                    serde_json::to_string(&report).expect("sidecar serializes")
                );
                Output::ok(text)
            };
            out.violation = !d.verification.passed();
            Ok(out)
        }
        Command::Randgen {
            seed,
            states,
            alphabet,
            mode,
            final_density,
            json,
        } => {
            let cfg = GeneratorConfig {
                seed,
                state_count: states,
                alphabet_size: alphabet,
                mode,
                final_density,
            };
            let dfa = generate_random_dfa(&cfg).map_err(Failure::Input)?;
            Ok(Output::ok(dfa_text(&dfa, json)?))
        }
        Command::BenchGendef {
            sizes,
            seed,
            alphabet,
            json,
        } => {
            let cfg = GeneratorConfig {
                seed,
                alphabet_size: alphabet,
                ..Default::default()
            };
            let rows = bench_gendef(&sizes, &cfg).map_err(Failure::Violation)?;
            let r = ratios(&rows);
            if json {
                let table: Vec<_> = rows
                    .iter()
                    .map(|row| json!({ "states": row.states, "minimized_states": row.minimized_states, "millis": row.millis }))
                    .collect();
                return Ok(Output::json(&json!({ "rows": table, "ratios": r })));
            }
            let mut s = String::from("states  minimized  median_ms\n");
            for row in &rows {
                let _ = writeln!(s, "{:>6}  {:>9}  {:>9.3}", row.states, row.minimized_states, row.millis);
            }
            let _ = writeln!(
                s,
                "ratios: {}",
                r.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join(" ")
            );
            Ok(Output::ok(s))
        }
    }
}

fn join(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn classify_text(r: &defsyc_core::ClassificationReport) -> Output {
    let mut s = String::new();
    let _ = writeln!(s, "minimized states: {}", r.minimized_size());
    let _ = writeln!(s, "definite: {}", yes(r.definite));
    let describe = |w: &defsyc_core::PatternWitness| {
        let word = |x: &[usize]| r.minimal.symbol_names(x).join(" ");
        let mut line = format!("p={} q={} x=[{}]", w.p + 1, w.q + 1, word(&w.x));
        if let Some(y) = &w.y {
            let _ = write!(line, " y=[{}]", word(y));
        }
        line
    };
    if let Some(w) = &r.pd_witness {
        let _ = writeln!(s, "  P_d witness: {}", describe(w));
    }
    let _ = writeln!(s, "generalized definite: {}", yes(r.generalized_definite));
    if let Some(w) = &r.pg_witness {
        let _ = writeln!(s, "  P_g witness: {}", describe(w));
    }
    match SycJson::from(r.syntactic_complexity) {
        SycJson::Exact(n) => {
            let _ = writeln!(s, "syntactic complexity: {n}");
        }
        SycJson::Capped { exceeds_cap } => {
            let _ = writeln!(s, "syntactic complexity: exceeds cap {exceeds_cap}");
        }
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(
            s,
            "oracle: definite identity {}, generalized definite identity {}",
            oracle_label(&o.definite_identity),
            oracle_label(&o.gendef_identity)
        );
        if let Some(agree) = r.oracle_agreement() {
            let _ = writeln!(s, "oracle agreement: {}", yes(agree));
        }
    }
    Output::ok(s)
}

fn semigroup_command(file: &Path, json: bool, complete: bool, cap: usize) -> Outcome {
    let text = read(file)?;
    if looks_like_semigroup(&text) {
        let (degree, elements) =
            parse_semigroup(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
        let violation = closure_violation(&elements);
        let all_np = elements.iter().all(Transformation::is_nonpermutational);
        let mut identities = None;
        if violation.is_none() && !elements.is_empty() {
            let s = TransformationSemigroup::from_closed_elements(degree, elements.clone())?;
            identities = Some((
                satisfies_definite_identity(&s)?.is_none(),
                satisfies_gendef_identity(&s)?.is_none(),
            ));
        }
        let mut out = if json {
            Output::json(&json!({
                "degree": degree,
                "size": elements.len(),
                "closed": violation.is_none(),
                "closure_violation": violation.as_ref().map(|(f, g)| [f.to_string(), g.to_string()]),
                "all_nonpermutational": all_np,
                "definite_identity": identities.map(|i| i.0),
                "gendef_identity": identities.map(|i| i.1),
            }))
        } else {
            let mut s = format!("degree: {degree}\nsize: {}\n", elements.len());
            match &violation {
                None => s.push_str("closed: yes\n"),
                Some((f, g)) => {
                    let _ = writeln!(s, "closed: no ({f} {g} = {} is missing)", f.then(g));
                }
            }
            let _ = writeln!(s, "all nonpermutational: {}", yes(all_np));
            if let Some((d, g)) = identities {
                let _ = writeln!(
                    s,
                    "definite identity: {}\ngeneralized definite identity: {}",
                    yes(d),
                    yes(g)
                );
            }
            Output::ok(s)
        };
        out.violation = violation.is_some();
        return Ok(out);
    }
    let dfa = parse_any_dfa(&text, complete).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let s = dfa.transition_semigroup(cap);
    if json {
        let elements: Vec<String> = s.elements().iter().map(ToString::to_string).collect();
        return Ok(Output::json(&json!({
            "degree": s.degree(),
            "size": s.len(),
            "truncated": s.is_truncated(),
            "elements": elements,
        })));
    }
    let mut text = String::new();
    if s.is_truncated() {
        let _ = writeln!(text, "# truncated at {cap} elements");
    }
    text.push_str(&write_semigroup(s.degree(), s.elements()));
    Ok(Output::ok(text))
}

fn search_output(args: &SearchArgs, r: &SearchResult, extra: Option<String>) -> Outcome {
    let file = write_semigroup(r.degree, &r.witness);
    if let Some(path) = &args.output {
        write_file(path, &file)?;
    }
    if args.json {
        return Ok(Output::json(&SearchJson::new(r, args.budget_secs)));
    }
    let mut s = String::new();
    let _ = writeln!(s, "# best size: {}", r.best_size);
    let _ = writeln!(s, "# exhaustive: {}", yes(r.exhaustive));
    let _ = writeln!(s, "# explored nodes: {}", r.explored_nodes);
    if let Some(extra) = extra {
        s.push_str(&extra);
    }
    s.push_str(&file);
    Ok(Output::ok(s))
}
