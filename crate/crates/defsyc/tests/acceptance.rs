//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use defsyc::bench::{bench_gendef, ratios, DEFAULT_SIZES};
use defsyc::format::parse_dfa;
use defsyc::generate::{generate_random_dfa, GeneratorConfig, Mode};
use defsyc_core::classify::{classify_report, is_definite, is_generalized_definite, ReportOptions};
use defsyc_core::constructions::{
    defize, sink_partition, sink_restriction_semigroup, transformation_alphabet_size, DefizeOptions,
    DEFAULT_MAX_ALPHABET,
};
use defsyc_core::search::{
    certify, max_definite_syc, max_np_subsemigroup_bnb, max_np_subsemigroup_exact, realizing_choice, Monitor,
    NodeBudget,
};
use defsyc_core::semigroup::{
    candidate_b, floor_e_factorial, satisfies_definite_identity, satisfies_gendef_identity, theorem_bound, DEFAULT_CAP,
};
use defsyc_core::transformation::{all_transformations, enumerate_np};
use defsyc_core::{Dfa, Transformation};
use num_bigint::BigUint;

const NP_SECS: f64 = 1.0;
const CANDIDATE_SECS: f64 = 10.0;
const EXACT_SECS: f64 = 1.0;
const BNB_NODES: u64 = 10_000_000;
const BNB_MIN_SIZE: usize = 16;
const ORACLE_INSTANCES: u64 = 500;
const ORACLE_SECS: f64 = 60.0;
const DEFIZE_INSTANCES: usize = 50;
const DEFIZE_MAX_STATES: usize = 7;
const DEFIZE_MAX_SEEDS: u64 = 100_000;
const BENCH_MAX_RATIO: f64 = 5.0;
const BENCH_MAX_MILLIS_AT_4000: f64 = 10_000.0;

const E_DIGITS: &str = "27182818284590452353602874713526624977572470936999595749669676277240766303535";

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn secs(t0: Instant) -> f64 {
    t0.elapsed().as_secs_f64()
}

fn np_by_subsets(f: &Transformation) -> bool {
    let n = f.degree();
    (1u32..1 << n).all(|x| {
        let image = (0..n)
            .filter(|&i| x >> i & 1 == 1)
            .fold(0u32, |acc, i| acc | 1 << f.image(i));
        image != x || x.count_ones() == 1
    })
}

fn closed(set: &[Transformation]) -> bool {
    set.iter().all(|f| {
        set.iter().all(|g| {
            let images: Vec<u32> = (0..f.degree()).map(|i| g.image(f.image(i)) as u32).collect();
            set.binary_search(&Transformation::new(images).unwrap()).is_ok()
        })
    })
}

fn np_dual_agreement() -> Outcome {
    let t0 = Instant::now();
    let mut disagreements = 0;
    let mut counts = Vec::new();
    let mut cases = 0;
    for n in 1..=5 {
        let mut count = 0;
        for f in all_transformations(n) {
            cases += 1;
            let (c, i, d) = (
                f.is_nonpermutational_by_cycles(),
                f.is_nonpermutational_by_idempotent(),
                np_by_subsets(&f),
            );
            disagreements += (c != i || c != d) as usize;
            count += d as usize;
        }
        if n >= 2 {
            counts.push(count);
        }
    }
    let time = secs(t0);
    let pass = disagreements == 0 && counts == [2, 9, 64, 625] && time < NP_SECS;
    outcome(
        pass,
        format!("{cases} cases, {disagreements} disagreements, |NP_n| for n=2..5 = {counts:?}, {time:.3} s"),
    )
}

fn floor_e_times_factorial(m: u64) -> BigUint {
    let e: BigUint = E_DIGITS.parse().unwrap();
    let fact: BigUint = (1..=m).map(BigUint::from).product();
    e * fact / BigUint::from(10u32).pow(E_DIGITS.len() as u32 - 1)
}

fn candidate_b_certified() -> Outcome {
    let t0 = Instant::now();
    let mut sizes = Vec::new();
    let mut ok = true;
    for n in 3..=7 {
        let b = candidate_b(n).unwrap();
        let exact = floor_e_factorial(n).unwrap();
        ok &= closed(b.elements());
        ok &= b.elements().iter().all(Transformation::is_nonpermutational);
        ok &= b.len() as u128 == exact;
        ok &= BigUint::from(exact) == floor_e_times_factorial(n as u64 - 1);
        sizes.push(b.len());
    }
    let time = secs(t0);
    let pass = ok && sizes == [5, 16, 65, 326, 1957] && time < CANDIDATE_SECS;
    outcome(
        pass,
        format!("sizes {sizes:?}, closed and all nonpermutational: {ok}, {time:.2} s"),
    )
}

fn exact_at_three() -> Outcome {
    let t0 = Instant::now();
    let r = max_np_subsemigroup_exact(3).unwrap();
    let np = enumerate_np(3).unwrap();
    let brute = (1u32..1 << np.len())
        .filter(|mask| {
            let s: Vec<_> = (0..np.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| np[i].clone())
                .collect();
            closed(&s)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap();
    let cap = floor_e_factorial(3).unwrap().max(theorem_bound(3).unwrap()) as usize;
    let time = secs(t0);
    let pass =
        r.exhaustive && r.best_size == brute && certify(&r.witness).is_ok() && r.best_size <= cap && time < EXACT_SECS;
    outcome(
        pass,
        format!(
            "best {} over {} subsets, brute force {brute}, bound {cap}, exhaustive {}, {time:.3} s",
            r.best_size,
            1u32 << np.len(),
            r.exhaustive
        ),
    )
}

/// Certifies every incumbent, stopping at the node budget.
struct Audit {
    incumbents: usize,
    failures: usize,
}

impl Monitor for Audit {
    fn interrupted(&mut self, explored: u64) -> bool {
        explored > BNB_NODES
    }

    fn incumbent(&mut self, witness: &[Transformation]) {
        self.incumbents += 1;
        self.failures += certify(witness).is_err() as usize;
    }

    fn node_limit(&self) -> Option<u64> {
        Some(BNB_NODES)
    }
}

fn bnb_at_four() -> Outcome {
    let mut audit = Audit {
        incumbents: 0,
        failures: 0,
    };
    let r = max_np_subsemigroup_bnb(4, &mut audit).unwrap();
    let bound = theorem_bound(4).unwrap() as usize;
    let certified = certify(&r.witness).is_ok();
    let within = !r.exhaustive || r.best_size <= bound;
    let pass = certified && r.best_size >= BNB_MIN_SIZE && audit.failures == 0 && within;
    outcome(
        pass,
        format!(
            "best {}, exhaustive {}, {} nodes, {} improving incumbents, all certified: {}, bound {bound}",
            r.best_size,
            r.exhaustive,
            r.explored_nodes,
            audit.incumbents,
            audit.failures == 0
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let t0 = Instant::now();
    let mut disagreements = 0;
    for seed in 0..ORACLE_INSTANCES {
        let n = 1 + seed as usize % 6;
        let k = 2 + (seed as usize / 6) % 2;
        let cfg = GeneratorConfig {
            seed,
            state_count: n,
            alphabet_size: k,
            mode: Mode::Uniform,
            ..Default::default()
        };
        let dfa = generate_random_dfa(&cfg).unwrap();
        let d = is_definite(&dfa);
        let g = is_generalized_definite(&dfa);
        let s = d.minimal.transition_semigroup(DEFAULT_CAP);
        let di = satisfies_definite_identity(&s).unwrap().is_none();
        let gi = satisfies_gendef_identity(&s).unwrap().is_none();
        disagreements += (d.holds() != di) as usize + (g.holds() != gi) as usize;
    }
    let time = secs(t0);
    let pass = disagreements == 0 && time < ORACLE_SECS;
    outcome(
        pass,
        format!("{ORACLE_INSTANCES} automata, {disagreements} disagreements, {time:.2} s"),
    )
}

fn fixture(text: &str) -> Dfa {
    parse_dfa(text, false).unwrap()
}

fn fixed_fixtures() -> Outcome {
    let opts = ReportOptions::default();
    let ends = classify_report(
        &fixture("states: 2\nalphabet: a b\nstart: 1\nfinal: 2\n1 a 2\n1 b 1\n2 a 2\n2 b 1\n"),
        opts,
    );
    let starts = classify_report(
        &fixture("states: 3\nalphabet: a b\nstart: 1\nfinal: 2\n1 a 2\n1 b 3\n2 a 2\n2 b 2\n3 a 3\n3 b 3\n"),
        opts,
    );
    let parity = classify_report(
        &fixture("states: 2\nalphabet: a\nstart: 1\nfinal: 1\n1 a 2\n2 a 1\n"),
        opts,
    );
    let one = classify_report(
        &fixture("states: 1\nalphabet: a b\nstart: 1\nfinal:\n1 a 1\n1 b 1\n"),
        opts,
    );

    let replay = |w: &Option<defsyc_core::PatternWitness>, dfa: &Dfa| w.as_ref().is_some_and(|w| w.replays(dfa));
    let checks = [
        ends.definite && ends.generalized_definite && ends.syntactic_complexity.exact() == Some(2),
        !starts.definite && starts.generalized_definite && replay(&starts.pd_witness, &starts.minimal),
        !parity.definite && !parity.generalized_definite && replay(&parity.pg_witness, &parity.minimal),
        one.definite && one.generalized_definite,
    ];
    outcome(
        checks.iter().all(|&c| c),
        format!("Σ*a, aΣ*, parity, one state: {checks:?}"),
    )
}

fn defize_theorem() -> Outcome {
    let mut checked = 0;
    let mut failures = 0;
    let mut skipped_singleton = 0;
    let mut skipped_guard = 0;
    let mut seed = 0;
    while checked < DEFIZE_INSTANCES && seed < DEFIZE_MAX_SEEDS {
        let n = 2 + seed as usize % (DEFIZE_MAX_STATES - 1);
        let k = 2 + (seed as usize / 6) % 2;
        let cfg = GeneratorConfig {
            seed,
            state_count: n,
            alphabet_size: k,
            mode: Mode::GendefPositive,
            ..Default::default()
        };
        seed += 1;
        let dfa = generate_random_dfa(&cfg).unwrap().minimize().0;
        let partition = sink_partition(&dfa).unwrap();
        let top = partition.largest_sink();
        if top.len() < 2 {
            skipped_singleton += 1;
            continue;
        }
        let tc = sink_restriction_semigroup(&dfa, top, DEFAULT_CAP).unwrap();
        if transformation_alphabet_size(&partition, tc.len()).map_or(true, |s| s > DEFAULT_MAX_ALPHABET) {
            skipped_guard += 1;
            continue;
        }
        let d = defize(&dfa, DefizeOptions::default()).unwrap();
        let monotone = match (d.input_syc.exact(), d.output_syc.exact()) {
            (Some(a), Some(b)) => a <= b,
            _ => false,
        };
        if !(d.verification.reduced && d.verification.avoids_pd && monotone) {
            failures += 1;
        }
        checked += 1;
    }
    let asb = fixture(
        "states: 4\nalphabet: a b\nstart: 1\nfinal: 3\n1 a 2\n1 b 4\n2 a 2\n2 b 3\n3 a 2\n3 b 3\n4 a 4\n4 b 4\n",
    );
    let d = defize(&asb, DefizeOptions::default()).unwrap();
    let fixture_ok = d.alphabet_size == 12 && d.input_syc.exact() == Some(4);
    let pass = checked >= DEFIZE_INSTANCES && failures == 0 && fixture_ok;
    outcome(
        pass,
        format!(
            "{checked} instances from {seed} seeds ({skipped_singleton} singleton sinks, {skipped_guard} over the \
             alphabet guard), {failures} failures; aΣ*b alphabet {} with |T(A)| = {:?}",
            d.alphabet_size,
            d.input_syc.exact()
        ),
    )
}

fn quadratic_scaling() -> Outcome {
    let cfg = GeneratorConfig {
        alphabet_size: 2,
        ..Default::default()
    };
    let rows = bench_gendef(&DEFAULT_SIZES, &cfg).unwrap();
    let r = ratios(&rows);
    let last = rows.last().unwrap().millis;
    let pass = r.iter().all(|&x| x <= BENCH_MAX_RATIO) && last < BENCH_MAX_MILLIS_AT_4000;
    let times: Vec<String> = rows
        .iter()
        .map(|row| format!("{}:{:.1}ms", row.states, row.millis))
        .collect();
    let r: Vec<String> = r.iter().map(|x| format!("{x:.2}")).collect();
    outcome(pass, format!("times [{}], ratios [{}]", times.join(" "), r.join(" ")))
}

fn realizability_probe() -> Outcome {
    let b = candidate_b(3).unwrap();
    // states 2 and 3 are 1 and 2 here
    let same_images = b.elements().iter().all(|f| f.image(1) == f.image(2));
    let b_choice = realizing_choice(3, b.elements());
    let r = max_definite_syc(3, &mut NodeBudget(BNB_NODES)).unwrap();
    let realized = Dfa::from_transformations(&r.search.witness, r.start, r.finals.clone())
        .map(|d| d.is_reduced())
        .unwrap_or(false);
    let finals: Vec<usize> = (0..3).filter(|&q| r.finals[q]).map(|q| q + 1).collect();
    let b_detail = match &b_choice {
        None => "not realizable".to_owned(),
        Some((q0, f)) => {
            let f: Vec<usize> = (0..3).filter(|&q| f[q]).map(|q| q + 1).collect();
            format!("realizable with q0 = {}, F = {f:?}", q0 + 1)
        }
    };
    let pass = same_images && b_choice.is_none() && realized && r.search.exhaustive;
    outcome(
        pass,
        format!(
            "states 2 and 3 share images under B(3): {same_images}; B(3) {b_detail}; largest realizable {} \
             (exhaustive {}) with q0 = {}, F = {finals:?}",
            r.search.best_size,
            r.search.exhaustive,
            r.start + 1
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("nonpermutational tests agree", np_dual_agreement),
        ("candidate B certified", candidate_b_certified),
        ("exact maximum at n = 3", exact_at_three),
        ("branch and bound at n = 4", bnb_at_four),
        ("classifier matches identity oracles", oracle_equivalence),
        ("fixed fixtures", fixed_fixtures),
        ("defize preserves definiteness and complexity", defize_theorem),
        ("quadratic scaling of the generalized definite test", quadratic_scaling),
        ("realizability probe at n = 3", realizability_probe),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += !o.pass as usize;
        println!(
            "{} {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
