//! Named verification suites: solver regressions, bound sandwiches,
//! Danger conservation, strategy guarantees by best-response search, the
//! H3 subgame kernel, and solver self-consistency. Both the CLI `verify`
//! command and the acceptance test suite drive these.

use crate::bounds::{danger_potential, sandwich_check};
use crate::corpus::{default_corpus, CorpusEntry};
use crate::dyadic::DyadicValue;
use crate::game::{GameState, Player, TurnSchedule};
use crate::generate::{gadget24, generate, Family};
use crate::graph::Graph;
use crate::solver::{
    best_response_value, solve_exact, solve_subgame, SolveOptions, SubgameSpec,
};
use crate::strategy::{build_strategy, Strategy};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} {}/{}: {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.details,
            self.elapsed.as_millis()
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub opts: SolveOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 7, trials: 1000, opts: SolveOptions::default() }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "solver-regression",
    "bound-sandwich",
    "danger-conservation",
    "strategy-guarantees",
    "h3-subgame",
    "unreproducible",
    "exploratory-table",
    "solver-self-consistency",
];

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Option<Vec<CheckResult>> {
    match name {
        "solver-regression" => Some(solver_regression(cfg)),
        "bound-sandwich" => Some(bound_sandwich(cfg)),
        "danger-conservation" => Some(danger_conservation(cfg)),
        "strategy-guarantees" => Some(strategy_guarantees(cfg)),
        "h3-subgame" => Some(h3_subgame(cfg)),
        "unreproducible" => Some(unreproducible_notes()),
        "exploratory-table" => Some(exploratory_table(cfg)),
        "solver-self-consistency" => Some(solver_self_consistency(cfg)),
        _ => None,
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    SUITE_NAMES
        .iter()
        .flat_map(|s| run_suite(s, cfg).expect("known suite"))
        .collect()
}

fn check(
    suite: &'static str,
    name: impl Into<String>,
    start: Instant,
    passed: bool,
    details: impl Into<String>,
) -> CheckResult {
    CheckResult {
        suite,
        name: name.into(),
        passed,
        details: details.into(),
        elapsed: start.elapsed(),
    }
}

fn exact(g: &Graph, opts: &SolveOptions) -> usize {
    solve_exact(g, &TurnSchedule::default(), opts)
        .expect("within ceiling")
        .value
}

/// Exact solver values on the named tight examples.
fn solver_regression(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut expectations: Vec<(String, Family, usize)> = vec![
        ("u(C3)=0".into(), Family::Cycle(3), 0),
        ("u(C4)=1".into(), Family::Cycle(4), 1),
        ("u(P2)=0".into(), Family::Path(2), 0),
        ("u(P3)=1".into(), Family::Path(3), 1),
        ("u(P6)=1".into(), Family::Path(6), 1),
        ("u(P7)=2".into(), Family::Path(7), 2),
        ("u(K4)=0".into(), Family::K4Components(1), 0),
        ("u(3xC3)=1".into(), Family::C3Components(3), 1),
    ];
    for n in [3usize, 5, 7, 9] {
        expectations.push((format!("u(star{})={}", n, (n - 1) / 2), Family::Star(n), (n - 1) / 2));
    }
    for x in 0..=3usize {
        expectations.push((
            format!("u({}xP3+P2)={}", x, x),
            Family::P3ComponentsPlusP2(x),
            x,
        ));
    }
    expectations
        .into_par_iter()
        .map(|(name, fam, want)| {
            let start = Instant::now();
            let g = generate(&fam).expect("valid family");
            let got = exact(&g, &cfg.opts);
            check(
                "solver-regression",
                name,
                start,
                got == want,
                format!("expected {}, solver found {}", want, got),
            )
        })
        .collect()
}

/// Every applicable bound sandwiches the exact value on the whole corpus.
fn bound_sandwich(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let start = Instant::now();
    let corpus: Vec<CorpusEntry> = default_corpus()
        .into_iter()
        .filter(|e| e.graph.edge_count() <= 14)
        .collect();
    let total = corpus.len();
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|entry| {
            let u = exact(&entry.graph, &cfg.opts);
            sandwich_check(&entry.graph, u, None)
                .into_iter()
                .filter(|v| !v.holds)
                .map(|v| {
                    format!(
                        "{}: {} (tightened {}) violated by u={}",
                        entry.name, v.name, v.tightened, u
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    vec![check(
        "bound-sandwich",
        "all-corpus",
        start,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} graphs, every applicable bound sandwiches u", total)
        } else {
            failures.join("; ")
        },
    )]
}

/// Seeded random playouts: each move shifts the total Danger by exactly
/// the endpoint Danger sum, and the terminal total equals the untouched
/// count.
fn danger_conservation(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let start = Instant::now();
    let corpus = default_corpus();
    let mut violations = Vec::new();
    for trial in 0..cfg.trials {
        let entry = &corpus[trial % corpus.len()];
        let g = &entry.graph;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (trial as u64) << 20);
        let mut state = GameState::new(g, TurnSchedule::default());
        while !state.is_terminal() {
            let free: Vec<_> = state.free_edges().collect();
            let e = free[rng.gen_range(0..free.len())];
            let (x, y) = g.endpoints(e);
            let before = state.total_danger();
            let endpoint_sum = state.danger(x).unwrap() + state.danger(y).unwrap();
            let player = state.apply_move(e).unwrap();
            let after = state.total_danger();
            let delta_ok = match player {
                Player::Toucher => before - after == endpoint_sum,
                Player::Isolator => after - before == endpoint_sum,
            };
            if !delta_ok {
                violations.push(format!("trial {} on {}: move delta mismatch", trial, entry.name));
                break;
            }
        }
        if state.is_terminal() {
            let untouched = state.untouched_count().unwrap();
            if state.total_danger() != DyadicValue::from_int(untouched as i64) {
                violations.push(format!(
                    "trial {} on {}: terminal danger != untouched",
                    trial, entry.name
                ));
            }
        }
    }
    vec![check(
        "danger-conservation",
        format!("{}-playouts", cfg.trials),
        start,
        violations.is_empty(),
        if violations.is_empty() {
            "every move conserved Danger exactly; terminal totals matched".to_string()
        } else {
            violations.join("; ")
        },
    )]
}

fn best_response(
    g: &Graph,
    spec: &str,
    side: Player,
    opts: &SolveOptions,
) -> Result<usize, String> {
    let strat = build_strategy(spec, g).map_err(|e| e.to_string())?;
    best_response_value(g, &TurnSchedule::default(), side, &strat, opts)
        .map(|r| r.value)
        .map_err(|e| e.to_string())
}

/// Strategy guarantees certified by exact best-response search.
fn strategy_guarantees(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let suite = "strategy-guarantees";
    let opts = cfg.opts.clone();
    let mut results = Vec::new();

    // (a) the pairing strategy on minimum degree 4
    for (name, g) in [
        ("pairing-k5", crate::corpus::complete_graph(5)),
        ("pairing-c8-12", generate(&Family::Circulant(8, vec![1, 2])).unwrap()),
    ] {
        let start = Instant::now();
        match best_response(&g, "pairing", Player::Toucher, &opts) {
            Ok(v) => results.push(check(suite, name, start, v == 0, format!("value {}", v))),
            Err(e) => results.push(check(suite, name, start, false, e)),
        }
    }

    // (b) and (c): the max-Danger guarantees over the whole small corpus
    let corpus: Vec<CorpusEntry> = default_corpus()
        .into_iter()
        .filter(|e| e.graph.edge_count() <= 14)
        .collect();
    for (name, side) in [
        ("max-danger-toucher-upper", Player::Toucher),
        ("max-danger-isolator-lower", Player::Isolator),
    ] {
        let start = Instant::now();
        let failures: Vec<String> = corpus
            .par_iter()
            .filter_map(|entry| {
                let g = &entry.graph;
                let v = match best_response(g, "max_danger", side, &opts) {
                    Ok(v) => v as i64,
                    Err(e) => return Some(format!("{}: {}", entry.name, e)),
                };
                let potential = danger_potential(g);
                let ok = match side {
                    Player::Toucher => v <= potential.floor().to_integer(),
                    Player::Isolator => {
                        let m = g.edge_count() as i64;
                        let bound = (potential - Ratio::new(m + 7, 8)).ceil().to_integer();
                        v >= bound
                    }
                };
                (!ok).then(|| format!("{}: value {} breaks the bound", entry.name, v))
            })
            .collect();
        results.push(check(
            suite,
            name,
            start,
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} corpus graphs within the potential bound", corpus.len())
            } else {
                failures.join("; ")
            },
        ));
    }

    // (d) cycle segments
    for n in [17usize, 19] {
        let start = Instant::now();
        let g = generate(&Family::Cycle(n)).unwrap();
        let want = Ratio::new(3 * (n as i64 - 3), 16).ceil().to_integer();
        match best_response(&g, "cycle_segment", Player::Isolator, &opts) {
            Ok(v) => results.push(check(
                suite,
                format!("cycle-segment-c{}", n),
                start,
                v as i64 >= want,
                format!("value {} vs bound {}", v, want),
            )),
            Err(e) => results.push(check(suite, format!("cycle-segment-c{}", n), start, false, e)),
        }
    }

    // (e) path segments
    for n in [7usize, 10, 18] {
        let start = Instant::now();
        let g = generate(&Family::Path(n)).unwrap();
        let want = Ratio::new(3 * (n as i64 - 2), 16).ceil().to_integer();
        match best_response(&g, "path_segment", Player::Isolator, &opts) {
            Ok(v) => results.push(check(
                suite,
                format!("path-segment-p{}", n),
                start,
                v as i64 >= want,
                format!("value {} vs bound {}", v, want),
            )),
            Err(e) => results.push(check(suite, format!("path-segment-p{}", n), start, false, e)),
        }
    }

    // (f) 2-regular
    for (name, g) in [
        ("two-regular-2xc3", generate(&Family::C3Components(2)).unwrap()),
        ("two-regular-c9", generate(&Family::Cycle(9)).unwrap()),
        ("two-regular-3xc3", generate(&Family::C3Components(3)).unwrap()),
    ] {
        let start = Instant::now();
        let n = g.vertex_count() as i64;
        let want = Ratio::new(n - 3, 6).ceil().to_integer().max(0);
        match best_response(&g, "two_regular", Player::Isolator, &opts) {
            Ok(v) => results.push(check(
                suite,
                name,
                start,
                v as i64 >= want,
                format!("value {} vs bound {}", v, want),
            )),
            Err(e) => results.push(check(suite, name, start, false, e)),
        }
    }

    // (g) K4 components
    for c in [1usize, 2] {
        let start = Instant::now();
        let g = generate(&Family::K4Components(c)).unwrap();
        match best_response(&g, "k4_components", Player::Toucher, &opts) {
            Ok(v) => results.push(check(
                suite,
                format!("k4-components-{}", c),
                start,
                v == 0,
                format!("value {}", v),
            )),
            Err(e) => results.push(check(suite, format!("k4-components-{}", c), start, false, e)),
        }
    }

    // (h) odd C3 components
    {
        let start = Instant::now();
        let g = generate(&Family::C3Components(3)).unwrap();
        match best_response(&g, "c3_components", Player::Toucher, &opts) {
            Ok(v) => results.push(check(
                suite,
                "c3-components-3",
                start,
                v == 1,
                format!("value {} (want exactly 1)", v),
            )),
            Err(e) => results.push(check(suite, "c3-components-3", start, false, e)),
        }
    }

    results
}

/// The 11-edge block kernel of the 3-regular gadget argument.
///
/// Region: the third block's edges. The connector towards the second
/// block is Isolator's (his answer to Toucher's opening elsewhere); the
/// connector towards the first block is conservatively given to Toucher,
/// whose ownership the argument never relies on. Isolator moves next and
/// Toucher may pass, modelling her freedom to play outside the block.
pub fn h3_kernel_spec() -> (Graph, SubgameSpec) {
    let g = gadget24();
    let spec = SubgameSpec {
        region: (22..=32).collect(),
        preclaimed: vec![(35, Player::Isolator), (34, Player::Toucher)],
        first_mover: Player::Isolator,
        pass_allowed: Some(Player::Toucher),
        objective: (16..=23).collect(),
    };
    (g, spec)
}

fn h3_subgame(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let start = Instant::now();
    let (g, spec) = h3_kernel_spec();
    match solve_subgame(&g, &spec, &cfg.opts) {
        Ok(r) => vec![check(
            "h3-subgame",
            "kernel",
            start,
            r.value >= 1,
            format!("value {} with Toucher passes allowed (want >= 1)", r.value),
        )],
        Err(e) => vec![check("h3-subgame", "kernel", start, false, e.to_string())],
    }
}

/// Claims beyond desk scale, stated rather than tested.
fn unreproducible_notes() -> Vec<CheckResult> {
    let start = Instant::now();
    vec![
        check(
            "unreproducible",
            "gadget24-full-game",
            start,
            true,
            "u(gadget24) >= 1 rests on the verified block kernel (h3-subgame); \
             the full 36-edge game is beyond the solver ceiling and is taken on trust",
        ),
        check(
            "unreproducible",
            "asymptotic-ratio",
            start,
            true,
            "the limiting untouched ratio on long cycles and paths is only \
             bracketed in [3/16, 1/4]; the exploratory table reports exact \
             ratios without asserting a limit",
        ),
    ]
}

/// Exact values for small cycles and paths, checked against their
/// intervals; the CLI emits the same data as CSV.
fn exploratory_table(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rows = 0;
    let cycles: Vec<(usize, usize)> = (3..=12usize)
        .into_par_iter()
        .map(|n| (n, exact(&generate(&Family::Cycle(n)).unwrap(), &cfg.opts)))
        .collect();
    for (n, u) in cycles {
        rows += 1;
        let lo = Ratio::new(3 * (n as i64 - 3), 16);
        let hi = Ratio::new(n as i64, 4);
        let u_r = Ratio::from_integer(u as i64);
        if u_r < lo || u_r > hi {
            failures.push(format!("u(C{}) = {} outside [{}, {}]", n, u, lo, hi));
        }
    }
    let paths: Vec<(usize, usize)> = (2..=12usize)
        .into_par_iter()
        .map(|n| (n, exact(&generate(&Family::Path(n)).unwrap(), &cfg.opts)))
        .collect();
    for (n, u) in paths {
        rows += 1;
        let lo = Ratio::new(3 * (n as i64 - 2), 16);
        let hi = Ratio::new(n as i64 + 1, 4);
        let u_r = Ratio::from_integer(u as i64);
        if u_r < lo || u_r > hi {
            failures.push(format!("u(P{}) = {} outside [{}, {}]", n, u, lo, hi));
        }
    }
    vec![check(
        "exploratory-table",
        "cycle-path-sweep",
        start,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} exact values inside their intervals", rows)
        } else {
            failures.join("; ")
        },
    )]
}

/// Alpha-beta against plain minimax, table on/off, and invariance under
/// edge relabelling.
fn solver_self_consistency(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let suite = "solver-self-consistency";
    let corpus: Vec<CorpusEntry> = default_corpus()
        .into_iter()
        .filter(|e| e.graph.edge_count() <= 14)
        .collect();
    let mut results = Vec::new();

    let start = Instant::now();
    let small: Vec<&CorpusEntry> =
        corpus.iter().filter(|e| e.graph.edge_count() <= 10).collect();
    let failures: Vec<String> = small
        .par_iter()
        .filter_map(|entry| {
            let plain = SolveOptions {
                use_alpha_beta: false,
                use_table: false,
                ..cfg.opts.clone()
            };
            let a = exact(&entry.graph, &cfg.opts);
            let b = solve_exact(&entry.graph, &TurnSchedule::default(), &plain)
                .expect("within ceiling")
                .value;
            (a != b).then(|| format!("{}: pruned {} vs plain {}", entry.name, a, b))
        })
        .collect();
    results.push(check(
        suite,
        "alpha-beta-vs-plain",
        start,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} graphs up to 10 edges agree", small.len())
        } else {
            failures.join("; ")
        },
    ));

    let start = Instant::now();
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|entry| {
            let no_table = SolveOptions { use_table: false, ..cfg.opts.clone() };
            let a = exact(&entry.graph, &cfg.opts);
            let b = solve_exact(&entry.graph, &TurnSchedule::default(), &no_table)
                .expect("within ceiling")
                .value;
            (a != b).then(|| format!("{}: with table {} vs without {}", entry.name, a, b))
        })
        .collect();
    results.push(check(
        suite,
        "table-on-off",
        start,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} graphs agree with the table disabled", corpus.len())
        } else {
            failures.join("; ")
        },
    ));

    let start = Instant::now();
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|entry| {
            let base = exact(&entry.graph, &cfg.opts);
            let m = entry.graph.edge_count();
            let mut rng = ChaCha8Rng::seed_from_u64(
                cfg.seed ^ (m as u64) << 32 ^ entry.name.len() as u64,
            );
            for p in 0..20 {
                let mut perm: Vec<usize> = (0..m).collect();
                for i in (1..m).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                let relabeled = entry.graph.with_edge_order(&perm).expect("permutation");
                let v = exact(&relabeled, &cfg.opts);
                if v != base {
                    return Some(format!(
                        "{}: permutation {} gives {} instead of {}",
                        entry.name, p, v, base
                    ));
                }
            }
            None
        })
        .collect();
    results.push(check(
        suite,
        "edge-relabelling",
        start,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} graphs invariant under 20 relabellings each", corpus.len())
        } else {
            failures.join("; ")
        },
    ));

    results
}

/// Fuzz helper shared with tests: a strategy must always return a legal
/// free edge against a random adversary.
pub fn strategy_legality_fuzz(
    g: &Graph,
    spec: &str,
    side: Player,
    seeds: std::ops::Range<u64>,
) -> Result<(), String> {
    for seed in seeds {
        let mut subject = build_strategy(spec, g).map_err(|e| e.to_string())?;
        let mut adversary = crate::strategy::RandomStrategy::new(seed);
        let adv: &mut dyn Strategy = &mut adversary;
        let subj: &mut dyn Strategy = &mut subject;
        let result = match side {
            Player::Toucher => crate::game::play_match(g, TurnSchedule::default(), subj, adv),
            Player::Isolator => crate::game::play_match(g, TurnSchedule::default(), adv, subj),
        };
        result.map_err(|e| format!("seed {}: {}", seed, e))?;
    }
    Ok(())
}
