//! Every strategy must return only free edges on every reachable state,
//! fuzzing against random adversaries over the corpus, plus the sandwich
//! relation between best responses and the exact value.

use toucher_core::bounds::detect_family;
use toucher_core::corpus::default_corpus;
use toucher_core::game::{Player, TurnSchedule};
use toucher_core::solver::{best_response_value, solve_exact, SolveOptions};
use toucher_core::strategy::build_strategy;
use toucher_core::verify::strategy_legality_fuzz;

#[test]
fn universal_strategies_stay_legal_on_the_corpus() {
    for entry in default_corpus() {
        for spec in ["max_danger", "leaf_priority", "pairing", "pairing_outgoing", "random(3)"] {
            for side in [Player::Toucher, Player::Isolator] {
                strategy_legality_fuzz(&entry.graph, spec, side, 0..4)
                    .unwrap_or_else(|e| panic!("{} as {:?} on {}: {}", spec, side, entry.name, e));
            }
        }
    }
}

#[test]
fn shape_specific_strategies_stay_legal_where_applicable() {
    for entry in default_corpus() {
        let flags = detect_family(&entry.graph);
        let mut specs: Vec<&str> = Vec::new();
        if flags.cycle {
            specs.push("cycle_segment");
        }
        if flags.path {
            specs.push("path_segment");
        }
        if flags.two_regular {
            specs.push("two_regular");
        }
        for spec in specs {
            strategy_legality_fuzz(&entry.graph, spec, Player::Isolator, 0..6)
                .unwrap_or_else(|e| panic!("{} on {}: {}", spec, entry.name, e));
        }
    }
}

#[test]
fn best_responses_sandwich_the_exact_value() {
    let opts = SolveOptions::default();
    let sched = TurnSchedule::default();
    for entry in default_corpus().into_iter().filter(|e| e.graph.edge_count() <= 10) {
        let exact = solve_exact(&entry.graph, &sched, &opts).unwrap().value;
        let strat = build_strategy("max_danger", &entry.graph).unwrap();
        let fixed_toucher =
            best_response_value(&entry.graph, &sched, Player::Toucher, &strat, &opts)
                .unwrap()
                .value;
        let fixed_isolator =
            best_response_value(&entry.graph, &sched, Player::Isolator, &strat, &opts)
                .unwrap()
                .value;
        assert!(
            fixed_isolator <= exact && exact <= fixed_toucher,
            "{}: {} <= {} <= {} violated",
            entry.name,
            fixed_isolator,
            exact,
            fixed_toucher
        );
    }
}

#[test]
fn each_pairing_variant_meets_its_orientation_bound() {
    // with one pairing direction fixed, the untouched count is at most the
    // unprotected vertices plus half the singly-covered pool
    use toucher_core::orientation::eulerian_orientation;
    let opts = SolveOptions::default();
    let sched = TurnSchedule::default();
    for entry in default_corpus().into_iter().filter(|e| e.graph.edge_count() <= 12) {
        let g = &entry.graph;
        let orientation = eulerian_orientation(g);
        for (spec, incoming) in [("pairing", true), ("pairing_outgoing", false)] {
            let dedicated = |v: usize| {
                if incoming {
                    orientation.incoming(g, v).len()
                } else {
                    orientation.outgoing(g, v).len()
                }
            };
            let unprotected =
                (0..g.vertex_count()).filter(|&v| dedicated(v) == 0).count();
            let pool = (0..g.vertex_count())
                .filter(|&v| (1..=3).contains(&g.degree(v)) && dedicated(v) == 1)
                .count();
            let bound = unprotected + pool / 2;
            let strat = build_strategy(spec, g).unwrap();
            let v = best_response_value(g, &sched, Player::Toucher, &strat, &opts)
                .unwrap()
                .value;
            assert!(
                v <= bound,
                "{}: {} reached {} above its orientation bound {}",
                entry.name,
                spec,
                v,
                bound
            );
        }
    }
}

#[test]
fn pairing_outgoing_shares_the_averaged_bound() {
    // min over the two pairing variants stays within the averaged
    // degree-count upper bound
    use num_rational::Ratio;
    let opts = SolveOptions::default();
    let sched = TurnSchedule::default();
    for entry in default_corpus().into_iter().filter(|e| e.graph.edge_count() <= 12) {
        let g = &entry.graph;
        let hist = g.degree_histogram();
        let d = |i: usize| hist.count(i) as i64;
        let bound = (Ratio::new(4 * d(0), 4)
            + Ratio::new(3 * d(1), 4)
            + Ratio::new(2 * d(2), 4)
            + Ratio::new(d(3), 4))
        .floor()
        .to_integer();
        let mut best = usize::MAX;
        for spec in ["pairing", "pairing_outgoing"] {
            let strat = build_strategy(spec, g).unwrap();
            let v = best_response_value(g, &sched, Player::Toucher, &strat, &opts)
                .unwrap()
                .value;
            best = best.min(v);
        }
        assert!(
            (best as i64) <= bound,
            "{}: min pairing variant {} exceeds averaged bound {}",
            entry.name,
            best,
            bound
        );
    }
}
