//! Bound-module consequences that need the exact solver: the refined
//! upper bound really upper-bounds the game value, and cycles of length
//! 4, 5 or 0 mod 6 reach at least a sixth of their vertices.

use num_rational::Ratio;
use toucher_core::bounds::{danger_potential, refined_upper_bound};
use toucher_core::corpus::default_corpus;
use toucher_core::game::TurnSchedule;
use toucher_core::generate::cycle;
use toucher_core::solver::{solve_exact, SolveOptions};

#[test]
fn refined_upper_never_exceeds_the_potential() {
    for entry in default_corpus() {
        assert!(
            refined_upper_bound(&entry.graph) <= danger_potential(&entry.graph),
            "{}",
            entry.name
        );
    }
}

#[test]
fn refined_upper_bounds_the_exact_value_on_the_corpus() {
    let opts = SolveOptions::default();
    let sched = TurnSchedule::default();
    for entry in default_corpus().into_iter().filter(|e| e.graph.edge_count() <= 14) {
        let u = solve_exact(&entry.graph, &sched, &opts).unwrap().value;
        let refined = refined_upper_bound(&entry.graph);
        assert!(
            Ratio::from_integer(u as i64) <= refined,
            "{}: u = {} above refined bound {}",
            entry.name,
            u,
            refined
        );
    }
}

#[test]
fn mid_residue_cycles_keep_a_sixth_untouched() {
    // cycle lengths 4, 5 or 0 mod 6 within comfortable solver range
    let opts = SolveOptions::default();
    let sched = TurnSchedule::default();
    for k in [4usize, 5, 6, 10, 11, 12] {
        let g = cycle(k).unwrap();
        let u = solve_exact(&g, &sched, &opts).unwrap().value;
        let want = k.div_ceil(6);
        assert!(u >= want, "u(C{}) = {} below {}", k, u, want);
    }
}
