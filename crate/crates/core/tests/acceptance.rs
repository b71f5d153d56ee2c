//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use toucher_core::solver::SolveOptions;
use toucher_core::verify::{run_suite, CheckResult, VerifyConfig};

fn cfg() -> VerifyConfig {
    VerifyConfig { seed: 7, trials: 1000, opts: SolveOptions::default() }
}

fn assert_suite(criterion: &str, results: Vec<CheckResult>) {
    let mut all_ok = true;
    for r in &results {
        if !r.passed {
            all_ok = false;
        }
    }
    println!(
        "{} {}: {} checks ({} ms)",
        if all_ok { "PASS" } else { "FAIL" },
        criterion,
        results.len(),
        results.iter().map(|r| r.elapsed.as_millis()).sum::<u128>()
    );
    for r in &results {
        println!("  {}", r.line());
    }
    assert!(all_ok, "{} failed:\n{:#?}", criterion, results);
}

#[test]
fn criterion_1_solver_regression() {
    let results = run_suite("solver-regression", &cfg()).unwrap();
    assert_eq!(results.len(), 16, "all sixteen pinned values must run");
    assert_suite("criterion-1 solver-regression", results);
}

#[test]
fn criterion_2_bound_sandwich() {
    assert_suite(
        "criterion-2 bound-sandwich",
        run_suite("bound-sandwich", &cfg()).unwrap(),
    );
}

#[test]
fn criterion_3_danger_conservation() {
    let results = run_suite("danger-conservation", &cfg()).unwrap();
    assert!(results[0].name.starts_with("1000"), "must run 1000 playouts");
    assert_suite("criterion-3 danger-conservation", results);
}

#[test]
fn criterion_4_strategy_guarantees() {
    let results = run_suite("strategy-guarantees", &cfg()).unwrap();
    // (a) two pairing targets, (b)+(c) corpus bounds, (d) two cycles,
    // (e) three paths, (f) three 2-regular graphs, (g) two K4 sizes,
    // (h) the odd-triangles value
    assert_eq!(results.len(), 15);
    assert_suite("criterion-4 strategy-guarantees", results);
}

#[test]
fn criterion_5_h3_subgame() {
    assert_suite("criterion-5 h3-subgame", run_suite("h3-subgame", &cfg()).unwrap());
}

#[test]
fn criterion_6_unreproducible_statements() {
    let results = run_suite("unreproducible", &cfg()).unwrap();
    assert!(results
        .iter()
        .any(|r| r.name == "gadget24-full-game" && r.details.contains("beyond the solver ceiling")));
    assert!(results
        .iter()
        .any(|r| r.name == "asymptotic-ratio" && r.details.contains("[3/16, 1/4]")));
    assert_suite("criterion-6 unreproducible-statements", results);
}

#[test]
fn criterion_7_exploratory_table() {
    // the check recomputes every value; also emit the CSV artifact
    let results = run_suite("exploratory-table", &cfg()).unwrap();
    let mut csv = String::from("# toucher-lab v1\nfamily,n,value,ratio\n");
    let opts = SolveOptions::default();
    let sched = toucher_core::TurnSchedule::default();
    for (make, lo, hi, label) in [
        (
            toucher_core::generate::Family::Cycle as fn(usize) -> _,
            3usize,
            12usize,
            "cycle",
        ),
        (toucher_core::generate::Family::Path as fn(usize) -> _, 2, 12, "path"),
    ] {
        for (n, r) in toucher_core::solver::value_table(make, lo..=hi, &sched, &opts).unwrap() {
            csv.push_str(&format!("{},{},{},{:.6}\n", label, n, r.value, r.value as f64 / n as f64));
        }
    }
    let out = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("exploratory.csv");
    std::fs::write(&out, &csv).unwrap();
    println!("exploratory CSV written to {}", out.display());
    assert_suite("criterion-7 exploratory-table", results);
}

#[test]
fn criterion_8_solver_self_consistency() {
    assert_suite(
        "criterion-8 solver-self-consistency",
        run_suite("solver-self-consistency", &cfg()).unwrap(),
    );
}
