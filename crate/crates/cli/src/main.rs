//! toucher-lab: command-line harness for the Toucher-Isolator game lab.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write as _;
use std::path::PathBuf;
use toucher_core::bounds;
use toucher_core::game::{play_match, GameState, Player, TurnSchedule};
use toucher_core::generate::{generate, parse_family, Family};
use toucher_core::graph::Graph;
use toucher_core::solver::{
    best_response_value, solve_exact, solve_subgame, SolveError, SolveOptions,
};
use toucher_core::strategy::{build_strategy, Strategy, StrategyError};
use toucher_core::verify::{h3_kernel_spec, run_suite, VerifyConfig, SUITE_NAMES};

const EXIT_IO: i32 = 1;
const EXIT_CEILING: i32 = 2;
const EXIT_STRATEGY: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(name = "toucher-lab", version, about = "Toucher-Isolator game laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact game value of a graph
    Solve(SolveArgs),
    /// Play out a match between two strategies (or against a human)
    Play(PlayArgs),
    /// Exact best response against a fixed strategy
    BestResponse(BestResponseArgs),
    /// Closed-form bounds for a graph
    Bounds(BoundsArgs),
    /// Run verification suites
    Verify(VerifyArgs),
    /// Sweep a family and emit CSV/JSON rows
    Experiment(ExperimentArgs),
    /// Generate a graph file
    Gen(GenArgs),
}

#[derive(Args, Clone)]
struct GraphSource {
    /// Family name (cycle, path, star, k2_components, p3_components_plus_p2,
    /// c3_components, c4_components, k4_components, circulant, gadget24);
    /// also accepts the compact form like "cycle(7)"
    #[arg(long)]
    family: Option<String>,
    /// Vertex count for cycle/path/star/circulant
    #[arg(long)]
    n: Option<usize>,
    /// Component count for the *_components families (and the P3 count for
    /// p3_components_plus_p2)
    #[arg(long)]
    c: Option<usize>,
    /// Circulant offsets, comma separated
    #[arg(long, value_delimiter = ',')]
    offsets: Option<Vec<usize>>,
    /// Read the graph from a file instead
    #[arg(long, conflicts_with_all = ["family", "n", "c", "offsets"])]
    file: Option<PathBuf>,
}

impl GraphSource {
    fn family(&self) -> Result<Option<Family>> {
        let Some(name) = &self.family else { return Ok(None) };
        if name.contains('(') {
            return Ok(Some(parse_family(name)?));
        }
        let n = || self.n.ok_or_else(|| anyhow!("--family {} needs --n", name));
        let c = || self.c.ok_or_else(|| anyhow!("--family {} needs --c", name));
        let family = match name.as_str() {
            "cycle" => Family::Cycle(n()?),
            "path" => Family::Path(n()?),
            "star" => Family::Star(n()?),
            "k2_components" => Family::K2Components(c()?),
            "p3_components_plus_p2" => Family::P3ComponentsPlusP2(c()?),
            "c3_components" => Family::C3Components(c()?),
            "c4_components" => Family::C4Components(c()?),
            "k4_components" => Family::K4Components(c()?),
            "circulant" => Family::Circulant(
                n()?,
                self.offsets
                    .clone()
                    .ok_or_else(|| anyhow!("--family circulant needs --offsets"))?,
            ),
            "gadget24" => Family::Gadget24,
            _ => return Err(anyhow!("unknown family {:?}", name)),
        };
        Ok(Some(family))
    }

    fn load(&self) -> Result<Graph> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return Ok(toucher_core::parse_graph(&text)?);
        }
        match self.family()? {
            Some(family) => Ok(generate(&family)?),
            None => Err(anyhow!("provide --family or --file")),
        }
    }
}

#[derive(Args, Clone)]
struct ScheduleArgs {
    /// Who moves first once alternation starts
    #[arg(long, value_enum, default_value_t = Side::Toucher)]
    first: Side,
    /// Fixed opening moves before alternation, e.g. "TT"
    #[arg(long, default_value = "")]
    prefix: String,
}

impl ScheduleArgs {
    fn schedule(&self) -> Result<TurnSchedule> {
        let mut prefix = Vec::new();
        for ch in self.prefix.chars() {
            prefix.push(match ch.to_ascii_uppercase() {
                'T' => Player::Toucher,
                'I' => Player::Isolator,
                _ => return Err(anyhow!("--prefix accepts only T and I, got {:?}", ch)),
            });
        }
        Ok(TurnSchedule::new(prefix, self.first.player()))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Side {
    Toucher,
    Isolator,
}

impl Side {
    fn player(self) -> Player {
        match self {
            Side::Toucher => Player::Toucher,
            Side::Isolator => Player::Isolator,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    schedule: ScheduleArgs,
    /// Edge-count ceiling for the exact solver
    #[arg(long, default_value_t = 22)]
    ceiling: usize,
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    schedule: ScheduleArgs,
    /// Toucher's strategy
    #[arg(long, default_value = "max_danger")]
    toucher: String,
    /// Isolator's strategy
    #[arg(long, default_value = "max_danger")]
    isolator: String,
    /// Play one side interactively from the terminal
    #[arg(long, value_enum)]
    human: Option<Side>,
    /// Write the move log to a file
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Args)]
struct BestResponseArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    schedule: ScheduleArgs,
    /// Which side is frozen to the fixed strategy
    #[arg(long, value_enum)]
    fixed: Side,
    /// The fixed strategy
    #[arg(long)]
    strategy: String,
    /// Node budget for the search
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Also solve exactly and check the sandwich
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run (default: all)
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Print the H3 kernel subgame result as JSON before the suites
    #[arg(long)]
    h3_json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Family to sweep: cycle, path or star
    #[arg(long, requires = "n_min", requires = "n_max", conflicts_with = "files")]
    family: Option<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Graph files to process instead of a family sweep
    #[arg(long, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Play strategies instead of solving exactly
    #[arg(long, requires = "isolator")]
    toucher: Option<String>,
    #[arg(long, requires = "toucher")]
    isolator: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solver edge ceiling
    #[arg(long, default_value_t = 22)]
    ceiling: usize,
    /// Record real wall-clock times (off by default so runs are
    /// byte-identical)
    #[arg(long)]
    timings: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err);
            EXIT_IO
        }
    };
    std::process::exit(code);
}

fn solve_exit_code(err: &SolveError) -> i32 {
    match err {
        SolveError::CeilingExceeded { .. }
        | SolveError::TableCapExceeded { .. }
        | SolveError::NodeBudgetExceeded { .. } => EXIT_CEILING,
        SolveError::Strategy(_) | SolveError::StrategyIllegalMove { .. } => EXIT_STRATEGY,
        _ => EXIT_IO,
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Play(args) => cmd_play(args),
        Command::BestResponse(args) => cmd_best_response(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let graph = args.source.load()?;
    let schedule = args.schedule.schedule()?;
    let opts = SolveOptions { edge_ceiling: args.ceiling, ..SolveOptions::default() };
    match solve_exact(&graph, &schedule, &opts) {
        Ok(result) => {
            println!("{}", result.report_json(opts.edge_ceiling));
            Ok(0)
        }
        Err(err) => {
            eprintln!("error: {}", err);
            Ok(solve_exit_code(&err))
        }
    }
}

/// Terminal-driven strategy: lists the legal moves and reads edge ids
/// until one of them is entered.
#[derive(Clone)]
struct HumanPlayer;

impl Strategy for HumanPlayer {
    fn name(&self) -> String {
        "human".to_string()
    }

    fn begin(&mut self, _state: &GameState<'_>) -> std::result::Result<(), StrategyError> {
        Ok(())
    }

    fn choose(&self, state: &GameState<'_>) -> std::result::Result<usize, StrategyError> {
        let g = state.graph();
        let free: Vec<usize> = state.free_edges().collect();
        let listing: Vec<String> = free
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                format!("{}:({},{})", e, u, v)
            })
            .collect();
        println!("free edges: {}", listing.join(" "));
        loop {
            print!("your move (edge id)> ");
            std::io::stdout().flush().ok();
            let mut line = String::new();
            if std::io::stdin().read_line(&mut line).is_err() || line.is_empty() {
                return Err(StrategyError::NoFreeEdge);
            }
            match line.trim().parse::<usize>() {
                Ok(e) if free.contains(&e) => return Ok(e),
                _ => println!("not a free edge id, try again"),
            }
        }
    }

    fn observe(&mut self, _state_before: &GameState<'_>, _player: Player, _edge: usize) {}
}

fn cmd_play(args: PlayArgs) -> Result<i32> {
    let graph = args.source.load()?;
    let schedule = args.schedule.schedule()?;

    let build = |spec: &str| -> Result<Box<dyn Strategy>> {
        match build_strategy(spec, &graph) {
            Ok(s) => Ok(Box::new(s)),
            Err(e) => Err(anyhow!(
                "{} (available: {})",
                e,
                toucher_core::strategy::strategy_names().join(", ")
            )),
        }
    };
    let mut toucher: Box<dyn Strategy> = match args.human {
        Some(Side::Toucher) => Box::new(HumanPlayer),
        _ => build(&args.toucher)?,
    };
    let mut isolator: Box<dyn Strategy> = match args.human {
        Some(Side::Isolator) => Box::new(HumanPlayer),
        _ => build(&args.isolator)?,
    };

    match play_match(&graph, schedule, toucher.as_mut(), isolator.as_mut()) {
        Ok((_, untouched, log)) => {
            let mut lines = String::new();
            for record in &log {
                lines.push_str(&record.log_line());
                lines.push('\n');
            }
            print!("{}", lines);
            println!("untouched: {}", untouched);
            if let Some(path) = &args.replay {
                std::fs::write(path, lines)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Err(err) => {
            eprintln!("error: {}", err);
            Ok(EXIT_STRATEGY)
        }
    }
}

fn cmd_best_response(args: BestResponseArgs) -> Result<i32> {
    let graph = args.source.load()?;
    let schedule = args.schedule.schedule()?;
    let strategy = match build_strategy(&args.strategy, &graph) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: {}", err);
            return Ok(EXIT_STRATEGY);
        }
    };
    let opts = SolveOptions { node_budget: args.budget, ..SolveOptions::default() };
    match best_response_value(&graph, &schedule, args.fixed.player(), &strategy, &opts) {
        Ok(result) => {
            println!("{}", result.report_json(opts.edge_ceiling));
            Ok(0)
        }
        Err(err) => {
            eprintln!("error: {}", err);
            Ok(solve_exit_code(&err))
        }
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32> {
    let graph = args.source.load()?;
    let report = bounds::theorem_bounds(&graph, None);
    let refined = bounds::refined_upper_bound(&graph);
    let mut doc = serde_json::json!({
        "entries": report.entries,
        "refined_upper": format!("{}/{}", refined.numer(), refined.denom()),
        "dominant_general_lower": report.dominant_general_lower(),
        "best_lower": report.best_lower(),
        "best_upper": report.best_upper(),
    });
    if args.exact {
        let opts = SolveOptions::default();
        match solve_exact(&graph, &TurnSchedule::default(), &opts) {
            Ok(result) => {
                let verdicts = bounds::sandwich_check(&graph, result.value, None);
                doc["exact_value"] = serde_json::json!(result.value);
                doc["sandwich"] = serde_json::json!(verdicts);
            }
            Err(err) => {
                eprintln!("error: {}", err);
                return Ok(solve_exit_code(&err));
            }
        }
    }
    println!("{}", doc);
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let cfg = VerifyConfig {
        seed: args.seed,
        trials: args.trials,
        opts: SolveOptions::default(),
    };
    if args.h3_json {
        let (g, spec) = h3_kernel_spec();
        let result = solve_subgame(&g, &spec, &cfg.opts)?;
        println!("{}", result.report_json(cfg.opts.edge_ceiling));
    }
    let suites: Vec<String> = if args.suites.is_empty() {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        args.suites.clone()
    };
    let mut failed = 0usize;
    for suite in &suites {
        let Some(results) = run_suite(suite, &cfg) else {
            eprintln!("error: unknown suite {:?} (known: {})", suite, SUITE_NAMES.join(", "));
            return Ok(EXIT_IO);
        };
        for r in results {
            println!("{}", r.line());
            if !r.passed {
                failed += 1;
            }
        }
    }
    if failed > 0 {
        eprintln!("{} check(s) failed", failed);
        Ok(EXIT_VERIFY)
    } else {
        Ok(0)
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<i32> {
    use rayon::prelude::*;

    // one instance per sweep size or per input file
    enum Instance {
        Family(String, usize),
        File(PathBuf),
    }
    let instances: Vec<Instance> = if let Some(family) = &args.family {
        if !matches!(family.as_str(), "cycle" | "path" | "star") {
            return Err(anyhow!("experiment sweeps cycle, path or star, not {:?}", family));
        }
        let (lo, hi) = (args.n_min.expect("clap requires"), args.n_max.expect("clap requires"));
        (lo..=hi).map(|n| Instance::Family(family.clone(), n)).collect()
    } else if !args.files.is_empty() {
        args.files.iter().cloned().map(Instance::File).collect()
    } else {
        return Err(anyhow!("provide --family with --n-min/--n-max, or --files"));
    };

    let match_mode = args.toucher.is_some();
    let opts = SolveOptions { edge_ceiling: args.ceiling, ..SolveOptions::default() };

    struct Row {
        label: String,
        n: usize,
        value: usize,
        lower: i64,
        upper: i64,
        nodes: u64,
        elapsed_ms: u64,
    }
    // a bare "random" picks up the sweep seed
    let seeded = |spec: &str, offset: u64| -> String {
        if spec == "random" {
            format!("random({})", args.seed.wrapping_add(offset))
        } else {
            spec.to_string()
        }
    };
    let compute = |instance: &Instance| -> Result<Row> {
        let (label, graph) = match instance {
            Instance::Family(name, n) => {
                let family = match name.as_str() {
                    "cycle" => Family::Cycle(*n),
                    "path" => Family::Path(*n),
                    _ => Family::Star(*n),
                };
                (name.clone(), generate(&family)?)
            }
            Instance::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let label = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                (label, toucher_core::parse_graph(&text)?)
            }
        };
        let report = bounds::theorem_bounds(&graph, None);
        let (value, nodes, elapsed_ms) = if match_mode {
            let toucher_spec = seeded(args.toucher.as_deref().expect("match mode"), 0);
            let isolator_spec = seeded(args.isolator.as_deref().expect("match mode"), 1);
            let mut toucher = build_strategy(&toucher_spec, &graph)?;
            let mut isolator = build_strategy(&isolator_spec, &graph)?;
            let start = std::time::Instant::now();
            let (_, untouched, _) =
                play_match(&graph, TurnSchedule::default(), &mut toucher, &mut isolator)
                    .map_err(|e| anyhow!(e.to_string()))?;
            (untouched, 0u64, start.elapsed().as_millis() as u64)
        } else {
            let r = solve_exact(&graph, &TurnSchedule::default(), &opts)?;
            (r.value, r.nodes_expanded, r.elapsed.as_millis() as u64)
        };
        Ok(Row {
            label,
            n: graph.vertex_count(),
            value,
            lower: report.best_lower(),
            upper: report.best_upper(),
            nodes,
            elapsed_ms: if args.timings { elapsed_ms } else { 0 },
        })
    };
    // worker pool over instances; rows keep input order
    let computed: Vec<Result<Row>> = instances.par_iter().map(compute).collect();

    let mode = if match_mode { "match" } else { "exact" };
    let mut out: Box<dyn std::io::Write> = match &args.output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };

    let mut failure: Option<anyhow::Error> = None;
    match args.format {
        Format::Csv => {
            writeln!(out, "# toucher-lab v1")?;
            writeln!(out, "family,n,value,lower,upper,mode,nodes,elapsed_ms,ratio")?;
            for row in computed {
                match row {
                    Ok(r) => writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{:.6}",
                        r.label,
                        r.n,
                        r.value,
                        r.lower,
                        r.upper,
                        mode,
                        r.nodes,
                        r.elapsed_ms,
                        r.value as f64 / r.n as f64
                    )?,
                    Err(e) => {
                        failure = Some(e);
                        break;
                    }
                }
            }
        }
        Format::Json => {
            let mut rows = Vec::new();
            for row in computed {
                match row {
                    Ok(r) => rows.push(serde_json::json!({
                        "family": r.label,
                        "n": r.n,
                        "value": r.value,
                        "lower": r.lower,
                        "upper": r.upper,
                        "mode": mode,
                        "nodes": r.nodes,
                        "elapsed_ms": r.elapsed_ms,
                        "ratio": r.value as f64 / r.n as f64,
                    })),
                    Err(e) => {
                        failure = Some(e);
                        break;
                    }
                }
            }
            writeln!(out, "{}", serde_json::Value::Array(rows))?;
        }
    }
    out.flush()?;
    if let Some(err) = failure {
        eprintln!("error: {:#} (partial results flushed)", err);
        let code = match err.downcast_ref::<SolveError>() {
            Some(e) => solve_exit_code(e),
            None => EXIT_IO,
        };
        return Ok(code);
    }
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let graph = args.source.load()?;
    let text = graph.to_file_string();
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(0)
}
