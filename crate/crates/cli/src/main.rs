use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rrt_rewire::bench::write_trial_records;
use rrt_rewire::workspace::BUILTIN_MAP_COUNT;
use rrt_rewire::{
    builtin_map, emit_table, load_map, plan, post_triangular_rewire, render_map, render_scene, run_experiment,
    Execution, ExperimentConfig, PlannerConfig, RenderStyle, TableFormat, WorldMap,
};

#[derive(Parser)]
#[command(name = "rrt-rewire", version, about = "RRT planning with triangular rewiring of the first path")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan once, rewire, print lengths and times, and write an SVG.
    Plan(PlanArgs),
    /// Run seeded trials over built-in maps and write per-trial records and summaries.
    Bench(BenchArgs),
    /// Write one SVG per built-in map.
    RenderMaps(RenderArgs),
}

#[derive(Args)]
struct PlannerArgs {
    /// Extension step length, px.
    #[arg(long, default_value_t = 30.0)]
    step_length: f64,
    /// Iteration budget per planning run.
    #[arg(long, default_value_t = 200_000)]
    max_iterations: u64,
}

impl PlannerArgs {
    fn config(&self) -> PlannerConfig {
        PlannerConfig {
            max_iterations: self.max_iterations,
            ..PlannerConfig::with_step(self.step_length)
        }
    }
}

#[derive(Args)]
struct PlanArgs {
    /// `builtin:N` (N in 1..=4) or a path to a TOML map file.
    #[arg(long, default_value = "builtin:1")]
    map: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the map's clearance threshold, px.
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    planner: PlannerArgs,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Report only the raw RRT path.
    #[arg(long)]
    no_rewire: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated built-in map ids.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
    maps: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Trial i uses seed + i.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    planner: PlannerArgs,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Table format printed to standard output.
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Spread trials over this many threads. Timing columns are then unreliable.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RenderArgs {
    /// Comma-separated built-in map ids.
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
    maps: Vec<u32>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

fn load_selected_map(selector: &str) -> Result<(WorldMap, String)> {
    if let Some(id) = selector.strip_prefix("builtin:") {
        let id: u32 = id.parse().with_context(|| format!("invalid built-in map id `{id}`"))?;
        return Ok((builtin_map(id)?, format!("map{id}")));
    }
    let path = FsPath::new(selector);
    let text = fs::read_to_string(path).with_context(|| format!("cannot read map file {}", path.display()))?;
    let map = load_map(&text).with_context(|| format!("invalid map file {}", path.display()))?;
    let stem = path.file_stem().map_or("map".into(), |s| s.to_string_lossy().into_owned());
    Ok((map, stem))
}

fn write_file(path: &FsPath, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn create_dir(dir: &FsPath) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))
}

fn positive(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        bail!("--{name} must be positive, got {value}");
    }
    Ok(())
}

fn cmd_plan(args: &PlanArgs) -> Result<ExitCode> {
    positive("step-length", args.planner.step_length)?;
    let (mut map, stem) = load_selected_map(&args.map)?;
    if let Some(eps) = args.epsilon {
        map = map.with_epsilon(eps)?;
    }
    let cfg = args.planner.config().seeded(args.seed);
    let outcome = plan(&map, &cfg)?;
    let Some(raw) = &outcome.path else {
        eprintln!(
            "no path found on {} after {} iterations ({:.3} ms)",
            map.name(),
            outcome.iterations,
            outcome.planning_time_ms
        );
        return Ok(ExitCode::FAILURE);
    };

    println!("map: {}", map.name());
    println!("seed: {}", args.seed);
    println!("iterations: {}", outcome.iterations);
    println!("rrt length: {:.2} px", raw.length());
    println!("rrt planning time: {:.3} ms", outcome.planning_time_ms);

    let rewired = if args.no_rewire {
        None
    } else {
        let (short, report) = post_triangular_rewire(raw, &map)?;
        println!("rewired length: {:.2} px", short.length());
        println!("rewire time: {:.3} ms", report.rewire_time_ms);
        println!("waypoints removed: {}", report.waypoints_removed);
        Some(short)
    };

    let mut paths = vec![(raw, "RRT")];
    if let Some(short) = &rewired {
        paths.push((short, "RRT + rewiring"));
    }
    let svg = render_scene(&map, Some(&outcome.tree), &paths, &RenderStyle::default());
    create_dir(&args.out_dir)?;
    let file = args.out_dir.join(format!("plan-{stem}-seed{}.svg", args.seed));
    write_file(&file, &svg)?;
    println!("svg: {}", file.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    positive("step-length", args.planner.step_length)?;
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let cfg = ExperimentConfig {
        map_ids: args.maps.clone(),
        trials: args.trials,
        planner: args.planner.config(),
        base_seed: args.seed,
        execution: match args.threads {
            Some(threads) if threads > 1 => Execution::Parallel { threads },
            _ => Execution::Sequential,
        },
        ..ExperimentConfig::default()
    };
    create_dir(&args.out_dir)?;
    let exp = run_experiment(&cfg)?;

    let mut records = Vec::new();
    write_trial_records(&exp.trials, &mut records)?;
    write_file(&args.out_dir.join("trials.jsonl"), &String::from_utf8(records)?)?;
    let markdown = emit_table(&exp.summary, TableFormat::Markdown);
    let csv = emit_table(&exp.summary, TableFormat::Csv);
    write_file(&args.out_dir.join("summary.csv"), &csv)?;
    write_file(&args.out_dir.join("summary.md"), &markdown)?;

    match args.format {
        Format::Markdown => print!("{markdown}"),
        Format::Csv => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render_maps(args: &RenderArgs) -> Result<ExitCode> {
    create_dir(&args.out_dir)?;
    for &id in &args.maps {
        if !(1..=BUILTIN_MAP_COUNT).contains(&id) {
            bail!("no built-in map {id}");
        }
        let file = args.out_dir.join(format!("map{id}.svg"));
        write_file(&file, &render_map(&builtin_map(id)?, &RenderStyle::default()))?;
        println!("{}", file.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Bench(args) => cmd_bench(args),
        Command::RenderMaps(args) => cmd_render_maps(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
