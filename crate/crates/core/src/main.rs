// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pathcolor::coloring::{self, greedy_color, largest_first_order, Mode, Schedule};
use pathcolor::generators;
use pathcolor::graph::SystemGraph;
use pathcolor::harness::{
    self, canned_enumeration, verify_schedule, EnumerationPolicy, ModelKind, PlacementKind, RunConfig, SweepConfig,
};
use pathcolor::models::{embed, Model};
use pathcolor::routing::{greedy_enumerate, route, Interaction, PathSet, RoutingParams};

#[derive(Parser)]
#[command(name = "pathcolor", version, about = "Route, color and schedule encoded fermionic interactions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated system graph or model to a file.
    Gen(GenArgs),
    /// Route a model on a graph; writes graph.json, model.json, paths.json.
    Route(RouteArgs),
    /// Color one routed path set with a largest-first greedy pass.
    Color(ColorArgs),
    /// Seeded restarts of route, enumerate and color; keeps the best.
    Run(RunArgs),
    /// Best colors per size and mode as a CSV table.
    Sweep(SweepArgs),
    /// Check a schedule against its graph, model and paths.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec such as `star:8`, `grid:4` or `triangular`.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    graph: Option<String>,
    /// Model spec such as `all_to_all:8` or `nn_hopping:4`.
    #[arg(long)]
    model: Option<String>,
    /// Attach the family's canned enumeration (bottleneck only).
    #[arg(long)]
    canned: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Routing {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = RoutingParams::default().phys_penalty)]
    phys_penalty: u64,
    #[arg(long, default_value_t = RoutingParams::default().used_increment)]
    used_increment: u64,
}

#[derive(Args, Clone)]
struct Instance {
    /// Generator spec (`star:8`, `heavy_hexagon`) or a graph file.
    #[arg(long)]
    graph: String,
    /// Model spec (`all_to_all:8`, `nn_hopping:4`) or a model file. Files
    /// are taken to be in vertex ids already and are not embedded.
    #[arg(long)]
    model: String,
    /// Placement of spec models: auto, ordered, random or lattice.
    #[arg(long, default_value = "auto")]
    embed: String,
}

#[derive(Args)]
struct RouteArgs {
    #[command(flatten)]
    instance: Instance,
    #[command(flatten)]
    routing: Routing,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    paths: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Seed for the tie-breaking shuffle.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Schedule file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    instance: Instance,
    #[command(flatten)]
    routing: Routing,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModesArg,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    enumeration: EnumerationArg,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Generator name, e.g. `star` or `triangular`.
    #[arg(long)]
    graph: String,
    /// `all_to_all` or `nn_hopping`.
    #[arg(long)]
    model: String,
    /// Comma-separated sizes and ranges, e.g. `3..10` or `5,10,15`.
    #[arg(long, default_value = "")]
    sizes: String,
    #[arg(long, default_value = "auto")]
    embed: String,
    #[command(flatten)]
    routing: Routing,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModesArg,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "greedy")]
    enumeration: EnumerationArg,
    /// Add a wall-clock column (the table is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// CSV file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    paths: PathBuf,
    #[arg(long)]
    schedule: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModesArg {
    Weak,
    Strong,
    Both,
}

impl ModesArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModesArg::Weak => vec![Mode::Weak],
            ModesArg::Strong => vec![Mode::Strong],
            ModesArg::Both => vec![Mode::Weak, Mode::Strong],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerationArg {
    /// Derive the enumeration from the routed paths.
    Greedy,
    /// Keep the graph's own (or the family's canned) enumeration.
    Preset,
}

impl From<EnumerationArg> for EnumerationPolicy {
    fn from(e: EnumerationArg) -> Self {
        match e {
            EnumerationArg::Greedy => EnumerationPolicy::Greedy,
            EnumerationArg::Preset => EnumerationPolicy::Preset,
        }
    }
}

/// `name` or `name:size`.
fn split_spec(spec: &str) -> Result<(&str, Option<usize>)> {
    match spec.split_once(':') {
        Some((name, size)) => {
            let size = size.parse().with_context(|| format!("bad size in `{spec}`"))?;
            Ok((name, Some(size)))
        }
        None => Ok((spec, None)),
    }
}

fn is_file_spec(spec: &str) -> bool {
    spec.ends_with(".json") || Path::new(spec).is_file()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<SystemGraph> {
    SystemGraph::from_json(&read(path)?).with_context(|| format!("invalid graph file {}", path.display()))
}

fn load_model(path: &Path) -> Result<Model> {
    Model::from_json(&read(path)?).with_context(|| format!("invalid model file {}", path.display()))
}

fn load_paths(path: &Path) -> Result<PathSet> {
    PathSet::from_json(&read(path)?).with_context(|| format!("invalid path file {}", path.display()))
}

fn model_from_spec(spec: &str) -> Result<(ModelKind, usize)> {
    let (name, size) = split_spec(spec)?;
    let kind = ModelKind::from_name(name).with_context(|| format!("unknown model `{name}`"))?;
    let size = size.with_context(|| format!("model `{name}` needs a size, e.g. `{name}:4`"))?;
    Ok((kind, size))
}

fn placement(name: &str) -> Result<PlacementKind> {
    PlacementKind::from_name(name).with_context(|| format!("unknown placement `{name}`"))
}

/// Resolves `--graph`/`--model` into an embedded instance.
fn load_instance(inst: &Instance, seed: u64, policy: EnumerationPolicy) -> Result<(SystemGraph, Vec<Interaction>)> {
    let placement_kind = placement(&inst.embed)?;
    if is_file_spec(&inst.graph) {
        let g = load_graph(Path::new(&inst.graph))?;
        if is_file_spec(&inst.model) {
            return Ok((g, load_model(Path::new(&inst.model))?.interactions));
        }
        let (kind, size) = model_from_spec(&inst.model)?;
        let m = kind.build(size)?;
        let placement = match placement_kind {
            PlacementKind::Random => pathcolor::models::Placement::Random { seed },
            PlacementKind::Lattice => bail!("lattice placement needs a generator graph"),
            _ => pathcolor::models::Placement::Ordered,
        };
        let e = embed(&m, &g, &placement)?;
        return Ok((e.graph, e.interactions));
    }
    let (name, size) = split_spec(&inst.graph)?;
    if is_file_spec(&inst.model) {
        let g = generators::by_name(name, size)?;
        let g = preset(name, g, policy)?;
        return Ok((g, load_model(Path::new(&inst.model))?.interactions));
    }
    let (kind, model_size) = model_from_spec(&inst.model)?;
    if !generators::is_fixed_instance(name) && size.is_some_and(|s| s != model_size) {
        bail!("graph size {} and model size {model_size} differ", size.unwrap_or(0));
    }
    let e = harness::instance(name, kind, model_size, placement_kind, seed)?;
    Ok((preset(name, e.graph, policy)?, e.interactions))
}

fn preset(name: &str, g: SystemGraph, policy: EnumerationPolicy) -> Result<SystemGraph> {
    Ok(match policy {
        EnumerationPolicy::Preset => canned_enumeration(name, &g)?,
        EnumerationPolicy::Greedy => g,
    })
}

/// Sizes like `3..10` (inclusive) or `5,10,15`.
fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.parse().with_context(|| format!("bad size range `{part}`"))?;
            let b: usize = b.parse().with_context(|| format!("bad size range `{part}`"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().with_context(|| format!("bad size `{part}`"))?);
        }
    }
    Ok(out)
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let text = if let Some(spec) = &args.graph {
        let (name, size) = split_spec(spec)?;
        let mut g = generators::by_name(name, size)?;
        if args.canned {
            g = canned_enumeration(name, &g)?;
        }
        g.to_json()
    } else {
        let (kind, size) = model_from_spec(args.model.as_deref().unwrap_or_default())?;
        kind.build(size)?.to_json()
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_route(args: RouteArgs) -> Result<()> {
    let (g, interactions) = load_instance(&args.instance, args.routing.seed, EnumerationPolicy::Greedy)?;
    let params = RoutingParams {
        phys_penalty: args.routing.phys_penalty,
        used_increment: args.routing.used_increment,
        seed: args.routing.seed,
    };
    let routed = route(&g, &interactions, &params)?;
    let mut base = g.clone();
    if !is_file_spec(&args.instance.graph) {
        base.clear_enumeration();
    }
    let enumerated = greedy_enumerate(&base, routed.paths_in_order())?;
    fs::create_dir_all(&args.out)?;
    write(&args.out.join("graph.json"), &enumerated.to_json())?;
    write(&args.out.join("model.json"), &Model::new(interactions).to_json())?;
    write(&args.out.join("paths.json"), &routed.paths.to_json())?;
    println!("routed {} interactions, mean path length {:.4}", routed.paths.len(), routed.paths.mean_path_length());
    Ok(())
}

fn cmd_color(args: ColorArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let model = load_model(&args.model)?;
    let paths = load_paths(&args.paths)?;
    let cg = coloring::build(args.mode.into(), &g, &model.interactions, &paths)?;
    let schedule = greedy_color(&cg, &largest_first_order(&cg, args.seed))?;
    verify_schedule(&g, &model.interactions, &paths, &schedule)?;
    emit(args.out.as_deref(), &schedule.to_json())?;
    if args.out.is_some() {
        println!("{} colors", schedule.colors);
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let policy: EnumerationPolicy = args.enumeration.into();
    let (g, interactions) = load_instance(&args.instance, args.routing.seed, policy)?;
    let config = RunConfig {
        graph: g,
        interactions,
        modes: args.mode.modes(),
        restarts: args.restarts,
        seed: args.routing.seed,
        phys_penalty: args.routing.phys_penalty,
        used_increment: args.routing.used_increment,
        enumeration: policy,
    };
    let results = harness::run(&config)?;
    fs::create_dir_all(&args.out)?;
    write(&args.out.join("model.json"), &Model::new(config.interactions.clone()).to_json())?;
    for r in &results {
        write(&args.out.join(format!("schedule_{}.json", r.mode)), &r.best.schedule.to_json())?;
        write(&args.out.join(format!("paths_{}.json", r.mode)), &r.best.paths.to_json())?;
        write(&args.out.join(format!("graph_{}.json", r.mode)), &r.best.graph.to_json())?;
    }
    let mut stats = Vec::new();
    harness::write_stats_csv(&results, &mut stats)?;
    fs::write(args.out.join("stats.csv"), &stats)?;
    std::io::stdout().write_all(&stats)?;
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let config = SweepConfig {
        model: ModelKind::from_name(&args.model).with_context(|| format!("unknown model `{}`", args.model))?,
        graph: args.graph,
        placement: placement(&args.embed)?,
        sizes: parse_sizes(&args.sizes)?,
        modes: args.mode.modes(),
        restarts: args.restarts,
        seed: args.routing.seed,
        phys_penalty: args.routing.phys_penalty,
        used_increment: args.routing.used_increment,
        enumeration: args.enumeration.into(),
        timing: args.timing,
    };
    let rows = harness::sweep(&config)?;
    let mut buf = Vec::new();
    harness::write_sweep_csv(&config, &rows, &mut buf)?;
    emit(args.out.as_deref(), std::str::from_utf8(&buf)?)
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let model = load_model(&args.model)?;
    let paths = load_paths(&args.paths)?;
    let schedule = Schedule::from_json(&read(&args.schedule)?).context("invalid schedule file")?;
    verify_schedule(&g, &model.interactions, &paths, &schedule)?;
    println!("ok: {} interactions in {} {} layers", model.len(), schedule.colors, schedule.mode);
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(a) => cmd_gen(a),
        Command::Route(a) => cmd_route(a),
        Command::Color(a) => cmd_color(a),
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
    }
}
