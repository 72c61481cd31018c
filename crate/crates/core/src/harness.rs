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

//! Seeded restarts of route, enumerate and color, with verification of the
//! winning schedules and CSV sweeps over instance sizes.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{self, brooks_bound, clique_lower_bound, greedy_color, largest_first_order, ColoringError, Mode, Schedule};
use crate::encoding::{interaction_operator, EncodingError};
use crate::generators;
use crate::graph::{GraphError, SystemGraph};
use crate::models::{self, embed, EmbeddedModel, Model, ModelError, Placement};
use crate::routing::{greedy_enumerate, route, validate_path, Interaction, PathSet, RoutingError, RoutingParams};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("need at least one restart")]
    NoRestarts,
    #[error("schedule failed verification: {0}")]
    Verification(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Where the strong-mode enumeration comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumerationPolicy {
    /// Discard any enumeration on the input graph and derive one from the
    /// routed paths.
    #[default]
    Greedy,
    /// Keep the indices already on the input graph and complete the rest
    /// from the routed paths.
    Preset,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph: SystemGraph,
    pub interactions: Vec<Interaction>,
    pub modes: Vec<Mode>,
    pub restarts: usize,
    pub seed: u64,
    pub phys_penalty: u64,
    pub used_increment: u64,
    pub enumeration: EnumerationPolicy,
}

impl RunConfig {
    pub fn new(graph: SystemGraph, interactions: Vec<Interaction>) -> Self {
        let defaults = RoutingParams::default();
        Self {
            graph,
            interactions,
            modes: vec![Mode::Weak, Mode::Strong],
            restarts: 1,
            seed: 0,
            phys_penalty: defaults.phys_penalty,
            used_increment: defaults.used_increment,
            enumeration: EnumerationPolicy::Greedy,
        }
    }

    pub fn routing_params(&self, seed: u64) -> RoutingParams {
        RoutingParams {
            phys_penalty: self.phys_penalty,
            used_increment: self.used_increment,
            seed,
        }
    }

    /// Seed of restart `i`.
    pub fn restart_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}

/// Result of one restart in one mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub seed: u64,
    pub schedule: Schedule,
    pub paths: PathSet,
    /// The system graph the schedule was built on (enumerated in strong mode).
    pub graph: SystemGraph,
}

/// Best attempt of a mode together with bounds on its conflict graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeResult {
    pub mode: Mode,
    pub best: Attempt,
    pub clique_bound: usize,
    pub brooks_bound: usize,
    pub mean_path_length: f64,
}

impl ModeResult {
    pub fn colors(&self) -> usize {
        self.best.schedule.colors
    }
}

/// One route, enumerate and color pass with a fixed seed.
pub fn attempt(config: &RunConfig, mode: Mode, seed: u64) -> Result<Attempt, HarnessError> {
    let routed = route(&config.graph, &config.interactions, &config.routing_params(seed))?;
    let graph = match mode {
        Mode::Weak => config.graph.clone(),
        Mode::Strong => {
            let mut base = config.graph.clone();
            if config.enumeration == EnumerationPolicy::Greedy {
                base.clear_enumeration();
            }
            greedy_enumerate(&base, routed.paths_in_order())?
        }
    };
    let cg = coloring::build(mode, &graph, &config.interactions, &routed.paths)?;
    let schedule = greedy_color(&cg, &largest_first_order(&cg, seed))?;
    Ok(Attempt {
        seed,
        schedule,
        paths: routed.paths,
        graph,
    })
}

fn better(a: Attempt, b: Attempt) -> Attempt {
    if (b.schedule.colors, b.seed) < (a.schedule.colors, a.seed) {
        b
    } else {
        a
    }
}

/// Runs every restart of one mode in parallel and keeps the schedule with
/// the fewest colors, ties going to the smaller seed. The winner is verified
/// before it is returned.
pub fn run_mode(config: &RunConfig, mode: Mode) -> Result<ModeResult, HarnessError> {
    if config.restarts == 0 {
        return Err(HarnessError::NoRestarts);
    }
    let best = (0..config.restarts)
        .into_par_iter()
        .map(|i| attempt(config, mode, config.restart_seed(i)))
        .try_reduce_with(|a, b| Ok(better(a, b)))
        .expect("at least one restart")?;
    verify_schedule(&best.graph, &config.interactions, &best.paths, &best.schedule)?;
    let cg = coloring::build(mode, &best.graph, &config.interactions, &best.paths)?;
    Ok(ModeResult {
        mode,
        clique_bound: clique_lower_bound(&cg),
        brooks_bound: brooks_bound(&cg),
        mean_path_length: best.paths.mean_path_length(),
        best,
    })
}

pub fn run(config: &RunConfig) -> Result<Vec<ModeResult>, HarnessError> {
    config.modes.iter().map(|&m| run_mode(config, m)).collect()
}

/// Checks a schedule independently of the conflict-graph code: paths must be
/// valid routes of their pairs, the layers must partition the interactions,
/// and within a layer the explicit Pauli supports (strong) or occupied
/// vertex sets (weak) must be pairwise disjoint.
pub fn verify_schedule(
    g: &SystemGraph,
    interactions: &[Interaction],
    paths: &PathSet,
    schedule: &Schedule,
) -> Result<(), HarnessError> {
    let fail = |msg: String| Err(HarnessError::Verification(msg));
    let mut footprints: Vec<BTreeSet<u32>> = Vec::with_capacity(interactions.len());
    for (id, t) in interactions.iter().enumerate() {
        let ps: Vec<Vec<u32>> = paths.get(id).map(<[_]>::to_vec).unwrap_or_default();
        if ps.len() != t.pairs.len() {
            return fail(format!("interaction {id} has {} paths for {} pairs", ps.len(), t.pairs.len()));
        }
        for (p, &(u, v)) in ps.iter().zip(&t.pairs) {
            if let Err(e) = validate_path(g, p) {
                return fail(format!("interaction {id}: {e}"));
            }
            if p.first() != Some(&u) || p.last() != Some(&v) {
                return fail(format!("interaction {id}: path {p:?} does not join {u} and {v}"));
            }
        }
        footprints.push(match schedule.mode {
            Mode::Weak => ps.iter().flatten().chain(&t.b_targets).copied().collect(),
            Mode::Strong => interaction_operator(g, id, t, &ps)?.support(),
        });
    }
    if schedule.colors != schedule.layers.len() {
        return fail(format!("{} colors but {} layers", schedule.colors, schedule.layers.len()));
    }
    let mut seen = vec![false; interactions.len()];
    for (c, layer) in schedule.layers.iter().enumerate() {
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for &id in layer {
            if id >= seen.len() || seen[id] {
                return fail(format!("layer {c}: interaction {id} is unknown or repeated"));
            }
            seen[id] = true;
            if let Some(x) = footprints[id].iter().find(|x| used.contains(x)) {
                let what = if schedule.mode == Mode::Weak { "vertex" } else { "qubit" };
                return fail(format!("layer {c}: interaction {id} reuses {what} {x}"));
            }
            used.extend(&footprints[id]);
        }
    }
    if let Some(id) = seen.iter().position(|s| !s) {
        return fail(format!("interaction {id} is not scheduled"));
    }
    Ok(())
}

/// Interaction sets a sweep can generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    AllToAll,
    NnHopping,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::AllToAll => "all_to_all",
            ModelKind::NnHopping => "nn_hopping",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "all_to_all" => Some(ModelKind::AllToAll),
            "nn_hopping" => Some(ModelKind::NnHopping),
            _ => None,
        }
    }

    pub fn build(self, size: usize) -> Result<Model, ModelError> {
        match self {
            ModelKind::AllToAll => models::all_to_all(size),
            ModelKind::NnHopping => models::nn_hopping(size),
        }
    }
}

/// Placement strategy by name.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlacementKind {
    /// Lattice models go to their site table, fixed instances get a random
    /// placement, everything else the ordered one.
    #[default]
    Auto,
    Ordered,
    Random,
    Lattice,
}

impl PlacementKind {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "auto" => Some(PlacementKind::Auto),
            "ordered" => Some(PlacementKind::Ordered),
            "random" => Some(PlacementKind::Random),
            "lattice" => Some(PlacementKind::Lattice),
            _ => None,
        }
    }
}

/// Site table for a lattice placement on `graph_name`: the shipped table for
/// the architecture instances, the identity for a `grid` of side `size`.
pub fn lattice_placement(graph_name: &str, size: Option<usize>) -> Option<Placement> {
    if let Some(sites) = generators::architecture_sites(graph_name) {
        return Some(Placement::Lattice {
            side: generators::ARCHITECTURE_SIDE,
            sites,
        });
    }
    match (graph_name, size) {
        ("grid", Some(l)) => Some(Placement::Lattice {
            side: l,
            sites: (0..(l * l) as u32).collect(),
        }),
        _ => None,
    }
}

/// Builds a system graph from a generator name and places a model on it.
/// For sized generators `size` sizes both graph and model; fixed instances
/// only use it for the model.
pub fn instance(
    graph_name: &str,
    model: ModelKind,
    size: usize,
    placement: PlacementKind,
    seed: u64,
) -> Result<EmbeddedModel, HarnessError> {
    let fixed = generators::is_fixed_instance(graph_name);
    let g = generators::by_name(graph_name, if fixed { None } else { Some(size) })?;
    let m = model.build(size)?;
    let lattice = || {
        lattice_placement(graph_name, Some(size)).ok_or_else(|| {
            HarnessError::Model(ModelError::Format(format!("no lattice site table for `{graph_name}`")))
        })
    };
    let placement = match placement {
        PlacementKind::Ordered => Placement::Ordered,
        PlacementKind::Random => Placement::Random { seed },
        PlacementKind::Lattice => lattice()?,
        PlacementKind::Auto if m.lattice_side.is_some() => lattice()?,
        PlacementKind::Auto if fixed => Placement::Random { seed },
        PlacementKind::Auto => Placement::Ordered,
    };
    Ok(embed(&m, &g, &placement)?)
}

/// Canned enumeration for a generator, used with [`EnumerationPolicy::Preset`].
/// Only the bottleneck family has one; other graphs come back unchanged.
pub fn canned_enumeration(graph_name: &str, g: &SystemGraph) -> Result<SystemGraph, HarnessError> {
    match graph_name {
        "bottleneck" => Ok(generators::bottleneck_parity_enumeration(g)?),
        _ => Ok(g.clone()),
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub graph: String,
    pub model: ModelKind,
    pub placement: PlacementKind,
    pub sizes: Vec<usize>,
    pub modes: Vec<Mode>,
    pub restarts: usize,
    pub seed: u64,
    pub phys_penalty: u64,
    pub used_increment: u64,
    pub enumeration: EnumerationPolicy,
    /// Adds a wall-clock column, which makes the table non-reproducible.
    pub timing: bool,
}

/// One table row: best result of one mode at one size.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub size: usize,
    pub mode: Mode,
    pub result: ModeResult,
    pub interactions: usize,
    pub qubits: u32,
    pub wall_ms: Option<u128>,
}

pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, HarnessError> {
    let mut rows = Vec::new();
    for &size in &config.sizes {
        let inst = instance(&config.graph, config.model, size, config.placement, config.seed)?;
        let graph = match config.enumeration {
            EnumerationPolicy::Preset => canned_enumeration(&config.graph, &inst.graph)?,
            EnumerationPolicy::Greedy => inst.graph,
        };
        let run_config = RunConfig {
            graph,
            interactions: inst.interactions,
            modes: config.modes.clone(),
            restarts: config.restarts,
            seed: config.seed,
            phys_penalty: config.phys_penalty,
            used_increment: config.used_increment,
            enumeration: config.enumeration,
        };
        for &mode in &config.modes {
            let start = Instant::now();
            let result = run_mode(&run_config, mode)?;
            let elapsed = start.elapsed().as_millis();
            rows.push(SweepRow {
                size,
                mode,
                interactions: run_config.interactions.len(),
                qubits: run_config.graph.qubit_count(),
                wall_ms: config.timing.then_some(elapsed),
                result,
            });
        }
    }
    Ok(rows)
}

pub const SWEEP_HEADER: [&str; 11] = [
    "graph",
    "model",
    "size",
    "mode",
    "restarts",
    "seed",
    "colors",
    "clique_bound",
    "mean_path_length",
    "qubits",
    "interactions",
];

/// Writes the sweep table. A header is written even when there are no rows.
pub fn write_sweep_csv<W: Write>(config: &SweepConfig, rows: &[SweepRow], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = SWEEP_HEADER.to_vec();
    if config.timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![
            config.graph.clone(),
            config.model.name().to_string(),
            row.size.to_string(),
            row.mode.to_string(),
            config.restarts.to_string(),
            config.seed.to_string(),
            row.result.colors().to_string(),
            row.result.clique_bound.to_string(),
            format!("{:.4}", row.result.mean_path_length),
            row.qubits.to_string(),
            row.interactions.to_string(),
        ];
        if config.timing {
            record.push(row.wall_ms.unwrap_or(0).to_string());
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-run stats table: one row per mode.
pub fn write_stats_csv<W: Write>(results: &[ModeResult], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["seed", "mode", "colors", "clique_bound", "brooks_bound", "mean_path_length"])?;
    for r in results {
        w.write_record([
            r.best.seed.to_string(),
            r.mode.to_string(),
            r.colors().to_string(),
            r.clique_bound.to_string(),
            r.brooks_bound.to_string(),
            format!("{:.4}", r.mean_path_length),
        ])?;
    }
    w.flush()?;
    Ok(())
}
