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

//! Conflict graphs over interactions and their colorings.
//!
//! Two interactions conflict in the weak sense when their routed paths (plus
//! vertex-operator targets) share a system-graph vertex, and in the strong
//! sense when they share an internal qubit. A coloring of the conflict graph
//! is a schedule: each color is one layer of terms that can run at once.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::encoding::{interaction_support, EncodingError};
use crate::graph::SystemGraph;
use crate::routing::{seeded_order, Interaction, InteractionId, PathSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            other => Err(format!("unknown mode `{other}` (expected weak or strong)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("interaction {0} has no routed path")]
    MissingPath(InteractionId),
    #[error("strong conflicts need an enumeration; edge ({0}, {1}) has none")]
    EnumerationUnset(u32, u32),
    #[error(transparent)]
    Encoding(EncodingError),
    #[error("graph has {size} vertices, exact coloring is capped at {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("vertex order is not a permutation of the conflict-graph vertices")]
    NotAPermutation,
}

impl From<EncodingError> for ColoringError {
    fn from(e: EncodingError) -> Self {
        match e {
            EncodingError::EnumerationUnset(u, v) => ColoringError::EnumerationUnset(u, v),
            EncodingError::MissingPath { interaction, .. } => ColoringError::MissingPath(interaction),
            other => ColoringError::Encoding(other),
        }
    }
}

/// Fixed-width bit set used for the pairwise intersection tests.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut words = Vec::new();
        for i in indices {
            let w = i / 64;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] |= 1 << (i % 64);
        }
        Bits(words)
    }

    pub(crate) fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// Simple undirected graph over interaction ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    mode: Mode,
    adjacency: Vec<BTreeSet<usize>>,
}

impl ConflictGraph {
    pub fn new(mode: Mode, n: usize) -> Self {
        Self {
            mode,
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(mode: Mode, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(mode, n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Ignores self-loops.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adjacency[a].insert(b);
            self.adjacency[b].insert(a);
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    fn from_sets(mode: Mode, sets: &[Bits]) -> Self {
        let mut g = Self::new(mode, sets.len());
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                if sets[a].intersects(&sets[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                for w in self.neighbors(comp[k]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            out.push(comp);
        }
        out
    }
}

fn paths_of(paths: &PathSet, id: InteractionId, t: &Interaction) -> Result<Vec<Vec<u32>>, ColoringError> {
    match paths.get(id) {
        Some(ps) if ps.len() >= t.pairs.len() => Ok(ps.to_vec()),
        None if t.pairs.is_empty() => Ok(Vec::new()),
        _ => Err(ColoringError::MissingPath(id)),
    }
}

/// System-graph vertices an interaction occupies: every vertex on its paths
/// plus its vertex-operator targets.
pub fn occupied_vertices(
    id: InteractionId,
    interaction: &Interaction,
    paths: &PathSet,
) -> Result<BTreeSet<u32>, ColoringError> {
    let mut set: BTreeSet<u32> = paths_of(paths, id, interaction)?.into_iter().flatten().collect();
    set.extend(interaction.b_targets.iter().copied());
    Ok(set)
}

/// Weak conflict graph: edge iff the occupied vertex sets intersect.
pub fn build_weak(g: &SystemGraph, interactions: &[Interaction], paths: &PathSet) -> Result<ConflictGraph, ColoringError> {
    let index: std::collections::HashMap<u32, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let sets = interactions
        .iter()
        .enumerate()
        .map(|(id, t)| {
            let occ = occupied_vertices(id, t, paths)?;
            Ok(Bits::from_indices(occ.iter().filter_map(|v| index.get(v).copied())))
        })
        .collect::<Result<Vec<_>, ColoringError>>()?;
    Ok(ConflictGraph::from_sets(Mode::Weak, &sets))
}

/// Qubit sets for every interaction under the active-qubit rules.
pub fn strong_supports(
    g: &SystemGraph,
    interactions: &[Interaction],
    paths: &PathSet,
) -> Result<Vec<BTreeSet<u32>>, ColoringError> {
    interactions
        .iter()
        .enumerate()
        .map(|(id, t)| {
            let ps = paths_of(paths, id, t)?;
            Ok(interaction_support(g, id, t, &ps)?)
        })
        .collect()
}

/// Strong conflict graph: edge iff the active qubit sets intersect.
pub fn build_strong(g: &SystemGraph, interactions: &[Interaction], paths: &PathSet) -> Result<ConflictGraph, ColoringError> {
    let sets: Vec<Bits> = strong_supports(g, interactions, paths)?
        .into_iter()
        .map(|s| Bits::from_indices(s.into_iter().map(|q| q as usize)))
        .collect();
    Ok(ConflictGraph::from_sets(Mode::Strong, &sets))
}

pub fn build(mode: Mode, g: &SystemGraph, interactions: &[Interaction], paths: &PathSet) -> Result<ConflictGraph, ColoringError> {
    match mode {
        Mode::Weak => build_weak(g, interactions, paths),
        Mode::Strong => build_strong(g, interactions, paths),
    }
}

/// Layered schedule: `layers[c]` holds the interactions of color `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub mode: Mode,
    pub colors: usize,
    pub layers: Vec<Vec<InteractionId>>,
}

impl Schedule {
    pub fn from_coloring(mode: Mode, coloring: &[usize]) -> Self {
        let colors = coloring.iter().map(|c| c + 1).max().unwrap_or(0);
        let mut layers = vec![Vec::new(); colors];
        for (v, &c) in coloring.iter().enumerate() {
            layers[c].push(v);
        }
        Self { mode, colors, layers }
    }

    /// Color of each interaction, indexed by id.
    pub fn coloring(&self) -> Vec<usize> {
        let n = self.layers.iter().map(Vec::len).sum();
        let mut out = vec![usize::MAX; n];
        for (c, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                if v < n {
                    out[v] = c;
                }
            }
        }
        out
    }

    /// True iff the layers partition `0..cg.len()` and no layer contains a
    /// conflict edge.
    pub fn is_proper(&self, cg: &ConflictGraph) -> bool {
        let mut seen = vec![false; cg.len()];
        for layer in &self.layers {
            for &v in layer {
                if v >= cg.len() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            for (i, &a) in layer.iter().enumerate() {
                if layer[i + 1..].iter().any(|&b| cg.has_edge(a, b)) {
                    return false;
                }
            }
        }
        self.colors == self.layers.len() && seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Visits vertices in `order`, giving each the first color not used by an
/// already-colored neighbor.
pub fn greedy_color(cg: &ConflictGraph, order: &[usize]) -> Result<Schedule, ColoringError> {
    let n = cg.len();
    let mut coloring = vec![usize::MAX; n];
    if order.len() != n {
        return Err(ColoringError::NotAPermutation);
    }
    let mut taken = Vec::new();
    for &v in order {
        if v >= n || coloring[v] != usize::MAX {
            return Err(ColoringError::NotAPermutation);
        }
        taken.clear();
        taken.resize(cg.degree(v) + 1, false);
        for w in cg.neighbors(v) {
            let c = coloring[w];
            if c < taken.len() {
                taken[c] = true;
            }
        }
        coloring[v] = taken.iter().position(|t| !t).expect("degree+1 slots leave a free color");
    }
    Ok(Schedule::from_coloring(cg.mode(), &coloring))
}

/// Vertices by descending degree; equal degrees keep the seeded shuffle order.
pub fn largest_first_order(cg: &ConflictGraph, seed: u64) -> Vec<usize> {
    let mut order = seeded_order(cg.len(), seed);
    order.sort_by_key(|&v| std::cmp::Reverse(cg.degree(v)));
    order
}

/// Start vertices tried by [`greedy_clique`], highest degree first.
pub const CLIQUE_STARTS: usize = 64;

/// Greedily grown clique: from each of the [`CLIQUE_STARTS`] highest-degree
/// start vertices, repeatedly add the candidate with the most neighbors
/// among the remaining candidates. Returns the largest clique found.
pub fn greedy_clique(cg: &ConflictGraph) -> Vec<usize> {
    let n = cg.len();
    let words = n.div_ceil(64);
    let adj: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut row = vec![0u64; words];
            for w in cg.neighbors(v) {
                row[w / 64] |= 1 << (w % 64);
            }
            row
        })
        .collect();
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(cg.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &s in starts.iter().take(CLIQUE_STARTS) {
        if cg.degree(s) < best.len() {
            break;
        }
        let mut clique = vec![s];
        let mut cand = adj[s].clone();
        loop {
            let mut pick = None;
            let mut pick_count = 0;
            for (wi, &word) in cand.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let c = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let count: u32 = adj[c].iter().zip(&cand).map(|(a, b)| (a & b).count_ones()).sum();
                    if pick.is_none() || count > pick_count {
                        pick = Some(c);
                        pick_count = count;
                    }
                }
            }
            let Some(p) = pick else { break };
            clique.push(p);
            for (c, a) in cand.iter_mut().zip(&adj[p]) {
                *c &= a;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Size of [`greedy_clique`]; a lower bound on the chromatic number.
pub fn clique_lower_bound(cg: &ConflictGraph) -> usize {
    greedy_clique(cg).len()
}

/// Upper bound on the chromatic number from vertex degrees: per connected
/// component, max degree, plus one for complete graphs and odd cycles.
pub fn brooks_bound(cg: &ConflictGraph) -> usize {
    cg.components()
        .into_iter()
        .map(|comp| {
            let k = comp.len();
            let maxdeg = comp.iter().map(|&v| cg.degree(v)).max().unwrap_or(0);
            let complete = comp.iter().all(|&v| cg.degree(v) == k - 1);
            let odd_cycle = k % 2 == 1 && k >= 3 && comp.iter().all(|&v| cg.degree(v) == 2);
            if complete || odd_cycle {
                maxdeg + 1
            } else {
                maxdeg
            }
        })
        .max()
        .unwrap_or(0)
}

pub const DEFAULT_EXACT_CAP: usize = 18;

/// Exact chromatic number by DSATUR-style branch and bound, seeded with a
/// greedy clique (pre-colored) and a largest-first greedy upper bound.
pub fn exact_chromatic(cg: &ConflictGraph, size_cap: usize) -> Result<usize, ColoringError> {
    let n = cg.len();
    if n > size_cap {
        return Err(ColoringError::TooLarge { size: n, cap: size_cap });
    }
    if n == 0 {
        return Ok(0);
    }
    let clique = greedy_clique(cg);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(cg.degree(v)));
    let mut best = greedy_color(cg, &order)?.colors;
    if best == clique.len() {
        return Ok(best);
    }
    let mut coloring = vec![usize::MAX; n];
    for (c, &v) in clique.iter().enumerate() {
        coloring[v] = c;
    }
    let mut search = Search { cg, best: &mut best, lower: clique.len() };
    search.branch(&mut coloring, clique.len(), n - clique.len());
    Ok(best)
}

struct Search<'a> {
    cg: &'a ConflictGraph,
    best: &'a mut usize,
    lower: usize,
}

impl Search<'_> {
    fn branch(&mut self, coloring: &mut [usize], used: usize, remaining: usize) {
        if *self.best == self.lower {
            return;
        }
        if remaining == 0 {
            *self.best = (*self.best).min(used);
            return;
        }
        // DSATUR pick: most distinct neighbor colors, then highest degree.
        let v = (0..coloring.len())
            .filter(|&v| coloring[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat: BTreeSet<usize> = self
                    .cg
                    .neighbors(v)
                    .map(|w| coloring[w])
                    .filter(|&c| c != usize::MAX)
                    .collect();
                (sat.len(), self.cg.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        let limit = (used + 1).min(*self.best - 1);
        for c in 0..limit {
            if self.cg.neighbors(v).any(|w| coloring[w] == c) {
                continue;
            }
            coloring[v] = c;
            self.branch(coloring, used.max(c + 1), remaining - 1);
            coloring[v] = usize::MAX;
            if *self.best == self.lower {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::routing::{route, RoutingParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> ConflictGraph {
        ConflictGraph::from_edges(Mode::Weak, 3, [(0, 1), (1, 2), (0, 2)])
    }

    fn all_to_all(n: u32) -> Vec<Interaction> {
        let mut ts = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    ts.push(Interaction::hopping(u, v));
                }
            }
        }
        ts.extend((0..n).map(Interaction::vertex));
        ts
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> ConflictGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = ConflictGraph::new(Mode::Weak, n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Independent oracle: smallest k for which some assignment of k colors
    /// is proper, by exhaustive enumeration.
    fn brute_force_chromatic(g: &ConflictGraph) -> usize {
        fn colorable(g: &ConflictGraph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
            if v == g.len() {
                return true;
            }
            for c in 0..k {
                if g.neighbors(v).filter(|&w| w < v).all(|w| colors[w] != c) {
                    colors[v] = c;
                    if colorable(g, k, v + 1, colors) {
                        return true;
                    }
                }
            }
            false
        }
        (0..=g.len())
            .find(|&k| colorable(g, k, 0, &mut vec![0; g.len()]))
            .unwrap()
    }

    #[test]
    fn greedy_basics() {
        let empty = ConflictGraph::new(Mode::Weak, 4);
        assert_eq!(greedy_color(&empty, &[0, 1, 2, 3]).unwrap().colors, 1);
        let t = triangle();
        let s = greedy_color(&t, &[2, 0, 1]).unwrap();
        assert_eq!(s.colors, 3);
        assert!(s.is_proper(&t));
        assert_eq!(greedy_color(&t, &[0, 1]), Err(ColoringError::NotAPermutation));
        assert_eq!(greedy_color(&t, &[0, 1, 1]), Err(ColoringError::NotAPermutation));
    }

    #[test]
    fn largest_first_is_descending_and_deterministic() {
        // star: hub 0 with 5 leaves
        let g = ConflictGraph::from_edges(Mode::Weak, 6, (1..6).map(|v| (0, v)));
        let order = largest_first_order(&g, 7);
        assert_eq!(order[0], 0);
        assert_eq!(order, largest_first_order(&g, 7));
        // regular graph: the order is exactly the seeded shuffle
        let cycle = ConflictGraph::from_edges(Mode::Weak, 6, (0..6).map(|v| (v, (v + 1) % 6)));
        assert_eq!(largest_first_order(&cycle, 3), seeded_order(6, 3));
    }

    #[test]
    fn clique_and_brooks() {
        assert_eq!(clique_lower_bound(&triangle()), 3);
        assert_eq!(clique_lower_bound(&ConflictGraph::new(Mode::Weak, 3)), 1);
        assert_eq!(clique_lower_bound(&ConflictGraph::new(Mode::Weak, 0)), 0);
        assert_eq!(brooks_bound(&triangle()), 3);
        let c5 = ConflictGraph::from_edges(Mode::Weak, 5, (0..5).map(|v| (v, (v + 1) % 5)));
        assert_eq!(brooks_bound(&c5), 3);
        let c6 = ConflictGraph::from_edges(Mode::Weak, 6, (0..6).map(|v| (v, (v + 1) % 6)));
        assert_eq!(brooks_bound(&c6), 2);
        assert_eq!(brooks_bound(&ConflictGraph::new(Mode::Weak, 2)), 1);
    }

    #[test]
    fn exact_small_cases() {
        assert_eq!(exact_chromatic(&triangle(), DEFAULT_EXACT_CAP).unwrap(), 3);
        let c5 = ConflictGraph::from_edges(Mode::Weak, 5, (0..5).map(|v| (v, (v + 1) % 5)));
        assert_eq!(exact_chromatic(&c5, DEFAULT_EXACT_CAP).unwrap(), 3);
        assert_eq!(
            exact_chromatic(&ConflictGraph::new(Mode::Weak, 19), DEFAULT_EXACT_CAP),
            Err(ColoringError::TooLarge { size: 19, cap: 18 })
        );
        assert_eq!(exact_chromatic(&ConflictGraph::new(Mode::Weak, 0), 18).unwrap(), 0);
    }

    #[test]
    fn exact_matches_brute_force() {
        for seed in 0..30 {
            let g = random_graph(10, 0.2 + 0.02 * seed as f64, seed);
            assert_eq!(
                exact_chromatic(&g, DEFAULT_EXACT_CAP).unwrap(),
                brute_force_chromatic(&g),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn weak_star_is_one_big_clique() {
        let g = generators::star(4).unwrap();
        let ts = all_to_all(4);
        let routed = route(&g, &ts, &RoutingParams::default()).unwrap();
        let cg = build_weak(&g, &ts, &routed.paths).unwrap();
        for a in 0..12 {
            for b in a + 1..12 {
                assert!(cg.has_edge(a, b));
            }
        }
        // B terms never conflict with each other
        assert!(!cg.has_edge(12, 13));
        // B_w vs a path through w
        assert!(cg.has_edge(0, 12));
        for seed in 0..5 {
            let s = greedy_color(&cg, &seeded_order(cg.len(), seed)).unwrap();
            assert_eq!(s.colors, 12);
        }
    }

    #[test]
    fn weak_star_three_exact() {
        let g = generators::star(3).unwrap();
        let ts = all_to_all(3);
        let routed = route(&g, &ts, &RoutingParams::default()).unwrap();
        let cg = build_weak(&g, &ts, &routed.paths).unwrap();
        assert_eq!(exact_chromatic(&cg, DEFAULT_EXACT_CAP).unwrap(), 6);
    }

    #[test]
    fn figure_one_strong_pair() {
        let g = generators::star(4).unwrap();
        let e = g.set_enumeration([(4, 0, 1), (4, 3, 2), (4, 1, 3), (4, 2, 4)]).unwrap().default_enumeration();
        let ts = vec![Interaction::hopping(0, 3), Interaction::hopping(1, 2)];
        let mut ps = PathSet::default();
        ps.insert(0, vec![vec![0, 4, 3]]);
        ps.insert(1, vec![vec![1, 4, 2]]);
        assert_eq!(build_strong(&e, &ts, &ps).unwrap().edge_count(), 0);
        assert_eq!(build_weak(&e, &ts, &ps).unwrap().edge_count(), 1);
        assert_eq!(build_strong(&g, &ts, &ps), Err(ColoringError::EnumerationUnset(0, 4)));
    }

    #[test]
    fn missing_paths_are_reported() {
        let g = generators::line(3).unwrap().default_enumeration();
        let ts = vec![Interaction::hopping(0, 2)];
        assert_eq!(build_weak(&g, &ts, &PathSet::default()), Err(ColoringError::MissingPath(0)));
        assert_eq!(build_strong(&g, &ts, &PathSet::default()), Err(ColoringError::MissingPath(0)));
    }

    #[test]
    fn schedule_round_trip() {
        let s = Schedule::from_coloring(Mode::Strong, &[0, 1, 0, 2]);
        assert_eq!(s.layers, vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(s.coloring(), vec![0, 1, 0, 2]);
        let text = s.to_json();
        assert!(text.contains("\"mode\": \"strong\""));
        assert_eq!(Schedule::from_json(&text).unwrap(), s);
    }
}
