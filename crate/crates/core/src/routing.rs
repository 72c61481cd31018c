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

//! Congestion-aware routing of interactions through the system graph, and
//! the greedy edge enumeration that follows the routed paths.
//!
//! Interactions are visited in a seeded random order. Each endpoint pair is
//! routed along a minimum-weight path where every edge costs
//! `1 + phys_penalty * (#physical endpoints) + used_increment * (#times used)`.
//! Usage counts persist for the whole run.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SystemGraph, VertexId};

pub type InteractionId = usize;
pub type Path = Vec<VertexId>;

/// One Hamiltonian term: the endpoint pairs that need a path each, plus the
/// vertices carrying a vertex operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interaction {
    pub pairs: Vec<(VertexId, VertexId)>,
    pub b_targets: BTreeSet<VertexId>,
}

impl Interaction {
    pub fn new(pairs: Vec<(VertexId, VertexId)>, b_targets: impl IntoIterator<Item = VertexId>) -> Self {
        Self {
            pairs,
            b_targets: b_targets.into_iter().collect(),
        }
    }

    /// Hopping term `A_uv B_v`.
    pub fn hopping(u: VertexId, v: VertexId) -> Self {
        Self::new(vec![(u, v)], [v])
    }

    /// Bare vertex operator `B_u`.
    pub fn vertex(u: VertexId) -> Self {
        Self::new(Vec::new(), [u])
    }

    /// Every vertex the term names directly (endpoints and vertex-operator
    /// targets).
    pub fn named_vertices(&self) -> BTreeSet<VertexId> {
        self.pairs
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(self.b_targets.iter().copied())
            .collect()
    }

    /// Short label such as `"3>5"` for a hopping term or `"B4"`.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.pairs.iter().map(|(u, v)| format!("{u}>{v}")).collect();
        let tail_only = self.pairs.len() == 1 && self.b_targets.len() == 1 && self.b_targets.contains(&self.pairs[0].1);
        if !tail_only {
            parts.extend(self.b_targets.iter().map(|b| format!("B{b}")));
        }
        parts.join(",")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RoutingError {
    #[error("vertex {0} is not in the system graph")]
    UnknownVertex(VertexId),
    #[error("interaction {interaction}: endpoint {vertex} is not physical")]
    NotPhysical {
        interaction: InteractionId,
        vertex: VertexId,
    },
    #[error("no path from {0} to {1}")]
    UnreachableEndpoint(VertexId, VertexId),
    #[error("invalid path {path:?}: {reason}")]
    InvalidPath { path: Path, reason: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingParams {
    /// Added to an edge once per physical endpoint.
    pub phys_penalty: u64,
    /// Added to an edge every time a routed path traverses it.
    pub used_increment: u64,
    pub seed: u64,
}

impl Default for RoutingParams {
    fn default() -> Self {
        Self {
            phys_penalty: 5,
            used_increment: 3,
            seed: 0,
        }
    }
}

/// One path per endpoint pair, per interaction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSet {
    pub paths: BTreeMap<InteractionId, Vec<Path>>,
}

impl PathSet {
    pub fn get(&self, id: InteractionId) -> Option<&[Path]> {
        self.paths.get(&id).map(Vec::as_slice)
    }

    pub fn insert(&mut self, id: InteractionId, paths: Vec<Path>) {
        self.paths.insert(id, paths);
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Mean number of edges over all routed paths (0 if none).
    pub fn mean_path_length(&self) -> f64 {
        let lengths: Vec<usize> = self.paths.values().flatten().map(|p| p.len() - 1).collect();
        if lengths.is_empty() {
            0.0
        } else {
            lengths.iter().sum::<usize>() as f64 / lengths.len() as f64
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("path set serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Routing output: the path set plus every path in the order it was routed,
/// which is what the greedy enumeration consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Routed {
    pub paths: PathSet,
    pub order: Vec<InteractionId>,
}

impl Routed {
    pub fn paths_in_order(&self) -> impl Iterator<Item = &Path> + '_ {
        self.order
            .iter()
            .filter_map(|id| self.paths.get(*id))
            .flatten()
    }
}

/// Seeded permutation of `0..n`. Routing and tie-breaking in the
/// largest-first order share it, so both see the same interaction order.
pub fn seeded_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    order
}

/// Checks that `path` is a simple walk along edges of `g`.
pub fn validate_path(g: &SystemGraph, path: &[VertexId]) -> Result<(), RoutingError> {
    let bad = |reason| RoutingError::InvalidPath {
        path: path.to_vec(),
        reason,
    };
    if path.len() < 2 {
        return Err(bad("fewer than two vertices"));
    }
    if let Some(&v) = path.iter().find(|v| !g.contains(**v)) {
        return Err(RoutingError::UnknownVertex(v));
    }
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(bad("consecutive vertices are not adjacent"));
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(bad("repeated vertex"));
    }
    Ok(())
}

struct Weights<'g> {
    graph: &'g SystemGraph,
    phys_penalty: u64,
    used_increment: u64,
    uses: HashMap<(VertexId, VertexId), u64>,
}

impl<'g> Weights<'g> {
    fn weight(&self, u: VertexId, v: VertexId) -> u64 {
        let phys = self.graph.is_physical(u) as u64 + self.graph.is_physical(v) as u64;
        let used = self.uses.get(&(u.min(v), u.max(v))).copied().unwrap_or(0);
        1 + self.phys_penalty * phys + self.used_increment * used
    }

    fn mark_used(&mut self, path: &[VertexId]) {
        for w in path.windows(2) {
            *self.uses.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
        }
    }

    /// Dijkstra from `source`; among equal-distance predecessors the smallest
    /// vertex id wins.
    fn shortest_path(&self, source: VertexId, target: VertexId) -> Option<(Path, u64)> {
        let mut dist: HashMap<VertexId, u64> = HashMap::from([(source, 0)]);
        let mut pred: HashMap<VertexId, VertexId> = HashMap::new();
        let mut settled: BTreeSet<VertexId> = BTreeSet::new();
        let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if !settled.insert(u) {
                continue;
            }
            if u == target {
                break;
            }
            for v in self.graph.neighbors(u) {
                if settled.contains(&v) {
                    continue;
                }
                let nd = d + self.weight(u, v);
                let better = match dist.get(&v) {
                    None => true,
                    Some(&old) => nd < old || (nd == old && u < pred[&v]),
                };
                if better {
                    dist.insert(v, nd);
                    pred.insert(v, u);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        let total = *dist.get(&target)?;
        let mut path = vec![target];
        let mut cur = target;
        while cur != source {
            cur = pred[&cur];
            path.push(cur);
        }
        path.reverse();
        Some((path, total))
    }
}

fn check_endpoints(g: &SystemGraph, interactions: &[Interaction]) -> Result<(), RoutingError> {
    for (id, t) in interactions.iter().enumerate() {
        for v in t.named_vertices() {
            if !g.contains(v) {
                return Err(RoutingError::UnknownVertex(v));
            }
        }
        for v in t.pairs.iter().flat_map(|&(a, b)| [a, b]) {
            if !g.is_physical(v) {
                return Err(RoutingError::NotPhysical { interaction: id, vertex: v });
            }
        }
    }
    Ok(())
}

/// Routes every interaction in the seeded order given by `params.seed`.
pub fn route(g: &SystemGraph, interactions: &[Interaction], params: &RoutingParams) -> Result<Routed, RoutingError> {
    route_in_order(g, interactions, params, seeded_order(interactions.len(), params.seed))
}

/// Routes interactions in an explicit order. Pairs of a multi-pair term are
/// routed consecutively in listed order.
pub fn route_in_order(
    g: &SystemGraph,
    interactions: &[Interaction],
    params: &RoutingParams,
    order: Vec<InteractionId>,
) -> Result<Routed, RoutingError> {
    check_endpoints(g, interactions)?;
    let mut weights = Weights {
        graph: g,
        phys_penalty: params.phys_penalty,
        used_increment: params.used_increment,
        uses: HashMap::new(),
    };
    let mut paths = PathSet::default();
    for &id in &order {
        let mut routed = Vec::with_capacity(interactions[id].pairs.len());
        for &(u, v) in &interactions[id].pairs {
            let (path, _) = weights
                .shortest_path(u, v)
                .ok_or(RoutingError::UnreachableEndpoint(u, v))?;
            weights.mark_used(&path);
            routed.push(path);
        }
        paths.insert(id, routed);
    }
    Ok(Routed { paths, order })
}

/// Enumerates edges along the routed paths, in routing order:
///
/// * first vertex: the outgoing edge takes the smallest free index;
/// * interior vertex: incoming edge takes the smallest free index, then the
///   outgoing edge the next smallest free one;
/// * last vertex: the incoming edge takes the largest free index.
///
/// Edges that already carry an index are left alone. Whatever remains
/// afterwards is filled by ascending neighbor id into the smallest free
/// indices, so the result is always a full enumeration.
pub fn greedy_enumerate<'a, I>(g: &SystemGraph, paths_in_order: I) -> Result<SystemGraph, RoutingError>
where
    I: IntoIterator<Item = &'a Path>,
{
    let mut out = g.clone();
    for path in paths_in_order {
        validate_path(g, path)?;
        let last = path.len() - 1;
        for (k, &u) in path.iter().enumerate() {
            if k == 0 {
                assign_smallest(&mut out, u, path[1]);
            } else if k == last {
                let x = path[k - 1];
                if out.xi(u, x).is_none() {
                    let i = out.largest_free_index(u).expect("unset edge leaves a free index");
                    out.assign_index(u, x, i).expect("free index is valid");
                }
            } else {
                assign_smallest(&mut out, u, path[k - 1]);
                assign_smallest(&mut out, u, path[k + 1]);
            }
        }
    }
    out.fill_enumeration();
    Ok(out)
}

fn assign_smallest(g: &mut SystemGraph, u: VertexId, v: VertexId) {
    if g.xi(u, v).is_none() {
        let i = g.smallest_free_index(u).expect("unset edge leaves a free index");
        g.assign_index(u, v, i).expect("free index is valid");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::VertexKind::*;

    fn cycle4() -> SystemGraph {
        // 0 and 2 physical, 1 and 3 virtual relays: two equal routes 0-1-2 and 0-3-2
        SystemGraph::build(
            [(0, Physical), (1, Virtual), (2, Physical), (3, Virtual)],
            [(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap()
    }

    #[test]
    fn line_has_unique_route() {
        let g = generators::line(4).unwrap();
        let r = route(&g, &[Interaction::hopping(0, 3)], &RoutingParams::default()).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 1, 2, 3]]);
    }

    #[test]
    fn star_routes_through_hub() {
        let g = generators::star(4).unwrap();
        let r = route(&g, &[Interaction::hopping(0, 3)], &RoutingParams::default()).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 4, 3]]);
    }

    #[test]
    fn used_increment_diverts_second_path() {
        // Hand trace: both routes cost (1+5)+(1+5)=12. Tie-break picks the
        // smaller predecessor of 2, i.e. vertex 1. After the increment the
        // 0-1-2 route costs 18, so the second pair takes 0-3-2.
        let g = cycle4();
        let ts = [Interaction::hopping(0, 2), Interaction::hopping(0, 2)];
        let params = RoutingParams {
            phys_penalty: 5,
            used_increment: 3,
            seed: 0,
        };
        let r = route_in_order(&g, &ts, &params, vec![0, 1]).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 1, 2]]);
        assert_eq!(r.paths.get(1).unwrap(), [vec![0, 3, 2]]);

        let flat = RoutingParams {
            used_increment: 0,
            ..params
        };
        let r = route_in_order(&g, &ts, &flat, vec![0, 1]).unwrap();
        assert_eq!(r.paths.get(1).unwrap(), [vec![0, 1, 2]]);
    }

    #[test]
    fn physical_penalty_prefers_virtual_detour() {
        // 0-1-2 crosses physical vertex 1 and costs 2 + 4p; 0-3-4-2 through
        // virtual vertices costs 3 + 2p.
        let g = SystemGraph::build(
            [(0, Physical), (1, Physical), (2, Physical), (3, Virtual), (4, Virtual)],
            [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)],
        )
        .unwrap();
        let r = route(&g, &[Interaction::hopping(0, 2)], &RoutingParams::default()).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 3, 4, 2]]);
        let flat = RoutingParams {
            phys_penalty: 0,
            ..Default::default()
        };
        let r = route(&g, &[Interaction::hopping(0, 2)], &flat).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 1, 2]]);
    }

    #[test]
    fn rejects_virtual_or_unknown_endpoints() {
        let g = generators::star(3).unwrap();
        assert!(matches!(
            route(&g, &[Interaction::hopping(0, 3)], &RoutingParams::default()),
            Err(RoutingError::NotPhysical { vertex: 3, .. })
        ));
        assert_eq!(
            route(&g, &[Interaction::vertex(9)], &RoutingParams::default()),
            Err(RoutingError::UnknownVertex(9))
        );
    }

    #[test]
    fn k_body_pairs_route_consecutively() {
        let g = generators::line(5).unwrap();
        let t = Interaction::new(vec![(0, 1), (3, 4)], []);
        let r = route(&g, &[t], &RoutingParams::default()).unwrap();
        assert_eq!(r.paths.get(0).unwrap(), [vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn figure_one_star_enumeration() {
        // leaves a=0, b=1, c=2, d=3, hub e=4; routing ad then bc.
        let g = generators::star(4).unwrap();
        let paths = [vec![0, 4, 3], vec![1, 4, 2]];
        let e = greedy_enumerate(&g, paths.iter()).unwrap();
        assert_eq!(e.vertex_order(4).unwrap(), [0, 3, 1, 2]);
        assert!(e.is_fully_enumerated());
    }

    #[test]
    fn single_path_rules() {
        // u=0 - w=1 - v=2, where v has extra neighbors 3 and 4.
        let g = SystemGraph::build(
            [(0, Physical), (1, Virtual), (2, Physical), (3, Physical), (4, Physical)],
            [(0, 1), (1, 2), (2, 3), (2, 4)],
        )
        .unwrap();
        let e = greedy_enumerate(&g, [vec![0, 1, 2]].iter()).unwrap();
        assert_eq!(e.xi(1, 0), Some(1));
        assert_eq!(e.xi(1, 2), Some(2));
        assert_eq!(e.xi(2, 1), Some(3));
        assert_eq!(e.xi(0, 1), Some(1));
        // remaining edges at 2 fill ascending: 3 -> 1, 4 -> 2
        assert_eq!(e.xi(2, 3), Some(1));
        assert_eq!(e.xi(2, 4), Some(2));
    }

    #[test]
    fn no_paths_gives_default_enumeration() {
        let g = generators::complete(4).unwrap();
        let e = greedy_enumerate(&g, std::iter::empty()).unwrap();
        assert_eq!(e, g.default_enumeration());
    }

    #[test]
    fn preset_indices_are_kept() {
        // path 0-1-2 would give xi_1(0) = 1; a preset 3 keeps it on the last slot
        let g = SystemGraph::build(
            [(0, Physical), (1, Virtual), (2, Physical), (3, Physical)],
            [(0, 1), (1, 2), (1, 3)],
        )
        .unwrap()
        .set_enumeration([(1, 0, 3)])
        .unwrap();
        let e = greedy_enumerate(&g, [vec![0, 1, 2]].iter()).unwrap();
        assert_eq!(e.xi(1, 0), Some(3));
        assert_eq!(e.xi(1, 2), Some(1));
        assert_eq!(e.xi(1, 3), Some(2));
    }

    #[test]
    fn path_validation() {
        let g = generators::line(4).unwrap();
        assert!(validate_path(&g, &[0, 1, 2]).is_ok());
        assert!(validate_path(&g, &[0]).is_err());
        assert!(validate_path(&g, &[0, 2]).is_err());
        assert!(validate_path(&g, &[0, 1, 0]).is_err());
        assert_eq!(validate_path(&g, &[0, 9]), Err(RoutingError::UnknownVertex(9)));
    }

    #[test]
    fn path_set_json() {
        let mut ps = PathSet::default();
        ps.insert(0, vec![vec![0, 4, 3]]);
        ps.insert(2, vec![]);
        let text = ps.to_json();
        assert_eq!(PathSet::from_json(&text).unwrap(), ps);
        assert!(text.starts_with("{\n  \"0\": ["));
        assert_eq!(ps.mean_path_length(), 2.0);
    }

    #[test]
    fn labels() {
        assert_eq!(Interaction::hopping(3, 5).label(), "3>5");
        assert_eq!(Interaction::vertex(4).label(), "B4");
        assert_eq!(Interaction::new(vec![(0, 1), (2, 3)], []).label(), "0>1,2>3");
    }
}
