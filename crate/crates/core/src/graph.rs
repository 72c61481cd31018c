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

//! The system graph: which vertices exist, how they are wired, how many
//! qubits each vertex holds, and how each vertex enumerates its edges.
//!
//! Every vertex `v` of degree `d(v)` holds `ceil(d(v)/2)` qubits. Global qubit
//! ids are assigned vertex-major in ascending vertex id order, then by
//! internal index, so ids are contiguous and reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::QubitId;

pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Physical,
    Virtual,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(VertexId),
    #[error("edge ({0}, {1}) listed more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("enumeration of vertex {vertex} is not a bijection: {reason}")]
    NotABijection { vertex: VertexId, reason: String },
    #[error("bad size {size} for {family}: {reason}")]
    BadSize {
        family: &'static str,
        size: usize,
        reason: &'static str,
    },
    #[error("malformed graph file: {0}")]
    Format(String),
}

/// Per-vertex qubit counts and the global id assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitLayout {
    /// vertex -> (first global id, n_v)
    blocks: BTreeMap<VertexId, (QubitId, u32)>,
    total: u32,
}

impl QubitLayout {
    fn new(degrees: impl Iterator<Item = (VertexId, usize)>) -> Self {
        let mut blocks = BTreeMap::new();
        let mut next: QubitId = 0;
        for (v, d) in degrees {
            let n = d.div_ceil(2) as u32;
            blocks.insert(v, (next, n));
            next += n;
        }
        Self {
            blocks,
            total: next,
        }
    }

    pub fn qubits_of(&self, v: VertexId) -> u32 {
        self.blocks.get(&v).map_or(0, |b| b.1)
    }

    /// Global id of internal qubit `j` (1-based) of vertex `v`.
    pub fn global(&self, v: VertexId, j: u32) -> Option<QubitId> {
        let &(start, n) = self.blocks.get(&v)?;
        (1..=n).contains(&j).then(|| start + j - 1)
    }

    /// Inverse of [`QubitLayout::global`].
    pub fn locate(&self, q: QubitId) -> Option<(VertexId, u32)> {
        self.blocks
            .iter()
            .find(|(_, &(start, n))| q >= start && q < start + n)
            .map(|(&v, &(start, _))| (v, q - start + 1))
    }

    pub fn total(&self) -> u32 {
        self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemGraph {
    kinds: BTreeMap<VertexId, VertexKind>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    /// Orientation overrides keyed by `(min, max)`; value is the head.
    heads: BTreeMap<(VertexId, VertexId), VertexId>,
    /// `enumeration[u][v] = xi_u(v)`, possibly partial.
    enumeration: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    layout: QubitLayout,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

impl SystemGraph {
    /// Validates and builds a graph. Default orientation makes the endpoint
    /// with the larger id the head of each edge; the enumeration starts unset.
    pub fn build<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (VertexId, VertexKind)>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut kinds = BTreeMap::new();
        for (id, kind) in vertices {
            if kinds.insert(id, kind).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
        }
        if kinds.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> =
            kinds.keys().map(|&v| (v, BTreeSet::new())).collect();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if !kinds.contains_key(&w) {
                    return Err(GraphError::UnknownVertex(w));
                }
            }
            if !adjacency.get_mut(&u).unwrap().insert(v) {
                let (a, b) = key(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adjacency.get_mut(&v).unwrap().insert(u);
        }
        let layout = QubitLayout::new(adjacency.iter().map(|(&v, n)| (v, n.len())));
        let g = Self {
            kinds,
            adjacency,
            heads: BTreeMap::new(),
            enumeration: BTreeMap::new(),
            layout,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.adjacency.keys().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[&u] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.adjacency.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.kinds.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.kinds.contains_key(&v)
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.kinds.get(&v).copied()
    }

    pub fn is_physical(&self, v: VertexId) -> bool {
        self.kind(v) == Some(VertexKind::Physical)
    }

    pub fn physical_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.kinds
            .iter()
            .filter(|(_, &k)| k == VertexKind::Physical)
            .map(|(&v, _)| v)
    }

    /// Copy of the graph where exactly `physical` are physical and every
    /// other vertex is virtual. Enumeration and orientation are kept.
    pub fn with_physical(&self, physical: &BTreeSet<VertexId>) -> Result<Self, GraphError> {
        if let Some(&v) = physical.iter().find(|v| !self.contains(**v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut g = self.clone();
        for (v, kind) in g.kinds.iter_mut() {
            *kind = if physical.contains(v) {
                VertexKind::Physical
            } else {
                VertexKind::Virtual
            };
        }
        Ok(g)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(&v).map_or(0, |n| n.len())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    /// `n_v = ceil(d(v)/2)`.
    pub fn qubits_of(&self, v: VertexId) -> u32 {
        self.layout.qubits_of(v)
    }

    /// Total qubit count, the sum of `ceil(d(v)/2)` over all vertices.
    pub fn qubit_count(&self) -> u32 {
        self.layout.total()
    }

    pub fn qubit(&self, v: VertexId, j: u32) -> Option<QubitId> {
        self.layout.global(v, j)
    }

    /// Global ids of every qubit held by `v`.
    pub fn qubits(&self, v: VertexId) -> impl Iterator<Item = QubitId> + '_ {
        (1..=self.qubits_of(v)).filter_map(move |j| self.qubit(v, j))
    }

    pub fn head(&self, u: VertexId, v: VertexId) -> Result<VertexId, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        Ok(self.heads.get(&key(u, v)).copied().unwrap_or(u.max(v)))
    }

    /// `+1` if `u` is the head of edge `(u, v)`, `-1` if it is the tail.
    pub fn orientation_sign(&self, u: VertexId, v: VertexId) -> Result<i8, GraphError> {
        Ok(if self.head(u, v)? == u { 1 } else { -1 })
    }

    pub fn set_head(&mut self, head: VertexId, tail: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(head, tail) {
            return Err(GraphError::NotAnEdge(head, tail));
        }
        self.heads.insert(key(head, tail), head);
        Ok(())
    }

    /// `xi_u(v)`: the 1-based position of `v` among the neighbors of `u`.
    pub fn xi(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.enumeration.get(&u)?.get(&v).copied()
    }

    /// Neighbor of `u` carrying index `index`, if assigned.
    pub fn neighbor_at(&self, u: VertexId, index: u32) -> Option<VertexId> {
        self.enumeration
            .get(&u)?
            .iter()
            .find(|(_, &i)| i == index)
            .map(|(&v, _)| v)
    }

    pub fn is_vertex_enumerated(&self, u: VertexId) -> bool {
        self.enumeration.get(&u).map_or(0, BTreeMap::len) == self.degree(u)
    }

    pub fn is_fully_enumerated(&self) -> bool {
        self.vertices().all(|u| self.is_vertex_enumerated(u))
    }

    /// Lowest index in `1..=d(u)` not yet used at `u`.
    pub fn smallest_free_index(&self, u: VertexId) -> Option<u32> {
        let used = self.enumeration.get(&u);
        (1..=self.degree(u) as u32).find(|i| used.is_none_or(|m| !m.values().any(|x| x == i)))
    }

    /// Highest index in `1..=d(u)` not yet used at `u`.
    pub fn largest_free_index(&self, u: VertexId) -> Option<u32> {
        let used = self.enumeration.get(&u);
        (1..=self.degree(u) as u32)
            .rev()
            .find(|i| used.is_none_or(|m| !m.values().any(|x| x == i)))
    }

    /// Assigns `xi_u(v) = index`, rejecting anything that would break the
    /// partial bijection onto `1..=d(u)`. Re-assigning the same value is a
    /// no-op; changing an existing assignment is rejected.
    pub fn assign_index(&mut self, u: VertexId, v: VertexId, index: u32) -> Result<(), GraphError> {
        if !self.contains(u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let d = self.degree(u) as u32;
        if index == 0 || index > d {
            return Err(GraphError::NotABijection {
                vertex: u,
                reason: format!("index {index} outside 1..={d}"),
            });
        }
        let slot = self.enumeration.entry(u).or_default();
        if let Some(&old) = slot.get(&v) {
            if old == index {
                return Ok(());
            }
            return Err(GraphError::NotABijection {
                vertex: u,
                reason: format!("neighbor {v} already has index {old}"),
            });
        }
        if let Some((&other, _)) = slot.iter().find(|(_, &i)| i == index) {
            return Err(GraphError::NotABijection {
                vertex: u,
                reason: format!("index {index} already used by neighbor {other}"),
            });
        }
        slot.insert(v, index);
        Ok(())
    }

    /// Applies explicit `(u, v, xi_u(v))` assignments. All-or-nothing.
    pub fn set_enumeration<I>(&self, assignments: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32)>,
    {
        let mut g = self.clone();
        for (u, v, i) in assignments {
            g.assign_index(u, v, i)?;
        }
        Ok(g)
    }

    /// Assigns indices `1, 2, ...` to `order` at vertex `u`.
    pub fn set_vertex_order(&mut self, u: VertexId, order: &[VertexId]) -> Result<(), GraphError> {
        let mut staged = self.clone();
        for (k, &v) in order.iter().enumerate() {
            staged.assign_index(u, v, k as u32 + 1)?;
        }
        *self = staged;
        Ok(())
    }

    pub fn clear_enumeration(&mut self) {
        self.enumeration.clear();
    }

    /// Fills every unset slot: for each vertex, unenumerated neighbors in
    /// ascending id order take the smallest free indices.
    pub fn default_enumeration(&self) -> Self {
        let mut g = self.clone();
        g.fill_enumeration();
        g
    }

    pub(crate) fn fill_enumeration(&mut self) {
        let vertices: Vec<VertexId> = self.vertices().collect();
        for u in vertices {
            let pending: Vec<VertexId> = self.neighbors(u).filter(|&v| self.xi(u, v).is_none()).collect();
            for v in pending {
                let i = self.smallest_free_index(u).expect("free index exists while a neighbor is unset");
                self.enumeration.entry(u).or_default().insert(v, i);
            }
        }
    }

    /// Neighbors of `u` ordered by their enumeration index; only valid when
    /// `u` is fully enumerated.
    pub fn vertex_order(&self, u: VertexId) -> Option<Vec<VertexId>> {
        if !self.is_vertex_enumerated(u) {
            return None;
        }
        let mut pairs: Vec<(u32, VertexId)> = self.enumeration[&u].iter().map(|(&v, &i)| (i, v)).collect();
        pairs.sort_unstable();
        Some(pairs.into_iter().map(|(_, v)| v).collect())
    }

    pub fn to_file(&self) -> GraphFile {
        let enumeration: BTreeMap<VertexId, Vec<VertexId>> = self
            .vertices()
            .filter(|&u| self.degree(u) > 0)
            .filter_map(|u| self.vertex_order(u).map(|o| (u, o)))
            .collect();
        GraphFile {
            vertices: self
                .kinds
                .iter()
                .map(|(&id, &kind)| VertexEntry { id, kind })
                .collect(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            enumeration: (!enumeration.is_empty()).then_some(enumeration),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        let mut g = Self::build(
            file.vertices.iter().map(|e| (e.id, e.kind)),
            file.edges.iter().map(|e| (e[0], e[1])),
        )?;
        if let Some(enumeration) = &file.enumeration {
            for (&u, order) in enumeration {
                if !g.contains(u) {
                    return Err(GraphError::UnknownVertex(u));
                }
                g.set_vertex_order(u, order)?;
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("graph serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: VertexId,
    pub kind: VertexKind,
}

/// On-disk form: `{vertices:[{id, kind}], edges:[[u,v],...], enumeration?: {u: [neighbors in index order]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<BTreeMap<VertexId, Vec<VertexId>>>,
}
