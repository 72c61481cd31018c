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

//! System-graph families.
//!
//! Vertex ids are laid out so that physical vertices come first (`0..N`),
//! followed by any virtual vertices. The two 49-vertex architecture instances
//! are shipped as data files with every vertex marked physical; embedding a
//! model marks the unused ones virtual.

use crate::graph::{GraphError, SystemGraph, VertexId, VertexKind};

const HEAVY_HEXAGON: &str = include_str!("../data/heavy_hexagon.json");
const HEAVY_HEXAGON_SITES: &str = include_str!("../data/heavy_hexagon_sites.json");
const TRIANGULAR: &str = include_str!("../data/triangular.json");

/// Side of the square patch both architecture instances can host.
pub const ARCHITECTURE_SIDE: usize = 7;

fn at_least_two(family: &'static str, n: usize) -> Result<(), GraphError> {
    if n < 2 {
        return Err(GraphError::BadSize {
            family,
            size: n,
            reason: "need at least 2 vertices",
        });
    }
    Ok(())
}

fn physical(range: std::ops::Range<u32>) -> impl Iterator<Item = (VertexId, VertexKind)> {
    range.map(|v| (v, VertexKind::Physical))
}

/// `N` physical leaves `0..N` around one virtual hub with id `N`.
pub fn star(n: usize) -> Result<SystemGraph, GraphError> {
    at_least_two("star", n)?;
    let hub = n as VertexId;
    SystemGraph::build(
        physical(0..hub).chain([(hub, VertexKind::Virtual)]),
        (0..hub).map(|v| (v, hub)),
    )
}

/// All-to-all graph on `N` physical vertices.
pub fn complete(n: usize) -> Result<SystemGraph, GraphError> {
    at_least_two("complete", n)?;
    let n = n as VertexId;
    SystemGraph::build(
        physical(0..n),
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
}

/// `N` physical vertices in a path: the plain Jordan-Wigner layout.
pub fn line(n: usize) -> Result<SystemGraph, GraphError> {
    at_least_two("line", n)?;
    let n = n as VertexId;
    SystemGraph::build(physical(0..n), (1..n).map(|v| (v - 1, v)))
}

/// `L x L` square lattice of physical vertices, id `r * L + c`.
pub fn grid(l: usize) -> Result<SystemGraph, GraphError> {
    at_least_two("grid", l)?;
    let l = l as VertexId;
    let mut edges = Vec::new();
    for r in 0..l {
        for c in 0..l {
            let v = r * l + c;
            if c + 1 < l {
                edges.push((v, v + 1));
            }
            if r + 1 < l {
                edges.push((v, v + l));
            }
        }
    }
    SystemGraph::build(physical(0..l * l), edges)
}

/// Vertex ids of the bottleneck graph for `N = 4m` modes.
#[derive(Clone, Copy, Debug)]
pub struct BottleneckLayout {
    pub n: u32,
}

impl BottleneckLayout {
    pub fn half(&self) -> u32 {
        self.n / 2
    }
    /// Physical clique on the first side: `0..N/2`.
    pub fn left(&self) -> std::ops::Range<u32> {
        0..self.half()
    }
    /// Physical clique on the second side: `N/2..N`.
    pub fn right(&self) -> std::ops::Range<u32> {
        self.half()..self.n
    }
    /// Virtual layer attached to the left clique: `N..3N/2`.
    pub fn left_relays(&self) -> std::ops::Range<u32> {
        self.n..self.n + self.half()
    }
    /// Virtual layer attached to the right clique: `3N/2..2N`.
    pub fn right_relays(&self) -> std::ops::Range<u32> {
        self.n + self.half()..2 * self.n
    }
    pub fn center(&self) -> VertexId {
        2 * self.n
    }
}

/// Two physical `K_{N/2}` cliques, each fully joined to its own layer of
/// `N/2` virtual relays, with every relay joined to a single virtual center.
pub fn bottleneck(n: usize) -> Result<SystemGraph, GraphError> {
    if n == 0 || n % 4 != 0 {
        return Err(GraphError::BadSize {
            family: "bottleneck",
            size: n,
            reason: "N must be a positive multiple of 4",
        });
    }
    let lay = BottleneckLayout { n: n as u32 };
    let mut edges = Vec::new();
    for side in [(lay.left(), lay.left_relays()), (lay.right(), lay.right_relays())] {
        let (clique, relays) = side;
        for u in clique.clone() {
            for v in u + 1..clique.end {
                edges.push((u, v));
            }
            for r in relays.clone() {
                edges.push((u, r));
            }
        }
        for r in relays {
            edges.push((r, lay.center()));
        }
    }
    SystemGraph::build(
        physical(0..lay.n).chain((lay.n..=lay.center()).map(|v| (v, VertexKind::Virtual))),
        edges,
    )
}

/// Center enumeration that puts left relays on even indices and right relays
/// on odd ones, so relay `k` of each side shares internal qubit `k+1` of the
/// center. All other vertices are left unset.
pub fn bottleneck_parity_enumeration(g: &SystemGraph) -> Result<SystemGraph, GraphError> {
    let center = g
        .vertices()
        .max()
        .ok_or(GraphError::Empty)?;
    let n = center / 2;
    if n == 0 || n % 4 != 0 || g.degree(center) != n as usize {
        return Err(GraphError::BadSize {
            family: "bottleneck",
            size: n as usize,
            reason: "graph does not have the bottleneck layout",
        });
    }
    let lay = BottleneckLayout { n };
    let mut assignments = Vec::new();
    for (k, r) in lay.right_relays().enumerate() {
        assignments.push((center, r, 2 * k as u32 + 1));
    }
    for (k, r) in lay.left_relays().enumerate() {
        assignments.push((center, r, 2 * k as u32 + 2));
    }
    g.set_enumeration(assignments)
}

/// 49-vertex heavy-hexagon instance (honeycomb patch with subdivided links),
/// 65 qubits in total. All vertices are physical-capable.
pub fn heavy_hexagon() -> SystemGraph {
    SystemGraph::from_json(HEAVY_HEXAGON).expect("embedded heavy-hexagon instance is valid")
}

/// 49-vertex triangular tiling on a 7x7 patch (square grid plus one
/// diagonal per cell), vertex id `r * 7 + c`. Boundary vertices have degree
/// below six, so the instance holds 121 qubits.
pub fn triangular() -> SystemGraph {
    SystemGraph::from_json(TRIANGULAR).expect("embedded triangular instance is valid")
}

/// Locality-preserving site table for an architecture instance: entry
/// `r * 7 + c` is the vertex that hosts lattice site `(r, c)`.
pub fn architecture_sites(name: &str) -> Option<Vec<VertexId>> {
    match name {
        "heavy_hexagon" => Some(serde_json::from_str(HEAVY_HEXAGON_SITES).expect("site table parses")),
        "triangular" => Some((0..(ARCHITECTURE_SIDE * ARCHITECTURE_SIDE) as VertexId).collect()),
        _ => None,
    }
}

/// Generator lookup by name, e.g. `star`, `complete`, `line`, `grid`,
/// `bottleneck` (sized) or `heavy_hexagon`, `triangular` (fixed).
pub fn by_name(name: &str, size: Option<usize>) -> Result<SystemGraph, GraphError> {
    let sized = |f: fn(usize) -> Result<SystemGraph, GraphError>, family: &'static str| match size {
        Some(n) => f(n),
        None => Err(GraphError::BadSize {
            family,
            size: 0,
            reason: "a size is required",
        }),
    };
    match name {
        "star" => sized(star, "star"),
        "complete" => sized(complete, "complete"),
        "line" => sized(line, "line"),
        "grid" => sized(grid, "grid"),
        "bottleneck" => sized(bottleneck, "bottleneck"),
        "heavy_hexagon" => Ok(heavy_hexagon()),
        "triangular" => Ok(triangular()),
        other => Err(GraphError::Format(format!("unknown generator `{other}`"))),
    }
}

/// True for generators that take no size.
pub fn is_fixed_instance(name: &str) -> bool {
    matches!(name, "heavy_hexagon" | "triangular")
}

#[cfg(test)]
fn vertex_set(g: &SystemGraph) -> std::collections::BTreeSet<VertexId> {
    g.vertices().collect()
}
