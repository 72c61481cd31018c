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

#![allow(dead_code)]

use std::collections::BTreeSet;

use pathcolor::encoding::{path_operator, vertex_operator};
use pathcolor::generators;
use pathcolor::graph::{SystemGraph, VertexId, VertexKind};
use pathcolor::routing::{Interaction, Path, PathSet};
use pathcolor::PauliString;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Small system graph from one of the generators, at most 8 modes.
pub fn random_graph(rng: &mut ChaCha8Rng) -> SystemGraph {
    match rng.random_range(0..5) {
        0 => generators::star(rng.random_range(3..=8)).unwrap(),
        1 => generators::complete(rng.random_range(3..=8)).unwrap(),
        2 => generators::line(rng.random_range(3..=8)).unwrap(),
        3 => generators::grid(2).unwrap(),
        _ => generators::bottleneck(4).unwrap(),
    }
}

/// Uniformly shuffled neighbor order at every vertex.
pub fn random_enumeration(g: &SystemGraph, rng: &mut ChaCha8Rng) -> SystemGraph {
    let mut out = g.clone();
    out.clear_enumeration();
    let vertices: Vec<VertexId> = g.vertices().collect();
    for u in vertices {
        let mut order: Vec<VertexId> = g.neighbors(u).collect();
        order.shuffle(rng);
        out.set_vertex_order(u, &order).unwrap();
    }
    out
}

/// Simple path from `u` to `v` found by a depth-first search that visits
/// neighbors in random order.
pub fn random_simple_path(g: &SystemGraph, u: VertexId, v: VertexId, rng: &mut ChaCha8Rng) -> Path {
    fn dfs(g: &SystemGraph, at: VertexId, v: VertexId, seen: &mut BTreeSet<VertexId>, path: &mut Path, rng: &mut ChaCha8Rng) -> bool {
        if at == v {
            return true;
        }
        let mut next: Vec<VertexId> = g.neighbors(at).filter(|w| !seen.contains(w)).collect();
        next.shuffle(rng);
        for w in next {
            seen.insert(w);
            path.push(w);
            if dfs(g, w, v, seen, path, rng) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![u];
    let mut seen = BTreeSet::from([u]);
    assert!(dfs(g, u, v, &mut seen, &mut path, rng), "graph is connected");
    path
}

/// Mixed interaction set with random simple paths: hopping terms, bare
/// vertex terms, and two-pair terms with extra vertex-operator targets.
pub fn random_interactions(g: &SystemGraph, count: usize, rng: &mut ChaCha8Rng) -> (Vec<Interaction>, PathSet) {
    let phys: Vec<VertexId> = g.physical_vertices().collect();
    let all: Vec<VertexId> = g.vertices().collect();
    let mut ts = Vec::new();
    let mut paths = PathSet::default();
    for id in 0..count {
        let pair = |rng: &mut ChaCha8Rng| {
            let picked: Vec<VertexId> = phys.choose_multiple(rng, 2).copied().collect();
            (picked[0], picked[1])
        };
        let t = match rng.random_range(0..4) {
            0 => Interaction::vertex(*phys.choose(rng).unwrap()),
            1 | 2 => {
                let (u, v) = pair(rng);
                Interaction::hopping(u, v)
            }
            _ => {
                let pairs = vec![pair(rng), pair(rng)];
                let k = rng.random_range(0..3);
                let extra: Vec<VertexId> = all.choose_multiple(rng, k).copied().collect();
                Interaction::new(pairs, extra)
            }
        };
        let ps: Vec<Path> = t.pairs.iter().map(|&(u, v)| random_simple_path(g, u, v, rng)).collect();
        paths.insert(id, ps);
        ts.push(t);
    }
    (ts, paths)
}

/// Explicit operator of one interaction: path operators, then vertex
/// operators, multiplied out directly.
pub fn explicit_operator(g: &SystemGraph, t: &Interaction, ps: &[Path]) -> PauliString {
    let mut acc = PauliString::identity();
    for p in ps {
        acc = acc.multiply(&path_operator(g, p).unwrap());
    }
    for &b in &t.b_targets {
        acc = acc.multiply(&vertex_operator(g, b).unwrap());
    }
    acc
}

/// Triangular patch: `side x side` grid plus the `(r, c)-(r+1, c+1)`
/// diagonals, all physical.
pub fn triangular_patch(side: u32) -> SystemGraph {
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let v = r * side + c;
            if c + 1 < side {
                edges.push((v, v + 1));
            }
            if r + 1 < side {
                edges.push((v, v + side));
            }
            if r + 1 < side && c + 1 < side {
                edges.push((v, v + side + 1));
            }
        }
    }
    SystemGraph::build((0..side * side).map(|v| (v, VertexKind::Physical)), edges).unwrap()
}

/// Every simple cycle of length 3 or 4, each as an open vertex list.
pub fn short_cycles(g: &SystemGraph) -> Vec<Vec<VertexId>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for &a in &vs {
        for b in g.neighbors(a).filter(|&b| b > a) {
            for c in g.neighbors(b).filter(|&c| c > a && c != b) {
                if g.has_edge(c, a) && b < c {
                    out.push(vec![a, b, c]);
                }
                for d in g.neighbors(c).filter(|&d| d > a && d != b && d != c) {
                    if g.has_edge(d, a) && b < d {
                        out.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}
