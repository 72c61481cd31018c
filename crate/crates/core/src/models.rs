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

//! Interaction sets, their placement on system graphs, and closed-form
//! chromatic numbers for the star, complete and bottleneck families.
//!
//! Models are written over fermionic mode ids `0..N`. Embedding maps each
//! mode onto a physical vertex of a system graph and rewrites the
//! interactions in terms of vertex ids.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, SystemGraph, VertexId};
use crate::routing::Interaction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("{family}: size {size} is not supported ({reason})")]
    BadSize {
        family: &'static str,
        size: usize,
        reason: &'static str,
    },
    #[error("model has {modes} modes but the graph only offers {capacity} vertices")]
    TooManyModes { modes: usize, capacity: usize },
    #[error("lattice embedding needs a square-lattice model")]
    NotALattice,
    #[error("site table has side {side}, too small for a {l}x{l} lattice")]
    SiteTableTooSmall { side: usize, l: usize },
    #[error("site table maps two sites to vertex {0}")]
    RepeatedSite(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed model file: {0}")]
    Format(String),
}

/// Interaction set over modes `0..modes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub modes: usize,
    pub interactions: Vec<Interaction>,
    /// Side `L` when the modes sit on an `L x L` square lattice, mode id
    /// `r * L + c`.
    pub lattice_side: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    interactions: Vec<Interaction>,
}

impl Model {
    pub fn new(interactions: Vec<Interaction>) -> Self {
        let modes = interactions
            .iter()
            .flat_map(|t| t.named_vertices())
            .max()
            .map_or(0, |m| m as usize + 1);
        Self {
            modes,
            interactions,
            lattice_side: None,
        }
    }

    pub fn len(&self) -> usize {
        self.interactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interactions.is_empty()
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            interactions: self.interactions.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
        Ok(Self::new(file.interactions))
    }
}

fn at_least(family: &'static str, n: usize, min: usize, reason: &'static str) -> Result<(), ModelError> {
    if n < min {
        return Err(ModelError::BadSize { family, size: n, reason });
    }
    Ok(())
}

/// Every hopping term `A_uv B_v` for ordered `u != v`, then every `B_u`.
pub fn all_to_all(n: usize) -> Result<Model, ModelError> {
    at_least("all_to_all", n, 2, "need N >= 2")?;
    let n32 = n as VertexId;
    let mut ts = Vec::with_capacity(n * n);
    for u in 0..n32 {
        for v in 0..n32 {
            if u != v {
                ts.push(Interaction::hopping(u, v));
            }
        }
    }
    ts.extend((0..n32).map(Interaction::vertex));
    Ok(Model {
        modes: n,
        interactions: ts,
        lattice_side: None,
    })
}

/// Edges of the open `L x L` square lattice, `(a, b)` with `a < b`.
pub fn lattice_edges(l: usize) -> Vec<(VertexId, VertexId)> {
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
    edges
}

/// Nearest-neighbor hopping on the open `L x L` lattice: both directions of
/// every lattice edge, then a vertex term per site.
pub fn nn_hopping(l: usize) -> Result<Model, ModelError> {
    at_least("nn_hopping", l, 2, "need L >= 2")?;
    let mut ts = Vec::new();
    for (a, b) in lattice_edges(l) {
        ts.push(Interaction::hopping(a, b));
        ts.push(Interaction::hopping(b, a));
    }
    ts.extend((0..(l * l) as VertexId).map(Interaction::vertex));
    Ok(Model {
        modes: l * l,
        interactions: ts,
        lattice_side: Some(l),
    })
}

/// How modes are placed on physical-capable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Mode `i` goes to the `i`-th physical-capable vertex in ascending order.
    Ordered,
    /// Seeded uniform injective choice.
    Random { seed: u64 },
    /// Lattice site `(r, c)` goes to `sites[r * side + c]`.
    Lattice { side: usize, sites: Vec<VertexId> },
}

/// A model placed on a system graph. Vertices hosting a mode are physical,
/// all others virtual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedModel {
    pub graph: SystemGraph,
    pub interactions: Vec<Interaction>,
    /// `assignment[mode]` is the hosting vertex.
    pub assignment: Vec<VertexId>,
}

/// Places `model` on `g`. Candidates are the vertices currently marked
/// physical.
pub fn embed(model: &Model, g: &SystemGraph, placement: &Placement) -> Result<EmbeddedModel, ModelError> {
    let candidates: Vec<VertexId> = g.physical_vertices().collect();
    if model.modes > candidates.len() {
        return Err(ModelError::TooManyModes {
            modes: model.modes,
            capacity: candidates.len(),
        });
    }
    let assignment: Vec<VertexId> = match placement {
        Placement::Ordered => candidates[..model.modes].to_vec(),
        Placement::Random { seed } => {
            let mut shuffled = candidates;
            shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            shuffled.truncate(model.modes);
            shuffled
        }
        Placement::Lattice { side, sites } => {
            let l = model.lattice_side.ok_or(ModelError::NotALattice)?;
            if l > *side || sites.len() < side * side {
                return Err(ModelError::SiteTableTooSmall { side: *side, l });
            }
            let mut out = Vec::with_capacity(l * l);
            for r in 0..l {
                for c in 0..l {
                    out.push(sites[r * side + c]);
                }
            }
            out
        }
    };
    let hosts: BTreeSet<VertexId> = assignment.iter().copied().collect();
    if hosts.len() != assignment.len() {
        let mut seen = BTreeSet::new();
        let dup = assignment.iter().find(|v| !seen.insert(**v)).copied().unwrap();
        return Err(ModelError::RepeatedSite(dup));
    }
    if let Some(&v) = hosts.iter().find(|v| !g.contains(**v)) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    let map = |m: VertexId| assignment[m as usize];
    let interactions = model
        .interactions
        .iter()
        .map(|t| {
            Interaction::new(
                t.pairs.iter().map(|&(u, v)| (map(u), map(v))).collect(),
                t.b_targets.iter().map(|&b| map(b)),
            )
        })
        .collect();
    Ok(EmbeddedModel {
        graph: g.with_physical(&hosts)?,
        interactions,
        assignment,
    })
}

/// Weak chromatic number of the all-to-all model on the star: every hopping
/// term passes through the hub, so `N(N-1)`.
pub fn chi_weak_star(n: usize) -> Result<usize, ModelError> {
    at_least("star", n, 3, "need N >= 3")?;
    Ok(n * (n - 1))
}

/// Strong chromatic number of the all-to-all model on the star.
pub fn chi_strong_star(n: usize) -> Result<usize, ModelError> {
    at_least("star", n, 3, "need N >= 3")?;
    Ok(if n % 2 == 1 {
        (n * n + 4 * n - 9) / 2
    } else if (n / 2) % 2 == 0 {
        n * n / 2 + 2 * n - 6
    } else {
        n * n / 2 + 2 * n - 4
    })
}

/// Weak chromatic number of the all-to-all model on `K_N`.
pub fn chi_weak_complete(n: usize) -> Result<usize, ModelError> {
    at_least("complete", n, 3, "need N >= 3")?;
    Ok(if n % 2 == 0 { 2 * n - 1 } else { 2 * n })
}

/// Lower and upper bounds on the strong chromatic number on `K_N`. The upper
/// bound is `3N/2` for even `N` and `(3N-1)/2` for odd `N`.
pub fn chi_strong_complete_bounds(n: usize) -> Result<(usize, usize), ModelError> {
    at_least("complete", n, 3, "need N >= 3")?;
    let upper = if n % 2 == 0 { 3 * n / 2 } else { (3 * n - 1) / 2 };
    Ok((n + 2, upper))
}

/// Closed-form counts for the bottleneck graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BottleneckCounts {
    /// Cross-clique paths run one at a time, then the within-clique terms.
    pub weak: usize,
    pub strong_upper: usize,
}

pub fn chi_bottleneck(n: usize) -> Result<BottleneckCounts, ModelError> {
    if n == 0 || n % 4 != 0 {
        return Err(ModelError::BadSize {
            family: "bottleneck",
            size: n,
            reason: "N must be a positive multiple of 4",
        });
    }
    let half = n / 2;
    Ok(BottleneckCounts {
        weak: 2 * half * half + n - 1,
        strong_upper: 2 * n - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn all_to_all_counts() {
        assert_eq!(all_to_all(2).unwrap().len(), 4);
        assert_eq!(all_to_all(4).unwrap().len(), 16);
        for n in 2..=40 {
            let m = all_to_all(n).unwrap();
            let ab = m.interactions.iter().filter(|t| t.pairs.len() == 1).count();
            let b = m.interactions.iter().filter(|t| t.pairs.is_empty()).count();
            assert_eq!((ab, b), (n * (n - 1), n));
        }
        let m = all_to_all(3).unwrap();
        for t in m.interactions.iter().filter(|t| !t.pairs.is_empty()) {
            let (_, v) = t.pairs[0];
            assert_eq!(t.b_targets, BTreeSet::from([v]));
        }
        assert!(all_to_all(1).is_err());
    }

    #[test]
    fn nn_hopping_counts() {
        let m = nn_hopping(2).unwrap();
        assert_eq!(m.len(), 12);
        let m = nn_hopping(10).unwrap();
        // 2 * 2L(L-1) + L^2 terms; approaches 5N but the hopping part is 4N
        assert_eq!(m.len(), 4 * 10 * 9 + 100);
        for t in &m.interactions {
            for &(u, v) in &t.pairs {
                let (ru, cu) = (u / 10, u % 10);
                let (rv, cv) = (v / 10, v % 10);
                assert_eq!(ru.abs_diff(rv) + cu.abs_diff(cv), 1);
            }
        }
        assert!(nn_hopping(1).is_err());
    }

    #[test]
    fn model_file_round_trip() {
        let m = all_to_all(3).unwrap();
        let text = m.to_json();
        assert!(text.contains("\"b_targets\""));
        let back = Model::from_json(&text).unwrap();
        assert_eq!(back.interactions, m.interactions);
        assert_eq!(back.modes, 3);
        assert!(Model::from_json("{\"terms\": []}").is_err());
    }

    #[test]
    fn embedding() {
        let tri = generators::triangular();
        let e = embed(&all_to_all(49).unwrap(), &tri, &Placement::Random { seed: 3 }).unwrap();
        assert_eq!(e.graph.physical_vertices().count(), 49);
        let small = all_to_all(5).unwrap();
        let a = embed(&small, &tri, &Placement::Random { seed: 9 }).unwrap();
        let b = embed(&small, &tri, &Placement::Random { seed: 9 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graph.physical_vertices().count(), 5);
        let distinct: BTreeSet<_> = a.assignment.iter().collect();
        assert_eq!(distinct.len(), 5);
        assert!(matches!(
            embed(&all_to_all(50).unwrap(), &tri, &Placement::Ordered),
            Err(ModelError::TooManyModes { modes: 50, capacity: 49 })
        ));
        // star leaves keep their ids under the ordered placement
        let s = embed(&all_to_all(4).unwrap(), &generators::star(4).unwrap(), &Placement::Ordered).unwrap();
        assert_eq!(s.assignment, vec![0, 1, 2, 3]);
        assert_eq!(s.interactions, all_to_all(4).unwrap().interactions);
    }

    #[test]
    fn lattice_embedding() {
        let sites = generators::architecture_sites("heavy_hexagon").unwrap();
        let hh = generators::heavy_hexagon();
        let e = embed(&nn_hopping(3).unwrap(), &hh, &Placement::Lattice { side: 7, sites: sites.clone() }).unwrap();
        assert_eq!(e.assignment, vec![sites[0], sites[1], sites[2], sites[7], sites[8], sites[9], sites[14], sites[15], sites[16]]);
        assert_eq!(
            embed(&all_to_all(4).unwrap(), &hh, &Placement::Lattice { side: 7, sites: sites.clone() }),
            Err(ModelError::NotALattice)
        );
        assert!(matches!(
            embed(&nn_hopping(8).unwrap(), &hh, &Placement::Lattice { side: 7, sites }),
            Err(ModelError::TooManyModes { .. }) | Err(ModelError::SiteTableTooSmall { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(chi_strong_star(8).unwrap(), 42);
        assert_eq!(chi_strong_star(7).unwrap(), 34);
        assert_eq!(chi_strong_star(4).unwrap(), 10);
        assert_eq!(chi_strong_star(6).unwrap(), 26);
        assert_eq!(chi_weak_star(4).unwrap(), 12);
        assert_eq!(chi_weak_complete(4).unwrap(), 7);
        assert_eq!(chi_weak_complete(5).unwrap(), 10);
        assert_eq!(chi_strong_complete_bounds(4).unwrap(), (6, 6));
        assert_eq!(chi_strong_complete_bounds(7).unwrap(), (9, 10));
        assert_eq!(chi_bottleneck(8).unwrap(), BottleneckCounts { weak: 39, strong_upper: 15 });
        assert!(chi_bottleneck(6).is_err());
        assert!(chi_strong_star(2).is_err());
        for n in 3..60 {
            assert!(chi_strong_star(n).unwrap() <= chi_weak_star(n).unwrap());
        }
        // the two bounds only become consistent from N = 4 on
        assert_eq!(chi_strong_complete_bounds(3).unwrap(), (5, 4));
        for n in 4..60 {
            let (lo, hi) = chi_strong_complete_bounds(n).unwrap();
            assert!(lo <= hi);
        }
        for n in (4..60).step_by(4) {
            let b = chi_bottleneck(n).unwrap();
            assert!(b.strong_upper <= b.weak);
        }
    }
}
