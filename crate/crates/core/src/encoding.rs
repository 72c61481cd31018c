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

//! Encoded operators as explicit Pauli strings, and the active-qubit rules.
//!
//! Each vertex `v` holds `n_v` qubits and `2 n_v` local Majoranas encoded by
//! a Jordan-Wigner string over its own qubits:
//!
//! ```text
//! gamma^(2k-1) = Z_1 ... Z_(k-1) X_k
//! gamma^(2k)   = Z_1 ... Z_(k-1) Y_k
//! ```
//!
//! The `j`-th Majorana of `u` belongs to the edge towards the neighbor `v`
//! with `xi_u(v) = j`. Edge, vertex, path and loop operators are products of
//! these. [`active_qubits`] gives the qubits a single term shape touches
//! inside one vertex without building any operator; it is what the strong
//! conflict graph uses.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{GraphError, SystemGraph, VertexId};
use crate::pauli::{Pauli, PauliString, Phase, QubitId};
use crate::routing::{validate_path, Interaction, InteractionId, Path, RoutingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("vertex {0} is not in the system graph")]
    UnknownVertex(VertexId),
    #[error("majorana index {index} out of range 1..={max} at vertex {vertex}")]
    IndexOutOfRange { vertex: VertexId, index: u32, max: u32 },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) has no enumeration index at {0}")]
    EnumerationUnset(VertexId, VertexId),
    #[error("invalid path: {0}")]
    InvalidPath(RoutingError),
    #[error("not a cycle: {0}")]
    NotACycle(&'static str),
    #[error("vertex {neighbor} is not adjacent to {vertex}")]
    EdgeNotIncident { vertex: VertexId, neighbor: VertexId },
    #[error("interaction {interaction}: pair {pair} has no path")]
    MissingPath { interaction: InteractionId, pair: usize },
    #[error("interaction {interaction}: path {pair} does not connect its endpoints")]
    PathMismatch { interaction: InteractionId, pair: usize },
}

impl From<GraphError> for EncodingError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotAnEdge(u, v) => EncodingError::NotAnEdge(u, v),
            GraphError::UnknownVertex(v) => EncodingError::UnknownVertex(v),
            other => unreachable!("graph lookups only fail on missing edges or vertices: {other}"),
        }
    }
}

/// The shape of a term restricted to one vertex `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// `B_u` alone.
    VertexOp,
    /// `A_ux`: `u` starts a path whose first hop goes to `out`.
    StartA { out: VertexId },
    /// `A_xu A_uy`: the path enters from `inn` and leaves towards `out`.
    Interior { inn: VertexId, out: VertexId },
    /// `A_xu B_u`: a path endpoint at `u` combined with `B_u`.
    EndAB { inn: VertexId },
    /// `A_xu` with no `B_u`: bare endpoint, as in multi-pair terms.
    EndA { inn: VertexId },
}

fn check_vertex(g: &SystemGraph, v: VertexId) -> Result<(), EncodingError> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(EncodingError::UnknownVertex(v))
    }
}

fn xi(g: &SystemGraph, u: VertexId, v: VertexId) -> Result<u32, EncodingError> {
    if !g.has_edge(u, v) {
        return Err(EncodingError::EdgeNotIncident { vertex: u, neighbor: v });
    }
    g.xi(u, v).ok_or(EncodingError::EnumerationUnset(u, v))
}

/// Number of leading qubits of `u` touched by the Majorana on edge `(u, x)`:
/// `ceil(xi_u(x) / 2)`.
pub fn active_count(g: &SystemGraph, u: VertexId, x: VertexId) -> Result<u32, EncodingError> {
    Ok(xi(g, u, x)?.div_ceil(2))
}

/// The local Majorana `gamma_v^j` on global qubit ids.
pub fn local_majorana(g: &SystemGraph, v: VertexId, j: u32) -> Result<PauliString, EncodingError> {
    check_vertex(g, v)?;
    let max = 2 * g.qubits_of(v);
    if j == 0 || j > max {
        return Err(EncodingError::IndexOutOfRange { vertex: v, index: j, max });
    }
    let k = j.div_ceil(2);
    let last = if j % 2 == 1 { Pauli::X } else { Pauli::Y };
    let factors = (1..k)
        .map(|i| (g.qubit(v, i).unwrap(), Pauli::Z))
        .chain([(g.qubit(v, k).unwrap(), last)]);
    Ok(PauliString::from_factors(Phase::ONE, factors))
}

/// `B_u`: `Z` on every qubit of `u`, phase `+1`.
pub fn vertex_operator(g: &SystemGraph, u: VertexId) -> Result<PauliString, EncodingError> {
    check_vertex(g, u)?;
    Ok(PauliString::from_factors(
        Phase::ONE,
        g.qubits(u).map(|q| (q, Pauli::Z)),
    ))
}

/// `A_uv = eps_uv * gamma_u^{xi_u(v)} * gamma_v^{xi_v(u)}`, where `eps_uv` is
/// `+1` when `u` is the head of the edge.
pub fn edge_operator(g: &SystemGraph, u: VertexId, v: VertexId) -> Result<PauliString, EncodingError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if !g.has_edge(u, v) {
        return Err(EncodingError::NotAnEdge(u, v));
    }
    let gu = local_majorana(g, u, xi(g, u, v)?)?;
    let gv = local_majorana(g, v, xi(g, v, u)?)?;
    let sign = if g.orientation_sign(u, v)? > 0 {
        Phase::ONE
    } else {
        Phase::MINUS_ONE
    };
    Ok(gu.multiply(&gv).scaled(sign))
}

/// Ordered product of edge operators along a simple path.
pub fn path_operator(g: &SystemGraph, path: &[VertexId]) -> Result<PauliString, EncodingError> {
    validate_path(g, path).map_err(EncodingError::InvalidPath)?;
    path.windows(2).try_fold(PauliString::identity(), |acc, w| {
        Ok(acc.multiply(&edge_operator(g, w[0], w[1])?))
    })
}

/// `i^{|C|} * prod A_{c_j c_{j+1}}` around a cycle. The cycle may be given
/// open (`[a, b, c]`) or closed (`[a, b, c, a]`).
pub fn loop_operator(g: &SystemGraph, cycle: &[VertexId]) -> Result<PauliString, EncodingError> {
    let open = match cycle {
        [first, .., last] if first == last && cycle.len() > 1 => &cycle[..cycle.len() - 1],
        _ => cycle,
    };
    if open.len() < 3 {
        return Err(EncodingError::NotACycle("needs at least three distinct vertices"));
    }
    let distinct: BTreeSet<_> = open.iter().collect();
    if distinct.len() != open.len() {
        return Err(EncodingError::NotACycle("repeated vertex"));
    }
    for &v in open {
        check_vertex(g, v)?;
    }
    let n = open.len();
    if (0..n).any(|k| !g.has_edge(open[k], open[(k + 1) % n])) {
        return Err(EncodingError::NotACycle("consecutive vertices are not adjacent"));
    }
    let mut acc = PauliString::identity().with_phase(Phase::from_exponent(n as u32));
    for k in 0..n {
        acc = acc.multiply(&edge_operator(g, open[k], open[(k + 1) % n])?);
    }
    Ok(acc)
}

/// Internal qubit indices (1-based) of `u` used by a term of the given shape.
///
/// | shape            | qubits                          |
/// |------------------|---------------------------------|
/// | `B_u`            | `1..=n_u`                       |
/// | `A_ux`, `A_xu`   | `1..=a_u(x)`                    |
/// | `A_xu A_uy`      | `min(a_u(x), a_u(y))..=max(..)` |
/// | `A_xu B_u`       | `a_u(x)..=n_u`                  |
pub fn active_qubits(g: &SystemGraph, u: VertexId, segment: SegmentKind) -> Result<BTreeSet<u32>, EncodingError> {
    check_vertex(g, u)?;
    let n = g.qubits_of(u);
    let range: std::ops::RangeInclusive<u32> = match segment {
        SegmentKind::VertexOp => 1..=n,
        SegmentKind::StartA { out: x } | SegmentKind::EndA { inn: x } => 1..=active_count(g, u, x)?,
        SegmentKind::Interior { inn, out } => {
            if inn == out {
                return Err(EncodingError::NotACycle("interior segment repeats its edge"));
            }
            let (a, b) = (active_count(g, u, inn)?, active_count(g, u, out)?);
            a.min(b)..=a.max(b)
        }
        SegmentKind::EndAB { inn } => active_count(g, u, inn)?..=n,
    };
    Ok(range.collect())
}

/// Qubits of a vertex touched by a product of its local Majoranas whose
/// indices (counted mod 2) are `indices`, optionally times `B_u`.
///
/// Within vertex `u`, qubit `k` carries the own letters of the Majoranas
/// `2k-1` and `2k` plus one `Z` from every selected Majorana on a higher
/// qubit. The qubit is non-trivial when exactly one own letter is present,
/// or when the count of `Z` factors (a pair of own letters counting as one)
/// is odd.
fn majorana_product_qubits(n: u32, indices: &BTreeMap<u32, u32>, with_b: bool) -> BTreeSet<u32> {
    let mut selected: BTreeSet<u32> = indices.iter().filter(|(_, &c)| c % 2 == 1).map(|(&i, _)| i).collect();
    if with_b {
        // B_u is proportional to the product of all 2n Majoranas.
        selected = (1..=2 * n).filter(|i| !selected.contains(i)).collect();
    }
    let mut out = BTreeSet::new();
    for k in 1..=n {
        let own = [2 * k - 1, 2 * k].iter().filter(|i| selected.contains(i)).count() as u32;
        let higher = selected.iter().filter(|&&i| i.div_ceil(2) > k).count() as u32;
        if own == 1 || (own / 2 + higher) % 2 == 1 {
            out.insert(k);
        }
    }
    out
}

#[derive(Default)]
struct VertexUse {
    segments: Vec<SegmentKind>,
    b_count: u32,
}

fn check_paths(
    g: &SystemGraph,
    id: InteractionId,
    interaction: &Interaction,
    paths: &[Path],
) -> Result<(), EncodingError> {
    for (k, &(u, v)) in interaction.pairs.iter().enumerate() {
        let path = paths.get(k).ok_or(EncodingError::MissingPath { interaction: id, pair: k })?;
        validate_path(g, path).map_err(EncodingError::InvalidPath)?;
        if path.first() != Some(&u) || path.last() != Some(&v) {
            return Err(EncodingError::PathMismatch { interaction: id, pair: k });
        }
    }
    for &b in &interaction.b_targets {
        check_vertex(g, b)?;
    }
    Ok(())
}

/// Global qubits touched by an interaction implemented along `paths` (one per
/// endpoint pair).
///
/// Vertices touched by a single term shape use the rule table in
/// [`active_qubits`]. Where several shapes meet on one vertex (overlapping
/// paths of a multi-pair term, or a vertex operator on a path interior) the
/// vertex's Majorana indices are combined and cancelled first.
pub fn interaction_support(
    g: &SystemGraph,
    id: InteractionId,
    interaction: &Interaction,
    paths: &[Path],
) -> Result<BTreeSet<QubitId>, EncodingError> {
    check_paths(g, id, interaction, paths)?;
    let mut uses: BTreeMap<VertexId, VertexUse> = BTreeMap::new();
    for path in &paths[..interaction.pairs.len()] {
        let last = path.len() - 1;
        for (k, &u) in path.iter().enumerate() {
            let seg = if k == 0 {
                SegmentKind::StartA { out: path[1] }
            } else if k == last {
                SegmentKind::EndA { inn: path[k - 1] }
            } else {
                SegmentKind::Interior {
                    inn: path[k - 1],
                    out: path[k + 1],
                }
            };
            uses.entry(u).or_default().segments.push(seg);
        }
    }
    for &b in &interaction.b_targets {
        uses.entry(b).or_default().b_count += 1;
    }

    let mut support = BTreeSet::new();
    for (u, usage) in uses {
        let with_b = usage.b_count % 2 == 1;
        let local = match (usage.segments.as_slice(), with_b) {
            ([], true) => active_qubits(g, u, SegmentKind::VertexOp)?,
            ([], false) => BTreeSet::new(),
            ([seg], false) => active_qubits(g, u, *seg)?,
            ([SegmentKind::StartA { out: x }], true) | ([SegmentKind::EndA { inn: x }], true) => {
                active_qubits(g, u, SegmentKind::EndAB { inn: *x })?
            }
            (segs, _) => {
                let mut indices: BTreeMap<u32, u32> = BTreeMap::new();
                for seg in segs {
                    let edges: &[VertexId] = match seg {
                        SegmentKind::StartA { out } => std::slice::from_ref(out),
                        SegmentKind::EndA { inn } | SegmentKind::EndAB { inn } => std::slice::from_ref(inn),
                        SegmentKind::Interior { inn, out } => &[*inn, *out],
                        SegmentKind::VertexOp => &[],
                    };
                    for &x in edges {
                        *indices.entry(xi(g, u, x)?).or_default() += 1;
                    }
                }
                majorana_product_qubits(g.qubits_of(u), &indices, with_b)
            }
        };
        support.extend(local.into_iter().map(|j| g.qubit(u, j).expect("active index within n_u")));
    }
    Ok(support)
}

/// The full Pauli string of an interaction: path operators in pair order,
/// then the vertex operators in ascending vertex order.
pub fn interaction_operator(
    g: &SystemGraph,
    id: InteractionId,
    interaction: &Interaction,
    paths: &[Path],
) -> Result<PauliString, EncodingError> {
    check_paths(g, id, interaction, paths)?;
    let mut acc = PauliString::identity();
    for path in &paths[..interaction.pairs.len()] {
        acc = acc.multiply(&path_operator(g, path)?);
    }
    for &b in &interaction.b_targets {
        acc = acc.multiply(&vertex_operator(g, b)?);
    }
    Ok(acc)
}
