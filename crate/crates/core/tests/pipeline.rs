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

mod common;

use std::collections::{BTreeMap, BTreeSet};

use pathcolor::coloring::{
    build_strong, build_weak, clique_lower_bound, exact_chromatic, greedy_clique, greedy_color, largest_first_order,
    ConflictGraph, Mode, DEFAULT_EXACT_CAP,
};
use pathcolor::encoding::interaction_support;
use pathcolor::generators;
use pathcolor::graph::{SystemGraph, VertexId};
use pathcolor::harness::{instance, ModelKind, PlacementKind};
use pathcolor::models::{all_to_all, chi_weak_star};
use pathcolor::routing::{greedy_enumerate, route, route_in_order, seeded_order, Interaction, PathSet, RoutingParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn star_instance(n: usize) -> (SystemGraph, Vec<Interaction>) {
    let g = generators::star(n).unwrap();
    (g, all_to_all(n).unwrap().interactions)
}

/// Independent shortest-distance oracle: Bellman-Ford relaxation over the
/// same edge weights, recomputed from scratch.
fn bellman_ford(g: &SystemGraph, weight: &dyn Fn(VertexId, VertexId) -> u64, source: VertexId) -> BTreeMap<VertexId, u64> {
    let mut dist: BTreeMap<VertexId, u64> = g.vertices().map(|v| (v, u64::MAX)).collect();
    dist.insert(source, 0);
    for _ in 0..g.vertex_count() {
        let mut changed = false;
        for (u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if dist[&a] != u64::MAX && dist[&a] + weight(a, b) < dist[&b] {
                    dist.insert(b, dist[&a] + weight(a, b));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rule_support_equals_operator_support(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_enumeration(&common::random_graph(&mut rng), &mut rng);
        let (ts, paths) = common::random_interactions(&g, 8, &mut rng);
        for (id, t) in ts.iter().enumerate() {
            let ps = paths.get(id).unwrap();
            let rule = interaction_support(&g, id, t, ps).unwrap();
            prop_assert_eq!(rule, common::explicit_operator(&g, t, ps).support(), "interaction {:?}", t);
        }
    }

    #[test]
    fn strong_edges_are_weak_edges(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_enumeration(&common::random_graph(&mut rng), &mut rng);
        let (ts, paths) = common::random_interactions(&g, 10, &mut rng);
        let weak = build_weak(&g, &ts, &paths).unwrap();
        let strong = build_strong(&g, &ts, &paths).unwrap();
        for (a, b) in strong.edges() {
            prop_assert!(weak.has_edge(a, b));
        }
    }

    #[test]
    fn routed_paths_are_minimal_when_routed(seed in any::<u64>(), phys in 0u64..8, used in 0u64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng);
        let phys_set: Vec<VertexId> = g.physical_vertices().collect();
        let ts: Vec<Interaction> = phys_set
            .iter()
            .flat_map(|&u| phys_set.iter().filter(move |&&v| v != u).map(move |&v| Interaction::hopping(u, v)))
            .take(20)
            .collect();
        let params = RoutingParams { phys_penalty: phys, used_increment: used, seed };
        let routed = route(&g, &ts, &params).unwrap();
        let mut uses: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
        for &id in &routed.order {
            for (p, &(u, v)) in routed.paths.get(id).unwrap().iter().zip(&ts[id].pairs) {
                let weight = |a: VertexId, b: VertexId| {
                    let phys_ends = [a, b].iter().filter(|&&x| g.is_physical(x)).count() as u64;
                    1 + phys * phys_ends + used * uses.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
                };
                let cost: u64 = p.windows(2).map(|w| weight(w[0], w[1])).sum();
                let best = bellman_ford(&g, &weight, u)[&v];
                prop_assert_eq!(cost, best);
                let distinct: BTreeSet<_> = p.iter().collect();
                prop_assert_eq!(distinct.len(), p.len());
                for w in p.windows(2) {
                    *uses.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
                }
            }
        }
    }

    #[test]
    fn greedy_enumeration_is_a_full_bijection(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng);
        let (ts, _) = common::random_interactions(&g, 6, &mut rng);
        let routed = route(&g, &ts, &RoutingParams { seed, ..Default::default() }).unwrap();
        let e = greedy_enumerate(&g, routed.paths_in_order()).unwrap();
        prop_assert!(e.is_fully_enumerated());
        for u in e.vertices() {
            let indices: BTreeSet<u32> = e.neighbors(u).map(|v| e.xi(u, v).unwrap()).collect();
            prop_assert_eq!(indices, (1..=e.degree(u) as u32).collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn bounds_sandwich_small_conflict_graphs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_enumeration(&common::random_graph(&mut rng), &mut rng);
        let (ts, paths) = common::random_interactions(&g, 14, &mut rng);
        for cg in [build_weak(&g, &ts, &paths).unwrap(), build_strong(&g, &ts, &paths).unwrap()] {
            let clique = clique_lower_bound(&cg);
            let exact = exact_chromatic(&cg, DEFAULT_EXACT_CAP).unwrap();
            let greedy = greedy_color(&cg, &largest_first_order(&cg, seed)).unwrap();
            prop_assert!(greedy.is_proper(&cg));
            prop_assert!(clique <= exact && exact <= greedy.colors && greedy.colors <= cg.max_degree() + 1);
            let members = greedy_clique(&cg);
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    prop_assert!(cg.has_edge(a, b));
                }
            }
        }
    }
}

#[test]
fn weak_star_matches_exact_chromatic() {
    for n in 3..=4 {
        let (g, ts) = star_instance(n);
        let routed = route(&g, &ts, &RoutingParams::default()).unwrap();
        let cg = build_weak(&g, &ts, &routed.paths).unwrap();
        assert_eq!(exact_chromatic(&cg, DEFAULT_EXACT_CAP).unwrap(), chi_weak_star(n).unwrap());
    }
}

#[test]
fn figure_one_routing_order_enables_parallel_pair() {
    // leaves a, b, c, d = 0, 1, 2, 3 around hub e = 4; route ad then bc
    let g = generators::star(4).unwrap();
    let ts = vec![Interaction::hopping(0, 3), Interaction::hopping(1, 2)];
    let routed = route_in_order(&g, &ts, &RoutingParams::default(), vec![0, 1]).unwrap();
    let e = greedy_enumerate(&g, routed.paths_in_order()).unwrap();
    assert_eq!(e.vertex_order(4).unwrap(), vec![0, 3, 1, 2]);
    assert_eq!(build_strong(&e, &ts, &routed.paths).unwrap().edge_count(), 0);
}

#[test]
fn hamiltonian_cycle_on_k4_runs_in_one_layer() {
    // at each vertex: next on the cycle gets 1, the other chord 2, previous 3
    let g = generators::complete(4).unwrap();
    let cycle = [0u32, 1, 2, 3];
    let mut assignments = Vec::new();
    for k in 0..4 {
        let (v, next, prev) = (cycle[k], cycle[(k + 1) % 4], cycle[(k + 3) % 4]);
        let other = cycle[(k + 2) % 4];
        assignments.extend([(v, next, 1), (v, other, 2), (v, prev, 3)]);
    }
    let e = g.set_enumeration(assignments).unwrap();
    let ts: Vec<Interaction> = (0..4).map(|k| Interaction::hopping(cycle[k], cycle[(k + 1) % 4])).collect();
    let mut paths = PathSet::default();
    for (id, t) in ts.iter().enumerate() {
        paths.insert(id, vec![vec![t.pairs[0].0, t.pairs[0].1]]);
    }
    let strong = build_strong(&e, &ts, &paths).unwrap();
    assert_eq!(strong.edge_count(), 0);
    assert!(build_weak(&e, &ts, &paths).unwrap().edge_count() > 0);
}

#[test]
fn strong_clique_on_complete_graph_reaches_lower_bound() {
    for n in 4..=7 {
        let inst = instance("complete", ModelKind::AllToAll, n, PlacementKind::Ordered, 0).unwrap();
        let routed = route(&inst.graph, &inst.interactions, &RoutingParams::default()).unwrap();
        let e = greedy_enumerate(&inst.graph, routed.paths_in_order()).unwrap();
        let cg = build_strong(&e, &inst.interactions, &routed.paths).unwrap();
        assert!(clique_lower_bound(&cg) >= n + 2, "N={n}");
    }
}

#[test]
fn greedy_is_not_monotone_under_edge_removal_in_general() {
    let order = [0, 1, 2, 3];
    let sub = ConflictGraph::from_edges(Mode::Strong, 4, [(0, 2), (1, 3), (2, 3)]);
    let sup = ConflictGraph::from_edges(Mode::Weak, 4, [(0, 2), (1, 3), (2, 3), (0, 1)]);
    assert_eq!(greedy_color(&sub, &order).unwrap().colors, 3);
    assert_eq!(greedy_color(&sup, &order).unwrap().colors, 2);
}

#[test]
fn strong_needs_no_more_colors_than_weak_on_pipeline_instances() {
    let cases = [("star", 5), ("star", 8), ("complete", 5), ("complete", 8), ("bottleneck", 8), ("triangular", 8)];
    for (graph, n) in cases {
        let inst = instance(graph, ModelKind::AllToAll, n, PlacementKind::Auto, 1).unwrap();
        for seed in 0..10 {
            let routed = route(&inst.graph, &inst.interactions, &RoutingParams { seed, ..Default::default() }).unwrap();
            let e = greedy_enumerate(&inst.graph, routed.paths_in_order()).unwrap();
            let weak = build_weak(&e, &inst.interactions, &routed.paths).unwrap();
            let strong = build_strong(&e, &inst.interactions, &routed.paths).unwrap();
            let order = largest_first_order(&weak, seed);
            let w = greedy_color(&weak, &order).unwrap().colors;
            let s = greedy_color(&strong, &order).unwrap().colors;
            assert!(s <= w, "{graph} N={n} seed {seed}: strong {s} > weak {w}");
        }
    }
}

#[test]
fn seeded_order_is_a_permutation() {
    for seed in 0..20 {
        let mut o = seeded_order(30, seed);
        o.sort_unstable();
        assert_eq!(o, (0..30).collect::<Vec<_>>());
    }
    assert_ne!(seeded_order(30, 1), seeded_order(30, 2));
}
