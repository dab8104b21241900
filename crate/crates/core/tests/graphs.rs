use std::collections::BTreeMap;

use proptest::prelude::*;

use toricgw::graphs::{
    automorphism_order, degree_vectors, enumerate_graphs, lemma_identities, orbit_count_consistent, ColoredGraph, Edge,
    GraphError,
};

fn edge_multiset(g: &ColoredGraph, perm: &[usize]) -> BTreeMap<(usize, usize, u32), usize> {
    let mut m = BTreeMap::new();
    for e in g.edges() {
        *m.entry((perm[e.tail], perm[e.head], e.degree)).or_insert(0) += 1;
    }
    m
}

/// Brute-force color-preserving isomorphism test.
fn isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.edges().len() != b.edges().len() {
        return false;
    }
    let target = edge_multiset(b, &(0..n).collect::<Vec<_>>());
    fn rec(a: &ColoredGraph, b: &ColoredGraph, v: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, target: &BTreeMap<(usize, usize, u32), usize>) -> bool {
        if v == perm.len() {
            return &edge_multiset(a, perm) == target;
        }
        for u in 0..perm.len() {
            if !used[u] && a.colors()[v] == b.colors()[u] {
                perm[v] = u;
                used[u] = true;
                if rec(a, b, v + 1, perm, used, target) {
                    return true;
                }
                used[u] = false;
            }
        }
        false
    }
    rec(a, b, 0, &mut vec![0; n], &mut vec![false; n], &target)
}

#[test]
fn classes_are_pairwise_non_isomorphic() {
    for k in [2u32, 3] {
        for d in degree_vectors(k, 3) {
            let classes = enumerate_graphs(k, &d, false).unwrap();
            for (i, a) in classes.iter().enumerate() {
                assert_eq!(a.graph.degree(), d);
                for b in &classes[i + 1..] {
                    assert!(!isomorphic(&a.graph, &b.graph), "{} ≅ {}", a.graph.to_json(), b.graph.to_json());
                }
            }
        }
    }
}

#[test]
fn stored_automorphism_orders_match_brute_force() {
    for k in [2u32, 3] {
        for d in degree_vectors(k, 4) {
            for cls in enumerate_graphs(k, &d, false).unwrap().iter() {
                assert_eq!(cls.aut, automorphism_order(&cls.graph), "{}", cls.graph.to_json());
                assert!(lemma_identities(&cls.graph).all());
            }
        }
    }
}

#[test]
fn orbit_counting() {
    for k in [2u32, 3] {
        for d in degree_vectors(k, 3) {
            assert!(orbit_count_consistent(k, &d), "k={k} d={d:?}");
        }
    }
}

#[test]
fn connected_filter() {
    let all = enumerate_graphs(3, &[2, 0, 0], false).unwrap();
    let connected = enumerate_graphs(3, &[2, 0, 0], true).unwrap();
    assert_eq!(all.len(), 5);
    // One double edge, one doubled pair, two fans; the disjoint pair is dropped.
    assert_eq!(connected.len(), 4);
    assert!(connected.iter().all(|c| c.graph.is_connected()));
    let mut genera: Vec<i64> = connected.iter().map(|c| c.graph.genus()).collect();
    genera.sort();
    assert_eq!(genera, vec![0, 0, 0, 1]);
}

#[test]
fn validation_errors() {
    let e = |t, h, d| Edge { tail: t, head: h, degree: d };
    assert_eq!(ColoredGraph::new(1, vec![0, 0], vec![e(0, 1, 1)]), Err(GraphError::BadK(1)));
    assert!(matches!(ColoredGraph::new(3, vec![0, 2], vec![e(0, 1, 1)]), Err(GraphError::NotConsecutive { .. })));
    assert!(matches!(ColoredGraph::new(3, vec![0, 1], vec![e(0, 1, 0)]), Err(GraphError::ZeroDegree { .. })));
    assert_eq!(ColoredGraph::new(3, vec![0, 1, 2], vec![e(0, 1, 1)]), Err(GraphError::Isolated(2)));
    assert!(enumerate_graphs(3, &[1, 1], false).is_err());
}

fn graph() -> impl Strategy<Value = ColoredGraph> {
    (2u32..=3, prop::collection::vec((0usize..4, 0usize..4, 1u32..=2), 1..4)).prop_filter_map("valid", |(k, raw)| {
        // Vertex v has color v mod k; edges go to the next color.
        let colors: Vec<u32> = (0..4).map(|v| v as u32 % k).collect();
        let edges: Vec<Edge> = raw
            .into_iter()
            .map(|(t, h, d)| {
                let want = (colors[t] + 1) % k;
                let head = (0..4).map(|x| (h + x) % 4).find(|&x| colors[x] == want).unwrap();
                Edge { tail: t, head, degree: d }
            })
            .collect();
        let used: Vec<usize> = (0..4).filter(|v| edges.iter().any(|e| e.tail == *v || e.head == *v)).collect();
        let relabel = |v: usize| used.iter().position(|u| *u == v).unwrap();
        let colors = used.iter().map(|&v| colors[v]).collect();
        let edges = edges.iter().map(|e| Edge { tail: relabel(e.tail), head: relabel(e.head), degree: e.degree }).collect();
        ColoredGraph::new(k, colors, edges).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_relabelling(g in graph(), seed in any::<u64>()) {
        let n = g.num_vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut colors = vec![0; n];
        for v in 0..n {
            colors[perm[v]] = g.colors()[v];
        }
        let edges = g.edges().iter().map(|e| Edge { tail: perm[e.tail], head: perm[e.head], degree: e.degree }).collect();
        let h = ColoredGraph::new(g.k(), colors, edges).unwrap();
        prop_assert_eq!(automorphism_order(&g), automorphism_order(&h));
        prop_assert_eq!(g.genus(), h.genus());
        prop_assert_eq!(g.degree(), h.degree());
        prop_assert_eq!(g.profile(), h.profile());
        prop_assert!(lemma_identities(&g).all());
        prop_assert_eq!(ColoredGraph::from_json(&g.to_json()).unwrap(), g.clone());
        let d = g.degree();
        prop_assume!(d.iter().sum::<u32>() <= 4);
        let classes = enumerate_graphs(g.k(), &d, false).unwrap();
        let hits = classes.iter().filter(|c| isomorphic(&c.graph, &g)).count();
        prop_assert_eq!(hits, 1);
    }
}
