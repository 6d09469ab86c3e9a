use std::collections::BTreeSet;

use extdom::decomposition::{algorithm2, build_auxiliary_graph};
use extdom::domination::{dom_count, ext_count, greedy_dominators, TieBreak};
use extdom::elections::{external_rep_count, represented_count, self_approval_closure, Setting};
use extdom::generators::{gen_random_election, ElectionParams};
use extdom::graph::UndirectedGraph;
use extdom::matching::{is_matching, maximum_matching_undirected};
use extdom::oracle::{exact_ext_domination, exhaustive_max_matching, optimal_sets, DEFAULT_BUDGET};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            UndirectedGraph::new(n, edges).unwrap()
        })
    })
}

fn graph_with_subsets(
    max_n: usize,
) -> impl Strategy<Value = (UndirectedGraph, Vec<usize>, Vec<usize>, usize)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
            0..n,
        )
            .prop_map(|(g, a, extra, v)| {
                let small: Vec<usize> = (0..g.n()).filter(|&i| a[i]).collect();
                let big: Vec<usize> = (0..g.n()).filter(|&i| a[i] || extra[i]).collect();
                (g, small, big, v)
            })
    })
}

proptest! {
    #[test]
    fn dom_is_monotone_and_submodular((g, a, b, v) in graph_with_subsets(9), k in 1usize..3) {
        let da = dom_count(&g, &a, k).unwrap();
        let db = dom_count(&g, &b, k).unwrap();
        prop_assert!(da <= db);
        if !b.contains(&v) {
            let with = |s: &[usize]| {
                let mut s = s.to_vec();
                s.push(v);
                dom_count(&g, &s, k).unwrap()
            };
            prop_assert!(with(&a) - da >= with(&b) - db);
        }
    }

    #[test]
    fn greedy_ratios_are_monotone(g in graph(10), k in 1usize..3, adversarial in any::<bool>()) {
        let policy = if adversarial { TieBreak::HighestId } else { TieBreak::LowestId };
        let p = g.n().saturating_sub(1);
        let trace = greedy_dominators(&g, p, k, &policy).unwrap();
        let prof = trace.profile();
        prop_assert!(prof.theta_violations().is_empty());
        prop_assert!(prof.sigma_violations().is_empty());
        prop_assert_eq!(trace.final_ext(), ext_count(&g, &trace.dominators(), k).unwrap());
    }

    #[test]
    fn dom_and_ext_argmax_coincide(g in graph(7), k in 1usize..3, p_seed in 0usize..100) {
        let p = p_seed % (g.n() + 1);
        let (dom_best, ext_best) = optimal_sets(&g, p, k, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(dom_best, ext_best);
    }

    #[test]
    fn balls_are_nested(g in graph(10), v_seed in 0usize..100, k in 0usize..4) {
        let v = v_seed % g.n();
        let inner: BTreeSet<usize> = g.k_hop_closed_neighborhood(v, k).unwrap().into_iter().collect();
        let outer: BTreeSet<usize> = g.k_hop_closed_neighborhood(v, k + 1).unwrap().into_iter().collect();
        prop_assert!(inner.is_subset(&outer));
        prop_assert!(inner.contains(&v));
    }

    #[test]
    fn spanning_forest_edge_count(g in graph(12)) {
        let forest = g.spanning_forest();
        let edges: usize = forest.iter().map(|t| t.len() - 1).sum();
        prop_assert_eq!(edges, g.n() - g.connected_components().len());
        let covered: usize = forest.iter().map(|t| t.len()).sum();
        prop_assert_eq!(covered, g.n());
    }

    #[test]
    fn auxiliary_graph_never_dominates_more(
        (g, a, _, _) in graph_with_subsets(10),
        k in 1usize..3,
        delta in 0usize..2,
    ) {
        let aux = build_auxiliary_graph(&g, delta, k).unwrap();
        for (u, v) in aux.graph.edges() {
            prop_assert!(g.has_edge(u, v));
        }
        prop_assert!(dom_count(&aux.graph, &a, k).unwrap() <= dom_count(&g, &a, k).unwrap());
    }

    #[test]
    fn delta0_roots_dominate_auxiliary_graph(g in graph(12), k in 1usize..4) {
        let aux = build_auxiliary_graph(&g, 0, k).unwrap();
        let roots: Vec<usize> = aux.components.iter().map(|c| c.root()).collect();
        prop_assert_eq!(dom_count(&aux.graph, &roots, k).unwrap(), g.n());
    }

    #[test]
    fn algorithm2_between_greedy_and_optimum(g in graph(8), p_seed in 0usize..100, k in 1usize..3, delta in 0usize..2) {
        let p = p_seed % (g.n() + 1);
        let best = algorithm2(&g, p, k, delta).unwrap();
        let greedy = greedy_dominators(&g, p, k, &TieBreak::LowestId).unwrap();
        let opt = exact_ext_domination(&g, p, k, DEFAULT_BUDGET).unwrap();
        prop_assert!(best.ext_value >= greedy.final_ext());
        prop_assert!(best.ext_value <= opt.optimum_ext);
        prop_assert_eq!(best.dominators.iter().collect::<BTreeSet<_>>().len(), p);
    }

    #[test]
    fn blossom_matches_exhaustive_size(g in graph(11)) {
        let fast = maximum_matching_undirected(&g);
        prop_assert!(is_matching(&g, &fast));
        prop_assert_eq!(fast.len(), exhaustive_max_matching(&g).unwrap().len());
    }

    #[test]
    fn closure_preserves_ext(
        nv in 1usize..8,
        m in 1usize..6,
        prob in 0.0f64..1.0,
        overlap in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let params = ElectionParams {
            n_voters: nv,
            n_candidates: m,
            approval_prob: prob,
            overlap,
            require_other_approval: false,
            setting: Setting::NonSecrecy,
            committee_size: 1,
        };
        prop_assume!((overlap * m as f64).floor() as usize <= nv);
        let inst = gen_random_election(&params, seed).unwrap();
        let closed = self_approval_closure(&inst);
        for mask in 0u32..1 << m {
            let c: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let ext = external_rep_count(&inst, &c).unwrap();
            prop_assert_eq!(ext, external_rep_count(&closed, &c).unwrap());
            prop_assert_eq!(ext, represented_count(&closed, &c).unwrap() - c.len());
        }
    }
}
