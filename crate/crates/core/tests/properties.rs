use proptest::prelude::*;

use steiner_core::connectivity::{feasible_superset, is_p_edge_connected_with, SingletonRule};
use steiner_core::deletion::{enumerate_minimal_hitting_sets, find_high_degree_star, Finder};
use steiner_core::graph::{degeneracy_ordering, Graph};
use steiner_core::io::{parse_instance, parse_layout, parse_solution, parse_tree_decomposition, write_instance, Instance};
use steiner_core::oracle::{
    brute_solve_sse, edge_connected_by_deletion, edge_connected_by_flow, oracle_edge_connected, residual_holds, Residual,
};
use steiner_core::problem::Problem;
use steiner_core::sse::SolveOptions;
use steiner_core::verify::verify_solution;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.45), pairs).prop_map(move |keep| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if keep[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), subset(n))
    })
}

fn rule(strict: bool) -> SingletonRule {
    if strict {
        SingletonRule::Strict
    } else {
        SingletonRule::Lenient
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn instances_round_trip((g, terminals) in graph_and_subset(9), k in 0i64..20) {
        let mut inst = Instance::new(g);
        inst.terminals = terminals;
        inst.extras.insert("k".into(), k);
        let back = parse_instance(&write_instance(&inst)).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(text in "([ptebsxc]|td|te|edge|[0-9]{1,3}|-1| |\n|\\{|\\}|\\[|\\]|,|\"solution\"|:){0,60}") {
        let _ = parse_instance(&text);
        let _ = parse_tree_decomposition(&text);
        let _ = parse_layout(&text);
        if let Ok(ids) = parse_solution(&text) {
            prop_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn flow_and_deletion_agree((g, s) in graph_and_subset(8), p in 1usize..4) {
        if s.len() >= 2 {
            prop_assert_eq!(edge_connected_by_flow(&g, &s, p), edge_connected_by_deletion(&g, &s, p));
        }
    }

    #[test]
    fn connectivity_matches_oracle((g, s) in graph_and_subset(8), p in 1usize..4, strict: bool) {
        prop_assert_eq!(
            is_p_edge_connected_with(&g, &s, p, rule(strict)),
            oracle_edge_connected(&g, &s, p, rule(strict))
        );
    }

    #[test]
    fn degeneracy_ordering_is_a_bounded_permutation((g, excluded) in graph_and_subset(10)) {
        let order = degeneracy_ordering(&g, &excluded);
        let mut seen = order.sequence.clone();
        seen.sort_unstable();
        let rest: Vec<usize> = (0..g.n()).filter(|v| !excluded.contains(v)).collect();
        prop_assert_eq!(seen, rest);
        prop_assert!(order.respects_bound(&g));
    }

    #[test]
    fn feasibility_matches_exhaustive_search((g, x) in graph_and_subset(7), p in 1usize..4, strict: bool) {
        prop_assume!(g.is_connected());
        let region = feasible_superset(&g, &x, p, rule(strict)).unwrap();
        let brute = brute_solve_sse(&g, &x, g.n(), p, rule(strict)).unwrap();
        prop_assert_eq!(region.is_some(), brute.is_yes());
        prop_assert!(feasible_superset(&Graph::empty(2), &[], p, rule(strict)).is_err());
        if let Some(r) = region {
            prop_assert!(x.iter().all(|v| r.contains(v)));
            prop_assert!(oracle_edge_connected(&g, &r, p, rule(strict)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hitting_sets_are_exactly_the_minimal_ones(g in graph(8), eta in 1usize..3, k in 0usize..4) {
        let finder: &Finder = &|h: &Graph| Ok(find_high_degree_star(h, eta));
        let found = enumerate_minimal_hitting_sets(&g, k, finder).unwrap();
        let residual = Residual::MaxDegree(eta);
        let n = g.n();
        let mut expected = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if set.len() > k || !residual_holds(&g, &set, residual) {
                continue;
            }
            let minimal = set.iter().all(|&v| {
                let smaller: Vec<usize> = set.iter().copied().filter(|&u| u != v).collect();
                !residual_holds(&g, &smaller, residual)
            });
            if minimal {
                expected.push(set);
            }
        }
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn solver_answers_match_and_verify(
        (g, x) in graph_and_subset(7),
        k in 0usize..8,
        p in 1usize..3,
        which in 0usize..4,
        strict: bool,
    ) {
        let problem = match which {
            0 => Problem::Sse,
            1 => Problem::Bdds { eta: 2 },
            2 => Problem::Tdds { eta: 2 },
            _ => Problem::Pvc { eta: 3 },
        };
        let terminals: &[usize] = if problem == Problem::Sse { &x } else { &[] };
        let opts = SolveOptions { rule: rule(strict), ..SolveOptions::default() };
        let fast = problem.solve(&g, terminals, k, p, &opts).unwrap();
        let slow = problem.brute(&g, terminals, k, p, &opts).unwrap();
        prop_assert_eq!(fast.is_yes(), slow.is_yes());
        if let Some(s) = &fast.solution {
            prop_assert_eq!(verify_solution(&g, &problem, terminals, k, p, rule(strict), s).unwrap(), Ok(()));
        }
    }
}
