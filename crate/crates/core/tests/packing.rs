use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turanpack::oracle::naive_disjoint_independent_sets;
use turanpack::packing::{
    find_clique_packing, find_disjoint_independent_sets, find_disjoint_independent_sets_with,
    verify_witness, Mode, SearchConfig, Strategy as SearchStrategy,
};
use turanpack::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, density, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        Graph::from_edge_list(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_naive_enumeration(g in graph(10), k in 1usize..=4, p in 1usize..=4) {
        let fast = find_disjoint_independent_sets(&g, k, p).unwrap();
        let naive = naive_disjoint_independent_sets(&g, k, p);
        prop_assert_eq!(fast.is_some(), naive.is_some());
        if let Some(w) = fast {
            prop_assert!(verify_witness(&g, &w, k, p, Mode::Independent).is_ok());
        }
    }

    #[test]
    fn strategies_agree(g in graph(14), k in 1usize..=4, p in 2usize..=4) {
        let direct = SearchConfig { strategy: SearchStrategy::Direct, ..SearchConfig::default() };
        let a = find_disjoint_independent_sets(&g, k, p).unwrap();
        let b = find_disjoint_independent_sets_with(&g, k, p, &direct).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
    }

    #[test]
    fn clique_packing_is_dual(g in graph(12), k in 1usize..=3, p in 2usize..=4) {
        let cliques = find_clique_packing(&g, k, p).unwrap();
        let independent = find_disjoint_independent_sets(&g.complement(), k, p).unwrap();
        prop_assert_eq!(
            cliques.as_ref().map(|w| w.sets.clone()),
            independent.as_ref().map(|w| w.sets.clone())
        );
        if let Some(w) = cliques {
            prop_assert!(verify_witness(&g, &w, k, p, Mode::Clique).is_ok());
        }
    }

    #[test]
    fn monotone_under_edge_changes(g in graph(12), k in 1usize..=3, p in 2usize..=3, pick in any::<usize>()) {
        let edges: Vec<_> = g.edges().collect();
        if let (Some(w), false) = (find_disjoint_independent_sets(&g, k, p).unwrap(), edges.is_empty()) {
            let (u, v) = edges[pick % edges.len()];
            let thinner = g.without_edge(u, v).unwrap();
            prop_assert!(verify_witness(&thinner, &w, k, p, Mode::Independent).is_ok());
            prop_assert!(find_disjoint_independent_sets(&thinner, k, p).unwrap().is_some());
        }
        if let Some(w) = find_clique_packing(&g, k, p).unwrap() {
            let n = g.order();
            let missing: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            if !missing.is_empty() {
                let (u, v) = missing[pick % missing.len()];
                let denser = g.with_edge(u, v).unwrap();
                prop_assert!(verify_witness(&denser, &w, k, p, Mode::Clique).is_ok());
            }
        }
    }
}

#[test]
fn agrees_with_naive_enumeration_on_all_graphs_up_to_six_vertices() {
    for n in 0..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            for (k, p) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
                assert_eq!(
                    find_disjoint_independent_sets(&g, k, p).unwrap().is_some(),
                    naive_disjoint_independent_sets(&g, k, p).is_some(),
                    "n={n} mask={mask} k={k} p={p}"
                );
            }
        }
    }
}
