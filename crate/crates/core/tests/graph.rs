use proptest::prelude::*;
use turanpack::graph::{from_graph6, parse_graph, to_edge_list, to_graph6};
use turanpack::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| it.next().unwrap())
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph(20)) {
        let c = g.complement();
        let n = g.order();
        prop_assert_eq!(g.edge_count() + c.edge_count(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn join_adds_every_cross_pair(g in graph(10), h in graph(10)) {
        let j = Graph::join(&g, &h);
        prop_assert_eq!(j.order(), g.order() + h.order());
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.order() * h.order());
    }

    #[test]
    fn graph6_round_trips(g in graph(32)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trips(g in graph(16)) {
        prop_assert_eq!(parse_graph(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edges_split_across_a_cut(g in graph(24), mask in any::<u32>()) {
        let n = g.order();
        let a = VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1)).unwrap();
        let b = g.vertices().difference(&a);
        let cross = g.cross_edge_count(&a, &b).unwrap();
        prop_assert_eq!(g.edges_within(&a) + g.edges_within(&b) + cross, g.edge_count());
        let inside = g.induced_subgraph(&a).unwrap();
        prop_assert_eq!(inside.edge_count(), g.edges_within(&a));
    }
}
