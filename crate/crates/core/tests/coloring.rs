use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turanpack::coloring::{equitable_coloring, verify_equitable};
use turanpack::random::bounded_degree;

#[test]
fn equitable_colouring_of_random_bounded_degree_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let r = rng.gen_range(2..=8);
        let n = rng.gen_range(1..=200);
        let g = bounded_degree(n, r, &mut rng);
        let c = equitable_coloring(&g, r + 1).unwrap();
        assert_eq!(c.classes.len(), r + 1);
        verify_equitable(&g, &c).unwrap();
    }
}

#[test]
fn equitable_colouring_of_tight_unions() {
    // Shuffled unions of K_{r+1} and K_{r,r} exercise the rebalancing paths.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let r = rng.gen_range(2..=7);
        let mut parts = Vec::new();
        let mut n = 0;
        while n < 120 {
            let g = match rng.gen_range(0..3) {
                0 => turanpack::Graph::complete(r + 1),
                1 => turanpack::constructions::turan_graph(2 * r, 2).unwrap(),
                _ => turanpack::Graph::cycle(rng.gen_range(3..=9)),
            };
            n += g.order();
            parts.push(g);
        }
        let g = turanpack::Graph::disjoint_union(&parts);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let g = g.relabel(&perm);
        let c = equitable_coloring(&g, r + 1).unwrap();
        verify_equitable(&g, &c).unwrap();
    }
}
