//! Random graph samplers with degree and edge caps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphBuilder};

/// Adds up to `target` random edges to `b` while every degree stays at most
/// `max_degree`. Gives up after a bounded number of rejected proposals.
fn sprinkle<R: Rng + ?Sized>(b: &mut GraphBuilder, target: usize, max_degree: usize, rng: &mut R) {
    let n = b.order();
    if n < 2 {
        return;
    }
    let mut added = 0;
    let mut misses = 0;
    while added < target && misses < 64 * (target + 1) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || b.has_edge(u, v) || b.degree(u) >= max_degree || b.degree(v) >= max_degree {
            misses += 1;
            continue;
        }
        b.add_edge(u, v).expect("distinct in-range endpoints");
        added += 1;
    }
}

fn shuffled<R: Rng + ?Sized>(g: Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// A uniformly random edge budget in `0..=max_edges`, placed at random
/// under the degree cap.
pub fn bounded_gnm<R: Rng + ?Sized>(n: usize, max_edges: usize, max_degree: usize, rng: &mut R) -> Graph {
    let m = rng.gen_range(0..=max_edges);
    let mut b = GraphBuilder::new(n);
    sprinkle(&mut b, m, max_degree, rng);
    b.build()
}

/// Some disjoint `K_7`s (possibly with a few edges removed) topped up with
/// random edges, keeping `e ≤ max_edges` and `Δ ≤ max_degree`. Produces the
/// near-extremal shapes that plain sampling almost never hits.
pub fn planted_sevens<R: Rng + ?Sized>(
    n: usize,
    max_edges: usize,
    max_degree: usize,
    rng: &mut R,
) -> Graph {
    planted_cliques(n, 7, max_edges, max_degree, rng)
}

/// [`planted_sevens`] with cliques of order `order`.
pub fn planted_cliques<R: Rng + ?Sized>(
    n: usize,
    order: usize,
    max_edges: usize,
    max_degree: usize,
    rng: &mut R,
) -> Graph {
    let size = order * order.saturating_sub(1) / 2;
    let fit = if size == 0 || order > max_degree + 1 { 0 } else { (max_edges / size).min(n / order) };
    let cliques = if fit == 0 { 0 } else { rng.gen_range(fit - 1..=fit) };
    let mut b = GraphBuilder::new(n);
    for c in 0..cliques {
        let members: Vec<usize> = (order * c..order * c + order).collect();
        b.add_clique(&members).expect("in range");
    }
    let mut edges = size * cliques;
    for _ in 0..rng.gen_range(0..=3usize) {
        if cliques == 0 {
            break;
        }
        let c = rng.gen_range(0..cliques);
        let u = order * c + rng.gen_range(0..order);
        let v = order * c + rng.gen_range(0..order);
        if u != v && b.has_edge(u, v) {
            b.remove_edge(u, v);
            edges -= 1;
        }
    }
    let room = max_edges - edges;
    let extra = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..=room) };
    sprinkle(&mut b, extra, max_degree, rng);
    shuffled(b.build(), rng)
}

/// Small dense clusters (cliques of order 3 to `max_degree + 1`, randomly
/// thinned) joined by a few random edges.
pub fn clustered<R: Rng + ?Sized>(n: usize, max_edges: usize, max_degree: usize, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut edges = 0;
    let mut next = 0;
    let top = max_degree + 1;
    while top >= 3 && next < n {
        let size = rng.gen_range(3..=top).min(n - next);
        let cost = size * (size - 1) / 2;
        if edges + cost > max_edges {
            break;
        }
        let members: Vec<usize> = (next..next + size).collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if rng.gen_bool(0.85) {
                    b.add_edge(u, v).expect("in range");
                    edges += 1;
                }
            }
        }
        next += size + rng.gen_range(0..=size);
    }
    let room = max_edges - edges;
    sprinkle(&mut b, rng.gen_range(0..=room.min(n)), max_degree, rng);
    shuffled(b.build(), rng)
}

/// Random graph with maximum degree at most `max_degree`: a random
/// `max_degree`-regular-ish graph with a random fraction of edges deleted.
pub fn bounded_degree<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    sprinkle(&mut b, n * max_degree / 2, max_degree, rng);
    let g = b.build();
    let keep = rng.gen_range(0.3..=1.0);
    let edges: Vec<(usize, usize)> = g.edges().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edge_list(n, &edges).expect("edges of a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_respect_caps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(11..=30);
            let cap = rng.gen_range(0..=60);
            for g in [
                bounded_gnm(n, cap, 6, &mut rng),
                planted_sevens(n, cap, 6, &mut rng),
                clustered(n, cap, 6, &mut rng),
            ] {
                assert_eq!(g.order(), n);
                assert!(g.edge_count() <= cap);
                assert!(g.max_degree() <= 6);
            }
            let g = bounded_degree(n, 5, &mut rng);
            assert!(g.max_degree() <= 5);
            let g = planted_cliques(n, 5, cap, 4, &mut rng);
            assert!(g.edge_count() <= cap && g.max_degree() <= 4);
        }
    }

    #[test]
    fn planted_sevens_can_be_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let exact = (0..200)
            .map(|_| planted_sevens(14, 21, 6, &mut rng))
            .filter(|g| g.edge_count() == 21)
            .count();
        assert!(exact > 0);
    }
}
