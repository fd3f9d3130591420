//! Exhaustive reference implementations, kept deliberately naive so they
//! share no code paths with the fast searches they check.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;

/// Largest host order for [`brute_force_ex`]: `2^21` labelled graphs.
pub const MAX_ORACLE_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive enumeration needs n ≤ {MAX_ORACLE_ORDER} (n={0})")]
    TooLarge(usize),
}

/// Maximum number of edges of an `n`-vertex graph with no `pattern`
/// subgraph, by enumerating every labelled graph.
pub fn brute_force_ex(n: usize, pattern: Pattern) -> Result<usize, OracleError> {
    if n > MAX_ORACLE_ORDER {
        return Err(OracleError::TooLarge(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let pair_bit = |u: usize, v: usize| pairs.iter().position(|&e| e == (u, v)).expect("pair");
    // Each candidate clique as (vertex mask, required edge mask).
    let cliques: Vec<(u32, u32)> = subsets(n, pattern.order)
        .map(|vs| {
            let mut edges = 0u32;
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    edges |= 1 << pair_bit(u, v);
                }
            }
            (vs.iter().fold(0u32, |m, &v| m | 1 << v), edges)
        })
        .collect();
    let mut best = 0;
    for graph in 0u32..(1u32 << pairs.len()) {
        let edges = graph.count_ones() as usize;
        if edges <= best {
            continue;
        }
        let present: Vec<u32> = cliques
            .iter()
            .filter(|&&(_, need)| graph & need == need)
            .map(|&(vs, _)| vs)
            .collect();
        if !has_disjoint(&present, pattern.copies, 0, 0) {
            best = edges;
        }
    }
    Ok(best)
}

fn has_disjoint(sets: &[u32], k: usize, from: usize, used: u32) -> bool {
    k == 0
        || (from..sets.len())
            .any(|i| sets[i] & used == 0 && has_disjoint(sets, k - 1, i + 1, used | sets[i]))
}

/// All `size`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = size;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

/// `k` pairwise-disjoint independent `p`-sets found by listing every
/// independent `p`-set and trying every increasing `k`-tuple.
pub fn naive_disjoint_independent_sets(g: &Graph, k: usize, p: usize) -> Option<Vec<VertexSet>> {
    let n = g.order();
    let independent: Vec<Vec<usize>> = subsets(n, p)
        .filter(|vs| vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| !g.has_edge(u, v))))
        .collect();
    let mut chosen = Vec::with_capacity(k);
    let mut used = vec![false; n];
    if !pick(&independent, k, 0, &mut chosen, &mut used) {
        return None;
    }
    Some(
        chosen
            .into_iter()
            .map(|i| VertexSet::from_members(n, independent[i].iter().copied()).expect("in range"))
            .collect(),
    )
}

fn pick(sets: &[Vec<usize>], k: usize, from: usize, chosen: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in from..sets.len() {
        if sets[i].iter().any(|&v| used[v]) {
            continue;
        }
        sets[i].iter().for_each(|&v| used[v] = true);
        chosen.push(i);
        if pick(sets, k, i + 1, chosen, used) {
            return true;
        }
        chosen.pop();
        sets[i].iter().for_each(|&v| used[v] = false);
    }
    false
}
