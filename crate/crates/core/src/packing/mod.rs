//! Exact search for pairwise-disjoint independent sets (or cliques).
//!
//! The default strategy splits the graph into connected components.
//! Isolated vertices are pooled, complete components are handled in closed
//! form, and every other component is searched once for the size profiles
//! it can contribute. A small dynamic programme over sorted fill vectors
//! then combines the components. Independent sets never interact across
//! components, so this is exact.

mod local;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use local::{Local, MAX_LOCAL};

/// Default largest component (or graph, for [`Strategy::Direct`]) searched exactly.
pub const DEFAULT_GUARD_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Independent,
    Clique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingWitness {
    pub mode: Mode,
    pub sets: Vec<VertexSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Count,
    Universe,
    Cardinality,
    Disjointness,
    Independence,
    Clique,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Count => "count",
            ViolationKind::Universe => "universe",
            ViolationKind::Cardinality => "cardinality",
            ViolationKind::Disjointness => "disjointness",
            ViolationKind::Independence => "independence",
            ViolationKind::Clique => "clique",
        }
    }
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind}: {detail}")]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

fn violation(kind: ViolationKind, detail: String) -> Result<(), Violation> {
    Err(Violation { kind, detail })
}

/// Checks that `w` consists of `k` pairwise-disjoint `p`-sets of `g`, each
/// independent (or each a clique, in [`Mode::Clique`]). Reports the first
/// violation found.
pub fn verify_witness(
    g: &Graph,
    w: &PackingWitness,
    k: usize,
    p: usize,
    mode: Mode,
) -> Result<(), Violation> {
    if w.sets.len() != k {
        return violation(
            ViolationKind::Count,
            format!("expected {k} sets, found {}", w.sets.len()),
        );
    }
    for (i, s) in w.sets.iter().enumerate() {
        if s.universe() != g.order() {
            return violation(
                ViolationKind::Universe,
                format!("set {i} ranges over {} vertices, graph has {}", s.universe(), g.order()),
            );
        }
        if s.len() != p {
            return violation(
                ViolationKind::Cardinality,
                format!("set {i} has {} vertices, expected {p}", s.len()),
            );
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if let Some(v) = w.sets[i].intersection(&w.sets[j]).first() {
                return violation(
                    ViolationKind::Disjointness,
                    format!("sets {i} and {j} share vertex {v}"),
                );
            }
        }
    }
    for (i, s) in w.sets.iter().enumerate() {
        for u in s.iter() {
            for v in s.iter().filter(|&v| v > u) {
                match mode {
                    Mode::Independent if g.has_edge(u, v) => {
                        return violation(
                            ViolationKind::Independence,
                            format!("set {i} contains the edge {u}-{v}"),
                        );
                    }
                    Mode::Clique if !g.has_edge(u, v) => {
                        return violation(
                            ViolationKind::Clique,
                            format!("set {i} misses the edge {u}-{v}"),
                        );
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Component decomposition with closed-form handling of cliques.
    #[default]
    Decompose,
    /// Plain backtracking over the whole graph; for cross-checks.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest non-complete component searched exactly. Values above 64 are
    /// treated as 64, the width of the search kernel.
    pub guard_n: usize,
    pub strategy: Strategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            guard_n: DEFAULT_GUARD_N,
            strategy: Strategy::Decompose,
        }
    }
}

impl SearchConfig {
    fn guard(&self) -> usize {
        self.guard_n.min(MAX_LOCAL)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("a search region of {size} vertices exceeds the exact-search guard of {guard}")]
    SizeGuard { size: usize, guard: usize },
}

pub fn find_disjoint_independent_sets(
    g: &Graph,
    k: usize,
    p: usize,
) -> Result<Option<PackingWitness>, PackingError> {
    find_disjoint_independent_sets_with(g, k, p, &SearchConfig::default())
}

pub fn find_disjoint_independent_sets_with(
    g: &Graph,
    k: usize,
    p: usize,
    config: &SearchConfig,
) -> Result<Option<PackingWitness>, PackingError> {
    let found = match k.checked_mul(p) {
        None => None,
        Some(need) if need > g.order() => None,
        Some(_) if p <= 1 => Some(trivial_sets(g.order(), k, p)),
        Some(_) => match config.strategy {
            Strategy::Decompose => decompose(g, k, p, config.guard())?,
            Strategy::Direct => direct(g, k, p, config.guard())?,
        },
    };
    Ok(found.map(|mut sets| {
        sets.sort_by_key(|s| s.first());
        PackingWitness {
            mode: Mode::Independent,
            sets,
        }
    }))
}

/// `k` disjoint `p`-cliques of `g`; the same sets as an independent-set
/// packing of the complement.
pub fn find_clique_packing(
    g: &Graph,
    k: usize,
    p: usize,
) -> Result<Option<PackingWitness>, PackingError> {
    find_clique_packing_with(g, k, p, &SearchConfig::default())
}

pub fn find_clique_packing_with(
    g: &Graph,
    k: usize,
    p: usize,
    config: &SearchConfig,
) -> Result<Option<PackingWitness>, PackingError> {
    let found = find_disjoint_independent_sets_with(&g.complement(), k, p, config)?;
    Ok(found.map(|w| PackingWitness {
        mode: Mode::Clique,
        sets: w.sets,
    }))
}

pub fn independence_number(g: &Graph) -> Result<usize, PackingError> {
    Ok(max_independent_set_with(g, &SearchConfig::default())?.len())
}

/// A maximum independent set, assembled component by component.
pub fn max_independent_set_with(g: &Graph, config: &SearchConfig) -> Result<VertexSet, PackingError> {
    let n = g.order();
    let mut out = VertexSet::empty(n);
    for comp in g.components() {
        if g.is_clique(&comp) {
            out.insert(comp.first().expect("components are nonempty"));
            continue;
        }
        check_guard(comp.len(), config.guard())?;
        let local = Local::new(g, &comp);
        out = out.union(&local.to_global(local.max_independent(), n));
    }
    Ok(out)
}

fn check_guard(size: usize, guard: usize) -> Result<(), PackingError> {
    if size > guard {
        return Err(PackingError::SizeGuard { size, guard });
    }
    Ok(())
}

fn trivial_sets(n: usize, k: usize, p: usize) -> Vec<VertexSet> {
    (0..k).map(|i| VertexSet::range(n, i * p, (i + 1) * p)).collect()
}

fn direct(g: &Graph, k: usize, p: usize, guard: usize) -> Result<Option<Vec<VertexSet>>, PackingError> {
    check_guard(g.order(), guard)?;
    let local = Local::new(g, &g.vertices());
    Ok(local
        .pack(&vec![p; k])
        .map(|masks| masks.iter().map(|&m| local.to_global(m, g.order())).collect()))
}

/// One maximal size profile a component can supply: `sizes` is
/// non-increasing and `sets[i]` realises `sizes[i]`.
struct Profile {
    sizes: Vec<usize>,
    sets: Vec<VertexSet>,
}

fn component_profiles(
    g: &Graph,
    comp: &VertexSet,
    k: usize,
    p: usize,
    guard: usize,
) -> Result<Vec<Profile>, PackingError> {
    let n = g.order();
    if g.is_clique(comp) {
        // Each independent set takes at most one clique vertex.
        let members: Vec<usize> = comp.iter().take(k).collect();
        let mut sizes = vec![0; k];
        let mut sets = vec![VertexSet::empty(n); k];
        for (i, &v) in members.iter().enumerate() {
            sizes[i] = 1;
            sets[i].insert(v);
        }
        return Ok(vec![Profile { sizes, sets }]);
    }
    check_guard(comp.len(), guard)?;
    let local = Local::new(g, comp);
    let cap = p.min(local.max_independent().count_ones() as usize);

    // Feasibility is downward closed, so profiles are explored by
    // increasing total and only searched when every one-step reduction
    // is already known to be feasible.
    let mut feasible: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    let mut layer = vec![vec![0usize; k]];
    feasible.insert(vec![0; k], vec![0; k]);
    for _total in 1..=comp.len().min(k * cap) {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for base in &layer {
            for i in 0..k {
                if base[i] < cap && (i == 0 || base[i - 1] > base[i]) {
                    let mut t = base.clone();
                    t[i] += 1;
                    next.push(t);
                }
            }
        }
        next.sort();
        next.dedup();
        let mut kept = Vec::new();
        for t in next {
            let reductions_ok = (0..k)
                .filter(|&i| t[i] > 0 && (i + 1 == k || t[i] > t[i + 1]))
                .all(|i| {
                    let mut r = t.clone();
                    r[i] -= 1;
                    feasible.contains_key(&r)
                });
            if !reductions_ok {
                continue;
            }
            if let Some(masks) = local.pack(&t) {
                feasible.insert(t.clone(), masks);
                kept.push(t);
            }
        }
        if kept.is_empty() {
            break;
        }
        layer = kept;
    }

    let maximal: Vec<&Vec<usize>> = feasible
        .keys()
        .filter(|t| {
            (0..k).all(|i| {
                if t[i] >= cap || (i > 0 && t[i - 1] == t[i]) {
                    return true;
                }
                let mut up = (*t).clone();
                up[i] += 1;
                !feasible.contains_key(&up)
            })
        })
        .collect();
    Ok(maximal
        .into_iter()
        .map(|t| Profile {
            sizes: t.clone(),
            sets: feasible[t].iter().map(|&m| local.to_global(m, n)).collect(),
        })
        .collect())
}

struct Node {
    fill: Vec<usize>,
    prev: usize,
    profile: usize,
    /// For each slot of the previous fill, the profile position it received.
    take: Vec<usize>,
    /// For each slot of `fill`, the slot of the previous fill it came from.
    origin: Vec<usize>,
}

/// All ways of adding a profile to a sorted fill vector, up to symmetry of
/// equal slots and equal profile entries.
fn merge(fill: &[usize], sizes: &[usize], p: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let k = fill.len();
    let mut by_value: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    for (pos, &x) in sizes.iter().enumerate() {
        by_value[x].push(pos);
    }
    let counts: Vec<usize> = by_value.iter().map(Vec::len).collect();
    let mut groups = Vec::new();
    let mut start = 0;
    while start < k {
        let end = (start..k).find(|&i| fill[i] != fill[start]).unwrap_or(k);
        groups.push((start, end - start));
        start = end;
    }

    let mut out: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut chosen = vec![0usize; k];
    assign_groups(&groups, 0, counts, &mut chosen, &mut |values: &[usize]| {
        let mut cursor = vec![0usize; p + 1];
        let mut take = vec![0; k];
        for slot in 0..k {
            let x = values[slot];
            take[slot] = by_value[x][cursor[x]];
            cursor[x] += 1;
        }
        let raw: Vec<usize> = (0..k).map(|i| (fill[i] + values[i]).min(p)).collect();
        let mut origin: Vec<usize> = (0..k).collect();
        origin.sort_by(|&a, &b| raw[b].cmp(&raw[a]));
        let next: Vec<usize> = origin.iter().map(|&i| raw[i]).collect();
        out.entry(next).or_insert((take, origin));
    });
    out.into_iter().map(|(f, (t, o))| (f, t, o)).collect()
}

fn assign_groups(
    groups: &[(usize, usize)],
    g: usize,
    counts: Vec<usize>,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let Some(&(start, len)) = groups.get(g) else {
        emit(chosen);
        return;
    };
    // Choose a multiset of `len` profile values for this group of equal slots.
    fn pick(
        value: usize,
        remaining: usize,
        slot: usize,
        counts: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        done: &mut dyn FnMut(&mut Vec<usize>, &mut Vec<usize>),
    ) {
        if remaining == 0 {
            done(counts, chosen);
            return;
        }
        if value == counts.len() {
            return;
        }
        let avail = counts[value].min(remaining);
        for take in (0..=avail).rev() {
            for i in 0..take {
                chosen[slot + i] = value;
            }
            counts[value] -= take;
            pick(value + 1, remaining - take, slot + take, counts, chosen, done);
            counts[value] += take;
        }
    }
    let mut counts = counts;
    pick(0, len, start, &mut counts, chosen, &mut |counts, chosen| {
        assign_groups(groups, g + 1, counts.clone(), chosen, emit)
    });
}

fn dominates(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn decompose(g: &Graph, k: usize, p: usize, guard: usize) -> Result<Option<Vec<VertexSet>>, PackingError> {
    let n = g.order();
    let mut isolated = Vec::new();
    let mut parts = Vec::new();
    for comp in g.components() {
        if comp.len() == 1 {
            isolated.push(comp.first().expect("nonempty"));
        } else {
            parts.push(component_profiles(g, &comp, k, p, guard)?);
        }
    }
    let pool = isolated.len();
    let done = |fill: &[usize]| fill.iter().map(|&f| p - f).sum::<usize>() <= pool;

    let mut layers: Vec<Vec<Node>> = vec![vec![Node {
        fill: vec![0; k],
        prev: 0,
        profile: 0,
        take: Vec::new(),
        origin: Vec::new(),
    }]];
    let mut finish = layers[0].iter().position(|nd| done(&nd.fill));
    for profiles in &parts {
        if finish.is_some() {
            break;
        }
        let prev_layer = layers.last().expect("seeded");
        let mut next: BTreeMap<Vec<usize>, Node> = BTreeMap::new();
        for (pi, node) in prev_layer.iter().enumerate() {
            for (qi, profile) in profiles.iter().enumerate() {
                for (fill, take, origin) in merge(&node.fill, &profile.sizes, p) {
                    next.entry(fill.clone()).or_insert(Node {
                        fill,
                        prev: pi,
                        profile: qi,
                        take,
                        origin,
                    });
                }
            }
        }
        let all: Vec<Node> = next.into_values().collect();
        let keep: Vec<bool> = (0..all.len())
            .map(|i| {
                !(0..all.len()).any(|j| j != i && dominates(&all[j].fill, &all[i].fill))
            })
            .collect();
        let kept: Vec<Node> = all
            .into_iter()
            .zip(keep)
            .filter_map(|(node, keep)| keep.then_some(node))
            .collect();
        finish = kept.iter().position(|nd| done(&nd.fill));
        layers.push(kept);
    }
    let Some(mut idx) = finish else {
        return Ok(None);
    };

    let mut sets = vec![VertexSet::empty(n); k];
    let mut slot: Vec<usize> = (0..k).collect();
    for layer in (1..layers.len()).rev() {
        let node = &layers[layer][idx];
        let profile = &parts[layer - 1][node.profile];
        for f in 0..k {
            let old = node.origin[slot[f]];
            sets[f] = sets[f].union(&profile.sets[node.take[old]]);
            slot[f] = old;
        }
        idx = node.prev;
    }
    let mut pool = isolated.into_iter();
    for set in &mut sets {
        let keep: Vec<usize> = set.iter().take(p).collect();
        *set = VertexSet::from_members(n, keep).expect("in range");
        while set.len() < p {
            set.insert(pool.next().expect("pool covers the shortfall"));
        }
    }
    Ok(Some(sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::j_graph;

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(n, members.iter().copied()).unwrap()
    }

    fn check(g: &Graph, k: usize, p: usize) -> bool {
        let config = SearchConfig::default();
        let direct = SearchConfig {
            strategy: Strategy::Direct,
            ..config
        };
        let a = find_disjoint_independent_sets_with(g, k, p, &config).unwrap();
        if let Some(w) = &a {
            verify_witness(g, w, k, p, Mode::Independent).unwrap();
        }
        if g.order() <= 64 {
            let b = find_disjoint_independent_sets_with(g, k, p, &direct).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "strategies disagree on {g:?}");
            if let Some(w) = &b {
                verify_witness(g, w, k, p, Mode::Independent).unwrap();
            }
        }
        a.is_some()
    }

    #[test]
    fn examples() {
        assert!(check(&Graph::empty(12), 4, 3));
        let k7e7 = Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)]);
        assert!(!check(&k7e7, 4, 3));
        let w = find_disjoint_independent_sets(&Graph::cycle(5), 2, 2).unwrap().unwrap();
        assert_eq!(w.sets, vec![set(5, &[0, 2]), set(5, &[1, 3])]);
    }

    #[test]
    fn clique_packing_examples() {
        let w = find_clique_packing(&Graph::complete(12), 4, 3).unwrap().unwrap();
        verify_witness(&Graph::complete(12), &w, 4, 3, Mode::Clique).unwrap();
        let h = j_graph(3, 3).unwrap().complement();
        assert!(find_clique_packing(&h, 4, 3).unwrap().is_none());
        let bip = crate::constructions::turan_graph(9, 2).unwrap();
        assert!(find_clique_packing(&bip, 1, 3).unwrap().is_none());
    }

    #[test]
    fn independence_number_examples() {
        assert_eq!(independence_number(&Graph::complete(9)), Ok(1));
        assert_eq!(independence_number(&Graph::cycle(5)), Ok(2));
        let k7e7 = Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)]);
        assert_eq!(independence_number(&k7e7), Ok(8));
        assert_eq!(independence_number(&Graph::empty(0)), Ok(0));
    }

    #[test]
    fn verify_reports_first_violation() {
        let g = Graph::empty(12);
        let good = PackingWitness {
            mode: Mode::Independent,
            sets: (0..4).map(|i| VertexSet::range(12, 3 * i, 3 * i + 3)).collect(),
        };
        assert_eq!(verify_witness(&g, &good, 4, 3, Mode::Independent), Ok(()));
        let mut overlap = good.clone();
        overlap.sets[1] = set(12, &[2, 4, 5]);
        let err = verify_witness(&g, &overlap, 4, 3, Mode::Independent).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Disjointness);
        let mut short = good.clone();
        short.sets[2] = set(12, &[6, 7]);
        let err = verify_witness(&g, &short, 4, 3, Mode::Independent).unwrap_err();
        assert_eq!(err.kind.label(), "cardinality");
        let err = verify_witness(&Graph::complete(12), &good, 4, 3, Mode::Independent).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Independence);
        let err = verify_witness(&g, &good, 4, 3, Mode::Clique).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Clique);
        let err = verify_witness(&g, &good, 3, 3, Mode::Independent).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Count);
    }

    #[test]
    fn j_graphs_have_no_four_independent_p_sets() {
        for p in 3..=5 {
            for s in 1..=3 * p - 1 {
                if let Ok(j) = j_graph(p, s) {
                    assert!(!check(&j, 4, p), "p={p} s={s}");
                    // One more vertex of slack makes room.
                    let bigger = Graph::disjoint_union(&[j, Graph::empty(1)]);
                    assert!(check(&bigger, 4, p), "p={p} s={s} plus one");
                }
            }
        }
    }

    #[test]
    fn mixed_components() {
        // C5 ∪ C5 ∪ K4 ∪ 2K1: each C5 gives sizes (2,2,1).
        let g = Graph::disjoint_union(&[
            Graph::cycle(5),
            Graph::cycle(5),
            Graph::complete(4),
            Graph::empty(2),
        ]);
        assert!(check(&g, 4, 3));
        assert!(check(&g, 3, 4));
        assert!(check(&g, 4, 4));
        assert!(!check(&g, 3, 6));
        assert!(!check(&g, 2, 7));
    }

    #[test]
    fn size_guard() {
        let big = Graph::cycle(70);
        assert_eq!(
            find_disjoint_independent_sets(&big, 2, 30),
            Err(PackingError::SizeGuard { size: 70, guard: 64 })
        );
        let many = Graph::disjoint_union(&[Graph::complete(100), Graph::empty(300)]);
        assert!(find_disjoint_independent_sets(&many, 4, 75).unwrap().is_some());
        assert!(find_disjoint_independent_sets(&many, 4, 77).unwrap().is_none());
    }

    #[test]
    fn trivial_parameters() {
        let g = Graph::complete(5);
        assert!(check(&g, 5, 1));
        assert!(!check(&g, 6, 1));
        assert_eq!(
            find_disjoint_independent_sets(&g, 0, 3).unwrap().unwrap().sets,
            Vec::<VertexSet>::new()
        );
    }
}
