//! Vertex-shifting engine for sparse hosts of order `4p−1+s`.
//!
//! Given `G` with `e(G) ≤ 7s` and `Δ(G) ≤ 6`, [`resolve`] either finds four
//! pairwise-disjoint independent `p`-sets or certifies that `G` is a union
//! of `s/3` copies of `K_7` plus isolated vertices.
//!
//! The engine keeps a partition into five classes: a leftover class (index
//! 0) and four independent classes, one of which (the destination) is a
//! vertex short. Class `i` points to class `j` in the auxiliary digraph when
//! some vertex of class `i` has no neighbour in class `j`, so it can be moved
//! there. Classes with a directed path to the destination are accessible.
//! When the leftover class becomes accessible, shifting vertices along the
//! path fills the destination. Otherwise the engine applies local repair
//! moves (solo-neighbour relays and swaps, destination re-rooting), greedily
//! minimising the number of inaccessible classes. If the move budget runs out
//! the exact packing search decides, and a negative answer must coincide with
//! the `K_7`-union structure.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::packing::{
    find_disjoint_independent_sets_with, verify_witness, Mode, PackingError, PackingWitness,
    SearchConfig,
};

/// Number of classes in a partition state.
pub const CLASSES: usize = 5;
/// Index of the leftover class.
pub const LEFTOVER: usize = 0;
/// Index of the initial destination class.
pub const INITIAL_DESTINATION: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violated", rename_all = "kebab-case")]
pub enum Precondition {
    CliqueOrder { p: usize },
    HostOrder { n: usize, p: usize },
    TooManyEdges { edges: usize, limit: usize },
    DegreeTooLarge { max_degree: usize },
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::CliqueOrder { p } => write!(f, "need p ≥ 3 (p={p})"),
            Precondition::HostOrder { n, p } => write!(
                f,
                "need n = 4p−1+s with 1 ≤ s ≤ 3p−1, i.e. {} ≤ n ≤ {} (n={n})",
                4 * p,
                7 * p - 2
            ),
            Precondition::TooManyEdges { edges, limit } => {
                write!(f, "need e ≤ 7s = {limit} (e={edges})")
            }
            Precondition::DegreeTooLarge { max_degree } => {
                write!(f, "need Δ ≤ 6 (Δ={max_degree})")
            }
        }
    }
}

fn join_list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("preconditions violated: {}", join_list(.0))]
    Precondition(Vec<Precondition>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid shift: {0}")]
    InvalidShift(String),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error("soundness alarm: {0}")]
    SoundnessAlarm(String),
}

/// `s = n − (4p−1)` when `n` has the required form.
fn offset(n: usize, p: usize) -> Option<usize> {
    let s = n.checked_sub(4 * p - 1)?;
    (1..=3 * p - 1).contains(&s).then_some(s)
}

/// Five classes over a bound graph. Classes `1..5` must stay independent;
/// the leftover class is unrestricted.
#[derive(Debug, Clone)]
pub struct PartitionState<'g> {
    graph: &'g Graph,
    p: usize,
    classes: [VertexSet; CLASSES],
    class_of: Vec<usize>,
    dest: usize,
}

impl<'g> PartitionState<'g> {
    pub fn new(
        graph: &'g Graph,
        p: usize,
        classes: [VertexSet; CLASSES],
        dest: usize,
    ) -> Result<Self, ShiftError> {
        let n = graph.order();
        if dest == LEFTOVER || dest >= CLASSES {
            return Err(ShiftError::InvalidPartition(format!("bad destination {dest}")));
        }
        let mut class_of = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            if class.universe() != n {
                return Err(ShiftError::InvalidPartition(format!("class {i} has the wrong universe")));
            }
            for v in class.iter() {
                if class_of[v] != usize::MAX {
                    return Err(ShiftError::InvalidPartition(format!("vertex {v} in two classes")));
                }
                class_of[v] = i;
            }
            if i != LEFTOVER && !graph.is_independent(class) {
                return Err(ShiftError::InvalidPartition(format!("class {i} is not independent")));
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(ShiftError::InvalidPartition(format!("vertex {v} unassigned")));
        }
        Ok(Self {
            graph,
            p,
            classes,
            class_of,
            dest,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn class(&self, i: usize) -> &VertexSet {
        &self.classes[i]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn destination(&self) -> usize {
        self.dest
    }

    pub fn sizes(&self) -> [usize; CLASSES] {
        std::array::from_fn(|i| self.classes[i].len())
    }

    /// The shape the search maintains between moves: the destination one
    /// short of `p`, the other independent classes at exactly `p`.
    pub fn is_seed_shaped(&self) -> bool {
        (1..CLASSES).all(|i| self.classes[i].len() == if i == self.dest { self.p - 1 } else { self.p })
    }

    /// Four disjoint independent `p`-sets, if every independent class is full.
    pub fn witness(&self) -> Option<PackingWitness> {
        let n = self.graph.order();
        let sets: Option<Vec<VertexSet>> = (1..CLASSES)
            .map(|i| {
                let members: Vec<usize> = self.classes[i].iter().take(self.p).collect();
                (members.len() == self.p)
                    .then(|| VertexSet::from_members(n, members).expect("in range"))
            })
            .collect();
        sets.map(|sets| PackingWitness {
            mode: Mode::Independent,
            sets,
        })
    }

    fn key(&self) -> Vec<u8> {
        let mut key: Vec<u8> = self.class_of.iter().map(|&c| c as u8).collect();
        key.push(self.dest as u8);
        key
    }

    fn movable(&self, v: usize, to: usize) -> bool {
        !self.graph.neighbors(v).intersects(&self.classes[to])
    }

    fn lowest_movable(&self, from: usize, to: usize) -> Option<usize> {
        self.classes[from].iter().find(|&v| self.movable(v, to))
    }

    /// Moves `v` to class `to`, checking independence of the target.
    fn shift_vertex(&mut self, v: usize, to: usize) -> Result<(), ShiftError> {
        let from = self.class_of[v];
        if from == to {
            return Err(ShiftError::InvalidShift(format!("vertex {v} already in class {to}")));
        }
        if to != LEFTOVER && !self.movable(v, to) {
            return Err(ShiftError::InvalidShift(format!(
                "vertex {v} has a neighbour in class {to}"
            )));
        }
        self.classes[from].remove(v);
        self.classes[to].insert(v);
        self.class_of[v] = to;
        Ok(())
    }

    /// Walks `path`, moving the lowest movable vertex at every step (or
    /// `first` at the first step).
    fn shift_path(&mut self, path: &[usize], first: Option<usize>) -> Result<(), ShiftError> {
        for (step, pair) in path.windows(2).enumerate() {
            let (from, to) = (pair[0], pair[1]);
            let mover = match (step, first) {
                (0, Some(v)) => v,
                _ => self.lowest_movable(from, to).ok_or_else(|| {
                    ShiftError::InvalidShift(format!("no vertex of class {from} is movable to {to}"))
                })?,
            };
            if self.class_of[mover] != from {
                return Err(ShiftError::InvalidShift(format!("vertex {mover} is not in class {from}")));
            }
            self.shift_vertex(mover, to)?;
        }
        Ok(())
    }
}

/// Seeds a partition greedily: vertices are placed into the first
/// independent class with room and no neighbour there, otherwise into the
/// leftover class. Tries index order, then decreasing degree.
pub fn init_partition(g: &Graph, p: usize) -> Result<Option<PartitionState<'_>>, ShiftError> {
    let n = g.order();
    if p < 3 {
        return Err(ShiftError::Precondition(vec![Precondition::CliqueOrder { p }]));
    }
    if offset(n, p).is_none() {
        return Err(ShiftError::Precondition(vec![Precondition::HostOrder { n, p }]));
    }
    let by_index: Vec<usize> = (0..n).collect();
    let mut by_degree = by_index.clone();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for order in [by_index, by_degree] {
        let capacity = |i: usize| if i == INITIAL_DESTINATION { p - 1 } else { p };
        let mut classes: [VertexSet; CLASSES] = std::array::from_fn(|_| VertexSet::empty(n));
        for &v in &order {
            let slot = (1..CLASSES).find(|&i| {
                classes[i].len() < capacity(i) && !g.neighbors(v).intersects(&classes[i])
            });
            classes[slot.unwrap_or(LEFTOVER)].insert(v);
        }
        if (1..CLASSES).all(|i| classes[i].len() == capacity(i)) {
            return PartitionState::new(g, p, classes, INITIAL_DESTINATION).map(Some);
        }
    }
    Ok(None)
}

/// Class-level digraph of a partition state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxDigraph {
    /// `arcs[i][j]`: the lowest vertex of class `i` with no neighbour in class `j`.
    arcs: [[Option<usize>; CLASSES]; CLASSES],
    dest: usize,
    accessible: [bool; CLASSES],
    /// Successor of each accessible class on a shortest path to the destination.
    next: [Option<usize>; CLASSES],
}

impl AuxDigraph {
    fn from_arcs(arcs: [[Option<usize>; CLASSES]; CLASSES], dest: usize) -> Self {
        let (accessible, next) = reach(&arcs, dest, &[]);
        Self {
            arcs,
            dest,
            accessible,
            next,
        }
    }

    pub fn arc(&self, i: usize, j: usize) -> Option<usize> {
        self.arcs[i][j]
    }

    pub fn destination(&self) -> usize {
        self.dest
    }

    pub fn is_accessible(&self, i: usize) -> bool {
        self.accessible[i]
    }

    pub fn inaccessible(&self) -> Vec<usize> {
        (0..CLASSES).filter(|&i| !self.accessible[i]).collect()
    }

    /// Shortest class path from `from` to the destination.
    pub fn path_to_destination(&self, from: usize) -> Option<Vec<usize>> {
        self.path_avoiding(from, &[])
    }

    /// Shortest class path from `from` to the destination through none of `avoid`.
    pub fn path_avoiding(&self, from: usize, avoid: &[usize]) -> Option<Vec<usize>> {
        let (ok, next) = if avoid.is_empty() {
            (self.accessible, self.next)
        } else {
            reach(&self.arcs, self.dest, avoid)
        };
        if !ok[from] {
            return None;
        }
        let mut path = vec![from];
        let mut at = from;
        while at != self.dest {
            at = next[at]?;
            path.push(at);
        }
        Some(path)
    }

    /// The same digraph with one arc removed and accessibility recomputed.
    pub fn without_arc(&self, i: usize, j: usize) -> Self {
        let mut arcs = self.arcs;
        arcs[i][j] = None;
        Self::from_arcs(arcs, self.dest)
    }
}

fn reach(
    arcs: &[[Option<usize>; CLASSES]; CLASSES],
    dest: usize,
    avoid: &[usize],
) -> ([bool; CLASSES], [Option<usize>; CLASSES]) {
    let mut seen = [false; CLASSES];
    let mut next = [None; CLASSES];
    if avoid.contains(&dest) {
        return (seen, next);
    }
    seen[dest] = true;
    let mut queue = vec![dest];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head];
        head += 1;
        for i in 0..CLASSES {
            if !seen[i] && !avoid.contains(&i) && arcs[i][t].is_some() {
                seen[i] = true;
                next[i] = Some(t);
                queue.push(i);
            }
        }
    }
    (seen, next)
}

pub fn build_aux_digraph(st: &PartitionState<'_>) -> AuxDigraph {
    let mut arcs = [[None; CLASSES]; CLASSES];
    for (i, row) in arcs.iter_mut().enumerate() {
        for (j, arc) in row.iter_mut().enumerate() {
            if i != j {
                *arc = st.lowest_movable(i, j);
            }
        }
    }
    AuxDigraph::from_arcs(arcs, st.dest)
}

/// The unique neighbour of `v` in class `j`, if there is exactly one.
pub fn solo_neighbor(st: &PartitionState<'_>, v: usize, j: usize) -> Option<usize> {
    let inside = st.graph.neighbors(v).intersection(&st.classes[j]);
    (inside.len() == 1).then(|| inside.first().expect("one member"))
}

/// Every vertex of an inaccessible class has a neighbour in every
/// accessible class. Holds for any digraph built by [`build_aux_digraph`].
pub fn check_accessibility_invariant(st: &PartitionState<'_>, aux: &AuxDigraph) -> bool {
    (0..CLASSES).filter(|&i| !aux.is_accessible(i)).all(|i| {
        (0..CLASSES)
            .filter(|&j| aux.is_accessible(j))
            .all(|j| st.classes[i].iter().all(|v| !st.movable(v, j)))
    })
}

/// Applies an explicit vertex shifting: `movers[l]` moves from class
/// `path[l]` to class `path[l+1]`, in order, each checked at its turn.
pub fn apply_shift<'g>(
    st: &PartitionState<'g>,
    path: &[usize],
    movers: &[usize],
) -> Result<PartitionState<'g>, ShiftError> {
    if path.len() < 2 || movers.len() + 1 != path.len() {
        return Err(ShiftError::InvalidShift(format!(
            "path of {} classes needs {} movers, got {}",
            path.len(),
            path.len().saturating_sub(1),
            movers.len()
        )));
    }
    if path.iter().any(|&c| c >= CLASSES) {
        return Err(ShiftError::InvalidShift("class index out of range".into()));
    }
    let mut next = st.clone();
    for (pair, &v) in path.windows(2).zip(movers) {
        if v >= st.graph.order() || next.class_of[v] != pair[0] {
            return Err(ShiftError::InvalidShift(format!(
                "vertex {v} is not in class {}",
                pair[0]
            )));
        }
        next.shift_vertex(v, pair[1])?;
    }
    Ok(next)
}

/// A legal transformation of a partition state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// The leftover class is accessible: shift along `path`.
    Complete { path: Vec<usize> },
    /// The leftover class itself contains an independent `p`-set.
    LeftoverSet { set: Vec<usize> },
    /// `x` (leftover) moves into class `class` whose only neighbour there,
    /// `solo`, moves to class `target`, which reaches the destination
    /// without passing through `class`.
    SoloRelay {
        x: usize,
        class: usize,
        solo: usize,
        target: usize,
    },
    /// `solo` in accessible class `class` is the only neighbour there of
    /// both non-adjacent leftover vertices `x` and `y`.
    DoubleSolo {
        x: usize,
        y: usize,
        solo: usize,
        class: usize,
    },
    /// Move a vertex of `from` into the destination and make `from` the
    /// new destination.
    Reroot { from: usize },
    /// Exchange `v` and its only neighbour `u` in another class.
    SoloSwap { v: usize, u: usize },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Complete { .. } => "complete",
            Move::LeftoverSet { .. } => "leftover-set",
            Move::SoloRelay { .. } => "solo-relay",
            Move::DoubleSolo { .. } => "double-solo",
            Move::Reroot { .. } => "reroot",
            Move::SoloSwap { .. } => "solo-swap",
        }
    }

    /// Whether applying the move yields four full independent classes.
    pub fn completes(&self) -> bool {
        !matches!(self, Move::Reroot { .. } | Move::SoloSwap { .. })
    }
}

/// All moves available in `st`, completing moves first.
pub fn propose_moves(st: &PartitionState<'_>, aux: &AuxDigraph, config: &SearchConfig) -> Vec<Move> {
    let g = st.graph;
    let mut moves = Vec::new();
    if let Some(path) = aux.path_to_destination(LEFTOVER) {
        moves.push(Move::Complete { path });
    }
    if st.classes[LEFTOVER].len() >= st.p {
        if let Ok(left) = g.induced_subgraph(&st.classes[LEFTOVER]) {
            if let Ok(Some(w)) = find_disjoint_independent_sets_with(&left, 1, st.p, config) {
                let members = st.classes[LEFTOVER].to_vec();
                let set = w.sets[0].iter().map(|i| members[i]).collect();
                moves.push(Move::LeftoverSet { set });
            }
        }
    }
    let leftover: Vec<usize> = st.classes[LEFTOVER].to_vec();
    for class in (1..CLASSES).filter(|&c| aux.is_accessible(c)) {
        let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &x in &leftover {
            if let Some(solo) = solo_neighbor(st, x, class) {
                owners.entry(solo).or_default().push(x);
            }
        }
        for (&solo, xs) in &owners {
            for (a, &x) in xs.iter().enumerate() {
                for &y in &xs[a + 1..] {
                    if !g.has_edge(x, y) {
                        moves.push(Move::DoubleSolo { x, y, solo, class });
                    }
                }
            }
        }
    }
    for class in (1..CLASSES).filter(|&c| c != st.dest) {
        for &x in &leftover {
            let Some(solo) = solo_neighbor(st, x, class) else {
                continue;
            };
            for target in (1..CLASSES).filter(|&t| t != class && st.movable(solo, t)) {
                if aux.path_avoiding(target, &[class, LEFTOVER]).is_some() {
                    moves.push(Move::SoloRelay {
                        x,
                        class,
                        solo,
                        target,
                    });
                }
            }
        }
    }
    for from in (1..CLASSES).filter(|&c| c != st.dest) {
        if aux.arc(from, st.dest).is_some() {
            moves.push(Move::Reroot { from });
        }
    }
    for v in 0..g.order() {
        let home = st.class_of[v];
        for other in (1..CLASSES).filter(|&c| c != home) {
            let Some(u) = solo_neighbor(st, v, other) else {
                continue;
            };
            // The partner must fit into v's class unless that is the leftover class.
            let fits = home == LEFTOVER || solo_neighbor(st, u, home) == Some(v);
            if fits && (home != LEFTOVER || v < u || st.class_of[u] != LEFTOVER) {
                moves.push(Move::SoloSwap { v, u });
            }
        }
    }
    moves
}

/// Applies `mv` to a copy of `st`.
pub fn apply_move<'g>(
    st: &PartitionState<'g>,
    aux: &AuxDigraph,
    mv: &Move,
) -> Result<PartitionState<'g>, ShiftError> {
    let mut next = st.clone();
    match mv {
        Move::Complete { path } => next.shift_path(path, None)?,
        Move::LeftoverSet { set } => {
            let dest = next.dest;
            let old: Vec<usize> = next.classes[dest].to_vec();
            for &v in &old {
                next.shift_vertex(v, LEFTOVER)?;
            }
            for &v in set {
                if next.class_of[v] != LEFTOVER {
                    return Err(ShiftError::InvalidShift(format!("vertex {v} is not leftover")));
                }
                next.shift_vertex(v, dest)?;
            }
        }
        &Move::SoloRelay {
            x,
            class,
            solo,
            target,
        } => {
            let path = aux
                .path_avoiding(target, &[class, LEFTOVER])
                .ok_or_else(|| ShiftError::InvalidShift("relay target cannot reach the destination".into()))?;
            if solo_neighbor(st, x, class) != Some(solo) || st.class_of[x] != LEFTOVER {
                return Err(ShiftError::InvalidShift("relay precondition failed".into()));
            }
            next.shift_vertex(solo, target)?;
            next.shift_vertex(x, class)?;
            next.shift_path(&path, None)?;
        }
        &Move::DoubleSolo { x, y, solo, class } => {
            if solo_neighbor(st, x, class) != Some(solo) || solo_neighbor(st, y, class) != Some(solo) {
                return Err(ShiftError::InvalidShift("double-solo precondition failed".into()));
            }
            if class == st.dest {
                next.shift_vertex(solo, LEFTOVER)?;
                next.shift_vertex(x, class)?;
                next.shift_vertex(y, class)?;
            } else {
                let path = aux
                    .path_to_destination(class)
                    .ok_or_else(|| ShiftError::InvalidShift("class is not accessible".into()))?;
                let first = st
                    .lowest_movable(class, path[1])
                    .ok_or_else(|| ShiftError::InvalidShift("no mover on the first arc".into()))?;
                next.shift_path(&path, Some(first))?;
                if first == solo {
                    next.shift_vertex(x, class)?;
                } else {
                    next.shift_vertex(solo, LEFTOVER)?;
                    next.shift_vertex(x, class)?;
                    next.shift_vertex(y, class)?;
                }
            }
        }
        &Move::Reroot { from } => {
            let dest = st.dest;
            next.shift_path(&[from, dest], None)?;
            next.dest = from;
        }
        &Move::SoloSwap { v, u } => {
            let (a, b) = (st.class_of[v], st.class_of[u]);
            if solo_neighbor(st, v, b) != Some(u) {
                return Err(ShiftError::InvalidShift(format!("{u} is not the only neighbour of {v}")));
            }
            // Detach both first so each lands in a class without its partner.
            next.classes[a].remove(v);
            next.classes[b].remove(u);
            next.class_of[v] = usize::MAX;
            next.class_of[u] = usize::MAX;
            for (w, to) in [(v, b), (u, a)] {
                if to != LEFTOVER && !next.movable(w, to) {
                    return Err(ShiftError::InvalidShift(format!("{w} does not fit class {to}")));
                }
                next.classes[to].insert(w);
                next.class_of[w] = to;
            }
        }
    }
    Ok(next)
}

/// `G = (s/3)K_7 ∪ (n − 7s/3)K_1`, with every fact re-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCertificate {
    pub seven_cliques: Vec<VertexSet>,
    pub isolated: VertexSet,
    pub s: usize,
    pub edges: usize,
    pub max_degree: usize,
}

impl StructureCertificate {
    pub fn verify(&self, g: &Graph, p: usize) -> Result<(), String> {
        let n = g.order();
        let s = offset(n, p).ok_or("host order is not 4p−1+s")?;
        if s != self.s || s % 3 != 0 || self.seven_cliques.len() * 3 != s {
            return Err(format!("expected s/3 cliques with 3 | s (s={s})"));
        }
        let mut covered = self.isolated.clone();
        for c in &self.seven_cliques {
            if c.len() != 7 || !g.is_clique(c) || c.intersects(&covered) {
                return Err("a listed set is not a disjoint K_7".into());
            }
            if c.iter().any(|v| g.degree(v) != 6) {
                return Err("a K_7 vertex has an outside neighbour".into());
            }
            covered = covered.union(c);
        }
        if covered.len() != n || self.isolated.iter().any(|v| g.degree(v) != 0) {
            return Err("remaining vertices are not isolated".into());
        }
        if g.edge_count() != 7 * s || self.edges != g.edge_count() || g.max_degree() > 6 {
            return Err("edge count or maximum degree mismatch".into());
        }
        Ok(())
    }
}

/// Recognises `(s/3)K_7 ∪` isolated vertices by scanning components.
pub fn certify_k7_structure(g: &Graph, p: usize) -> Option<StructureCertificate> {
    let n = g.order();
    let s = offset(n, p)?;
    let mut seven_cliques = Vec::new();
    let mut isolated = VertexSet::empty(n);
    for comp in g.components() {
        match comp.len() {
            1 => isolated = isolated.union(&comp),
            7 if g.is_clique(&comp) => seven_cliques.push(comp),
            _ => return None,
        }
    }
    if s % 3 != 0 || seven_cliques.len() * 3 != s {
        return None;
    }
    let cert = StructureCertificate {
        seven_cliques,
        isolated,
        s,
        edges: g.edge_count(),
        max_degree: g.max_degree(),
    };
    cert.verify(g, p).ok().map(|_| cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Witness { witness: PackingWitness },
    Certificate { certificate: StructureCertificate },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecidedBy {
    Shifting,
    ExactSearch,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveStats {
    pub rebuilds: usize,
    pub moves: Vec<String>,
    /// Number of inaccessible classes after each digraph rebuild.
    pub inaccessible_trajectory: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub outcome: Outcome,
    pub decided_by: DecidedBy,
    pub stats: ResolveStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct ResolveConfig {
    /// Digraph rebuilds allowed before falling back; `None` means `10·n`.
    pub budget: Option<usize>,
    pub search: SearchConfig,
}


pub fn check_preconditions(g: &Graph, p: usize) -> Result<usize, ShiftError> {
    let n = g.order();
    let mut violated = Vec::new();
    if p < 3 {
        return Err(ShiftError::Precondition(vec![Precondition::CliqueOrder { p }]));
    }
    let s = offset(n, p);
    if s.is_none() {
        violated.push(Precondition::HostOrder { n, p });
    }
    if let Some(s) = s {
        if g.edge_count() > 7 * s {
            violated.push(Precondition::TooManyEdges {
                edges: g.edge_count(),
                limit: 7 * s,
            });
        }
    }
    if g.max_degree() > 6 {
        violated.push(Precondition::DegreeTooLarge {
            max_degree: g.max_degree(),
        });
    }
    match s {
        Some(s) if violated.is_empty() => Ok(s),
        _ => Err(ShiftError::Precondition(violated)),
    }
}

pub fn resolve(g: &Graph, p: usize) -> Result<Resolution, ShiftError> {
    resolve_with(g, p, &ResolveConfig::default())
}

pub fn resolve_with(g: &Graph, p: usize, config: &ResolveConfig) -> Result<Resolution, ShiftError> {
    check_preconditions(g, p)?;
    let mut stats = ResolveStats::default();
    if let Some(state) = init_partition(g, p)? {
        if let Some(witness) = run_shifting(state, config, &mut stats)? {
            verify_witness(g, &witness, 4, p, Mode::Independent)
                .map_err(|v| ShiftError::SoundnessAlarm(format!("shifting produced a bad witness: {v}")))?;
            return Ok(Resolution {
                outcome: Outcome::Witness { witness },
                decided_by: DecidedBy::Shifting,
                stats,
            });
        }
    }
    let outcome = match find_disjoint_independent_sets_with(g, 4, p, &config.search)? {
        Some(witness) => {
            verify_witness(g, &witness, 4, p, Mode::Independent)
                .map_err(|v| ShiftError::SoundnessAlarm(format!("exact search produced a bad witness: {v}")))?;
            Outcome::Witness { witness }
        }
        None => match certify_k7_structure(g, p) {
            Some(certificate) => Outcome::Certificate { certificate },
            None => {
                return Err(ShiftError::SoundnessAlarm(
                    "no four disjoint independent p-sets, yet the graph is not a K_7 union".into(),
                ))
            }
        },
    };
    Ok(Resolution {
        outcome,
        decided_by: DecidedBy::ExactSearch,
        stats,
    })
}

fn run_shifting(
    mut state: PartitionState<'_>,
    config: &ResolveConfig,
    stats: &mut ResolveStats,
) -> Result<Option<PackingWitness>, ShiftError> {
    let budget = config.budget.unwrap_or(10 * state.graph.order());
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    visited.insert(state.key());
    while stats.rebuilds < budget {
        let aux = build_aux_digraph(&state);
        stats.rebuilds += 1;
        stats.inaccessible_trajectory.push(aux.inaccessible().len());
        if !check_accessibility_invariant(&state, &aux) {
            return Err(ShiftError::SoundnessAlarm("accessibility invariant failed".into()));
        }
        let moves = propose_moves(&state, &aux, &config.search);
        if let Some(mv) = moves.iter().find(|m| m.completes()) {
            let done = apply_move(&state, &aux, mv)?;
            stats.moves.push(mv.kind().to_string());
            return done
                .witness()
                .map(Some)
                .ok_or_else(|| ShiftError::SoundnessAlarm(format!("{} move left a class short", mv.kind())));
        }
        let mut best: Option<(usize, PartitionState<'_>, &Move)> = None;
        for mv in &moves {
            let Ok(candidate) = apply_move(&state, &aux, mv) else {
                continue;
            };
            if !candidate.is_seed_shaped() || visited.contains(&candidate.key()) {
                continue;
            }
            let score = build_aux_digraph(&candidate).inaccessible().len();
            if best.as_ref().is_none_or(|(b, _, _)| score < *b) {
                best = Some((score, candidate, mv));
            }
        }
        let Some((_, next, mv)) = best else {
            break;
        };
        stats.moves.push(mv.kind().to_string());
        visited.insert(next.key());
        state = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::j_graph;

    fn k7e7() -> Graph {
        Graph::disjoint_union(&[Graph::complete(7), Graph::empty(7)])
    }

    fn brute_arcs(st: &PartitionState<'_>) -> [[bool; CLASSES]; CLASSES] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                i != j
                    && st.class(i).iter().any(|x| {
                        st.class(j).iter().all(|y| !st.graph().has_edge(x, y))
                    })
            })
        })
    }

    #[test]
    fn init_partition_examples() {
        let g = Graph::empty(14);
        let st = init_partition(&g, 3).unwrap().unwrap();
        assert_eq!(st.class(1).to_vec(), [0, 1, 2]);
        assert_eq!(st.class(2).to_vec(), [3, 4, 5]);
        assert_eq!(st.class(3).to_vec(), [6, 7, 8]);
        assert_eq!(st.class(4).to_vec(), [9, 10]);
        assert_eq!(st.class(0).to_vec(), [11, 12, 13]);
        assert!(st.is_seed_shaped());

        let g = k7e7();
        let st = init_partition(&g, 3).unwrap().unwrap();
        assert!((1..5).all(|i| st.class(i).iter().filter(|&v| v < 7).count() <= 1));

        let g = Graph::disjoint_union(&[Graph::complete(13), Graph::empty(1)]);
        assert!(init_partition(&g, 3).unwrap().is_none());
        assert!(init_partition(&Graph::empty(10), 3).is_err());
    }

    #[test]
    fn aux_digraph_examples() {
        let g = Graph::empty(14);
        let st = init_partition(&g, 3).unwrap().unwrap();
        let aux = build_aux_digraph(&st);
        assert!(aux.inaccessible().is_empty());
        assert!((0..5).all(|i| (0..5).all(|j| (i == j) != aux.arc(i, j).is_some())));

        let g = k7e7();
        let st = init_partition(&g, 3).unwrap().unwrap();
        let aux = build_aux_digraph(&st);
        for (i, row) in brute_arcs(&st).iter().enumerate() {
            for (j, &expected) in row.iter().enumerate() {
                assert_eq!(aux.arc(i, j).is_some(), expected);
                if let Some(x) = aux.arc(i, j) {
                    assert!(st.class(i).contains(x));
                    assert!(!g.neighbors(x).intersects(st.class(j)));
                }
            }
        }
        assert!(check_accessibility_invariant(&st, &aux));
    }

    #[test]
    fn leftover_dominating_everything_is_inaccessible() {
        // Leftover vertex 12 is adjacent to one vertex of every other class.
        let mut edges = vec![(12, 0), (12, 3), (12, 6), (12, 9)];
        edges.push((13, 1));
        let g = Graph::from_edge_list(14, &edges).unwrap();
        let classes = [
            VertexSet::from_members(14, [12]).unwrap(),
            VertexSet::from_members(14, [0, 1, 2]).unwrap(),
            VertexSet::from_members(14, [3, 4, 5]).unwrap(),
            VertexSet::from_members(14, [6, 7, 8]).unwrap(),
            VertexSet::from_members(14, [9, 10, 11, 13]).unwrap(),
        ];
        let st = PartitionState::new(&g, 3, classes, 4).unwrap();
        let aux = build_aux_digraph(&st);
        assert!((1..5).all(|j| aux.arc(0, j).is_none()));
        assert!(!aux.is_accessible(0));
        assert!(check_accessibility_invariant(&st, &aux));
    }

    #[test]
    fn accessibility_invariant_negative_control() {
        let g = Graph::empty(14);
        let st = init_partition(&g, 3).unwrap().unwrap();
        let aux = build_aux_digraph(&st);
        // Cutting every arc into the destination isolates it.
        let mut cut = aux.clone();
        for i in 0..4 {
            cut = cut.without_arc(i, 4);
        }
        assert!(!check_accessibility_invariant(&st, &cut));
    }

    #[test]
    fn solo_neighbours() {
        let g = Graph::from_edge_list(14, &[(11, 0), (12, 0), (12, 1)]).unwrap();
        let st = init_partition(&g, 3).unwrap().unwrap();
        let home = st.class_of(0);
        assert_eq!(solo_neighbor(&st, 13, home), None);
        assert_eq!(solo_neighbor(&st, 11, home), Some(0));
        if st.class_of(1) == home {
            assert_eq!(solo_neighbor(&st, 12, home), None);
        }
    }

    #[test]
    fn apply_shift_examples() {
        let g = Graph::empty(14);
        let st = init_partition(&g, 3).unwrap().unwrap();
        let next = apply_shift(&st, &[0, 4], &[11]).unwrap();
        assert_eq!(next.class(4).to_vec(), [9, 10, 11]);
        assert!(next.witness().is_some());

        let two = apply_shift(&st, &[0, 1, 4], &[11, 0]).unwrap();
        let w = two.witness().unwrap();
        verify_witness(&g, &w, 4, 3, Mode::Independent).unwrap();

        let g = Graph::from_edge_list(14, &[(11, 9)]).unwrap();
        let st = init_partition(&g, 3).unwrap().unwrap();
        assert!(matches!(
            apply_shift(&st, &[0, 4], &[11]),
            Err(ShiftError::InvalidShift(_))
        ));
        assert!(apply_shift(&st, &[0, 4], &[]).is_err());
    }

    #[test]
    fn resolve_examples() {
        let g = k7e7();
        let r = resolve(&g, 3).unwrap();
        match &r.outcome {
            Outcome::Certificate { certificate } => {
                assert_eq!(certificate.seven_cliques.len(), 1);
                assert_eq!(certificate.isolated.len(), 7);
            }
            other => panic!("expected a certificate, got {other:?}"),
        }

        let g = k7e7().without_edge(0, 1).unwrap();
        match resolve(&g, 3).unwrap().outcome {
            Outcome::Witness { witness } => {
                verify_witness(&g, &witness, 4, 3, Mode::Independent).unwrap();
                let pair = witness.sets.iter().find(|s| s.contains(0)).unwrap();
                assert!(pair.contains(1));
            }
            other => panic!("expected a witness, got {other:?}"),
        }

        let g = Graph::disjoint_union(&[Graph::complete(8), Graph::empty(7)]);
        assert!(matches!(
            resolve(&g, 3),
            Err(ShiftError::Precondition(v)) if v == vec![Precondition::DegreeTooLarge { max_degree: 7 }]
        ));
        let g = Graph::disjoint_union(&[Graph::complete(9), Graph::empty(5)]);
        assert!(matches!(
            resolve(&g, 3),
            Err(ShiftError::Precondition(v)) if v.contains(&Precondition::DegreeTooLarge { max_degree: 8 })
        ));
    }

    #[test]
    fn certify_examples() {
        let g = Graph::disjoint_union(&[Graph::complete(7), Graph::complete(7), Graph::empty(7)]);
        let cert = certify_k7_structure(&g, 4).unwrap();
        assert_eq!(cert.seven_cliques.len(), 2);
        assert_eq!(cert.verify(&g, 4), Ok(()));
        let g = Graph::disjoint_union(&[Graph::complete(6), Graph::empty(8)]);
        assert!(certify_k7_structure(&g, 3).is_none());
        assert!(certify_k7_structure(&Graph::empty(14), 3).is_none());
    }

    #[test]
    fn j_graphs_with_sevens_only_are_certified() {
        for p in 3..=5 {
            for s in (3..=3 * p - 1).step_by(3) {
                let j = j_graph(p, s).unwrap();
                let r = resolve(&j, p).unwrap();
                assert!(matches!(r.outcome, Outcome::Certificate { .. }), "p={p} s={s}");
            }
        }
    }

    #[test]
    fn double_solo_is_proposed() {
        // Leftover 12 and 13 are non-adjacent and share the solo neighbour 9
        // in the destination class.
        let g = Graph::from_edge_list(
            14,
            &[(12, 9), (13, 9), (12, 0), (12, 3), (12, 6), (13, 1), (13, 4), (13, 7), (11, 2), (11, 5), (11, 8), (11, 10)],
        )
        .unwrap();
        let classes = [
            VertexSet::from_members(14, [11, 12, 13]).unwrap(),
            VertexSet::from_members(14, [0, 1, 2]).unwrap(),
            VertexSet::from_members(14, [3, 4, 5]).unwrap(),
            VertexSet::from_members(14, [6, 7, 8]).unwrap(),
            VertexSet::from_members(14, [9, 10]).unwrap(),
        ];
        let st = PartitionState::new(&g, 3, classes, 4).unwrap();
        let aux = build_aux_digraph(&st);
        let moves = propose_moves(&st, &aux, &SearchConfig::default());
        let mv = Move::DoubleSolo { x: 12, y: 13, solo: 9, class: 4 };
        assert!(moves.contains(&mv));
        let done = apply_move(&st, &aux, &mv).unwrap();
        verify_witness(&g, &done.witness().unwrap(), 4, 3, Mode::Independent).unwrap();
    }
}
