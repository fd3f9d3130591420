//! Immutable simple undirected graphs over dense vertex labels `0..n`.
//!
//! Adjacency is one [`VertexSet`] row per vertex, so neighbourhood
//! intersections (the inner loop of every search in this crate) are word
//! operations. Every operation that "modifies" a graph returns a new one.

mod edge_list;
mod graph6;
mod vertex_set;

pub use edge_list::{parse_edge_list, parse_graph, to_edge_list, ParseError};
pub use graph6::{from_graph6, to_graph6, Graph6Error, GRAPH6_MAX_ORDER};
pub use vertex_set::{Iter as VertexIter, VertexSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex set universe {got} does not match graph order {expected}")]
    UniverseMismatch { expected: usize, got: usize },
}

/// Mutable adjacency used while assembling a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            adj: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.adj.len() && v < self.adj.len() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Makes every pair inside `vertices` adjacent.
    pub fn add_clique(&mut self, vertices: &[usize]) -> Result<(), GraphError> {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                self.add_edge(u, v)?;
            }
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        let edges = self.adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Graph {
            adj: self.adj,
            edges,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edges: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("e", &self.edges)
            .field("graph6", &String::from_utf8_lossy(&to_graph6(self)))
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            b.adj[u] = VertexSet::full(n);
            b.adj[u].remove(u);
        }
        b.build()
    }

    /// The cycle `0 − 1 − … − (n−1) − 0`; requires `n ≥ 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edge_list(n, &edges).expect("cycle edges are in range")
    }

    /// Star with centre 0 and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edge_list(leaves + 1, &edges).expect("star edges are in range")
    }

    /// Graph with exactly the listed edges; repeated and reversed pairs collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    b.adj[u].insert(v);
                    b.adj[v].insert(u);
                }
            }
        }
        b.build()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].intersection_len(set)
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.adj[v].intersects(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut others = set.clone();
            others.remove(v);
            others.is_subset(&self.adj[v])
        })
    }

    pub fn complement(&self) -> Self {
        let n = self.order();
        let full = VertexSet::full(n);
        let mut b = GraphBuilder::new(n);
        for v in 0..n {
            let mut row = full.difference(&self.adj[v]);
            row.remove(v);
            b.adj[v] = row;
        }
        b.build()
    }

    /// Disjoint union with vertices of `gs[i]` shifted by the orders of `gs[..i]`.
    pub fn disjoint_union(gs: &[Graph]) -> Self {
        let n = gs.iter().map(Graph::order).sum();
        let mut b = GraphBuilder::new(n);
        let mut offset = 0;
        for g in gs {
            for (u, v) in g.edges() {
                b.adj[u + offset].insert(v + offset);
                b.adj[v + offset].insert(u + offset);
            }
            offset += g.order();
        }
        b.build()
    }

    /// `g ∨ h`: `g` occupies `0..n(g)`, `h` follows, and every cross pair is joined.
    pub fn join(g: &Graph, h: &Graph) -> Self {
        let (a, c) = (g.order(), h.order());
        let mut b = GraphBuilder::new(a + c);
        for (u, v) in g.edges() {
            b.adj[u].insert(v);
            b.adj[v].insert(u);
        }
        for (u, v) in h.edges() {
            b.adj[u + a].insert(v + a);
            b.adj[v + a].insert(u + a);
        }
        for u in 0..a {
            for v in a..a + c {
                b.adj[u].insert(v);
                b.adj[v].insert(u);
            }
        }
        b.build()
    }

    fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        if set.universe() != self.order() {
            return Err(GraphError::UniverseMismatch {
                expected: self.order(),
                got: set.universe(),
            });
        }
        Ok(())
    }

    /// Subgraph induced by `set`, relabelled `0..|set|` in increasing order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Self, GraphError> {
        self.check_set(set)?;
        let members = set.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(members.len());
        for (i, &u) in members.iter().enumerate() {
            for w in self.adj[u].iter() {
                let j = index[w];
                if j != usize::MAX {
                    b.adj[i].insert(j);
                }
            }
        }
        Ok(b.build())
    }

    /// `e[A, B]`: edges with one end in each of the disjoint sets.
    pub fn cross_edge_count(&self, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
        self.check_set(a)?;
        self.check_set(b)?;
        if let Some(v) = a.intersection(b).first() {
            return Err(GraphError::Overlap(v));
        }
        Ok(a.iter().map(|v| self.adj[v].intersection_len(b)).sum())
    }

    /// Edge count of the subgraph induced by `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).sum::<usize>() / 2
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = VertexSet::empty(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut b = GraphBuilder { adj: self.adj.clone() };
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
            }
        }
        let mut b = GraphBuilder { adj: self.adj.clone() };
        b.remove_edge(u, v);
        Ok(b.build())
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order());
        let mut b = GraphBuilder::new(self.order());
        for (u, v) in self.edges() {
            b.adj[perm[u]].insert(perm[v]);
            b.adj[perm[v]].insert(perm[u]);
        }
        b.build()
    }
}
