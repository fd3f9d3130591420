//! Equitable colourings: proper colourings whose class sizes differ by at
//! most one.
//!
//! [`equitable_coloring`] is the standard constructive bounded-degree
//! algorithm for `Δ+1` colours: edges are inserted one at a time, and
//! whenever a vertex must change colour the class sizes are rebalanced
//! by moving witnesses along paths of an auxiliary digraph on the colour
//! classes. The bookkeeping mirrors networkx's
//! `equitable_color`. Every result is re-verified before it is returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::packing::SearchConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquitableColoring {
    pub classes: Vec<VertexSet>,
}

impl EquitableColoring {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(VertexSet::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("maximum degree {max_degree} needs more than {colors} colours")]
    DegreeTooLarge { max_degree: usize, colors: usize },
    #[error("at least one colour is required")]
    NoColors,
    #[error("{size} vertices exceed the exhaustive-search guard of {guard}")]
    SizeGuard { size: usize, guard: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringViolation {
    #[error("classes do not partition the vertex set")]
    NotPartition,
    #[error("edge {0}-{1} lies inside a class")]
    Improper(usize, usize),
    #[error("class sizes range from {min} to {max}")]
    Unbalanced { min: usize, max: usize },
}

pub fn verify_equitable(g: &Graph, c: &EquitableColoring) -> Result<(), ColoringViolation> {
    let n = g.order();
    let mut seen = VertexSet::empty(n);
    for class in &c.classes {
        if class.universe() != n || class.intersects(&seen) {
            return Err(ColoringViolation::NotPartition);
        }
        seen = seen.union(class);
    }
    if seen.len() != n {
        return Err(ColoringViolation::NotPartition);
    }
    for class in &c.classes {
        for u in class.iter() {
            if let Some(v) = g.neighbors(u).intersection(class).first() {
                return Err(ColoringViolation::Improper(u.min(v), u.max(v)));
            }
        }
    }
    let sizes = c.class_sizes();
    let (min, max) = (
        sizes.iter().copied().min().unwrap_or(0),
        sizes.iter().copied().max().unwrap_or(0),
    );
    if max > min + 1 {
        return Err(ColoringViolation::Unbalanced { min, max });
    }
    Ok(())
}

/// An equitable colouring with `colors` classes, which exists whenever
/// `Δ(g) < colors`.
pub fn equitable_coloring(g: &Graph, colors: usize) -> Result<EquitableColoring, ColoringError> {
    if colors == 0 {
        return Err(ColoringError::NoColors);
    }
    let max_degree = g.max_degree();
    if max_degree >= colors {
        return Err(ColoringError::DegreeTooLarge { max_degree, colors });
    }
    let n = g.order();
    let colour_of = if n == 0 {
        Vec::new()
    } else {
        let mut state = Balancer::new(g, colors);
        state.run(g)?;
        state.colour[..n].to_vec()
    };
    let mut classes = vec![VertexSet::empty(n); colors];
    for (v, &c) in colour_of.iter().enumerate() {
        classes[c].insert(v);
    }
    let coloring = EquitableColoring { classes };
    verify_equitable(g, &coloring).map_err(|e| ColoringError::Internal(e.to_string()))?;
    Ok(coloring)
}

type Step = Result<(), ColoringError>;

fn stuck(what: &str) -> ColoringError {
    ColoringError::Internal(format!("rebalancing failed: {what}"))
}

/// Incremental state over the padded graph.
struct Balancer {
    colors: usize,
    /// Neighbour lists of the edges inserted so far.
    adj: Vec<Vec<usize>>,
    colour: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// `nbr[v * colors + c]`: neighbours of `v` coloured `c`.
    nbr: Vec<usize>,
    /// `witness[a * colors + b]`: vertices of class `a` with no neighbour in class `b`.
    witness: Vec<i64>,
}

impl Balancer {
    fn new(g: &Graph, colors: usize) -> Self {
        let n = g.order();
        let padded = n.div_ceil(colors) * colors;
        let colour: Vec<usize> = (0..padded).map(|v| v % colors).collect();
        let mut members = vec![Vec::new(); colors];
        for (v, &c) in colour.iter().enumerate() {
            members[c].push(v);
        }
        let mut witness = vec![0i64; colors * colors];
        for a in 0..colors {
            for b in 0..colors {
                witness[a * colors + b] = members[a].len() as i64;
            }
        }
        Self {
            colors,
            adj: vec![Vec::new(); padded],
            colour,
            members,
            nbr: vec![0; padded * colors],
            witness,
        }
    }

    fn n(&self, v: usize, c: usize) -> usize {
        self.nbr[v * self.colors + c]
    }

    fn h(&self, a: usize, b: usize) -> i64 {
        self.witness[a * self.colors + b]
    }

    fn h_add(&mut self, a: usize, b: usize, d: i64) {
        self.witness[a * self.colors + b] += d;
    }

    fn run(&mut self, g: &Graph) -> Step {
        let n = g.order();
        let padded = self.colour.len();
        let r1 = self.colors;
        for u in 0..padded {
            let later: Vec<usize> = if u < n {
                g.neighbors(u).iter().filter(|&v| v > u).collect()
            } else {
                (u + 1..padded).collect()
            };
            for v in later {
                self.adj[u].push(v);
                self.adj[v].push(u);
                let (cu, cv) = (self.colour[u], self.colour[v]);
                self.nbr[u * r1 + cv] += 1;
                self.nbr[v * r1 + cu] += 1;
                if cu != cv {
                    if self.n(u, cv) == 1 {
                        self.h_add(cu, cv, -1);
                    }
                    if self.n(v, cu) == 1 {
                        self.h_add(cv, cu, -1);
                    }
                }
            }
            let x = self.colour[u];
            if self.n(u, x) != 0 {
                let y = (0..r1)
                    .find(|&k| self.n(u, k) == 0)
                    .ok_or_else(|| stuck("no free colour"))?;
                self.change_colour(u, x, y);
                self.procedure_p(x, y, vec![false; r1])?;
            }
        }
        Ok(())
    }

    fn change_colour(&mut self, u: usize, x: usize, y: usize) {
        debug_assert!(self.colour[u] == x && x != y);
        self.colour[u] = y;
        for k in 0..self.colors {
            if self.n(u, k) == 0 {
                self.h_add(x, k, -1);
                self.h_add(y, k, 1);
            }
        }
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            self.nbr[v * self.colors + x] -= 1;
            self.nbr[v * self.colors + y] += 1;
            let cv = self.colour[v];
            if self.n(v, x) == 0 {
                self.h_add(cv, x, 1);
            }
            if self.n(v, y) == 1 {
                self.h_add(cv, y, -1);
            }
        }
        let pos = self.members[x].iter().position(|&w| w == u).expect("member");
        self.members[x].remove(pos);
        self.members[y].push(u);
    }

    /// Moves one witness along each arc of `next` from `src` until `dst`.
    fn move_witnesses(&mut self, src: usize, dst: usize, next: &[Option<usize>]) -> Step {
        let mut x = src;
        while x != dst {
            let y = next[x].ok_or_else(|| stuck("broken witness path"))?;
            let w = *self.members[x]
                .iter()
                .find(|&&w| self.n(w, y) == 0)
                .ok_or_else(|| stuck("missing witness"))?;
            self.change_colour(w, x, y);
            x = y;
        }
        Ok(())
    }

    /// Restores equal class sizes after `minus` lost a vertex to `plus`.
    fn procedure_p(&mut self, minus: usize, plus: usize, mut excluded: Vec<bool>) -> Step {
        let r1 = self.colors;
        let mut accessible = vec![false; r1];
        let mut next: Vec<Option<usize>> = vec![None; r1];
        let mut order = Vec::new();
        let mut marked = vec![false; r1];
        marked[minus] = true;
        let mut queue = vec![minus];
        let mut head = 0;
        while head < queue.len() {
            let pop = queue[head];
            head += 1;
            accessible[pop] = true;
            order.push(pop);
            let layer: Vec<usize> = (0..r1)
                .filter(|&k| self.h(k, pop) > 0 && !accessible[k] && !excluded[k] && !marked[k])
                .collect();
            for &k in &layer {
                next[k] = Some(pop);
                marked[k] = true;
            }
            queue.extend(layer);
        }
        let b = r1 - order.len();

        if accessible[plus] {
            return self.move_witnesses(plus, minus, &next);
        }

        let mut terminal = vec![false; r1];
        let mut terminal_found = 0;
        for &w1 in order.iter().rev() {
            let mut has_solo = false;
            let candidates = self.members[w1].clone();
            'vertices: for v in candidates {
                let Some(x) = (0..r1).rfind(|&u| self.n(v, u) == 0 && accessible[u] && u != w1)
                else {
                    continue;
                };
                for xp in 0..r1 {
                    if self.n(v, xp) == 0 || accessible[xp] {
                        continue;
                    }
                    let solo = self.adj[v]
                        .iter()
                        .copied()
                        .find(|&y| self.colour[y] == xp && self.n(y, w1) == 1);
                    if let Some(y) = solo {
                        self.change_colour(v, w1, x);
                        self.move_witnesses(x, minus, &next)?;
                        self.change_colour(y, xp, w1);
                        let mut inner = excluded.clone();
                        for k in 0..r1 {
                            inner[k] |= accessible[k];
                        }
                        self.procedure_p(xp, plus, inner)?;
                        has_solo = true;
                        break 'vertices;
                    }
                }
            }
            if has_solo {
                return Ok(());
            }
            terminal[w1] = true;
            terminal_found += 1;
            if terminal_found == b {
                return self.second_case(minus, plus, &accessible, &terminal, &next, &mut excluded);
            }
        }
        Err(stuck("no terminal configuration"))
    }

    fn second_case(
        &mut self,
        minus: usize,
        plus: usize,
        accessible: &[bool],
        terminal: &[bool],
        next: &[Option<usize>],
        excluded: &mut [bool],
    ) -> Step {
        let r1 = self.colors;
        // Classes reachable from `plus`.
        let mut reach = vec![false; r1];
        let mut forward: Vec<Option<usize>> = vec![None; r1];
        let mut marked = vec![false; r1];
        marked[plus] = true;
        let mut queue = vec![plus];
        let mut head = 0;
        while head < queue.len() {
            let pop = queue[head];
            head += 1;
            reach[pop] = true;
            let layer: Vec<usize> = (0..r1)
                .filter(|&k| self.h(pop, k) > 0 && !reach[k] && !marked[k])
                .collect();
            for &k in &layer {
                forward[pop] = Some(k);
                marked[k] = true;
            }
            queue.extend(layer);
        }

        let mut scan: Vec<usize> = self.members[plus].clone();
        for k in (0..r1).filter(|&k| reach[k]) {
            scan.extend(self.members[k].iter().copied());
        }
        let mut covered = vec![false; self.colour.len()];
        let mut solo_owner: Vec<Option<usize>> = vec![None; self.colour.len()];
        for z in scan {
            if covered[z] || !reach[self.colour[z]] {
                continue;
            }
            covered[z] = true;
            for &w in &self.adj[z] {
                covered[w] = true;
            }
            let nbrs = self.adj[z].clone();
            for w in nbrs {
                let cw = self.colour[w];
                if !(terminal[cw] && self.n(z, cw) == 1) {
                    continue;
                }
                let Some(z1) = solo_owner[w] else {
                    solo_owner[w] = Some(z);
                    continue;
                };
                let zc = self.colour[z1];
                self.move_witnesses(cw, minus, next)?;
                self.move_witnesses(plus, zc, &forward)?;
                self.change_colour(z1, zc, cw);
                let w_plus = (0..r1)
                    .find(|&k| self.n(w, k) == 0 && !accessible[k])
                    .ok_or_else(|| stuck("no class outside the accessible set"))?;
                self.change_colour(w, cw, w_plus);
                for k in 0..r1 {
                    if k != cw && !reach[k] {
                        excluded[k] = true;
                    }
                }
                return self.procedure_p(cw, w_plus, excluded.to_vec());
            }
        }
        Err(stuck("no shared solo neighbour"))
    }
}

/// Outcome of the exhaustive equitable-colouring search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ExactColoring {
    Found { coloring: EquitableColoring },
    None { biclique: Option<BicliqueCertificate> },
}

/// Two disjoint `r`-sets with every cross pair adjacent: a copy of `K_{r,r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueCertificate {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl BicliqueCertificate {
    pub fn verify(&self, g: &Graph, r: usize) -> bool {
        self.left.len() == r
            && self.right.len() == r
            && self.left.is_disjoint(&self.right)
            && self.left.iter().all(|u| self.right.is_subset(g.neighbors(u)))
    }
}

/// Exhaustive search for an equitable `r`-colouring. When none exists and
/// `r ≤ 4` is odd, `Δ(g) ≤ r` and `g` is `r`-colourable, a `K_{r,r}`
/// subgraph is located and returned as a certificate.
pub fn equitable_coloring_exact(
    g: &Graph,
    r: usize,
    config: &SearchConfig,
) -> Result<ExactColoring, ColoringError> {
    if r == 0 {
        return Err(ColoringError::NoColors);
    }
    let n = g.order();
    if n > config.guard_n {
        return Err(ColoringError::SizeGuard {
            size: n,
            guard: config.guard_n,
        });
    }
    let q = n / r;
    let capacity: Vec<usize> = (0..r).map(|c| if c < n % r { q + 1 } else { q }).collect();
    let mut colour = vec![usize::MAX; n];
    let mut sizes = vec![0; r];
    if assign_equitable(g, 0, &capacity, &mut colour, &mut sizes) {
        let mut classes = vec![VertexSet::empty(n); r];
        for (v, &c) in colour.iter().enumerate() {
            classes[c].insert(v);
        }
        let coloring = EquitableColoring { classes };
        verify_equitable(g, &coloring).map_err(|e| ColoringError::Internal(e.to_string()))?;
        return Ok(ExactColoring::Found { coloring });
    }
    let biclique = if r <= 4 && r % 2 == 1 && g.max_degree() <= r && is_colourable(g, r) {
        find_biclique(g, r)
    } else {
        None
    };
    Ok(ExactColoring::None { biclique })
}

fn assign_equitable(
    g: &Graph,
    v: usize,
    capacity: &[usize],
    colour: &mut [usize],
    sizes: &mut [usize],
) -> bool {
    if v == colour.len() {
        return true;
    }
    for c in 0..capacity.len() {
        if sizes[c] == capacity[c] {
            continue;
        }
        // Empty classes of equal capacity are interchangeable: use the first.
        if sizes[c] == 0 && (0..c).any(|d| sizes[d] == 0 && capacity[d] == capacity[c]) {
            continue;
        }
        if g.neighbors(v).iter().any(|w| w < v && colour[w] == c) {
            continue;
        }
        colour[v] = c;
        sizes[c] += 1;
        if assign_equitable(g, v + 1, capacity, colour, sizes) {
            return true;
        }
        sizes[c] -= 1;
        colour[v] = usize::MAX;
    }
    false
}

/// Whether `g` has a proper colouring with `r` colours.
pub fn is_colourable(g: &Graph, r: usize) -> bool {
    fn go(g: &Graph, v: usize, r: usize, used: usize, colour: &mut [usize]) -> bool {
        if v == colour.len() {
            return true;
        }
        for c in 0..r.min(used + 1) {
            if g.neighbors(v).iter().any(|w| w < v && colour[w] == c) {
                continue;
            }
            colour[v] = c;
            if go(g, v + 1, r, used.max(c + 1), colour) {
                return true;
            }
        }
        colour[v] = usize::MAX;
        false
    }
    let mut colour = vec![usize::MAX; g.order()];
    go(g, 0, r, 0, &mut colour)
}

/// Some `K_{r,r}` subgraph, found by enumerating `r`-sets of vertices of
/// degree at least `r` and intersecting their neighbourhoods.
pub fn find_biclique(g: &Graph, r: usize) -> Option<BicliqueCertificate> {
    let n = g.order();
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= r).collect();
    fn choose(
        g: &Graph,
        eligible: &[usize],
        start: usize,
        r: usize,
        left: &mut Vec<usize>,
        common: VertexSet,
    ) -> Option<BicliqueCertificate> {
        if common.len() < r {
            return None;
        }
        if left.len() == r {
            let n = g.order();
            let right: Vec<usize> = common.iter().take(r).collect();
            return Some(BicliqueCertificate {
                left: VertexSet::from_members(n, left.iter().copied()).expect("in range"),
                right: VertexSet::from_members(n, right).expect("in range"),
            });
        }
        for i in start..eligible.len() {
            let v = eligible[i];
            left.push(v);
            let found = choose(g, eligible, i + 1, r, left, common.intersection(g.neighbors(v)));
            left.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    if r == 0 {
        return None;
    }
    choose(g, &eligible, 0, r, &mut Vec::new(), VertexSet::full(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(c: &EquitableColoring) -> Vec<usize> {
        let mut s = c.class_sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    #[test]
    fn bounded_degree_examples() {
        let c = equitable_coloring(&Graph::complete(4), 4).unwrap();
        assert_eq!(sizes(&c), [1, 1, 1, 1]);
        let c = equitable_coloring(&Graph::cycle(5), 3).unwrap();
        assert_eq!(sizes(&c), [2, 2, 1]);
        let c = equitable_coloring(&Graph::empty(10), 3).unwrap();
        assert_eq!(sizes(&c), [4, 3, 3]);
        let c = equitable_coloring(&Graph::empty(0), 3).unwrap();
        assert_eq!(sizes(&c), [0, 0, 0]);
        assert_eq!(
            equitable_coloring(&Graph::complete(4), 3),
            Err(ColoringError::DegreeTooLarge { max_degree: 3, colors: 3 })
        );
    }

    #[test]
    fn dense_bounded_degree_families() {
        // Disjoint K_{r,r}'s and K_{r+1}'s are the tight cases.
        for r in 2..=6 {
            let parts: Vec<Graph> = (0..4)
                .map(|i| {
                    if i % 2 == 0 {
                        Graph::complete(r + 1)
                    } else {
                        crate::constructions::turan_graph(2 * r, 2).unwrap()
                    }
                })
                .collect();
            let g = Graph::disjoint_union(&parts);
            let c = equitable_coloring(&g, r + 1).unwrap();
            verify_equitable(&g, &c).unwrap();
        }
    }

    #[test]
    fn exact_examples() {
        let config = SearchConfig::default();
        // K_5 minus one edge: the two non-adjacent vertices share a class.
        let g = Graph::complete(5).without_edge(0, 1).unwrap();
        match equitable_coloring_exact(&g, 4, &config).unwrap() {
            ExactColoring::Found { coloring } => assert_eq!(sizes(&coloring), [2, 1, 1, 1]),
            other => panic!("expected a colouring, got {other:?}"),
        }
        let k33 = crate::constructions::turan_graph(6, 2).unwrap();
        match equitable_coloring_exact(&k33, 3, &config).unwrap() {
            ExactColoring::None { biclique: Some(cert) } => assert!(cert.verify(&k33, 3)),
            other => panic!("expected a certificate, got {other:?}"),
        }
        match equitable_coloring_exact(&Graph::empty(6), 3, &config).unwrap() {
            ExactColoring::Found { coloring } => assert_eq!(sizes(&coloring), [2, 2, 2]),
            other => panic!("expected a colouring, got {other:?}"),
        }
        assert!(matches!(
            equitable_coloring_exact(&Graph::empty(65), 3, &config),
            Err(ColoringError::SizeGuard { .. })
        ));
    }

    #[test]
    fn verifier_rejects_bad_colourings() {
        let g = Graph::cycle(4);
        let c = |sets: &[&[usize]]| EquitableColoring {
            classes: sets
                .iter()
                .map(|s| VertexSet::from_members(4, s.iter().copied()).unwrap())
                .collect(),
        };
        assert_eq!(verify_equitable(&g, &c(&[&[0, 2], &[1, 3]])), Ok(()));
        assert_eq!(
            verify_equitable(&g, &c(&[&[0, 1], &[2, 3]])),
            Err(ColoringViolation::Improper(0, 1))
        );
        assert_eq!(
            verify_equitable(&Graph::empty(4), &c(&[&[0, 1, 2], &[3]])),
            Err(ColoringViolation::Unbalanced { min: 1, max: 3 })
        );
        assert_eq!(
            verify_equitable(&g, &c(&[&[0, 2], &[1]])),
            Err(ColoringViolation::NotPartition)
        );
    }

    #[test]
    fn colourability() {
        assert!(is_colourable(&Graph::cycle(5), 3));
        assert!(!is_colourable(&Graph::cycle(5), 2));
        assert!(!is_colourable(&Graph::complete(4), 3));
        assert!(find_biclique(&Graph::cycle(6), 2).is_none());
        assert!(find_biclique(&Graph::cycle(4), 2).is_some());
    }
}
