//! Search kernels over graphs of at most 64 vertices, one `u64` per row.

use crate::graph::{Graph, VertexSet};

pub(crate) const MAX_LOCAL: usize = 64;

#[inline]
fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !0u64 << (v + 1)
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// A vertex subset of a host graph re-indexed to `0..m`.
#[derive(Debug, Clone)]
pub(crate) struct Local {
    pub global: Vec<usize>,
    pub adj: Vec<u64>,
    /// Greedy partition into cliques; an independent set meets each part at most once.
    cover: Vec<u64>,
}

impl Local {
    pub fn new(g: &Graph, set: &VertexSet) -> Self {
        let global = set.to_vec();
        assert!(global.len() <= MAX_LOCAL, "local search limited to 64 vertices");
        let adj = global
            .iter()
            .map(|&u| {
                global
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| g.has_edge(u, w))
                    .fold(0u64, |m, (i, _)| m | bit(i))
            })
            .collect();
        let mut local = Self {
            global,
            adj,
            cover: Vec::new(),
        };
        local.cover = local.clique_cover(local.all());
        local
    }

    pub fn len(&self) -> usize {
        self.global.len()
    }

    pub fn all(&self) -> u64 {
        match self.len() {
            64 => u64::MAX,
            m => bit(m) - 1,
        }
    }

    pub fn to_global(&self, mask: u64, universe: usize) -> VertexSet {
        VertexSet::from_members(universe, bits(mask).map(|i| self.global[i]))
            .expect("local vertices lie in the host")
    }

    fn clique_cover(&self, within: u64) -> Vec<u64> {
        let mut parts: Vec<u64> = Vec::new();
        for v in bits(within) {
            match parts.iter_mut().find(|c| **c & !self.adj[v] == 0) {
                Some(c) => *c |= bit(v),
                None => parts.push(bit(v)),
            }
        }
        parts
    }

    /// Largest independent set, by branch and bound with a clique-cover bound.
    pub fn max_independent(&self) -> u64 {
        let mut best = 0u64;
        self.grow_independent(0, self.all(), &mut best);
        best
    }

    fn grow_independent(&self, chosen: u64, cand: u64, best: &mut u64) {
        if cand == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        let have = chosen.count_ones() as usize;
        let cover = self.clique_cover(cand);
        if have + cover.len() <= best.count_ones() as usize {
            return;
        }
        // Branch on a vertex of minimum degree within the candidates.
        let v = bits(cand)
            .min_by_key(|&v| (self.adj[v] & cand).count_ones())
            .expect("cand nonempty");
        self.grow_independent(chosen | bit(v), cand & !self.adj[v] & !bit(v), best);
        // Excluding v only helps if some neighbour can take its place.
        if self.adj[v] & cand != 0 {
            self.grow_independent(chosen, cand & !bit(v), best);
        }
    }

    /// Pairwise-disjoint independent sets with the given sizes, or `None`.
    ///
    /// `targets` must be non-increasing.
    pub fn pack(&self, targets: &[usize]) -> Option<Vec<u64>> {
        debug_assert!(targets.windows(2).all(|w| w[0] >= w[1]));
        let width = targets.len();
        let targets: Vec<usize> = targets.iter().copied().filter(|&t| t > 0).collect();
        let mut packer = Packer {
            local: self,
            targets: &targets,
            sets: vec![0; targets.len()],
            used: 0,
        };
        packer.place(0).then_some(packer.sets).map(|mut sets| {
            sets.resize(width, 0);
            sets
        })
    }
}

struct Packer<'a> {
    local: &'a Local,
    targets: &'a [usize],
    sets: Vec<u64>,
    used: u64,
}

impl Packer<'_> {
    fn place(&mut self, j: usize) -> bool {
        if j == self.targets.len() {
            return true;
        }
        let mut cand = self.local.all() & !self.used;
        if j > 0 && self.targets[j] == self.targets[j - 1] {
            // Equal-size sets are interchangeable: order them by least member.
            let prev_min = self.sets[j - 1].trailing_zeros() as usize;
            cand &= above(prev_min);
        }
        self.extend(j, 0, cand, self.targets[j])
    }

    fn extend(&mut self, j: usize, set: u64, cand: u64, need: usize) -> bool {
        if need == 0 {
            self.sets[j] = set;
            self.used |= set;
            if self.place(j + 1) {
                return true;
            }
            self.used &= !set;
            self.sets[j] = 0;
            return false;
        }
        if (cand.count_ones() as usize) < need {
            return false;
        }
        let later = &self.targets[j + 1..];
        let total: usize = need + later.iter().sum::<usize>();
        let free = self.local.all() & !self.used & !set;
        let open = 1 + later.len();
        let capacity: usize = self
            .local
            .cover
            .iter()
            .map(|c| ((c & free).count_ones() as usize).min(open))
            .sum();
        if capacity < total {
            return false;
        }
        for v in bits(cand) {
            let next = cand & above(v) & !self.local.adj[v];
            if self.extend(j, set | bit(v), next, need - 1) {
                return true;
            }
        }
        false
    }
}
