//! Extremal and witness graph families.
//!
//! Vertex labelling is fixed so that graph6 output is reproducible:
//! cliques come first in descending order of size, then stars (centre
//! first) and matchings, then isolated vertices. Joins place the left
//! operand first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{choose2, hub_expression, turan_edges, FormulaError};
use crate::graph::{Graph, GraphBuilder};
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("J undefined here: p={p}, s={s} gives a negative component count")]
    JUndefined { p: usize, s: usize },
    #[error("invalid parameters for {family}: {reason}")]
    Invalid { family: &'static str, reason: String },
    #[error(transparent)]
    Arithmetic(#[from] FormulaError),
}

fn invalid(family: &'static str, reason: impl Into<String>) -> ConstructionError {
    ConstructionError::Invalid {
        family,
        reason: reason.into(),
    }
}

/// The small-host witnesses used for hosts of order `4p+1 … 4p+4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Witness {
    /// `K_6 ∪ (4p−5)K_1`, 15 edges.
    G1,
    /// `K_7 ∪ (4p−5)K_1`, 21 edges.
    G2,
    /// `K_8 ∪ (4p−5)K_1`, 28 edges.
    G3,
    /// `K_8 ∪ K_{1,7}` on 16 vertices, 35 edges; only meaningful for `p = 3`.
    G4,
    /// `K_9 ∪ (4p−5)K_1`, 36 edges.
    G5,
}

impl std::str::FromStr for Witness {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "G1" => Ok(Self::G1),
            "G2" => Ok(Self::G2),
            "G3" => Ok(Self::G3),
            "G4" => Ok(Self::G4),
            "G5" => Ok(Self::G5),
            _ => Err(invalid("witness", format!("unknown witness {s:?}"))),
        }
    }
}

/// Identifies a concrete graph in one of the families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ConstructionId {
    /// Balanced complete multipartite graph `T(n, parts)`.
    Turan { n: usize, parts: usize },
    /// `K_{k−1} ∨ T(n−k+1, p−1)`.
    HubJoin { k: usize, n: usize, p: usize },
    /// Union of `K_7`s and `K_8`s plus isolated vertices on `4p−1+s` vertices.
    J { p: usize, s: usize },
    /// `K_{k+1} ∪ (kp−k−1)K_1`.
    TightA { k: usize, p: usize },
    /// `K_{1,x} ∪ (kp−p−x+1)K_2 ∪ (2p−kp+x−3)K_1`.
    TightB { k: usize, p: usize, x: usize },
    Witness { which: Witness, p: usize },
    /// Disjoint cliques of the listed orders followed by isolated vertices.
    CliqueUnion { cliques: Vec<usize>, isolated: usize },
    Complement { of: Box<ConstructionId> },
}

/// What a construction is certified to avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    /// The graph itself contains no copy of the pattern.
    Free { pattern: Pattern },
    /// The complement contains no copy of the pattern, i.e. the graph has
    /// no `copies` disjoint independent `order`-sets.
    ComplementFree { pattern: Pattern },
}

impl Claim {
    fn flipped(self) -> Self {
        match self {
            Claim::Free { pattern } => Claim::ComplementFree { pattern },
            Claim::ComplementFree { pattern } => Claim::Free { pattern },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionDescriptor {
    pub id: ConstructionId,
    pub order: usize,
    pub expected_edges: u64,
    pub claim: Option<Claim>,
}

impl ConstructionId {
    pub fn build(&self) -> Result<Graph, ConstructionError> {
        match *self {
            ConstructionId::Turan { n, parts } => turan_graph(n, parts),
            ConstructionId::HubJoin { k, n, p } => hub_join(k, n, p),
            ConstructionId::J { p, s } => j_graph(p, s),
            ConstructionId::TightA { k, p } => tight_family_a(k, p),
            ConstructionId::TightB { k, p, x } => tight_family_b(k, p, x),
            ConstructionId::Witness { which, p } => small_host_witness(which, p),
            ConstructionId::CliqueUnion {
                ref cliques,
                isolated,
            } => Ok(clique_union(cliques, isolated)),
            ConstructionId::Complement { ref of } => Ok(of.build()?.complement()),
        }
    }

    /// Order, edge count and claim computed arithmetically, without
    /// building the graph.
    pub fn descriptor(&self) -> Result<ConstructionDescriptor, ConstructionError> {
        let (order, expected_edges, claim) = match *self {
            ConstructionId::Turan { n, parts } => {
                check_turan(n, parts)?;
                let claim = Claim::Free {
                    pattern: Pattern::clique(parts + 1),
                };
                (n, turan_edges(n as u64, parts as u64)?, Some(claim))
            }
            ConstructionId::HubJoin { k, n, p } => {
                check_hub_join(k, n, p)?;
                let claim = Claim::Free {
                    pattern: Pattern::new(k, p),
                };
                (n, hub_expression(n as u64, k as u64, p as u64)?, Some(claim))
            }
            ConstructionId::J { p, s } => {
                j_components(p, s)?;
                let claim = Claim::ComplementFree {
                    pattern: Pattern::new(4, p),
                };
                (4 * p - 1 + s, 7 * s as u64, Some(claim))
            }
            ConstructionId::TightA { k, p } => {
                check_tight_a(k, p)?;
                let claim = Claim::ComplementFree {
                    pattern: Pattern::new(k, p),
                };
                (k * p, choose2(k as u64 + 1)?, Some(claim))
            }
            ConstructionId::TightB { k, p, x } => {
                check_tight_b(k, p, x)?;
                let claim = Claim::ComplementFree {
                    pattern: Pattern::new(k, p),
                };
                (k * p, (k * p - p + 1) as u64, Some(claim))
            }
            ConstructionId::Witness { which, p } => {
                let (order, edges) = witness_shape(which, p)?;
                let claim = Claim::ComplementFree {
                    pattern: Pattern::new(4, p),
                };
                (order, edges, Some(claim))
            }
            ConstructionId::CliqueUnion {
                ref cliques,
                isolated,
            } => {
                let mut edges = 0u64;
                for &c in cliques {
                    edges = edges
                        .checked_add(choose2(c as u64)?)
                        .ok_or(FormulaError::Overflow)?;
                }
                (cliques.iter().sum::<usize>() + isolated, edges, None)
            }
            ConstructionId::Complement { ref of } => {
                let inner = of.descriptor()?;
                let total = choose2(inner.order as u64)?;
                (
                    inner.order,
                    total - inner.expected_edges,
                    inner.claim.map(Claim::flipped),
                )
            }
        };
        Ok(ConstructionDescriptor {
            id: self.clone(),
            order,
            expected_edges,
            claim,
        })
    }

    pub fn complement(self) -> Self {
        match self {
            ConstructionId::Complement { of } => *of,
            other => ConstructionId::Complement { of: Box::new(other) },
        }
    }
}

fn clique_union(cliques: &[usize], isolated: usize) -> Graph {
    let mut sorted = cliques.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let n = sorted.iter().sum::<usize>() + isolated;
    let mut b = GraphBuilder::new(n);
    let mut offset = 0;
    for c in sorted {
        let members: Vec<usize> = (offset..offset + c).collect();
        b.add_clique(&members).expect("clique within range");
        offset += c;
    }
    b.build()
}

fn check_turan(n: usize, parts: usize) -> Result<(), ConstructionError> {
    if parts < 1 {
        return Err(invalid("turan", format!("need at least one part (n={n})")));
    }
    Ok(())
}

/// Balanced complete `parts`-partite graph; vertex `v` lies in part `v mod parts`.
pub fn turan_graph(n: usize, parts: usize) -> Result<Graph, ConstructionError> {
    check_turan(n, parts)?;
    Ok(Graph::from_fn(n, |u, v| u % parts != v % parts))
}

fn check_hub_join(k: usize, n: usize, p: usize) -> Result<(), ConstructionError> {
    if k < 1 || p < 2 || n + 1 < k {
        return Err(invalid(
            "hub-join",
            format!("need k ≥ 1, p ≥ 2, n ≥ k−1 (k={k}, n={n}, p={p})"),
        ));
    }
    Ok(())
}

/// `K_{k−1} ∨ T(n−k+1, p−1)`: the hub occupies `0..k−1`.
pub fn hub_join(k: usize, n: usize, p: usize) -> Result<Graph, ConstructionError> {
    check_hub_join(k, n, p)?;
    let hub = Graph::complete(k - 1);
    let rest = turan_graph(n - (k - 1), p - 1)?;
    Ok(Graph::join(&hub, &rest))
}

/// Component counts `(k8, k7, isolated)` of the `J` graph.
fn j_components(p: usize, s: usize) -> Result<(usize, usize, usize), ConstructionError> {
    if p < 3 || s < 1 || s > 3 * p - 1 {
        return Err(invalid(
            "J",
            format!("need p ≥ 3 and 1 ≤ s ≤ 3p−1 (p={p}, s={s})"),
        ));
    }
    let undefined = ConstructionError::JUndefined { p, s };
    let n = 4 * p - 1 + s;
    let (k8, k7) = match s % 3 {
        0 => (0, s / 3),
        1 if s >= 4 => (1, (s - 4) / 3),
        2 if s >= 8 => (2, (s - 8) / 3),
        _ => return Err(undefined),
    };
    let used = 8 * k8 + 7 * k7;
    let isolated = n.checked_sub(used).ok_or(undefined)?;
    Ok((k8, k7, isolated))
}

/// Union of `K_8`s and `K_7`s with `7s` edges on `4p−1+s` vertices whose
/// complement has no four disjoint `K_p`.
pub fn j_graph(p: usize, s: usize) -> Result<Graph, ConstructionError> {
    let (k8, k7, isolated) = j_components(p, s)?;
    let mut cliques = vec![8; k8];
    cliques.extend(std::iter::repeat_n(7, k7));
    Ok(clique_union(&cliques, isolated))
}

/// Whether `j_graph(p, s)` is defined.
pub fn j_defined(p: usize, s: usize) -> bool {
    j_components(p, s).is_ok()
}

fn check_tight_a(k: usize, p: usize) -> Result<(), ConstructionError> {
    if k < 1 || p < 2 || k + 2 > 2 * p {
        return Err(invalid(
            "tight-A",
            format!("need 1 ≤ k ≤ 2p−2 (k={k}, p={p})"),
        ));
    }
    Ok(())
}

/// `K_{k+1} ∪ (kp−k−1)K_1` on `kp` vertices.
pub fn tight_family_a(k: usize, p: usize) -> Result<Graph, ConstructionError> {
    check_tight_a(k, p)?;
    Ok(clique_union(&[k + 1], k * p - k - 1))
}

fn check_tight_b(k: usize, p: usize, x: usize) -> Result<(), ConstructionError> {
    let n = k * p;
    let lo = (n + 3).saturating_sub(2 * p);
    let hi = (n + 1).checked_sub(p);
    match hi {
        Some(hi) if k >= 1 && p >= 2 && x >= lo && x <= hi => Ok(()),
        _ => Err(invalid(
            "tight-B",
            format!("need kp−2p+3 ≤ x ≤ kp−p+1 (k={k}, p={p}, x={x})"),
        )),
    }
}

/// `K_{1,x} ∪ (kp−p−x+1)K_2 ∪ (2p−kp+x−3)K_1` on `kp` vertices.
pub fn tight_family_b(k: usize, p: usize, x: usize) -> Result<Graph, ConstructionError> {
    check_tight_b(k, p, x)?;
    let n = k * p;
    let matching = n + 1 - p - x;
    let mut b = GraphBuilder::new(n);
    for leaf in 1..=x {
        b.add_edge(0, leaf)?;
    }
    let start = x + 1;
    for i in 0..matching {
        b.add_edge(start + 2 * i, start + 2 * i + 1)?;
    }
    Ok(b.build())
}

impl From<crate::graph::GraphError> for ConstructionError {
    fn from(e: crate::graph::GraphError) -> Self {
        invalid("graph", e.to_string())
    }
}

fn witness_shape(which: Witness, p: usize) -> Result<(usize, u64), ConstructionError> {
    if p < 3 {
        return Err(invalid("witness", format!("need p ≥ 3 (p={p})")));
    }
    let rest = 4 * p - 5;
    Ok(match which {
        Witness::G1 => (6 + rest, 15),
        Witness::G2 => (7 + rest, 21),
        Witness::G3 => (8 + rest, 28),
        Witness::G4 => {
            if p != 3 {
                return Err(invalid("witness", format!("G4 is defined for p = 3 only (p={p})")));
            }
            (16, 35)
        }
        Witness::G5 => (9 + rest, 36),
    })
}

/// The witnesses whose complements bound `ex(4p+i, 4K_p)` for `i = 1…4`.
pub fn small_host_witness(which: Witness, p: usize) -> Result<Graph, ConstructionError> {
    witness_shape(which, p)?;
    let rest = 4 * p - 5;
    Ok(match which {
        Witness::G1 => clique_union(&[6], rest),
        Witness::G2 => clique_union(&[7], rest),
        Witness::G3 => clique_union(&[8], rest),
        Witness::G4 => Graph::disjoint_union(&[Graph::complete(8), Graph::star(7)]),
        Witness::G5 => clique_union(&[9], rest),
    })
}
