//! Randomised and tabulated probes of open generalisations.
//!
//! `rigidity`: on `n = kp−1+s` vertices with `e ≤ (2k−1)s` and
//! `Δ ≤ 2k−2`, either `k` disjoint independent `p`-sets exist or the graph
//! is `s/(k−1)` copies of `K_{2k−1}` plus isolated vertices.
//!
//! `values`: for `k ≥ 4` and `(k−1)p − k² + 3k − 3 ≥ 0`, the candidate
//! formula `C(n,2) − (2k−1)(n−kp+1)` on `kp+k²−3k+1 ≤ n ≤ (2k−1)p−2` and
//! the hub-join count from `n ≥ (2k−1)p−1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use turanpack::formulas::{choose2, ex_4_cliques, hub_expression};
use turanpack::packing::{find_disjoint_independent_sets_with, SearchConfig};
use turanpack::random::{bounded_gnm, clustered, planted_cliques};
use turanpack::{ConstructionId, Graph};

use crate::error::CliError;
use crate::formula::check_construction;
use crate::graph_cmds::graph6_string;
use crate::record::{OutcomeKind, ResultRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Probe {
    Rigidity,
    Values,
}

/// `g` is `count` disjoint cliques of order `order` plus isolated vertices.
fn is_clique_union(g: &Graph, order: usize, count: usize) -> bool {
    let mut found = 0;
    for comp in g.components() {
        match comp.len() {
            1 => {}
            len if len == order && g.is_clique(&comp) => found += 1,
            _ => return false,
        }
    }
    found == count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Trial {
    Packing,
    Rigid,
    Counterexample { graph6: String, s: usize },
}

pub fn rigidity_trial(k: usize, p: usize, seed: u64, trial: u64, search: &SearchConfig) -> Result<Trial, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let s = rng.gen_range(1..=(k - 1) * p - 1);
    let n = k * p - 1 + s;
    let (edges, degree, order) = ((2 * k - 1) * s, 2 * k - 2, 2 * k - 1);
    let g = match rng.gen_range(0..3) {
        0 => bounded_gnm(n, edges, degree, &mut rng),
        1 => planted_cliques(n, order, edges, degree, &mut rng),
        _ => clustered(n, edges, degree, &mut rng),
    };
    if find_disjoint_independent_sets_with(&g, k, p, search)?.is_some() {
        return Ok(Trial::Packing);
    }
    let rigid = s % (k - 1) == 0 && g.edge_count() == edges && is_clique_union(&g, order, s / (k - 1));
    Ok(if rigid {
        Trial::Rigid
    } else {
        Trial::Counterexample { graph6: graph6_string(&g), s }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub n: u64,
    pub candidate: u64,
    pub hub: u64,
    /// Proven value, available for `k = 4`.
    pub known: Option<u64>,
    /// Whether a clique-union construction attaining `candidate` was checked.
    pub construction_checked: bool,
    pub consistent: bool,
}

fn candidate_value(n: u64, k: u64, p: u64) -> Result<u64, CliError> {
    if n + 1 >= (2 * k - 1) * p {
        return Ok(hub_expression(n, k, p)?);
    }
    Ok(choose2(n)? - (2 * k - 1) * (n + 1 - k * p))
}

pub fn value_rows(k: u64, p: u64, search: &SearchConfig) -> Result<Vec<ValueRow>, CliError> {
    if k < 4 || p < 3 || (k - 1) * p + 3 * k < k * k + 3 {
        return Err(CliError::Precondition(format!(
            "values probe needs k ≥ 4, p ≥ 3 and (k−1)p − k² + 3k − 3 ≥ 0 (k={k}, p={p})"
        )));
    }
    let lo = k * p + k * k - 3 * k + 1;
    let hi = (2 * k - 1) * p + p;
    (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let candidate = candidate_value(n, k, p)?;
            let hub = hub_expression(n, k, p)?;
            let known = if k == 4 { Some(ex_4_cliques(n, p)?.value) } else { None };
            let s = n + 1 - k * p;
            let dense = n + 2 <= (2 * k - 1) * p;
            let construction_checked = dense && s.is_multiple_of(k - 1);
            if construction_checked {
                let copies = (s / (k - 1)) as usize;
                let isolated = n as usize - copies * (2 * k - 1) as usize;
                let id = ConstructionId::CliqueUnion {
                    cliques: vec![(2 * k - 1) as usize; copies],
                    isolated,
                };
                let pattern = turanpack::Pattern::new(k as usize, p as usize);
                if let Err(e) = check_construction(candidate, &id, pattern, search) {
                    return match e {
                        CliError::Soundness(_) => Ok(ValueRow {
                            n,
                            candidate,
                            hub,
                            known,
                            construction_checked,
                            consistent: false,
                        }),
                        other => Err(other),
                    };
                }
            }
            let consistent = candidate >= hub && known.is_none_or(|v| v == candidate);
            Ok(ValueRow {
                n,
                candidate,
                hub,
                known,
                construction_checked,
                consistent,
            })
        })
        .collect()
}

pub fn cmd_probe(which: Probe, k: usize, p: usize, trials: u64, seed: u64, search: &SearchConfig) -> Result<ResultRecord, CliError> {
    let rec = match which {
        Probe::Rigidity => {
            if k < 2 || p < 3 {
                return Err(CliError::Precondition(format!("rigidity probe needs k ≥ 2 and p ≥ 3 (k={k}, p={p})")));
            }
            let results: Vec<Trial> = (0..trials)
                .into_par_iter()
                .map(|t| rigidity_trial(k, p, seed, t, search))
                .collect::<Result<_, _>>()?;
            let packings = results.iter().filter(|t| matches!(t, Trial::Packing)).count();
            let rigid = results.iter().filter(|t| matches!(t, Trial::Rigid)).count();
            let counterexamples: Vec<&Trial> = results
                .iter()
                .filter(|t| matches!(t, Trial::Counterexample { .. }))
                .collect();
            let outcome = if counterexamples.is_empty() { OutcomeKind::None } else { OutcomeKind::Counterexample };
            let summary = if counterexamples.is_empty() {
                format!("no counterexample in {trials} trials")
            } else {
                format!("{} counterexamples in {trials} trials", counterexamples.len())
            };
            ResultRecord::new(
                "probe",
                outcome,
                json!({
                    "summary": summary,
                    "trials": trials,
                    "packings": packings,
                    "rigid": rigid,
                    "counterexamples": counterexamples,
                }),
            )
            .seed(seed)
            .param("trials", trials)
        }
        Probe::Values => {
            let rows = value_rows(k as u64, p as u64, search)?;
            let bad = rows.iter().filter(|r| !r.consistent).count();
            let outcome = if bad == 0 { OutcomeKind::None } else { OutcomeKind::Counterexample };
            ResultRecord::new("probe", outcome, json!({ "rows": rows, "inconsistent": bad }))
        }
    };
    Ok(rec
        .param("probe", format!("{which:?}").to_lowercase())
        .param("k", k)
        .param("p", p))
}
