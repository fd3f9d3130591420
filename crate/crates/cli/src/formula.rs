//! `formula` and `table`: closed-form values, optionally checked against
//! their constructions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use turanpack::formulas::{
    choose2, ex_2_cliques, ex_3_cliques, ex_4_cliques, ex_clique_union, ex_k_matchings,
    ex_single_clique, ex_tight_k_cliques, ex_two_distinct_cliques, f_3_independent,
    printed_four_cliques_hub, Regime,
};
use turanpack::packing::{find_disjoint_independent_sets_with, SearchConfig};
use turanpack::{ConstructionId, Pattern};

use crate::error::CliError;
use crate::record::{OutcomeKind, ResultRecord};

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    SingleClique,
    Matchings,
    Tight,
    TwoCliques,
    TwoDistinctCliques,
    ThreeCliques,
    FourCliques,
    ThreeIndependentSets,
    /// A concrete pattern such as `4K3`, routed through the dispatcher.
    Concrete(Pattern),
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "Kp" => Family::SingleClique,
            "kK2" => Family::Matchings,
            "kKp-tight" => Family::Tight,
            "2Kp" => Family::TwoCliques,
            "KpKq" => Family::TwoDistinctCliques,
            "3Kp" => Family::ThreeCliques,
            "4Kp" => Family::FourCliques,
            "f3" => Family::ThreeIndependentSets,
            other => Family::Concrete(other.parse().map_err(|_| {
                CliError::Input(format!(
                    "unknown pattern {other:?}; expected Kp, kK2, kKp-tight, 2Kp, KpKq, 3Kp, 4Kp, f3 or a concrete pattern like 4K3"
                ))
            })?),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SingleClique => f.write_str("Kp"),
            Family::Matchings => f.write_str("kK2"),
            Family::Tight => f.write_str("kKp-tight"),
            Family::TwoCliques => f.write_str("2Kp"),
            Family::TwoDistinctCliques => f.write_str("KpKq"),
            Family::ThreeCliques => f.write_str("3Kp"),
            Family::FourCliques => f.write_str("4Kp"),
            Family::ThreeIndependentSets => f.write_str("f3"),
            Family::Concrete(pattern) => write!(f, "{pattern}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<u64>,
    pub p: Option<u64>,
    pub k: Option<u64>,
    pub q: Option<u64>,
}

fn need(value: Option<u64>, name: &str, family: Family) -> Result<u64, CliError> {
    value.ok_or_else(|| CliError::Precondition(format!("{family} needs --{name}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: u64,
    pub regime: Option<Regime>,
    pub construction: Option<ConstructionId>,
    /// The pattern whose extremal number this is, when it is a clique union.
    pub pattern: Option<Pattern>,
}

pub fn evaluate(family: Family, params: Params) -> Result<Evaluation, CliError> {
    let n = || need(params.n, "n", family);
    let p = || need(params.p, "p", family);
    let k = || need(params.k, "k", family);
    let of = |copies: u64, order: u64| Some(Pattern::new(copies as usize, order as usize));
    let (value, pattern) = match family {
        Family::SingleClique => (ex_single_clique(n()?, p()?)?, of(1, p()?)),
        Family::Matchings => (ex_k_matchings(n()?, k()?)?, of(k()?, 2)),
        Family::Tight => (ex_tight_k_cliques(k()?, p()?)?, of(k()?, p()?)),
        Family::TwoCliques => (ex_2_cliques(n()?, p()?)?, of(2, p()?)),
        Family::TwoDistinctCliques => (ex_two_distinct_cliques(n()?, p()?, need(params.q, "q", family)?)?, None),
        Family::ThreeCliques => (ex_3_cliques(n()?, p()?)?, of(3, p()?)),
        Family::FourCliques => (ex_4_cliques(n()?, p()?)?, of(4, p()?)),
        Family::Concrete(pattern) => (ex_clique_union(n()?, pattern)?, Some(pattern)),
        Family::ThreeIndependentSets => {
            return Ok(Evaluation {
                value: f_3_independent(n()?, p()?)?,
                regime: None,
                construction: None,
                pattern: None,
            })
        }
    };
    Ok(Evaluation {
        value: value.value,
        regime: Some(value.regime),
        construction: value.construction,
        pattern,
    })
}

fn params_of(rec: ResultRecord, params: Params) -> ResultRecord {
    [("n", params.n), ("p", params.p), ("k", params.k), ("q", params.q)]
        .into_iter()
        .fold(rec, |rec, (key, v)| match v {
            Some(v) => rec.param(key, v),
            None => rec,
        })
}

pub fn cmd_formula(family: Family, params: Params) -> Result<ResultRecord, CliError> {
    let eval = evaluate(family, params)?;
    let payload = json!({
        "value": eval.value,
        "regime": eval.regime.map(Regime::label),
        "construction": eval.construction,
    });
    Ok(params_of(ResultRecord::new("formula", OutcomeKind::Value, payload), params).param("pattern", family))
}

/// How a row's construction fared under exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowCheck {
    Verified,
    NoConstruction,
    /// The pattern is not a union of equal cliques, so no packing check applies.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    pub n: u64,
    pub value: u64,
    pub regime: String,
    pub construction: Option<ConstructionId>,
    pub check: Option<RowCheck>,
    pub note: Option<String>,
}

pub const TABLE_NOTE: &str = "for n ≥ 7p−1 the 4Kp value is the edge count of K_3 ∨ T(n−3, p−1), \
i.e. 3+3(n−3)+t(n−3,p−1); the variant with 3(n−1) in place of 3(n−3) is 6 too large";

/// Largest grid `table --verify` accepts.
pub const MAX_VERIFIED_ROWS: usize = 10_000;

/// Builds the complement-side graph of a row's construction and confirms it
/// has the claimed edge count and no `pattern` in its complement.
pub fn check_construction(
    value: u64,
    id: &ConstructionId,
    pattern: Pattern,
    search: &SearchConfig,
) -> Result<(), CliError> {
    let host = id.build()?;
    let edges = choose2(host.order() as u64)? - host.edge_count() as u64;
    if edges != value {
        return Err(CliError::Soundness(format!(
            "construction {id:?} has {edges} edges, formula says {value}"
        )));
    }
    if let Some(w) = find_disjoint_independent_sets_with(&host, pattern.copies, pattern.order, search)? {
        return Err(CliError::Soundness(format!(
            "construction {id:?} contains {pattern}: {:?}",
            w.sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn table_row(family: Family, p: u64, n: u64, extra: Params, verify: bool, search: &SearchConfig) -> Result<TableRow, CliError> {
    let params = Params { n: Some(n), p: Some(p), ..extra };
    let eval = evaluate(family, params)?;
    let check = if !verify {
        None
    } else {
        Some(match (&eval.construction, eval.pattern) {
            (None, _) => RowCheck::NoConstruction,
            (Some(_), None) => RowCheck::Unsupported,
            (Some(id), Some(pattern)) => {
                check_construction(eval.value, id, pattern, search)?;
                RowCheck::Verified
            }
        })
    };
    let note = match eval.regime {
        Some(Regime::FourCliquesHub) => Some(format!(
            "printed variant gives {}",
            printed_four_cliques_hub(n, p)?
        )),
        _ => None,
    };
    Ok(TableRow {
        p,
        n,
        value: eval.value,
        regime: eval.regime.map_or("f3", Regime::label).to_string(),
        construction: eval.construction,
        check,
        note,
    })
}

/// Rows in `(p, n)` order; computed in parallel.
pub fn table_rows(
    family: Family,
    n_range: (u64, u64),
    p_range: (u64, u64),
    extra: Params,
    verify: bool,
    search: &SearchConfig,
) -> Result<Vec<TableRow>, CliError> {
    let cells: Vec<(u64, u64)> = (p_range.0..=p_range.1)
        .flat_map(|p| (n_range.0..=n_range.1).map(move |n| (p, n)))
        .collect();
    if verify && cells.len() > MAX_VERIFIED_ROWS {
        return Err(CliError::SizeGuard(format!(
            "{} rows exceed the --verify limit of {MAX_VERIFIED_ROWS}",
            cells.len()
        )));
    }
    cells
        .par_iter()
        .map(|&(p, n)| table_row(family, p, n, extra, verify, search))
        .collect()
}

pub fn cmd_table(
    family: Family,
    n_range: (u64, u64),
    p_range: (u64, u64),
    extra: Params,
    verify: bool,
    search: &SearchConfig,
) -> Result<ResultRecord, CliError> {
    let rows = table_rows(family, n_range, p_range, extra, verify, search)?;
    let notes: Vec<&str> = if rows.iter().any(|r| r.note.is_some()) { vec![TABLE_NOTE] } else { vec![] };
    let payload = json!({ "rows": rows, "notes": notes });
    let rec = ResultRecord::new("table", OutcomeKind::Value, payload)
        .param("pattern", family)
        .param("n", format!("{}..{}", n_range.0, n_range.1))
        .param("p", format!("{}..{}", p_range.0, p_range.1))
        .param("verify", verify);
    Ok(params_of(rec, Params { n: None, p: None, ..extra }))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV rendering of a table record's rows.
pub fn table_csv(rec: &ResultRecord) -> Result<String, CliError> {
    let rows: Vec<TableRow> = serde_json::from_value(rec.payload["rows"].clone())?;
    let mut out = String::from("p,n,value,regime,construction,check,note\n");
    for row in rows {
        let construction = row
            .construction
            .as_ref()
            .map(|c| serde_json::to_string(c).expect("ids serialise"))
            .unwrap_or_default();
        let check = row
            .check
            .map(|c| serde_json::to_value(c).expect("serialise").as_str().unwrap_or_default().to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.p,
            row.n,
            row.value,
            row.regime,
            csv_field(&construction),
            check,
            csv_field(row.note.as_deref().unwrap_or(""))
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(family: &str, n: u64, p: u64) -> u64 {
        let params = Params { n: Some(n), p: Some(p), ..Params::default() };
        evaluate(family.parse().unwrap(), params).unwrap().value
    }

    #[test]
    fn formula_examples() {
        assert_eq!(value("4Kp", 16, 3), 85);
        assert_eq!(value("3Kp", 9, 3), 30);
        assert_eq!(value("f3", 9, 3), 6);
        assert_eq!(value("4K3", 16, 3), 85);
        assert!(matches!("5Kx".parse::<Family>(), Err(CliError::Input(_))));
        assert!(matches!(
            evaluate(Family::FourCliques, Params { n: Some(16), ..Params::default() }),
            Err(CliError::Precondition(_))
        ));
    }

    #[test]
    fn table_examples() {
        let search = SearchConfig::default();
        let rows = table_rows(Family::FourCliques, (12, 30), (3, 3), Params::default(), false, &search).unwrap();
        assert_eq!(rows.len(), 19);
        assert_eq!((rows[0].value, rows[1].value), (56, 63));
        let rows = table_rows(Family::FourCliques, (20, 20), (4, 4), Params::default(), false, &search).unwrap();
        assert_eq!(rows[0].value, 154);
        let empty = table_rows(Family::FourCliques, (5, 4), (3, 3), Params::default(), false, &search).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn csv_and_json_carry_the_same_values() {
        let rec = cmd_table(Family::FourCliques, (12, 30), (3, 4), Params::default(), true, &SearchConfig::default()).unwrap();
        let csv = table_csv(&rec).unwrap();
        let from_json: Vec<u64> = rec.payload["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["value"].as_u64().unwrap())
            .collect();
        let from_csv: Vec<u64> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
        assert_eq!(from_json, from_csv);
        assert_eq!(rec.payload["notes"].as_array().unwrap().len(), 1);
    }
}
