//! Closed-form Turán numbers for disjoint unions of cliques.
//!
//! Every value carries the branch that produced it and, where an attaining
//! graph is known, a [`ConstructionId`] whose *complement* is extremal:
//! `value == e(complement(id.build()))`.
//!
//! Hosts too small to hold the pattern get `C(n,2)` with
//! [`Regime::PatternLargerThanHost`]. Clique patterns with `p = 2` are
//! matchings and are answered by [`ex_k_matchings`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{ConstructionId, Witness};
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{0}")]
    Precondition(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("supplied value {supplied} does not match the hub-join count {expected}")]
    Mismatch { expected: u64, supplied: u64 },
    #[error("no closed form is known for {pattern} on {n} vertices")]
    Unsupported { pattern: Pattern, n: u64 },
}

fn precondition(msg: impl Into<String>) -> FormulaError {
    FormulaError::Precondition(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    PatternLargerThanHost,
    Turan,
    MatchingDenseHost,
    MatchingHub,
    TwoCliquesDense,
    TwoCliquesHub,
    DistinctCliquesDense,
    DistinctCliquesTuran,
    TightSmallK,
    TightLargeK,
    ThreeCliquesTight,
    ThreeCliquesDense,
    ThreeCliquesHub,
    FourCliquesTight,
    FourCliquesPlusOne,
    FourCliquesPlusTwo,
    FourCliquesPlusThree,
    FourCliquesPlusFour,
    FourCliquesDense,
    FourCliquesHub,
    HubExtension,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::PatternLargerThanHost => "pattern-larger-than-host",
            Regime::Turan => "turan",
            Regime::MatchingDenseHost => "matching-dense-host",
            Regime::MatchingHub => "matching-hub",
            Regime::TwoCliquesDense => "two-cliques-dense",
            Regime::TwoCliquesHub => "two-cliques-hub",
            Regime::DistinctCliquesDense => "distinct-cliques-dense",
            Regime::DistinctCliquesTuran => "distinct-cliques-turan",
            Regime::TightSmallK => "tight-small-k",
            Regime::TightLargeK => "tight-large-k",
            Regime::ThreeCliquesTight => "three-cliques-tight",
            Regime::ThreeCliquesDense => "three-cliques-dense",
            Regime::ThreeCliquesHub => "three-cliques-hub",
            Regime::FourCliquesTight => "four-cliques-tight",
            Regime::FourCliquesPlusOne => "four-cliques-plus-one",
            Regime::FourCliquesPlusTwo => "four-cliques-plus-two",
            Regime::FourCliquesPlusThree => "four-cliques-plus-three",
            Regime::FourCliquesPlusFour => "four-cliques-plus-four",
            Regime::FourCliquesDense => "four-cliques-dense",
            Regime::FourCliquesHub => "four-cliques-hub",
            Regime::HubExtension => "hub-extension",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranValue {
    pub value: u64,
    pub regime: Regime,
    pub construction: Option<ConstructionId>,
}

impl TuranValue {
    fn new(value: u64, regime: Regime, construction: Option<ConstructionId>) -> Self {
        Self {
            value,
            regime,
            construction,
        }
    }
}

fn mul(a: u64, b: u64) -> Result<u64, FormulaError> {
    a.checked_mul(b).ok_or(FormulaError::Overflow)
}

fn add(a: u64, b: u64) -> Result<u64, FormulaError> {
    a.checked_add(b).ok_or(FormulaError::Overflow)
}

fn sub(a: u64, b: u64) -> Result<u64, FormulaError> {
    a.checked_sub(b).ok_or(FormulaError::Overflow)
}

fn to_usize(x: u64) -> Result<usize, FormulaError> {
    usize::try_from(x).map_err(|_| FormulaError::Overflow)
}

/// `C(n, 2)`.
pub fn choose2(n: u64) -> Result<u64, FormulaError> {
    if n < 2 {
        return Ok(0);
    }
    // Halve whichever factor is even before multiplying.
    if n.is_multiple_of(2) {
        mul(n / 2, n - 1)
    } else {
        mul(n, (n - 1) / 2)
    }
}

/// Edge count of the balanced complete `parts`-partite graph on `n` vertices.
pub fn turan_edges(n: u64, parts: u64) -> Result<u64, FormulaError> {
    if parts < 1 {
        return Err(precondition("the Turán graph needs at least one part"));
    }
    let (q, r) = (n / parts, n % parts);
    let inside = add(mul(r, choose2(q + 1)?)?, mul(parts - r, choose2(q)?)?)?;
    sub(choose2(n)?, inside)
}

fn too_small(n: u64) -> Result<TuranValue, FormulaError> {
    Ok(TuranValue::new(
        choose2(n)?,
        Regime::PatternLargerThanHost,
        Some(ConstructionId::CliqueUnion {
            cliques: vec![],
            isolated: to_usize(n)?,
        }),
    ))
}

fn hub(n: u64, k: u64, p: u64) -> Result<ConstructionId, FormulaError> {
    Ok(ConstructionId::HubJoin {
        k: to_usize(k)?,
        n: to_usize(n)?,
        p: to_usize(p)?,
    }
    .complement())
}

/// `ex(n, K_p)`: the Turán graph `T(n, p−1)` is extremal.
pub fn ex_single_clique(n: u64, p: u64) -> Result<TuranValue, FormulaError> {
    if p < 2 {
        return Err(precondition(format!("clique order must be at least 2 (p={p})")));
    }
    let id = ConstructionId::Turan {
        n: to_usize(n)?,
        parts: to_usize(p - 1)?,
    }
    .complement();
    Ok(TuranValue::new(turan_edges(n, p - 1)?, Regime::Turan, Some(id)))
}

/// Least edge count of an `n`-vertex graph with independence number below `p`.
pub fn min_edges_alpha_bound(n: u64, p: u64) -> Result<u64, FormulaError> {
    if p < 2 {
        return Err(precondition(format!("need p ≥ 2 (p={p})")));
    }
    sub(choose2(n)?, turan_edges(n, p - 1)?)
}

/// `ex(n, kK_2)`.
pub fn ex_k_matchings(n: u64, k: u64) -> Result<TuranValue, FormulaError> {
    if k < 1 {
        return Err(precondition("need at least one edge in the matching"));
    }
    if n < mul(2, k)? {
        return too_small(n);
    }
    // n < 5k/2 − 1  ⇔  2n + 2 < 5k
    if add(mul(2, n)?, 2)? < mul(5, k)? {
        let id = ConstructionId::CliqueUnion {
            cliques: vec![to_usize(2 * k - 1)?],
            isolated: to_usize(n - (2 * k - 1))?,
        }
        .complement();
        Ok(TuranValue::new(choose2(2 * k - 1)?, Regime::MatchingDenseHost, Some(id)))
    } else {
        let value = add(choose2(k - 1)?, mul(k - 1, n - k + 1)?)?;
        Ok(TuranValue::new(value, Regime::MatchingHub, Some(hub(n, k, 2)?)))
    }
}

/// `C(k−1,2) + t(n−k+1, p−1) + (k−1)(n−k+1)`: the edge count of
/// `K_{k−1} ∨ T(n−k+1, p−1)`, which is `ex(n, kK_p)` once `n` is large.
///
/// Only a cross-check expression: no threshold is claimed.
pub fn hub_expression(n: u64, k: u64, p: u64) -> Result<u64, FormulaError> {
    if k < 1 || p < 2 || n + 1 < k {
        return Err(precondition(format!(
            "need k ≥ 1, p ≥ 2 and n ≥ k−1 (n={n}, k={k}, p={p})"
        )));
    }
    let rest = n - (k - 1);
    add(
        add(choose2(k - 1)?, turan_edges(rest, p - 1)?)?,
        mul(k - 1, rest)?,
    )
}

fn require_p3(p: u64) -> Result<(), FormulaError> {
    if p < 3 {
        return Err(precondition(format!("clique order must be at least 3 here (p={p})")));
    }
    Ok(())
}

/// `ex(n, 2K_p)`.
pub fn ex_2_cliques(n: u64, p: u64) -> Result<TuranValue, FormulaError> {
    if p == 2 {
        return ex_k_matchings(n, 2);
    }
    require_p3(p)?;
    if n < 2 * p {
        return too_small(n);
    }
    if n <= 3 * p - 2 {
        let value = sub(choose2(n)?, 3 * (n - 2 * p + 1))?;
        Ok(TuranValue::new(value, Regime::TwoCliquesDense, None))
    } else {
        let value = add(n - 1, turan_edges(n - 1, p - 1)?)?;
        Ok(TuranValue::new(value, Regime::TwoCliquesHub, Some(hub(n, 2, p)?)))
    }
}

/// `ex(n, K_p ∪ K_q)` for `q > p ≥ 3`.
pub fn ex_two_distinct_cliques(n: u64, p: u64, q: u64) -> Result<TuranValue, FormulaError> {
    if !(q > p && p >= 3) {
        return Err(precondition(format!("need q > p ≥ 3 (p={p}, q={q})")));
    }
    if n < p + q {
        return too_small(n);
    }
    let slack = (2 * p).saturating_sub(q).max((p / 2).saturating_sub(1));
    // When 2p < q and ⌊p/2⌋ < 1 both terms would be negative; p ≥ 3 rules that out.
    if n <= p + q + slack {
        let value = sub(choose2(n)?, 3 * (n - p - q + 1))?;
        Ok(TuranValue::new(value, Regime::DistinctCliquesDense, None))
    } else {
        let id = ConstructionId::Turan {
            n: to_usize(n)?,
            parts: to_usize(q - 1)?,
        }
        .complement();
        Ok(TuranValue::new(
            turan_edges(n, q - 1)?,
            Regime::DistinctCliquesTuran,
            Some(id),
        ))
    }
}

/// `ex(kp, kK_p)`.
pub fn ex_tight_k_cliques(k: u64, p: u64) -> Result<TuranValue, FormulaError> {
    if k < 1 {
        return Err(precondition("need at least one copy"));
    }
    if p == 2 {
        return ex_k_matchings(2 * k, k);
    }
    require_p3(p)?;
    let n = mul(k, p)?;
    if k <= 2 * p - 2 {
        let value = sub(choose2(n)?, choose2(k + 1)?)?;
        let id = ConstructionId::TightA {
            k: to_usize(k)?,
            p: to_usize(p)?,
        };
        Ok(TuranValue::new(value, Regime::TightSmallK, Some(id)))
    } else {
        let removed = n - p + 1;
        let id = ConstructionId::TightB {
            k: to_usize(k)?,
            p: to_usize(p)?,
            x: to_usize(removed)?,
        };
        Ok(TuranValue::new(sub(choose2(n)?, removed)?, Regime::TightLargeK, Some(id)))
    }
}

/// `ex(n, 3K_p)`.
pub fn ex_3_cliques(n: u64, p: u64) -> Result<TuranValue, FormulaError> {
    if p == 2 {
        return ex_k_matchings(n, 3);
    }
    require_p3(p)?;
    if n < 3 * p {
        return too_small(n);
    }
    if n == 3 * p {
        let t = ex_tight_k_cliques(3, p)?;
        return Ok(TuranValue::new(t.value, Regime::ThreeCliquesTight, t.construction));
    }
    if n <= 5 * p - 2 {
        let value = sub(choose2(n)?, 5 * (n - 3 * p + 1))?;
        return Ok(TuranValue::new(value, Regime::ThreeCliquesDense, None));
    }
    let value = hub_expression(n, 3, p)?;
    Ok(TuranValue::new(value, Regime::ThreeCliquesHub, Some(hub(n, 3, p)?)))
}

/// `ex(n, 4K_p)`.
///
/// For `n ≥ 7p−1` the value is the edge count of `K_3 ∨ T(n−3, p−1)`,
/// i.e. `3 + 3(n−3) + t(n−3, p−1)`. The variant with `3(n−1)`
/// is six too large; see [`printed_four_cliques_hub`].
pub fn ex_4_cliques(n: u64, p: u64) -> Result<TuranValue, FormulaError> {
    if p == 2 {
        return ex_k_matchings(n, 4);
    }
    require_p3(p)?;
    if n < 4 * p {
        return too_small(n);
    }
    let pu = to_usize(p)?;
    let witness = |which| Some(ConstructionId::Witness { which, p: pu });
    let total = choose2(n)?;
    let (removed, regime, construction) = match n - 4 * p {
        0 => {
            let t = ex_tight_k_cliques(4, p)?;
            return Ok(TuranValue::new(t.value, Regime::FourCliquesTight, t.construction));
        }
        1 => (15, Regime::FourCliquesPlusOne, witness(Witness::G1)),
        2 => (21, Regime::FourCliquesPlusTwo, witness(Witness::G2)),
        3 => (28, Regime::FourCliquesPlusThree, witness(Witness::G3)),
        4 if p == 3 => (35, Regime::FourCliquesPlusFour, witness(Witness::G4)),
        4 => (36, Regime::FourCliquesPlusFour, witness(Witness::G5)),
        _ if n <= 7 * p - 2 => {
            let s = n - 4 * p + 1;
            let id = ConstructionId::J {
                p: pu,
                s: to_usize(s)?,
            };
            (mul(7, s)?, Regime::FourCliquesDense, Some(id))
        }
        _ => {
            let value = hub_expression(n, 4, p)?;
            return Ok(TuranValue::new(value, Regime::FourCliquesHub, Some(hub(n, 4, p)?)));
        }
    };
    Ok(TuranValue::new(sub(total, removed)?, regime, construction))
}

/// The large-host `4K_p` expression as it is commonly printed,
/// `3 + 3(n−1) + t(n−3, p−1)`. Kept only so the discrepancy with
/// [`ex_4_cliques`] can be reported.
pub fn printed_four_cliques_hub(n: u64, p: u64) -> Result<u64, FormulaError> {
    if p < 2 || n < 3 {
        return Err(precondition(format!("need p ≥ 2 and n ≥ 3 (n={n}, p={p})")));
    }
    add(add(3, mul(3, n - 1)?)?, turan_edges(n - 3, p - 1)?)
}

/// Least edge count of an `n`-vertex graph with no three disjoint
/// independent `p`-sets, for `n = 3p−1+s`, `1 ≤ s ≤ 2p−1`.
pub fn f_3_independent(n: u64, p: u64) -> Result<u64, FormulaError> {
    require_p3(p)?;
    let lo = 3 * p;
    let hi = 5 * p - 2;
    if n < lo || n > hi {
        return Err(precondition(format!(
            "need 3p ≤ n ≤ 5p−2 (n={n}, p={p})"
        )));
    }
    let s = n - (3 * p - 1);
    Ok(if s == 1 { 6 } else { 5 * s })
}

/// Given `ex(n0, kK_p) = e(K_{k−1} ∨ T(n0−k+1, p−1))`, the same identity
/// holds for every `n ≥ n0`.
pub fn extend_hub_value(
    n0: u64,
    k: u64,
    p: u64,
    verified_value: u64,
    n: u64,
) -> Result<TuranValue, FormulaError> {
    require_p3(p)?;
    if k < 2 {
        return Err(precondition(format!("need k ≥ 2 (k={k})")));
    }
    if n0 < mul(k, p)? {
        return Err(precondition(format!("need n0 ≥ kp (n0={n0}, k={k}, p={p})")));
    }
    if n < n0 {
        return Err(precondition(format!("need n ≥ n0 (n={n}, n0={n0})")));
    }
    let expected = hub_expression(n0, k, p)?;
    if expected != verified_value {
        return Err(FormulaError::Mismatch {
            expected,
            supplied: verified_value,
        });
    }
    Ok(TuranValue::new(
        hub_expression(n, k, p)?,
        Regime::HubExtension,
        Some(hub(n, k, p)?),
    ))
}

/// Dispatches `ex(n, kK_p)` to whichever closed form covers it.
pub fn ex_clique_union(n: u64, pattern: Pattern) -> Result<TuranValue, FormulaError> {
    let (k, p) = (pattern.copies as u64, pattern.order as u64);
    if k < 1 || p < 2 {
        return Err(precondition(format!("unsupported pattern {pattern}")));
    }
    if p == 2 {
        return ex_k_matchings(n, k);
    }
    match k {
        1 => ex_single_clique(n, p),
        2 => ex_2_cliques(n, p),
        3 => ex_3_cliques(n, p),
        4 => ex_4_cliques(n, p),
        _ if n < mul(k, p)? => too_small(n),
        _ if n == k * p => ex_tight_k_cliques(k, p),
        _ => Err(FormulaError::Unsupported { pattern, n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: Result<TuranValue, FormulaError>) -> u64 {
        r.unwrap().value
    }

    #[test]
    fn turan_edges_examples() {
        assert_eq!(turan_edges(5, 2), Ok(6));
        assert_eq!(turan_edges(9, 3), Ok(27));
        assert_eq!(turan_edges(17, 1), Ok(0));
        assert!(turan_edges(3, 0).is_err());
        assert_eq!(choose2(u32::MAX as u64 + 1), Ok((1u64 << 31) * (u32::MAX as u64)));
        assert_eq!(choose2(u64::MAX), Err(FormulaError::Overflow));
    }

    #[test]
    fn turan_edges_is_max_over_three_part_splits_of_nine() {
        let mut best = 0;
        for a in 0..=9u64 {
            for b in 0..=9 - a {
                let c = 9 - a - b;
                best = best.max(a * b + b * c + a * c);
            }
        }
        assert_eq!(turan_edges(9, 3), Ok(best));
    }

    #[test]
    fn single_clique_and_alpha_bound() {
        assert_eq!(v(ex_single_clique(5, 3)), 6);
        assert_eq!(v(ex_single_clique(4, 2)), 0);
        assert_eq!(v(ex_single_clique(9, 4)), 27);
        assert!(ex_single_clique(5, 1).is_err());
        assert_eq!(min_edges_alpha_bound(5, 3), Ok(4));
        assert_eq!(min_edges_alpha_bound(7, 3), Ok(9));
        assert_eq!(min_edges_alpha_bound(3, 5), Ok(0));
    }

    #[test]
    fn matchings() {
        let r = ex_k_matchings(6, 3).unwrap();
        assert_eq!((r.value, r.regime), (10, Regime::MatchingDenseHost));
        assert_eq!(v(ex_k_matchings(4, 2)), 3);
        assert_eq!(v(ex_k_matchings(5, 1)), 0);
        assert_eq!(ex_k_matchings(3, 2).unwrap().regime, Regime::PatternLargerThanHost);
        assert!(ex_k_matchings(3, 0).is_err());
    }

    // Exhaustive maxima over all labelled graphs, computed separately.
    #[test]
    fn small_hosts_match_exhaustive_values() {
        let k3 = [0, 0, 1, 2, 4, 6, 9, 12];
        let two_k2 = [0, 0, 1, 3, 3, 4, 5, 6];
        let three_k2 = [0, 0, 1, 3, 6, 10, 10, 11];
        let two_k3 = [0, 0, 1, 3, 6, 10, 12];
        for n in 0..8u64 {
            assert_eq!(v(ex_single_clique(n, 3)), k3[n as usize], "K3 n={n}");
            assert_eq!(v(ex_single_clique(n, 2)), 0);
            assert_eq!(v(ex_k_matchings(n, 2)), two_k2[n as usize], "2K2 n={n}");
            assert_eq!(v(ex_k_matchings(n, 3)), three_k2[n as usize], "3K2 n={n}");
        }
        for n in 0..7u64 {
            assert_eq!(v(ex_2_cliques(n, 3)), two_k3[n as usize], "2K3 n={n}");
        }
    }

    #[test]
    fn two_cliques() {
        assert_eq!(v(ex_2_cliques(7, 3)), 15);
        assert_eq!(v(ex_2_cliques(9, 3)), 24);
        assert_eq!(v(ex_2_cliques(6, 3)), 12);
        assert_eq!(ex_2_cliques(9, 3).unwrap().regime, Regime::TwoCliquesHub);
        assert_eq!(ex_2_cliques(7, 2), ex_k_matchings(7, 2));
    }

    #[test]
    fn distinct_cliques() {
        assert_eq!(v(ex_two_distinct_cliques(7, 3, 4)), 18);
        assert_eq!(v(ex_two_distinct_cliques(10, 3, 4)), 33);
        assert_eq!(v(ex_two_distinct_cliques(8, 3, 5)), 25);
        assert_eq!(
            ex_two_distinct_cliques(9, 3, 4).unwrap().regime,
            Regime::DistinctCliquesDense
        );
        assert!(ex_two_distinct_cliques(9, 4, 4).is_err());
        assert!(ex_two_distinct_cliques(9, 2, 4).is_err());
    }

    #[test]
    fn tight() {
        assert_eq!(v(ex_tight_k_cliques(4, 3)), 56);
        assert_eq!(v(ex_tight_k_cliques(5, 3)), 92);
        assert_eq!(v(ex_tight_k_cliques(1, 3)), 2);
        assert!(ex_tight_k_cliques(3, 1).is_err());
    }

    #[test]
    fn three_cliques() {
        assert_eq!(v(ex_3_cliques(9, 3)), 30);
        assert_eq!(v(ex_3_cliques(10, 3)), 35);
        assert_eq!(v(ex_3_cliques(14, 3)), 61);
        assert_eq!(ex_3_cliques(8, 3).unwrap().regime, Regime::PatternLargerThanHost);
    }

    #[test]
    fn four_cliques() {
        assert_eq!(v(ex_4_cliques(12, 3)), 56);
        assert_eq!(v(ex_4_cliques(13, 3)), 63);
        assert_eq!(v(ex_4_cliques(16, 3)), 85);
        assert_eq!(v(ex_4_cliques(20, 4)), 154);
        assert_eq!(v(ex_4_cliques(19, 3)), 115);
        assert_eq!(hub_expression(19, 4, 3), Ok(115));
        assert_eq!(printed_four_cliques_hub(19, 3), Ok(121));
        assert_eq!(ex_4_cliques(20, 3).unwrap().regime, Regime::FourCliquesHub);
    }

    #[test]
    fn three_independent_sets() {
        assert_eq!(f_3_independent(9, 3), Ok(6));
        assert_eq!(f_3_independent(11, 3), Ok(15));
        assert!(f_3_independent(8, 3).is_err());
        assert!(f_3_independent(14, 3).is_err());
    }

    #[test]
    fn hub_extension() {
        assert_eq!(v(extend_hub_value(19, 4, 3, 115, 20)), 126);
        assert_eq!(v(extend_hub_value(14, 3, 3, 61, 14)), 61);
        assert_eq!(v(extend_hub_value(19, 4, 3, 115, 19)), 115);
        assert_eq!(
            extend_hub_value(19, 4, 3, 114, 20),
            Err(FormulaError::Mismatch { expected: 115, supplied: 114 })
        );
        assert!(extend_hub_value(19, 4, 3, 115, 18).is_err());
    }

    #[test]
    fn constructions_attain_values() {
        for p in 3..=5u64 {
            for n in 0..=8 * p {
                for k in 1..=4 {
                    let r = ex_clique_union(n, Pattern::new(k, p as usize)).unwrap();
                    if let Some(id) = &r.construction {
                        let g = id.build().unwrap();
                        assert_eq!(g.order() as u64, n, "{id:?}");
                        assert_eq!(
                            g.complement().edge_count() as u64,
                            r.value,
                            "n={n} k={k} p={p} {id:?}"
                        );
                    }
                }
            }
        }
    }
}
