//! Degree-sequence sufficiency predicates for Hamiltonicity.
//!
//! All predicates read a non-decreasing [`DegreeSequence`] with 1-based
//! positions `d_1 <= ... <= d_n`. A reference to `d_m` with `m > n` can never
//! be witnessed: a comparison involving it evaluates to false.
//!
//! The predicates never look at the graph. Toughness hypotheses are the
//! caller's business.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DegreeSequence;
use crate::toughness::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Chvatal,
    Hoang,
    Strengthened,
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chvatal" => Ok(Condition::Chvatal),
            "hoang" => Ok(Condition::Hoang),
            "strong" | "strengthened" => Ok(Condition::Strengthened),
            _ => Err(Error::invalid(format!("unknown condition '{s}'"))),
        }
    }
}

/// Where a condition fails: `i` (and `j` for the strengthened form), plus the
/// degree values that were compared. A `null` value is an index beyond `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    pub detail: BTreeMap<String, Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<usize>,
    pub holds: bool,
    /// Some `i` made the antecedent true, so the verdict is not vacuous.
    pub fired: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub violation: Option<Violation>,
}

impl ConditionVerdict {
    fn new(condition: Condition, t: Option<usize>, fired: bool, violation: Option<Violation>) -> Self {
        ConditionVerdict {
            condition,
            t,
            holds: violation.is_none(),
            fired,
            violation,
        }
    }
}

fn require_order(seq: &DegreeSequence) -> Result<usize> {
    let n = seq.len();
    if n < 3 {
        return Err(Error::invalid(format!("degree conditions need n >= 3, got {n}")));
    }
    Ok(n)
}

fn detail(seq: &DegreeSequence, indices: &[usize]) -> BTreeMap<String, Option<usize>> {
    indices.iter().map(|&m| (format!("d_{m}"), seq.get(m))).collect()
}

/// For all `1 <= i < n/2`: `d_i <= i` implies `d_{n-i} >= n-i`.
pub fn chvatal_condition(seq: &DegreeSequence) -> Result<ConditionVerdict> {
    let v = shifted_condition(seq, 0)?;
    Ok(ConditionVerdict {
        condition: Condition::Chvatal,
        t: None,
        ..v
    })
}

/// For all `1 <= i < n/2`: `d_i <= i` implies `d_{n-i+t} >= n-i`.
pub fn hoang_condition(seq: &DegreeSequence, t: usize) -> Result<ConditionVerdict> {
    shifted_condition(seq, t)
}

fn shifted_condition(seq: &DegreeSequence, t: usize) -> Result<ConditionVerdict> {
    let n = require_order(seq)?;
    let mut fired = false;
    let mut i = 1;
    while 2 * i < n {
        if seq.get(i).is_some_and(|d| d <= i) {
            fired = true;
            let partner = n - i + t;
            if !seq.get(partner).is_some_and(|d| d >= n - i) {
                let v = Violation {
                    i,
                    j: None,
                    detail: detail(seq, &[i, partner]),
                };
                return Ok(ConditionVerdict::new(Condition::Hoang, Some(t), fired, Some(v)));
            }
        }
        i += 1;
    }
    Ok(ConditionVerdict::new(Condition::Hoang, Some(t), fired, None))
}

/// For every `i` in `[1, floor((n-1)/2)]`: if `d_i <= i` and
/// `d_{n-i+t} < n-i`, then `d_j + d_{n-j+t} >= n` for every `j` in
/// `[i+1, floor((n-1)/2)]`.
pub fn strengthened_condition(seq: &DegreeSequence, t: usize) -> Result<ConditionVerdict> {
    let n = require_order(seq)?;
    let top = (n - 1) / 2;
    let mut fired = false;
    for i in 1..=top {
        let partner = n - i + t;
        let antecedent = seq.get(i).is_some_and(|d| d <= i) && seq.get(partner).is_some_and(|d| d < n - i);
        if !antecedent {
            continue;
        }
        fired = true;
        for j in i + 1..=top {
            let pj = n - j + t;
            let ok = match (seq.get(j), seq.get(pj)) {
                (Some(a), Some(b)) => a + b >= n,
                _ => false,
            };
            if !ok {
                let v = Violation {
                    i,
                    j: Some(j),
                    detail: detail(seq, &[i, partner, j, pj]),
                };
                return Ok(ConditionVerdict::new(Condition::Strengthened, Some(t), fired, Some(v)));
            }
        }
    }
    Ok(ConditionVerdict::new(Condition::Strengthened, Some(t), fired, None))
}

pub fn evaluate(condition: Condition, seq: &DegreeSequence, t: usize) -> Result<ConditionVerdict> {
    match condition {
        Condition::Chvatal => chvatal_condition(seq),
        Condition::Hoang => hoang_condition(seq, t),
        Condition::Strengthened => strengthened_condition(seq, t),
    }
}

/// `min_degree > n / (t + 1) - 1`, exactly.
pub fn bauer_bound(n: usize, t: Rational, min_degree: usize) -> bool {
    let one = Rational::from_integer(1);
    Rational::from_integer(min_degree as i64) > Rational::from_integer(n as i64) / (t + one) - one
}
