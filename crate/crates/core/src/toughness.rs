//! Exact toughness `tau(G) = min |S| / c(G - S)` over cutsets `S` with
//! `c(G - S) >= 2`, and `inf` for complete graphs.
//!
//! All arithmetic is exact. The search enumerates vertex subsets as bit
//! masks, so it is exponential and capped (default `n <= 24`).
//!
//! The pruned search skips any `S` containing a vertex whose neighbors all lie
//! in `S`: dropping that vertex from `S` isolates it, which lowers the ratio,
//! so such an `S` is never a minimizer. [`toughness_definitional`] keeps the
//! literal definition for cross-checking.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{mask_components, BitIter, Graph};

pub type Rational = Ratio<i64>;

/// Default cap on the order accepted by the subset enumeration.
pub const DEFAULT_MAX_ORDER: usize = 24;
const HARD_MAX_ORDER: usize = 40;
const PARALLEL_FROM: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Toughness {
    Finite(Rational),
    Infinite,
}

impl Toughness {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Toughness::Finite(r) => Some(r),
            Toughness::Infinite => None,
        }
    }

    /// `self >= t`.
    pub fn at_least(self, t: Rational) -> bool {
        self >= Toughness::Finite(t)
    }
}

/// Prints `p/q` in lowest terms (always with a denominator) or `inf`.
impl fmt::Display for Toughness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Toughness::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Toughness::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Toughness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Toughness::Infinite);
        }
        parse_rational(s).map(Toughness::Finite)
    }
}

impl Serialize for Toughness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Toughness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `p/q` or an integer into a non-negative rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("not a rational: '{s}'"));
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.trim().parse().map_err(|_| bad())?),
    };
    if r < Rational::from_integer(0) {
        return Err(Error::invalid(format!("toughness threshold must be >= 0, got {s}")));
    }
    Ok(r)
}

/// A minimizing cutset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToughnessWitness {
    pub cutset: Vec<usize>,
    pub component_count: usize,
}

impl ToughnessWitness {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.cutset.len() as i64, self.component_count as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToughnessResult {
    pub value: Toughness,
    /// Present for every finite value.
    pub witness: Option<ToughnessWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToughnessConfig {
    pub max_order: usize,
}

impl Default for ToughnessConfig {
    fn default() -> Self {
        ToughnessConfig {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl ToughnessConfig {
    fn check(&self, g: &Graph) -> Result<Vec<u64>> {
        let limit = self.max_order.min(HARD_MAX_ORDER);
        let n = g.order();
        if n > limit {
            return Err(Error::TooLarge {
                what: "toughness enumeration",
                n,
                limit,
            });
        }
        Ok(g.masks().expect("order checked above"))
    }
}

pub fn toughness(g: &Graph) -> Result<ToughnessResult> {
    toughness_with(g, &ToughnessConfig::default())
}

pub fn toughness_with(g: &Graph, config: &ToughnessConfig) -> Result<ToughnessResult> {
    let masks = config.check(g)?;
    Ok(search(g, &masks, true))
}

/// Unpruned enumeration of every vertex subset.
pub fn toughness_definitional(g: &Graph) -> Result<ToughnessResult> {
    let masks = ToughnessConfig::default().check(g)?;
    Ok(search(g, &masks, false))
}

/// `tau(g) >= t`, stopping at the first cutset with `|S| < t * c(G - S)`.
pub fn is_t_tough(g: &Graph, t: Rational) -> Result<bool> {
    is_t_tough_with(g, t, &ToughnessConfig::default())
}

pub fn is_t_tough_with(g: &Graph, t: Rational, config: &ToughnessConfig) -> Result<bool> {
    if t < Rational::from_integer(0) {
        return Err(Error::invalid("toughness threshold must be >= 0"));
    }
    let masks = config.check(g)?;
    if g.is_complete() || t == Rational::from_integer(0) {
        return Ok(true);
    }
    let n = g.order();
    let full = full_mask(n);
    let (p, q) = (*t.numer(), *t.denom());
    let violates = |s: u64| -> bool {
        if is_redundant(&masks, s) {
            return false;
        }
        let c = mask_components(&masks, full & !s);
        c >= 2 && (s.count_ones() as i64) * q < p * c as i64
    };
    let found = if n >= PARALLEL_FROM {
        (0..=full).into_par_iter().any(violates)
    } else {
        (0..=full).any(violates)
    };
    Ok(!found)
}

/// `delta(g) >= 2t`: a non-complete `t`-tough graph always satisfies this,
/// since removing `N(v)` for a minimum-degree `v` isolates `v`.
pub fn min_degree_bound_check(g: &Graph, t: usize) -> bool {
    g.min_degree().is_some_and(|d| d >= 2 * t)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn is_redundant(masks: &[u64], s: u64) -> bool {
    BitIter(s).any(|v| masks[v] & !s == 0)
}

/// Best cutset so far: `size / comps`, ties broken by the lexicographically
/// least sorted vertex list.
#[derive(Clone, Copy)]
struct Best {
    set: u64,
    size: u64,
    comps: u64,
}

impl Best {
    fn cmp(&self, other: &Best) -> Ordering {
        (self.size * other.comps)
            .cmp(&(other.size * self.comps))
            .then_with(|| lex_cmp(self.set, other.set))
    }
}

/// Compares two vertex sets as ascending vertex lists, lexicographically.
fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let d = diff.trailing_zeros();
    let above = |x: u64| if d == 63 { 0 } else { x >> (d + 1) };
    // The lists agree below `d`; the one holding `d` is smaller unless the
    // other list has already ended.
    if a >> d & 1 == 1 {
        if above(b) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if above(a) != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn search(g: &Graph, masks: &[u64], pruned: bool) -> ToughnessResult {
    let n = g.order();
    if g.is_complete() {
        return ToughnessResult {
            value: Toughness::Infinite,
            witness: None,
        };
    }
    let full = full_mask(n);
    let scan = |range: std::ops::RangeInclusive<u64>| -> Option<Best> {
        let mut best: Option<Best> = None;
        for s in range {
            let size = s.count_ones() as u64;
            if pruned {
                // c(G - S) <= n - |S| bounds the ratio from below.
                if let Some(b) = &best {
                    if size * b.comps > b.size * (n as u64 - size) {
                        continue;
                    }
                }
                if is_redundant(masks, s) {
                    continue;
                }
            }
            let comps = mask_components(masks, full & !s) as u64;
            if comps < 2 {
                continue;
            }
            let cand = Best { set: s, size, comps };
            if best.is_none_or(|b| cand.cmp(&b) == Ordering::Less) {
                best = Some(cand);
            }
        }
        best
    };
    let best = if n >= PARALLEL_FROM {
        let chunk = 1u64 << (n - 6);
        (0..64u64)
            .into_par_iter()
            .filter_map(|i| scan(i * chunk..=i * chunk + chunk - 1))
            .reduce_with(|a, b| if a.cmp(&b) == Ordering::Greater { b } else { a })
    } else {
        scan(0..=full)
    }
    .expect("a non-complete graph has a cutset");
    ToughnessResult {
        value: Toughness::Finite(Rational::new(best.size as i64, best.comps as i64)),
        witness: Some(ToughnessWitness {
            cutset: BitIter(best.set).collect(),
            component_count: best.comps as usize,
        }),
    }
}
