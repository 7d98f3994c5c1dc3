//! Theorem verification over graph sources.
//!
//! Each theorem is checked instance by instance: evaluate the hypothesis
//! (degree condition, toughness, degree-sum pairs) with the library's own
//! predicates, and when it holds, decide the conclusion with the exact
//! Hamiltonicity oracle. Counterexamples are kept as replayable witnesses.
//!
//! Counting conventions, per theorem:
//!
//! | theorem | hypothesis hit | non-vacuous hit |
//! |---|---|---|
//! | `thm1_chvatal` | condition holds | ... and some `d_i <= i` fired |
//! | `thm5_bc_closure` | always | closure added an edge |
//! | `thm_hoang_small_t` | condition holds and `t`-tough | ... and some `d_i <= i` fired |
//! | `thm4_strengthened`, `conj3_probe` | condition holds and `t`-tough | ... and the antecedent fired |
//! | `thm6_t_closure_edge` | `t`-tough with a nonadjacent pair of sum `>= n - t` | ... and `G` not Hamiltonian |
//! | `thm6b_bauer` | `t`-tough and `delta > n/(t+1) - 1` | ... and `G` not complete |
//! | `thm7_counterexample` | always | always |
//! | `thm8_small_n` | 1-tough with a nonadjacent pair of sum `>= n - 1` | ... and `G` not Hamiltonian |
//!
//! Work fans out over a rayon pool of `jobs` threads. Tallies are sums and
//! witnesses are sorted before emission, so reports do not depend on the
//! worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closure::t_closure;
use crate::codec::{encode_graph6, parse_graph6, GraphRecord};
use crate::conditions::{bauer_bound, chvatal_condition, hoang_condition, strengthened_condition};
use crate::error::{Error, Result};
use crate::families::{self, FamilyKind};
use crate::graph::{DegreeSequence, Graph};
use crate::hamilton::{is_hamiltonian_with, HamiltonConfig};
use crate::toughness::{is_t_tough_with, toughness_with, Rational, Toughness, ToughnessConfig};

/// Largest order for built-in labeled enumeration.
pub const MAX_ENUMERATION_ORDER: usize = 7;

const CHUNK: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Thm1Chvatal,
    Thm5BcClosure,
    ThmHoangSmallT,
    Thm4Strengthened,
    Thm6TClosureEdge,
    Thm6bBauer,
    Thm7Counterexample,
    Thm8SmallN,
    Conj3Probe,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Thm1Chvatal,
        TheoremId::Thm5BcClosure,
        TheoremId::ThmHoangSmallT,
        TheoremId::Thm4Strengthened,
        TheoremId::Thm6TClosureEdge,
        TheoremId::Thm6bBauer,
        TheoremId::Thm7Counterexample,
        TheoremId::Thm8SmallN,
        TheoremId::Conj3Probe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm1Chvatal => "thm1_chvatal",
            TheoremId::Thm5BcClosure => "thm5_bc_closure",
            TheoremId::ThmHoangSmallT => "thm_hoang_small_t",
            TheoremId::Thm4Strengthened => "thm4_strengthened",
            TheoremId::Thm6TClosureEdge => "thm6_t_closure_edge",
            TheoremId::Thm6bBauer => "thm6b_bauer",
            TheoremId::Thm7Counterexample => "thm7_counterexample",
            TheoremId::Thm8SmallN => "thm8_small_n",
            TheoremId::Conj3Probe => "conj3_probe",
        }
    }

    /// Toughness parameter used when the caller gives none.
    fn default_t(self) -> Option<usize> {
        match self {
            TheoremId::ThmHoangSmallT | TheoremId::Thm6bBauer => Some(1),
            TheoremId::Thm4Strengthened | TheoremId::Thm6TClosureEdge => Some(4),
            TheoremId::Conj3Probe => Some(2),
            _ => None,
        }
    }

    fn min_order(self) -> usize {
        match self {
            TheoremId::Thm5BcClosure => 0,
            TheoremId::Thm7Counterexample => 7,
            _ => 3,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomModel {
    /// Every pair is an edge with probability 1/2.
    Uniform,
    /// Near-complete graphs: even samples are `K_n` minus a random matching,
    /// odd samples are `K_n` minus up to `n/2` random edges.
    Dense,
}

/// Where instances come from.
pub enum Source {
    /// Every labeled graph on each requested order (`n <= 7`).
    Builtin,
    /// One member of the family per requested order; orders the family does
    /// not define are skipped.
    Family(FamilyKind),
    /// Seeded random graphs with orders drawn uniformly from the request.
    Random { samples: usize, model: RandomModel },
    /// Externally supplied records; orders outside the request are skipped.
    Stream(Box<dyn Iterator<Item = Result<GraphRecord>> + Send>),
}

impl Source {
    fn describe(&self) -> String {
        match self {
            Source::Builtin => "builtin".into(),
            Source::Family(k) => format!("family:{k}"),
            Source::Random { model, .. } => {
                format!("random:{}", serde_json::to_value(model).unwrap().as_str().unwrap())
            }
            Source::Stream(_) => "stream".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Orders to check, ascending and distinct.
    pub orders: Vec<usize>,
    pub t: Option<usize>,
    /// Mandatory for random sources.
    pub seed: Option<u64>,
    pub jobs: usize,
    /// Stop after this many instances and flag the report incomplete.
    pub max_instances: Option<u64>,
    pub hamilton: HamiltonConfig,
    pub toughness: ToughnessConfig,
}

impl VerifyConfig {
    pub fn new(orders: impl IntoIterator<Item = usize>) -> Self {
        let mut orders: Vec<usize> = orders.into_iter().collect();
        orders.sort_unstable();
        orders.dedup();
        VerifyConfig {
            orders,
            t: None,
            seed: None,
            jobs: 1,
            max_instances: None,
            hamilton: HamiltonConfig::default(),
            toughness: ToughnessConfig::default(),
        }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// A violating instance, sufficient to replay the check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub graph6: String,
    pub detail: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub orders: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<usize>,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_instances: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub params: ReportParams,
    pub instances_checked: u64,
    pub instances_by_order: BTreeMap<usize, u64>,
    pub hypothesis_hits: u64,
    pub nonvacuous_hits: u64,
    pub violation_count: u64,
    pub violations: Vec<Witness>,
    /// Records ignored because their order was not requested or the family
    /// is undefined there.
    pub skipped: u64,
    /// False when `max_instances` cut the run short.
    pub complete: bool,
    /// Elapsed time; kept out of the JSON so reports stay byte-stable.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} instances, {} hypothesis hits ({} non-vacuous), {} violations{} in {:.2?}",
            self.theorem,
            self.instances_checked,
            self.hypothesis_hits,
            self.nonvacuous_hits,
            self.violation_count,
            if self.complete { "" } else { " (incomplete)" },
            self.wall_time
        )
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `n <= 7` vertices. Bit `k` of the
/// enumeration index is the `k`-th pair in lexicographic `(u, v)` order.
pub fn enumerate_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::invalid(format!(
            "built-in enumeration stops at n = {MAX_ENUMERATION_ORDER}; use an external stream for n = {n}"
        )));
    }
    let pairs = pairs(n);
    Ok((0u64..1 << pairs.len()).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut rest = mask;
    while rest != 0 {
        let (u, v) = pairs[rest.trailing_zeros() as usize];
        g.set(u, v, true);
        rest &= rest - 1;
    }
    g
}

#[derive(Debug, Default, Clone, PartialEq)]
struct Outcome {
    hit: bool,
    nonvacuous: bool,
    violation: Option<BTreeMap<String, Value>>,
}

#[derive(Default)]
struct Tally {
    instances: u64,
    by_order: BTreeMap<usize, u64>,
    hits: u64,
    nonvacuous: u64,
    violations: Vec<Witness>,
}

impl Tally {
    fn record(&mut self, g: &Graph, outcome: Outcome) -> Result<()> {
        self.instances += 1;
        *self.by_order.entry(g.order()).or_default() += 1;
        self.hits += u64::from(outcome.hit);
        self.nonvacuous += u64::from(outcome.nonvacuous);
        if let Some(detail) = outcome.violation {
            self.violations.push(Witness {
                n: g.order(),
                graph6: encode_graph6(g)?,
                detail,
            });
        }
        Ok(())
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        for (n, c) in other.by_order {
            *self.by_order.entry(n).or_default() += c;
        }
        self.hits += other.hits;
        self.nonvacuous += other.nonvacuous;
        self.violations.extend(other.violations);
        self
    }
}

/// The per-instance check for one theorem and parameter set.
struct Checker {
    theorem: TheoremId,
    t: usize,
    hamilton: HamiltonConfig,
    toughness: ToughnessConfig,
}

impl Checker {
    fn new(theorem: TheoremId, config: &VerifyConfig) -> Result<Self> {
        let t = config.t.or(theorem.default_t()).unwrap_or(0);
        match theorem {
            TheoremId::ThmHoangSmallT if !(1..=3).contains(&t) => {
                return Err(Error::invalid(format!("{theorem} covers 1 <= t <= 3, got t = {t}")));
            }
            TheoremId::Thm4Strengthened if t < 4 => {
                return Err(Error::invalid(format!(
                    "{theorem} needs t >= 4 (use conj3_probe for t = 2, 3)"
                )));
            }
            TheoremId::Conj3Probe if !(2..=3).contains(&t) => {
                return Err(Error::invalid(format!("{theorem} probes t = 2 or 3, got t = {t}")));
            }
            TheoremId::Thm6TClosureEdge if t < 1 => {
                return Err(Error::invalid(format!("{theorem} needs t >= 1")));
            }
            _ => {}
        }
        Ok(Checker {
            theorem,
            t,
            hamilton: config.hamilton,
            toughness: config.toughness,
        })
    }

    fn ham(&self, g: &Graph) -> Result<bool> {
        is_hamiltonian_with(g, &self.hamilton)
    }

    fn tough(&self, g: &Graph, t: usize) -> Result<bool> {
        is_t_tough_with(g, Rational::from_integer(t as i64), &self.toughness)
    }

    fn toughness_value(&self, g: &Graph) -> Result<Value> {
        let res = toughness_with(g, &self.toughness)?;
        Ok(json!({ "value": res.value, "cutset": res.witness.map(|w| w.cutset) }))
    }

    fn check(&self, g: &Graph) -> Result<Outcome> {
        let n = g.order();
        let t = self.t;
        match self.theorem {
            TheoremId::Thm1Chvatal => {
                let verdict = chvatal_condition(&DegreeSequence::of(g))?;
                self.degree_condition_outcome(g, verdict.holds, verdict.fired, None)
            }
            TheoremId::ThmHoangSmallT => {
                let verdict = hoang_condition(&DegreeSequence::of(g), t)?;
                let hit = verdict.holds && self.tough(g, t)?;
                self.degree_condition_outcome(g, hit, verdict.fired, Some(t))
            }
            TheoremId::Thm4Strengthened | TheoremId::Conj3Probe => {
                let verdict = strengthened_condition(&DegreeSequence::of(g), t)?;
                let hit = verdict.holds && self.tough(g, t)?;
                self.degree_condition_outcome(g, hit, verdict.fired, Some(t))
            }
            TheoremId::Thm6bBauer => {
                let delta = g.min_degree().unwrap_or(0);
                let hit = bauer_bound(n, Rational::from_integer(t as i64), delta) && self.tough(g, t)?;
                let mut out = self.degree_condition_outcome(g, hit, true, Some(t))?;
                out.nonvacuous = hit && !g.is_complete();
                Ok(out)
            }
            TheoremId::Thm5BcClosure => {
                let (closed, trace) = t_closure(g, 0);
                let before = self.ham(g)?;
                let after = if trace.added_edges.is_empty() {
                    before
                } else {
                    self.ham(&closed)?
                };
                let violation = (before != after).then(|| {
                    BTreeMap::from([
                        ("hamiltonian".into(), json!(before)),
                        ("closure_hamiltonian".into(), json!(after)),
                        (
                            "closure_graph6".into(),
                            json!(encode_graph6(&closed).unwrap_or_default()),
                        ),
                        ("added_edges".into(), json!(trace.added_edges)),
                    ])
                });
                Ok(Outcome {
                    hit: true,
                    nonvacuous: !trace.added_edges.is_empty(),
                    violation,
                })
            }
            TheoremId::Thm6TClosureEdge => self.pair_outcome(g, n.saturating_sub(t), t),
            TheoremId::Thm8SmallN => self.pair_outcome(g, n.saturating_sub(1), 1),
            TheoremId::Thm7Counterexample => self.counterexample_outcome(g),
        }
    }

    /// Hypothesis `hit` already evaluated; the conclusion is Hamiltonicity.
    fn degree_condition_outcome(&self, g: &Graph, hit: bool, fired: bool, t: Option<usize>) -> Result<Outcome> {
        if !hit {
            return Ok(Outcome::default());
        }
        let violation = if self.ham(g)? {
            None
        } else {
            let mut detail = BTreeMap::from([
                ("degrees".into(), json!(DegreeSequence::of(g).as_slice())),
                ("hamiltonian".into(), json!(false)),
            ]);
            if t.is_some() {
                detail.insert("toughness".into(), self.toughness_value(g)?);
            }
            Some(detail)
        };
        Ok(Outcome {
            hit,
            nonvacuous: fired,
            violation,
        })
    }

    /// `t`-tough `g` with nonadjacent `x, y`, `d(x) + d(y) >= threshold`:
    /// `g` and `g + xy` must agree on Hamiltonicity.
    fn pair_outcome(&self, g: &Graph, threshold: usize, t: usize) -> Result<Outcome> {
        let deg = g.degrees();
        let pairs: Vec<(usize, usize)> = g.non_edges().filter(|&(u, v)| deg[u] + deg[v] >= threshold).collect();
        if pairs.is_empty() || !self.tough(g, t)? {
            return Ok(Outcome::default());
        }
        let before = self.ham(g)?;
        let mut violation = None;
        for &(x, y) in &pairs {
            let after = self.ham(&g.add_edge(x, y)?)?;
            if after != before {
                violation = Some(BTreeMap::from([
                    ("x".into(), json!(x)),
                    ("y".into(), json!(y)),
                    ("degree_sum".into(), json!(deg[x] + deg[y])),
                    ("hamiltonian".into(), json!(before)),
                    ("hamiltonian_plus_xy".into(), json!(after)),
                    ("toughness".into(), self.toughness_value(g)?),
                ]));
                break;
            }
        }
        Ok(Outcome {
            hit: true,
            nonvacuous: !before,
            violation,
        })
    }

    fn counterexample_outcome(&self, g: &Graph) -> Result<Outcome> {
        let n = g.order();
        let (x, y) = (0, n - 1);
        let mut failed = Vec::new();
        if g.has_edge(x, y) || g.degree(x) + g.degree(y) != n - 1 {
            failed.push("nonadjacent pair with degree sum n - 1");
        }
        let plus = if g.has_edge(x, y) { g.clone() } else { g.add_edge(x, y)? };
        if self.ham(g)? || !self.ham(&plus)? {
            failed.push("g + xy Hamiltonian and g not");
        }
        let tau = toughness_with(g, &self.toughness)?.value;
        if tau != Toughness::Finite(Rational::from_integer(1)) {
            failed.push("toughness exactly 1");
        }
        let violation = (!failed.is_empty())
            .then(|| BTreeMap::from([("failed".into(), json!(failed)), ("toughness".into(), json!(tau))]));
        Ok(Outcome {
            hit: true,
            nonvacuous: true,
            violation,
        })
    }
}

/// Runs `theorem` over `source`.
pub fn verify_theorem(theorem: TheoremId, config: &VerifyConfig, source: Source) -> Result<VerificationReport> {
    let started = Instant::now();
    if config.orders.is_empty() {
        return Err(Error::invalid("empty order range"));
    }
    if let Some(&low) = config.orders.iter().find(|&&n| n < theorem.min_order()) {
        return Err(Error::invalid(format!(
            "{theorem} needs n >= {}, got n = {low}",
            theorem.min_order()
        )));
    }
    let source = match (theorem, source) {
        (TheoremId::Thm7Counterexample, Source::Builtin | Source::Family(FamilyKind::Counterexample)) => {
            Source::Family(FamilyKind::Counterexample)
        }
        (TheoremId::Thm7Counterexample, _) => {
            return Err(Error::invalid(
                "thm7_counterexample runs on the counterexample family only",
            ));
        }
        (_, s) => s,
    };
    let checker = Checker::new(theorem, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;

    let mut params = ReportParams {
        orders: config.orders.clone(),
        t: (checker.t > 0 || theorem.default_t().is_some()).then_some(checker.t),
        source: source.describe(),
        seed: None,
        samples: None,
        max_instances: config.max_instances,
    };
    let budget = config.max_instances.unwrap_or(u64::MAX);
    let mut run = Run {
        checker: &checker,
        pool: &pool,
        tally: Tally::default(),
        skipped: 0,
        budget,
        complete: true,
    };

    match source {
        Source::Builtin => {
            for &n in &config.orders {
                let pairs = pairs(n);
                if n > MAX_ENUMERATION_ORDER {
                    enumerate_labeled_graphs(n).map(drop)?;
                }
                let total = 1u64 << pairs.len();
                let mut start = 0;
                while start < total && run.has_room() {
                    let end = (start + CHUNK as u64).min(total).min(start + run.room());
                    run.process_range(start, end, |mask| Ok(Some(graph_from_mask(n, &pairs, mask))))?;
                    start = end;
                }
                if start < total {
                    run.complete = false;
                }
            }
        }
        Source::Family(kind) => {
            for &n in &config.orders {
                match families::generate(kind, n, None, None) {
                    Ok(fam) => run.process_batch(vec![fam.graph])?,
                    Err(Error::InvalidParameter(_)) => run.skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Source::Random { samples, model } => {
            let seed = config
                .seed
                .ok_or_else(|| Error::invalid("random sources need an explicit seed"))?;
            params.seed = Some(seed);
            params.samples = Some(samples);
            let orders = config.orders.clone();
            let mut start = 0u64;
            let total = samples as u64;
            while start < total && run.has_room() {
                let end = (start + CHUNK as u64).min(total).min(start + run.room());
                run.process_range(start, end, |i| random_graph(seed, i, &orders, model).map(Some))?;
                start = end;
            }
            if start < total {
                run.complete = false;
            }
        }
        Source::Stream(records) => {
            let mut records = records.peekable();
            while records.peek().is_some() {
                let mut batch = Vec::with_capacity(CHUNK);
                while batch.len() < CHUNK {
                    let Some(rec) = records.next() else { break };
                    let rec = rec?;
                    if config.orders.binary_search(&rec.graph.order()).is_ok() {
                        batch.push(rec.graph);
                    } else {
                        run.skipped += 1;
                    }
                }
                let room = run.room() as usize;
                if batch.len() > room {
                    batch.truncate(room);
                    run.complete = false;
                }
                run.process_batch(batch)?;
                if !run.has_room() {
                    if records.peek().is_some() {
                        run.complete = false;
                    }
                    break;
                }
            }
        }
    }

    let Run {
        tally,
        skipped,
        complete,
        ..
    } = run;
    let mut violations = tally.violations;
    violations.sort_by_cached_key(|w| {
        (
            w.n,
            w.graph6.clone(),
            serde_json::to_string(&w.detail).unwrap_or_default(),
        )
    });
    Ok(VerificationReport {
        theorem,
        params,
        instances_checked: tally.instances,
        instances_by_order: tally.by_order,
        hypothesis_hits: tally.hits,
        nonvacuous_hits: tally.nonvacuous,
        violation_count: violations.len() as u64,
        violations,
        skipped,
        complete,
        wall_time: started.elapsed(),
    })
}

struct Run<'a> {
    checker: &'a Checker,
    pool: &'a rayon::ThreadPool,
    tally: Tally,
    skipped: u64,
    budget: u64,
    complete: bool,
}

impl Run<'_> {
    fn room(&self) -> u64 {
        self.budget.saturating_sub(self.tally.instances)
    }

    fn has_room(&self) -> bool {
        self.room() > 0
    }

    fn process_range<F>(&mut self, start: u64, end: u64, make: F) -> Result<()>
    where
        F: Fn(u64) -> Result<Option<Graph>> + Sync,
    {
        let checker = self.checker;
        let part = self.pool.install(|| {
            (start..end)
                .into_par_iter()
                .try_fold(Tally::default, |mut acc, i| -> Result<Tally> {
                    if let Some(g) = make(i)? {
                        acc.record(&g, checker.check(&g)?)?;
                    }
                    Ok(acc)
                })
                .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
        })?;
        self.tally = std::mem::take(&mut self.tally).merge(part);
        Ok(())
    }

    fn process_batch(&mut self, batch: Vec<Graph>) -> Result<()> {
        self.process_range(0, batch.len() as u64, |i| Ok(Some(batch[i as usize].clone())))
    }
}

/// Sample `index` of a seeded random source. Each sample has its own
/// ChaCha stream, so the draw does not depend on scheduling.
pub fn random_graph(seed: u64, index: u64, orders: &[usize], model: RandomModel) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = orders[rng.random_range(0..orders.len())];
    let all = pairs(n);
    let g = match model {
        RandomModel::Uniform => {
            let mut g = Graph::empty(n);
            for &(u, v) in &all {
                if rng.random_bool(0.5) {
                    g.set(u, v, true);
                }
            }
            g
        }
        RandomModel::Dense => {
            let mut g = families::complete(n);
            if n >= 2 {
                let k = rng.random_range(1..=n / 2);
                if index.is_multiple_of(2) {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    for pair in perm.chunks_exact(2).take(k) {
                        g.set(pair[0], pair[1], false);
                    }
                } else {
                    for &(u, v) in all.choose_multiple(&mut rng, k) {
                        g.set(u, v, false);
                    }
                }
            }
            g
        }
    };
    Ok(g)
}

/// Re-runs the check that produced `witness` and confirms it reproduces.
pub fn replay(theorem: TheoremId, config: &VerifyConfig, witness: &Witness) -> Result<bool> {
    let checker = Checker::new(theorem, config)?;
    let g = parse_graph6(&witness.graph6)?;
    Ok(checker.check(&g)?.violation.as_ref() == Some(&witness.detail))
}

/// Searches for graphs that are `t`-tough (`t` in {2, 3}) and satisfy the
/// strengthened degree condition yet are not Hamiltonian. `budget` caps the
/// number of instances; a run cut short is flagged incomplete.
pub fn conjecture_probe(
    t: usize,
    orders: impl IntoIterator<Item = usize>,
    source: Source,
    budget: u64,
    seed: Option<u64>,
) -> Result<VerificationReport> {
    let mut config = VerifyConfig::new(orders).with_t(t);
    config.seed = seed;
    config.max_instances = Some(budget);
    verify_theorem(TheoremId::Conj3Probe, &config, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::stream_reader;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled_graphs(6).unwrap().count(), 32768);
        assert!(enumerate_labeled_graphs(8).is_err());
        let first: Vec<Graph> = enumerate_labeled_graphs(3).unwrap().collect();
        assert_eq!(first[0], Graph::empty(3));
        assert_eq!(first[1], Graph::from_edges(3, [(0, 1)]).unwrap());
        assert_eq!(first[7], families::complete(3));
    }

    #[test]
    fn labeled_hamiltonian_graphs_on_four_vertices() {
        // Oracle: a 4-vertex graph is Hamiltonian iff it contains one of the
        // three 4-cycles on {0,1,2,3}.
        let cycles: [[(usize, usize); 4]; 3] = [
            [(0, 1), (1, 2), (2, 3), (0, 3)],
            [(0, 1), (1, 3), (2, 3), (0, 2)],
            [(0, 2), (1, 2), (1, 3), (0, 3)],
        ];
        let mut oracle = 0;
        let mut solver = 0;
        for g in enumerate_labeled_graphs(4).unwrap() {
            if cycles.iter().any(|c| c.iter().all(|&(u, v)| g.has_edge(u, v))) {
                oracle += 1;
            }
            if crate::hamilton::is_hamiltonian(&g).unwrap() {
                solver += 1;
            }
        }
        // K4, the three K4-minus-an-edge, and the three bare 4-cycles.
        assert_eq!(oracle, 10);
        assert_eq!(solver, oracle);
    }

    #[test]
    fn theorem_names_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
            assert_eq!(serde_json::to_value(id).unwrap(), json!(id.name()));
        }
    }

    #[test]
    fn thm8_small_orders_have_no_violations() {
        let config = VerifyConfig::new(3..=5);
        let report = verify_theorem(TheoremId::Thm8SmallN, &config, Source::Builtin).unwrap();
        assert_eq!(report.instances_checked, 8 + 64 + 1024);
        assert_eq!(report.violation_count, 0);
        assert!(report.hypothesis_hits >= report.nonvacuous_hits);
        assert!(report.hypothesis_hits > 0);
    }

    #[test]
    fn thm7_family_report() {
        let config = VerifyConfig::new(7..=9);
        let report = verify_theorem(TheoremId::Thm7Counterexample, &config, Source::Builtin).unwrap();
        assert_eq!(report.instances_checked, 3);
        assert_eq!(report.violation_count, 0);
        assert!(verify_theorem(TheoremId::Thm7Counterexample, &VerifyConfig::new([6]), Source::Builtin).is_err());
    }

    #[test]
    fn thm6_at_t_equal_one_finds_the_counterexample() {
        // The single-edge closure statement is false at t = 1: G(7) witnesses it.
        let g = families::counterexample_graph(7).unwrap().graph;
        let config = VerifyConfig::new([7]).with_t(1);
        let records = vec![Ok(GraphRecord {
            graph: g.clone(),
            source_line: None,
            format: crate::codec::Format::Graph6,
        })];
        let report = verify_theorem(
            TheoremId::Thm6TClosureEdge,
            &config,
            Source::Stream(Box::new(records.into_iter())),
        )
        .unwrap();
        assert_eq!(report.violation_count, 1);
        let w = &report.violations[0];
        assert_eq!(w.graph6, encode_graph6(&g).unwrap());
        assert_eq!(w.detail["x"], json!(0));
        assert_eq!(w.detail["y"], json!(6));
        assert!(replay(TheoremId::Thm6TClosureEdge, &config, w).unwrap());
    }

    #[test]
    fn thm8_extended_to_seven_vertices_finds_violations() {
        let config = VerifyConfig::new([7]);
        let g = families::counterexample_graph(7).unwrap().graph;
        let text = format!("{}\n", encode_graph6(&g).unwrap());
        let stream = stream_reader(std::io::Cursor::new(text.into_bytes()), None);
        let report = verify_theorem(TheoremId::Thm8SmallN, &config, Source::Stream(Box::new(stream))).unwrap();
        assert_eq!(report.violation_count, 1);
        assert!(replay(TheoremId::Thm8SmallN, &config, &report.violations[0]).unwrap());
    }

    #[test]
    fn stream_and_builtin_agree() {
        let config = VerifyConfig::new(3..=5);
        let mut text = String::new();
        for n in 3..=5 {
            for g in enumerate_labeled_graphs(n).unwrap() {
                text.push_str(&encode_graph6(&g).unwrap());
                text.push('\n');
            }
        }
        for theorem in [TheoremId::Thm1Chvatal, TheoremId::Thm8SmallN, TheoremId::Thm5BcClosure] {
            let a = verify_theorem(theorem, &config, Source::Builtin).unwrap();
            let stream = stream_reader(std::io::Cursor::new(text.clone().into_bytes()), None);
            let mut b = verify_theorem(theorem, &config, Source::Stream(Box::new(stream))).unwrap();
            b.params.source = a.params.source.clone();
            b.wall_time = a.wall_time;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn stream_skips_unrequested_orders() {
        let text = "Bw\nDhc\n";
        let stream = stream_reader(text.as_bytes(), None);
        let report = verify_theorem(
            TheoremId::Thm1Chvatal,
            &VerifyConfig::new([5]),
            Source::Stream(Box::new(stream)),
        )
        .unwrap();
        assert_eq!((report.instances_checked, report.skipped), (1, 1));
    }

    #[test]
    fn stream_errors_propagate() {
        let stream = stream_reader("Bw\n!!\n".as_bytes(), None);
        let err = verify_theorem(
            TheoremId::Thm1Chvatal,
            &VerifyConfig::new([3]),
            Source::Stream(Box::new(stream)),
        );
        assert!(matches!(err, Err(Error::ParseLine { line: 2, .. })));
    }

    #[test]
    fn random_sources_need_a_seed_and_are_reproducible() {
        let source = || Source::Random {
            samples: 50,
            model: RandomModel::Uniform,
        };
        let config = VerifyConfig::new(5..=8);
        assert!(verify_theorem(TheoremId::Thm1Chvatal, &config, source()).is_err());
        let config = config.with_seed(7);
        let a = verify_theorem(TheoremId::Thm1Chvatal, &config, source()).unwrap();
        let b = verify_theorem(TheoremId::Thm1Chvatal, &config.clone().with_jobs(4), source()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.params.seed, Some(7));
        assert_eq!(a.instances_checked, 50);
        assert_eq!(
            random_graph(7, 3, &[9], RandomModel::Dense).unwrap(),
            random_graph(7, 3, &[9], RandomModel::Dense).unwrap()
        );
    }

    #[test]
    fn budget_marks_reports_incomplete() {
        let report = conjecture_probe(2, 3..=5, Source::Builtin, 100, None).unwrap();
        assert_eq!(report.instances_checked, 100);
        assert!(!report.complete);
        let full = conjecture_probe(2, 3..=5, Source::Builtin, 10_000, None).unwrap();
        assert!(full.complete);
        assert_eq!(full.violation_count, 0);
    }

    #[test]
    fn parameter_validation() {
        let c = VerifyConfig::new(3..=4);
        assert!(verify_theorem(TheoremId::Thm4Strengthened, &c.clone().with_t(3), Source::Builtin).is_err());
        assert!(verify_theorem(TheoremId::Conj3Probe, &c.clone().with_t(4), Source::Builtin).is_err());
        assert!(verify_theorem(TheoremId::ThmHoangSmallT, &c.clone().with_t(4), Source::Builtin).is_err());
        assert!(verify_theorem(TheoremId::Thm1Chvatal, &VerifyConfig::new(2..=3), Source::Builtin).is_err());
        assert!(verify_theorem(TheoremId::Thm1Chvatal, &VerifyConfig::new(8..=8), Source::Builtin).is_err());
        assert!(verify_theorem(TheoremId::Thm1Chvatal, &VerifyConfig::new([]), Source::Builtin).is_err());
    }

    #[test]
    fn family_source_skips_undefined_orders() {
        let config = VerifyConfig::new(10..=12);
        let report = verify_theorem(
            TheoremId::Thm4Strengthened,
            &config,
            Source::Family(FamilyKind::CompleteMinusPerfectMatching),
        )
        .unwrap();
        assert_eq!((report.instances_checked, report.skipped), (2, 1));
        assert_eq!(report.hypothesis_hits, 2);
        assert_eq!(report.violation_count, 0);
    }
}
