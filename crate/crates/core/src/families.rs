//! Deterministic graph generators.
//!
//! The counterexample family maps the path vertices `v_1, ..., v_n` to ids
//! `0, ..., n-1` (so `v_i` is id `i - 1`), with `x = v_1` and `y = v_n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A generated graph with named vertices and the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledFamily {
    #[serde(skip)]
    pub graph: Graph,
    pub family: String,
    pub params: BTreeMap<String, usize>,
    pub labels: BTreeMap<String, usize>,
}

impl LabeledFamily {
    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }
}

/// Family identifiers understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Counterexample,
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    CompleteMinusPerfectMatching,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Counterexample,
        FamilyKind::Cycle,
        FamilyKind::Path,
        FamilyKind::Complete,
        FamilyKind::CompleteBipartite,
        FamilyKind::CompleteMinusPerfectMatching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Counterexample => "counterexample",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Path => "path",
            FamilyKind::Complete => "complete",
            FamilyKind::CompleteBipartite => "complete_bipartite",
            FamilyKind::CompleteMinusPerfectMatching => "complete_minus_perfect_matching",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::invalid(format!("unknown family '{s}'")))
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Generates a member of `kind`. `n` is the vertex count except for
/// `CompleteBipartite`, which uses `a` and `b` (falling back to `n` for both).
pub fn generate(kind: FamilyKind, n: usize, a: Option<usize>, b: Option<usize>) -> Result<LabeledFamily> {
    let plain = |graph: Graph| LabeledFamily {
        graph,
        family: kind.name().to_string(),
        params: BTreeMap::from([("n".to_string(), n)]),
        labels: BTreeMap::new(),
    };
    Ok(match kind {
        FamilyKind::Counterexample => counterexample_graph(n)?,
        FamilyKind::Cycle => plain(cycle(n)?),
        FamilyKind::Path => plain(path(n)?),
        FamilyKind::Complete => plain(complete(n)),
        FamilyKind::CompleteMinusPerfectMatching => plain(complete_minus_perfect_matching(n)?),
        FamilyKind::CompleteBipartite => {
            let (a, b) = (a.unwrap_or(n), b.unwrap_or(n));
            LabeledFamily {
                graph: complete_bipartite(a, b)?,
                family: kind.name().to_string(),
                params: BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]),
                labels: BTreeMap::new(),
            }
        }
    })
}

/// The non-Hamiltonian, 1-tough graph `G(n)` for `n >= 7` that becomes
/// Hamiltonian after adding the edge `xy`, where `d(x) + d(y) = n - 1`.
///
/// Edges: the path `v_1 ... v_n`, the chord `x v_{n-2}`, and `y v_i` for every
/// `i` in `[2, n-2]` except `n-3`.
pub fn counterexample_graph(n: usize) -> Result<LabeledFamily> {
    if n < 7 {
        return Err(Error::invalid(format!("counterexample family needs n >= 7, got {n}")));
    }
    let v = |i: usize| i - 1;
    let (x, y) = (v(1), v(n));
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (v(i), v(i + 1))).collect();
    edges.push((x, v(n - 2)));
    edges.extend((2..=n - 2).filter(|&i| i != n - 3).map(|i| (y, v(i))));
    let graph = Graph::from_edges(n, edges)?;

    let labels = BTreeMap::from([
        ("x".to_string(), x),
        ("y".to_string(), y),
        ("v_n-4".to_string(), v(n - 4)),
        ("v_n-3".to_string(), v(n - 3)),
        ("v_n-2".to_string(), v(n - 2)),
        ("v_n-1".to_string(), v(n - 1)),
    ]);
    Ok(LabeledFamily {
        graph,
        family: FamilyKind::Counterexample.name().to_string(),
        params: BTreeMap::from([("n".to_string(), n)]),
        labels,
    })
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set(u, v, true);
        }
    }
    g
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::invalid("complete bipartite graph needs a, b >= 1"));
    }
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// `K_n` minus the matching `{0,1}, {2,3}, ...`; `n` must be even.
pub fn complete_minus_perfect_matching(n: usize) -> Result<Graph> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!("perfect matching needs even n >= 2, got {n}")));
    }
    let mut g = complete(n);
    for i in (0..n).step_by(2) {
        g.set(i, i + 1, false);
    }
    Ok(g)
}
