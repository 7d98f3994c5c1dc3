//! Exact Hamiltonicity.
//!
//! Two independent engines decide the same question:
//!
//! * subset dynamic programming over vertex masks (exact, `n <= 20`), and
//! * depth-first backtracking from vertex 0 with degree-2 forcing and
//!   connectivity pruning of the unvisited part, bounded by a node budget.
//!
//! Both search in ascending vertex order, so certificates are reproducible.
//! Graphs on fewer than three vertices are never Hamiltonian.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest order handled by the subset DP.
pub const DP_LIMIT: usize = 20;

/// Default node-expansion cap for the backtracking engine.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// DP up to [`DP_LIMIT`] vertices, backtracking above.
    #[default]
    Auto,
    Dp,
    Backtrack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonConfig {
    pub engine: Engine,
    /// Backtracking node expansions allowed before reporting [`Error::Undecided`].
    pub budget: u64,
}

impl Default for HamiltonConfig {
    fn default() -> Self {
        HamiltonConfig {
            engine: Engine::Auto,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl HamiltonConfig {
    pub fn with_engine(engine: Engine) -> Self {
        HamiltonConfig {
            engine,
            ..Self::default()
        }
    }

    fn pick(&self, n: usize) -> Result<Engine> {
        match self.engine {
            Engine::Auto if n <= DP_LIMIT => Ok(Engine::Dp),
            Engine::Auto => Ok(Engine::Backtrack),
            Engine::Dp if n > DP_LIMIT => Err(Error::TooLarge {
                what: "subset dynamic programming",
                n,
                limit: DP_LIMIT,
            }),
            e => Ok(e),
        }
    }
}

/// A Hamiltonian cycle given as a vertex ordering; the closing edge joins the
/// last vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleCertificate {
    order: Vec<usize>,
}

impl CycleCertificate {
    pub fn new(order: Vec<usize>) -> Self {
        CycleCertificate { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// True iff `c` is a spanning cycle of `g`.
pub fn check_certificate(g: &Graph, c: &CycleCertificate) -> bool {
    let n = g.order();
    let order = c.order();
    if n < 3 || order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    order
        .iter()
        .zip(order.iter().cycle().skip(1))
        .all(|(&u, &v)| g.has_edge(u, v))
}

pub fn is_hamiltonian(g: &Graph) -> Result<bool> {
    is_hamiltonian_with(g, &HamiltonConfig::default())
}

pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<CycleCertificate>> {
    hamiltonian_cycle_with(g, &HamiltonConfig::default())
}

/// True iff `g` has a spanning path, optionally pinned at either end.
pub fn has_hamiltonian_path(g: &Graph, from: Option<usize>, to: Option<usize>) -> Result<bool> {
    has_hamiltonian_path_with(g, from, to, &HamiltonConfig::default())
}

pub fn is_hamiltonian_with(g: &Graph, config: &HamiltonConfig) -> Result<bool> {
    let n = g.order();
    if !cycle_possible(g) {
        return Ok(false);
    }
    match config.pick(n)? {
        Engine::Dp => Ok(dp_cycle_table(g).is_some()),
        _ => Ok(Backtracker::new(g, config.budget).cycle()?.is_some()),
    }
}

pub fn hamiltonian_cycle_with(g: &Graph, config: &HamiltonConfig) -> Result<Option<CycleCertificate>> {
    let n = g.order();
    if !cycle_possible(g) {
        return Ok(None);
    }
    let order = match config.pick(n)? {
        Engine::Dp => dp_cycle_table(g).map(|(table, end)| dp_reconstruct(g, &table, end)),
        _ => Backtracker::new(g, config.budget).cycle()?,
    };
    Ok(order.map(CycleCertificate::new))
}

pub fn has_hamiltonian_path_with(
    g: &Graph,
    from: Option<usize>,
    to: Option<usize>,
    config: &HamiltonConfig,
) -> Result<bool> {
    let n = g.order();
    for v in from.iter().chain(to.iter()) {
        g.check_vertex(*v)?;
    }
    if from.is_some() && from == to {
        return Err(Error::invalid("path endpoints must differ"));
    }
    match n {
        0 => return Ok(false),
        1 => return Ok(true),
        _ => {}
    }
    if !g.is_connected() {
        return Ok(false);
    }
    match config.pick(n)? {
        Engine::Dp => Ok(dp_path(g, from, to)),
        _ => Backtracker::new(g, config.budget).path(from, to),
    }
}

fn cycle_possible(g: &Graph) -> bool {
    g.order() >= 3 && g.min_degree().is_some_and(|d| d >= 2) && g.is_connected()
}

/// `table[m]` is the set of endpoints `v` such that some path starts at 0,
/// visits exactly the vertices of `m << 1` besides 0, and ends at `v`.
/// Returns the table and the chosen closing endpoint when a cycle exists.
fn dp_cycle_table(g: &Graph) -> Option<(Vec<u32>, usize)> {
    let n = g.order();
    let adj: Vec<u32> = (0..n).map(|v| g.mask(v) as u32).collect();
    let size = 1usize << (n - 1);
    let mut table = vec![0u32; size];
    for v in BitIter(adj[0] as u64) {
        table[1 << (v - 1)] = 1 << v;
    }
    for m in 1..size {
        if m & (m - 1) == 0 {
            continue;
        }
        let mut ends = 0u32;
        let mut rest = m;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let v = b + 1;
            if table[m & !(1 << b)] & adj[v] != 0 {
                ends |= 1 << v;
            }
        }
        table[m] = ends;
    }
    let closing = table[size - 1] & adj[0];
    (closing != 0).then(|| (table, closing.trailing_zeros() as usize))
}

fn dp_reconstruct(g: &Graph, table: &[u32], end: usize) -> Vec<usize> {
    let n = g.order();
    let mut m = (1usize << (n - 1)) - 1;
    let mut cur = end;
    let mut back = vec![cur];
    while m.count_ones() > 1 {
        m &= !(1 << (cur - 1));
        let prev = (table[m] & g.mask(cur) as u32).trailing_zeros() as usize;
        back.push(prev);
        cur = prev;
    }
    // Walking the cycle backwards from 0 starts at its lowest closing neighbor.
    let mut order = Vec::with_capacity(n);
    order.push(0);
    order.extend(back);
    order
}

fn dp_path(g: &Graph, from: Option<usize>, to: Option<usize>) -> bool {
    let n = g.order();
    let adj: Vec<u32> = (0..n).map(|v| g.mask(v) as u32).collect();
    let size = 1usize << n;
    let mut table = vec![0u32; size];
    for v in 0..n {
        if from.is_none_or(|f| f == v) {
            table[1 << v] = 1 << v;
        }
    }
    for m in 1..size {
        if m & (m - 1) == 0 {
            continue;
        }
        let mut ends = 0u32;
        for v in BitIter(m as u64) {
            if table[m & !(1 << v)] & adj[v] != 0 {
                ends |= 1 << v;
            }
        }
        table[m] = ends;
    }
    let wanted = to.map_or(u32::MAX, |t| 1 << t);
    table[size - 1] & wanted != 0
}

/// Depth-first search over simple paths with bit-row bookkeeping.
struct Backtracker<'g> {
    g: &'g Graph,
    words: usize,
    unvisited: Vec<u64>,
    path: Vec<usize>,
    budget: u64,
    expanded: u64,
}

impl<'g> Backtracker<'g> {
    fn new(g: &'g Graph, budget: u64) -> Self {
        let n = g.order();
        let words = n.div_ceil(64);
        let mut unvisited = vec![u64::MAX; words];
        if !n.is_multiple_of(64) {
            unvisited[words - 1] = (1u64 << (n % 64)) - 1;
        }
        Backtracker {
            g,
            words,
            unvisited,
            path: Vec::with_capacity(n),
            budget,
            expanded: 0,
        }
    }

    fn visit(&mut self, v: usize) {
        self.unvisited[v / 64] &= !(1 << (v % 64));
        self.path.push(v);
    }

    fn unvisit(&mut self, v: usize) {
        self.unvisited[v / 64] |= 1 << (v % 64);
        self.path.pop();
    }

    fn tick(&mut self) -> Result<()> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::Undecided { budget: self.budget });
        }
        Ok(())
    }

    fn unvisited_vertices(&self) -> Vec<usize> {
        self.unvisited
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| i * 64 + b))
            .collect()
    }

    fn count_in(&self, v: usize, set: &[u64]) -> usize {
        self.g
            .row(v)
            .iter()
            .zip(set)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn with_bits(&self, extra: &[usize]) -> Vec<u64> {
        let mut set = self.unvisited.clone();
        for &v in extra {
            set[v / 64] |= 1 << (v % 64);
        }
        set
    }

    fn unvisited_connected(&self) -> bool {
        let Some(start) = self.unvisited_vertices().first().copied() else {
            return true;
        };
        let mut reached = vec![0u64; self.words];
        reached[start / 64] |= 1 << (start % 64);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for (i, (&r, &un)) in self.g.row(u).iter().zip(&self.unvisited).enumerate() {
                let fresh = r & un & !reached[i];
                reached[i] |= fresh;
                stack.extend(BitIter(fresh).map(|b| i * 64 + b));
            }
        }
        reached == self.unvisited
    }

    fn cycle(mut self) -> Result<Option<Vec<usize>>> {
        self.visit(0);
        Ok(self.extend_cycle()?.then_some(self.path))
    }

    fn extend_cycle(&mut self) -> Result<bool> {
        self.tick()?;
        let start = self.path[0];
        let end = *self.path.last().unwrap();
        let open = self.unvisited_vertices();
        if open.is_empty() {
            return Ok(self.g.has_edge(end, start));
        }
        // Each open vertex needs two cycle edges among open vertices and the
        // two path ends; a neighbor of `end` with exactly two options must
        // come next.
        let avail = self.with_bits(&[start, end]);
        let mut forced = None;
        for &w in &open {
            let options = self.count_in(w, &avail);
            if options < 2 {
                return Ok(false);
            }
            if options == 2 && end != start && self.g.has_edge(w, end) {
                if forced.is_some() {
                    return Ok(false);
                }
                forced = Some(w);
            }
        }
        // The open vertices are traversed as one contiguous stretch.
        if !self.unvisited_connected() {
            return Ok(false);
        }
        let next: Vec<usize> = match forced {
            Some(w) => vec![w],
            None => open.into_iter().filter(|&w| self.g.has_edge(end, w)).collect(),
        };
        for w in next {
            self.visit(w);
            if self.extend_cycle()? {
                return Ok(true);
            }
            self.unvisit(w);
        }
        Ok(false)
    }

    fn path(mut self, from: Option<usize>, to: Option<usize>) -> Result<bool> {
        let n = self.g.order();
        let starts: Vec<usize> = match from {
            Some(f) => vec![f],
            None => (0..n).filter(|&v| Some(v) != to).collect(),
        };
        for s in starts {
            self.visit(s);
            if self.extend_path(to)? {
                return Ok(true);
            }
            self.unvisit(s);
        }
        Ok(false)
    }

    fn extend_path(&mut self, to: Option<usize>) -> Result<bool> {
        self.tick()?;
        let end = *self.path.last().unwrap();
        let open = self.unvisited_vertices();
        if open.is_empty() {
            return Ok(to.is_none_or(|t| t == end));
        }
        if to == Some(end) {
            return Ok(false);
        }
        // Open vertices need two path edges, except the final endpoint.
        let avail = self.with_bits(&[end]);
        let mut terminal = false;
        for &w in &open {
            match self.count_in(w, &avail) {
                0 => return Ok(false),
                1 => {
                    if terminal || to.is_some_and(|t| t != w) {
                        return Ok(false);
                    }
                    terminal = true;
                }
                _ => {}
            }
        }
        if !self.unvisited_connected() {
            return Ok(false);
        }
        let last = open.len() == 1;
        let next: Vec<usize> = open
            .into_iter()
            .filter(|&w| self.g.has_edge(end, w) && (last || Some(w) != to))
            .collect();
        for w in next {
            self.visit(w);
            if self.extend_path(to)? {
                return Ok(true);
            }
            self.unvisit(w);
        }
        Ok(false)
    }
}
