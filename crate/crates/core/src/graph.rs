//! Simple undirected graphs stored as bit rows, plus the degree machinery
//! (sorted degree sequences, universal cliques, the `U^alpha` position sets)
//! that the sufficiency conditions are phrased in.
//!
//! Vertex ids are `0..n`. Degree sequences are sorted non-decreasing and are
//! indexed 1-based at their public surface, so `seq.get(1)` is the minimum
//! degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is one fixed-width bit row per vertex. Values are immutable from
/// the outside: edge operations return new graphs.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::EdgeExists(u.min(v), u.max(v)));
            }
            g.set(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from per-vertex neighbor masks.
    ///
    /// The masks must be symmetric and loop-free; this is checked.
    pub fn from_masks(masks: &[u64]) -> Result<Self> {
        let n = masks.len();
        if n > WORD {
            return Err(Error::TooLarge {
                what: "mask construction",
                n,
                limit: WORD,
            });
        }
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            if n < WORD && m >> n != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: WORD - 1 - m.leading_zeros() as usize,
                    n,
                });
            }
            if m >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in BitIter(m) {
                if masks[v] >> u & 1 == 0 {
                    return Err(Error::invalid(format!("asymmetric adjacency between {u} and {v}")));
                }
            }
            if n > 0 {
                g.bits[u] = m;
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// The bit row of `v`: bit `w` of word `w / 64` is set iff `v ~ w`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Neighbor mask of `v` as a single word. Only meaningful for `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.bits[v * self.words]
    }

    /// All neighbor masks, one word per vertex. Requires `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= WORD).then(|| (0..self.n).map(|v| self.mask(v)).collect())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| i * WORD + b))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Nonadjacent pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// `G + uv`. Fails on loops, bad ids, and edges already present.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::EdgeExists(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.set(u, v, true);
        Ok(g)
    }

    /// `G - uv`. Fails on loops, bad ids, and missing edges.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeMissing(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.set(u, v, false);
        Ok(g)
    }

    /// True iff every degree equals `n - 1` (vacuously true for `n <= 1`).
    pub fn is_complete(&self) -> bool {
        self.n <= 1 || 2 * self.edge_count() == self.n * (self.n - 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// `c(G)`.
    pub fn component_count(&self) -> usize {
        let alive = vec![true; self.n];
        self.count_components(&alive)
    }

    /// `c(G - S)`; zero when `S` covers every vertex.
    pub fn components_after_removal(&self, removed: &[usize]) -> Result<usize> {
        let mut alive = vec![true; self.n];
        for &v in removed {
            self.check_vertex(v)?;
            alive[v] = false;
        }
        Ok(self.count_components(&alive))
    }

    /// Component sizes of `G - S`, sorted ascending.
    pub fn component_sizes_after_removal(&self, removed: &[usize]) -> Result<Vec<usize>> {
        let mut alive = vec![true; self.n];
        for &v in removed {
            self.check_vertex(v)?;
            alive[v] = false;
        }
        let mut sizes = Vec::new();
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            sizes.push(self.flood(s, &alive, &mut seen));
        }
        sizes.sort_unstable();
        Ok(sizes)
    }

    /// The graph obtained by mapping vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    /// Toggles adjacency without validation. Callers guarantee `u != v`.
    pub(crate) fn set(&mut self, u: usize, v: usize, on: bool) {
        let (wu, bu) = (u * self.words + v / WORD, v % WORD);
        let (wv, bv) = (v * self.words + u / WORD, u % WORD);
        if on {
            self.bits[wu] |= 1 << bu;
            self.bits[wv] |= 1 << bv;
        } else {
            self.bits[wu] &= !(1 << bu);
            self.bits[wv] &= !(1 << bv);
        }
    }

    fn count_components(&self, alive: &[bool]) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if alive[s] && !seen[s] {
                self.flood(s, alive, &mut seen);
                count += 1;
            }
        }
        count
    }

    fn flood(&self, s: usize, alive: &[bool], seen: &mut [bool]) -> usize {
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for w in self.neighbors(u) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        size
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Iterates the set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Number of components of the subgraph induced on `alive`, for graphs given
/// as neighbor masks (`n <= 64`).
#[inline]
pub(crate) fn mask_components(masks: &[u64], alive: u64) -> usize {
    let mut rest = alive;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0;
            for v in BitIter(frontier) {
                grow |= masks[v];
            }
            frontier = grow & alive & !comp;
            comp |= frontier;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

/// True iff the subgraph induced on `alive` is connected (empty counts as connected).
#[cfg(test)]
pub(crate) fn mask_connected(masks: &[u64], alive: u64) -> bool {
    if alive == 0 {
        return true;
    }
    let mut comp = alive & alive.wrapping_neg();
    let mut frontier = comp;
    while frontier != 0 {
        let mut grow = 0;
        for v in BitIter(frontier) {
            grow |= masks[v];
        }
        frontier = grow & alive & !comp;
        comp |= frontier;
    }
    comp == alive
}

/// Degrees sorted non-decreasing, with a witness labeling: `labeling[i]` is
/// the vertex realizing the degree at 0-based position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    labeling: Vec<usize>,
}

impl DegreeSequence {
    /// The sorted degree multiset of `g`; ties are broken by ascending vertex id.
    pub fn of(g: &Graph) -> Self {
        Self::sorted(g.degrees())
    }

    /// Sorts an arbitrary degree list. Every entry must lie in `[0, n-1]`.
    pub fn from_degrees(degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if let Some(&d) = degrees.iter().find(|&&d| d >= n.max(1)) {
            return Err(Error::invalid(format!(
                "degree {d} exceeds n - 1 = {}",
                n.saturating_sub(1)
            )));
        }
        Ok(Self::sorted(degrees))
    }

    fn sorted(raw: Vec<usize>) -> Self {
        let mut labeling: Vec<usize> = (0..raw.len()).collect();
        labeling.sort_by_key(|&v| (raw[v], v));
        let degrees = labeling.iter().map(|&v| raw[v]).collect();
        DegreeSequence { degrees, labeling }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `d_i` for 1-based `i`; `None` outside `[1, n]`.
    pub fn get(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|k| self.degrees.get(k).copied())
    }

    /// `d_i` for a signed 1-based index; `None` outside `[1, n]`.
    pub fn get_signed(&self, i: i64) -> Option<usize> {
        usize::try_from(i).ok().and_then(|i| self.get(i))
    }

    /// The vertex `v_i` realizing `d_i`, 1-based.
    pub fn vertex(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|k| self.labeling.get(k).copied())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degrees
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.degrees.first().copied()
    }
}

/// `{v : deg(v) = n - 1}`, the unique maximum universal clique.
pub fn universal_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&v| g.degree(v) + 1 == n).collect()
}

/// Size and position range of `U^alpha = {v_i : d_i >= n - alpha}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UAlpha {
    pub size: usize,
    /// First qualifying 1-based position; qualifying positions are
    /// `first_index..=n`. Equals `n + 1` when the set is empty.
    pub first_index: usize,
    /// False when `alpha` lies outside `[1, floor((n-1)/2)]`.
    pub in_range: bool,
}

pub fn u_alpha(seq: &DegreeSequence, alpha: i64) -> UAlpha {
    let n = seq.len();
    let half = (n.saturating_sub(1) / 2) as i64;
    let in_range = (1..=half).contains(&alpha);
    let threshold = n as i64 - alpha;
    // Sorted non-decreasing, so qualifying positions form a suffix.
    let first = seq.as_slice().partition_point(|&d| (d as i64) < threshold);
    UAlpha {
        size: n - first,
        first_index: first + 1,
        in_range,
    }
}
