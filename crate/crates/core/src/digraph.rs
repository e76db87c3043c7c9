//! Directed graphs without self-loops and their product algebra.
//!
//! Edges are stored as two dense bit matrices (out- and in-adjacency), so
//! `has_edge` is a single bit test and neighbourhoods iterate word by word.
//! Vertices of products are indexed row-major: the vertex `(x, y)` of
//! `G × H` has index `x * |V(H)| + y`, and the vertex of `Gⁿ` encoding the
//! word `(x₁, …, xₙ)` has index `x₁·|V|ⁿ⁻¹ + … + xₙ`.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count any graph operation accepts.
pub const MAX_VERTICES: usize = 1 << 24;

/// A finite directed graph on vertices `0..vertex_count` with no self-loops.
#[derive(Clone)]
pub struct DirectedGraph {
    n: usize,
    words: usize,
    out_rows: Vec<u64>,
    in_rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what: "vertex count",
            actual: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

impl DirectedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        let words = n.div_ceil(64).max(1);
        Ok(DirectedGraph {
            n,
            words,
            out_rows: vec![0; n * words],
            in_rows: vec![0; n * words],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Repeated edges are kept once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// The complete bidirectional graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        Self::empty(n)?.complement()
    }

    /// Directed cycle `0 → 1 → … → n-1 → 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        if n < 2 {
            return Self::empty(n);
        }
        Self::from_edges(n, &edges)
    }

    /// Directed path `0 → 1 → … → n-1`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Attaches vertex labels. The label count must equal the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.n,
            });
        }
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.out_rows[u * w + v / 64] |= 1 << (v % 64);
        self.in_rows[v * w + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.out_rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Either `(u, v)` or `(v, u)` is an edge.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// Out-neighbourhood of `u` as a bit row.
    #[inline]
    pub fn out_row(&self, u: usize) -> &[u64] {
        &self.out_rows[u * self.words..(u + 1) * self.words]
    }

    /// In-neighbourhood of `v` as a bit row.
    #[inline]
    pub fn in_row(&self, v: usize) -> &[u64] {
        &self.in_rows[v * self.words..(v + 1) * self.words]
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.out_row(u))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.in_row(v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(indeg, outdeg)` for every vertex.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .map(|v| (self.in_degree(v), self.out_degree(v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.out_rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    /// Strong product `self × other`.
    pub fn strong_product(&self, other: &DirectedGraph) -> Result<DirectedGraph> {
        let (a, b) = (self.n, other.n);
        let n = a.checked_mul(b).ok_or(Error::SizeLimit {
            what: "product vertex count",
            actual: usize::MAX,
            limit: MAX_VERTICES,
        })?;
        let mut g = DirectedGraph::empty(n)?;
        for x in 0..a {
            let xs: Vec<usize> = std::iter::once(x).chain(self.out_neighbors(x)).collect();
            for y in 0..b {
                let ys: Vec<usize> = std::iter::once(y).chain(other.out_neighbors(y)).collect();
                let from = x * b + y;
                for &x2 in &xs {
                    for &y2 in &ys {
                        let to = x2 * b + y2;
                        if to != from {
                            g.set_edge(from, to);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// `n`-fold strong power. `n = 0` is rejected.
    pub fn strong_power(&self, n: usize) -> Result<DirectedGraph> {
        self.power(n, DirectedGraph::strong_product)
    }

    /// Weak product `self · other`: an edge in either coordinate suffices.
    pub fn weak_product(&self, other: &DirectedGraph) -> Result<DirectedGraph> {
        let (a, b) = (self.n, other.n);
        let n = a.checked_mul(b).ok_or(Error::SizeLimit {
            what: "product vertex count",
            actual: usize::MAX,
            limit: MAX_VERTICES,
        })?;
        let mut g = DirectedGraph::empty(n)?;
        for x in 0..a {
            for y in 0..b {
                let from = x * b + y;
                for x2 in 0..a {
                    let first = self.has_edge(x, x2);
                    for y2 in 0..b {
                        if (first || other.has_edge(y, y2)) && x2 * b + y2 != from {
                            g.set_edge(from, x2 * b + y2);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// `n`-fold weak power. `n = 0` is rejected.
    pub fn weak_power(&self, n: usize) -> Result<DirectedGraph> {
        self.power(n, DirectedGraph::weak_product)
    }

    fn power(
        &self,
        n: usize,
        product: fn(&DirectedGraph, &DirectedGraph) -> Result<DirectedGraph>,
    ) -> Result<DirectedGraph> {
        if n == 0 {
            return Err(Error::invalid("graph power exponent must be at least 1"));
        }
        let total = (self.n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > MAX_VERTICES as u128 {
            return Err(Error::SizeLimit {
                what: "power vertex count",
                actual: usize::try_from(total).unwrap_or(usize::MAX),
                limit: MAX_VERTICES,
            });
        }
        let mut acc = self.clone();
        acc.labels = None;
        for _ in 1..n {
            acc = product(&acc, self)?;
        }
        Ok(acc)
    }

    /// Complement: all non-edges except the diagonal.
    pub fn complement(&self) -> Result<DirectedGraph> {
        let mut g = DirectedGraph::empty(self.n)?;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Lexicographically least topological order, or `None` when a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for v in self.out_neighbors(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// True iff the graph has no directed cycle. Bidirectional edges are cycles.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Subgraph induced by `subset`, reindexed in ascending vertex order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<DirectedGraph> {
        let mut verts = subset.to_vec();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        verts.sort_unstable();
        verts.dedup();
        let mut g = DirectedGraph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(verts.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    /// True iff the subgraph induced by `subset` has no edges.
    pub fn is_independent(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&u| subset.iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True iff the subgraph induced by `subset` is acyclic.
    pub fn induces_acyclic(&self, subset: &[usize]) -> bool {
        self.induced_subgraph(subset)
            .map(|g| g.is_acyclic())
            .unwrap_or(false)
    }

    /// Serializes in the text graph format.
    pub fn to_text(&self) -> String {
        let mut s = format!("digraph {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the text graph format: a `digraph <n>` header followed by one
    /// `u v` edge per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<DirectedGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `digraph <vertex_count>` header"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("digraph") {
            return Err(Error::parse(hline, "header must start with `digraph`"));
        }
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(hline, "bad vertex count"))?;
        if parts.next().is_some() {
            return Err(Error::parse(hline, "trailing tokens in header"));
        }
        let mut g = DirectedGraph::empty(n).map_err(|e| Error::parse(hline, e.to_string()))?;
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let [a, b] = toks[..] else {
                return Err(Error::parse(line, "expected `u v`"));
            };
            let u: usize = a
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex `{a}`")))?;
            let v: usize = b
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex `{b}`")))?;
            if u >= n || v >= n {
                return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
            }
            if u == v {
                return Err(Error::parse(line, format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }
}

impl FromStr for DirectedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DirectedGraph::parse(s)
    }
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out_rows == other.out_rows
    }
}

impl Eq for DirectedGraph {}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectedGraph")
            .field("vertex_count", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Exact equality of vertex count and edge set; labels are ignored.
pub fn graphs_equal(g: &DirectedGraph, h: &DirectedGraph) -> bool {
    g == h
}

/// Iterates the set bits of a bit row in ascending order.
pub fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// Index of the word `(x₁, …, xₙ)` over an alphabet of size `base`,
/// most significant coordinate first.
pub fn word_to_index(word: &[usize], base: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * base + x)
}

/// Inverse of [`word_to_index`] for words of length `len`.
pub fn index_to_word(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut word = vec![0; len];
    for slot in word.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    word
}
