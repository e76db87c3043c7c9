//! Fixed-width vertex bitsets for the exact solvers.

use crate::digraph::DirectedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Mask<const W: usize>(pub [u64; W]);

impl<const W: usize> Mask<W> {
    pub const EMPTY: Self = Mask([0; W]);

    pub fn full(n: usize) -> Self {
        let mut m = Self::EMPTY;
        for v in 0..n {
            m.insert(v);
        }
        m
    }

    pub fn from_row(row: &[u64]) -> Self {
        let mut m = Self::EMPTY;
        m.0[..row.len()].copy_from_slice(row);
        m
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        (self.0[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    #[inline]
    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    #[inline]
    pub fn and(self, o: Self) -> Self {
        let mut r = self;
        for i in 0..W {
            r.0[i] &= o.0[i];
        }
        r
    }

    #[inline]
    pub fn or(self, o: Self) -> Self {
        let mut r = self;
        for i in 0..W {
            r.0[i] |= o.0[i];
        }
        r
    }

    #[inline]
    pub fn minus(self, o: Self) -> Self {
        let mut r = self;
        for i in 0..W {
            r.0[i] &= !o.0[i];
        }
        r
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, o: &Self) -> bool {
        (0..W).any(|i| self.0[i] & o.0[i] != 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Vertices strictly greater than `v`.
    pub fn above(self, v: usize) -> Self {
        let mut r = self;
        let (word, bit) = (v / 64, v % 64);
        for i in 0..word {
            r.0[i] = 0;
        }
        if word < W {
            r.0[word] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
        r
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self;
        std::iter::from_fn(move || {
            let v = m.first()?;
            m.remove(v);
            Some(v)
        })
    }

    /// Bits `start..start + len` as an integer, `len ≤ 32`.
    pub fn bits(&self, start: usize, len: usize) -> u32 {
        let (word, bit) = (start / 64, start % 64);
        let mut v = (self.0[word] >> bit) as u128;
        if bit + len > 64 && word + 1 < W {
            v |= (self.0[word + 1] as u128) << (64 - bit);
        }
        (v & ((1u128 << len) - 1)) as u32
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Out- and in-adjacency of a graph as masks.
pub(crate) struct MaskGraph<const W: usize> {
    pub n: usize,
    pub out: Vec<Mask<W>>,
    pub inn: Vec<Mask<W>>,
}

impl<const W: usize> MaskGraph<W> {
    pub fn new(g: &DirectedGraph) -> Self {
        let n = g.vertex_count();
        MaskGraph {
            n,
            out: (0..n).map(|v| Mask::from_row(g.out_row(v))).collect(),
            inn: (0..n).map(|v| Mask::from_row(g.in_row(v))).collect(),
        }
    }

    pub fn all(&self) -> Mask<W> {
        Mask::full(self.n)
    }

    /// Vertices reachable from `start` by paths inside `allowed` (excluding
    /// `start` itself unless it lies on such a path).
    pub fn reach(&self, start: usize, allowed: Mask<W>) -> Mask<W> {
        let mut seen = self.out[start].and(allowed);
        let mut frontier = seen;
        while let Some(u) = frontier.first() {
            frontier.remove(u);
            let next = self.out[u].and(allowed).minus(seen);
            seen = seen.or(next);
            frontier = frontier.or(next);
        }
        seen
    }

    /// True iff `v` lies on a directed cycle inside `allowed ∪ {v}`.
    pub fn on_cycle(&self, v: usize, allowed: Mask<W>) -> bool {
        self.reach(v, allowed.without(v)).intersects(&self.inn[v])
    }

    /// Vertices reaching `start` by paths inside `allowed`.
    pub fn reach_back(&self, start: usize, allowed: Mask<W>) -> Mask<W> {
        let mut seen = self.inn[start].and(allowed);
        let mut frontier = seen;
        while let Some(u) = frontier.first() {
            frontier.remove(u);
            let next = self.inn[u].and(allowed).minus(seen);
            seen = seen.or(next);
            frontier = frontier.or(next);
        }
        seen
    }

    /// Strongly connected components of the subgraph induced by `set`,
    /// ordered by least vertex.
    pub fn components(&self, set: Mask<W>) -> Vec<Mask<W>> {
        let mut rest = set;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self
                .reach(v, set)
                .and(self.reach_back(v, set))
                .with(v);
            rest = rest.minus(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices of `set` whose in-neighbourhood restricted to `set` is empty,
    /// peeled repeatedly; `set` is acyclic iff everything peels.
    pub fn is_acyclic(&self, set: Mask<W>) -> bool {
        let mut rest = set;
        loop {
            let mut peeled = false;
            for v in rest.iter() {
                if !self.inn[v].intersects(&rest) {
                    rest.remove(v);
                    peeled = true;
                }
            }
            if rest.is_empty() {
                return true;
            }
            if !peeled {
                return false;
            }
        }
    }
}

/// Work that is generic over the bitset width.
pub(crate) trait WidthTask {
    type Output;
    fn run<const W: usize>(self) -> Self::Output;
}

/// Largest vertex count the mask-based solvers support.
pub const MASK_LIMIT: usize = 1024;

pub(crate) fn dispatch<T: WidthTask>(n: usize, task: T) -> Result<T::Output> {
    Ok(match n.div_ceil(64) {
        0 | 1 => task.run::<1>(),
        2 => task.run::<2>(),
        3 | 4 => task.run::<4>(),
        5..=8 => task.run::<8>(),
        9..=16 => task.run::<16>(),
        _ => {
            return Err(Error::SizeLimit {
                what: "solver vertex count",
                actual: n,
                limit: MASK_LIMIT,
            })
        }
    })
}
