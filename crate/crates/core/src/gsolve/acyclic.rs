//! Exact maximum induced acyclic subgraph (complement of a minimum feedback
//! vertex set).
//!
//! The graph is split into strongly connected components and each one is
//! solved by a Russian-doll search: `best[v]` is ρ of the component restricted
//! to vertices `≥ v`, filled in from the last vertex down. Level `i` only asks
//! whether an acyclic set with minimum vertex `i` beats the level above it;
//! acyclicity is hereditary, so `best[v]` bounds whatever can still be drawn
//! from `{v, …}`. A greedy cover by bidirectional cliques (each contributes at
//! most one vertex) gives a second bound.
//!
//! Candidate sets are extended in lexicographic order, so a final pass with
//! the optimum as target stops at the lexicographically least witness.

use super::mask::{Mask, MaskGraph};

pub(crate) struct AcyclicSearch<'a, const W: usize> {
    g: &'a MaskGraph<W>,
    two_way: Vec<Mask<W>>,
    any_two_way: bool,
    blocks: Vec<Block>,
    /// `best[v]`: ρ of the current component restricted to vertices `≥ v`.
    best: Vec<usize>,
    /// `suffix[s]`: ρ of the component restricted to vertices `≥ s`, valid
    /// for `s > level`.
    suffix: Vec<usize>,
    level: usize,
    /// Per depth and candidate `u`: chosen vertices reachable from `u`, and
    /// chosen vertices reaching `u`, both through chosen vertices only.
    down: Vec<Mask<W>>,
    up: Vec<Mask<W>>,
}

impl<'a, const W: usize> AcyclicSearch<'a, W> {
    pub fn solve(g: &'a MaskGraph<W>) -> Mask<W> {
        let all = g.all();
        if g.is_acyclic(all) {
            return all;
        }
        let n = g.n;
        let two_way: Vec<Mask<W>> = (0..n).map(|v| g.out[v].and(g.inn[v])).collect();
        let mut s = AcyclicSearch {
            g,
            any_two_way: two_way.iter().any(|m| !m.is_empty()),
            two_way,
            blocks: (0..n)
                .step_by(BLOCK)
                .map(|start| Block::new(g, start, BLOCK.min(n - start)))
                .collect(),
            best: vec![0; n + 1],
            suffix: vec![0; n + 1],
            level: 0,
            down: vec![Mask::EMPTY; (n + 1) * n],
            up: vec![Mask::EMPTY; (n + 1) * n],
        };
        // Every cycle lies inside one strongly connected component, so the
        // optimum is the union of per-component optima, and so is the
        // lexicographically least one.
        g.components(all)
            .into_iter()
            .fold(Mask::EMPTY, |acc, comp| acc.or(s.solve_component(comp)))
    }

    fn solve_component(&mut self, comp: Mask<W>) -> Mask<W> {
        if comp.len() == 1 {
            return comp;
        }
        let verts = comp.to_vec();
        self.suffix.fill(0);
        let mut next_best = 0;
        for &i in verts.iter().rev() {
            self.level = i;
            if self.start(i, comp, next_best + 1).is_some() {
                next_best += 1;
            }
            self.best[i] = next_best;
            for s in self.suffix[..=i].iter_mut() {
                *s = next_best;
            }
        }
        let opt = next_best;
        self.level = 0;
        for &i in &verts {
            if self.best[i] < opt {
                break;
            }
            if let Some(w) = self.start(i, comp, opt) {
                return w;
            }
        }
        unreachable!("an optimum of the component exists")
    }

    /// Lexicographically first acyclic subset of `comp` of size `target`
    /// whose least vertex is `i`.
    fn start(&mut self, i: usize, comp: Mask<W>, target: usize) -> Option<Mask<W>> {
        let n = self.g.n;
        let mut cand = Mask::EMPTY;
        for u in comp.above(i).iter() {
            let down = if self.g.out[u].contains(i) { Mask::EMPTY.with(i) } else { Mask::EMPTY };
            let up = if self.g.inn[u].contains(i) { Mask::EMPTY.with(i) } else { Mask::EMPTY };
            if !down.intersects(&up) {
                cand.insert(u);
                self.down[n + u] = down;
                self.up[n + u] = up;
            }
        }
        self.extend(1, Mask::EMPTY.with(i), cand, target)
    }

    /// Lexicographically first acyclic superset of `r` of size `target`
    /// drawn from `p`, whose vertices all exceed those of `r`. Every member
    /// of `p` is individually compatible with `r`; its reach sets sit at
    /// `depth`.
    fn extend(&mut self, depth: usize, r: Mask<W>, p: Mask<W>, target: usize) -> Option<Mask<W>> {
        let size = depth;
        if size >= target {
            return Some(r);
        }
        if self.block_bound(r.or(p)) < target || size + self.clique_cover(p) < target {
            return None;
        }
        let n = self.g.n;
        let (here, next) = (depth * n, (depth + 1) * n);
        let mut left = p.len();
        for v in p.iter() {
            if size + left.min(self.best[v]) < target {
                return None;
            }
            left -= 1;
            let (dv, uv) = (self.down[here + v].with(v), self.up[here + v].with(v));
            let mut cand = Mask::EMPTY;
            for u in p.above(v).iter() {
                let mut down = self.down[here + u];
                let mut up = self.up[here + u];
                if self.g.out[u].contains(v) || down.intersects(&uv) {
                    down = down.or(dv);
                }
                if self.g.inn[u].contains(v) || up.intersects(&dv) {
                    up = up.or(uv);
                }
                if !down.intersects(&up) {
                    cand.insert(u);
                    self.down[next + u] = down;
                    self.up[next + u] = up;
                }
            }
            if let Some(w) = self.extend(depth + 1, r.with(v), cand, target) {
                return Some(w);
            }
        }
        None
    }

    /// Bound on an acyclic subset of `set`: exact ρ within each block up to
    /// some block boundary, plus the solved suffix beyond it.
    fn block_bound(&self, set: Mask<W>) -> usize {
        let mut head = 0;
        let mut bound = usize::MAX;
        for b in &self.blocks {
            if b.start > self.level {
                bound = bound.min(head + self.suffix[b.start]);
            }
            head += b.rho[set.bits(b.start, b.len) as usize] as usize;
        }
        bound.min(head)
    }

    /// Number of classes in a greedy partition of `set` into cliques of
    /// bidirectional edges.
    fn clique_cover(&self, set: Mask<W>) -> usize {
        if !self.any_two_way {
            return set.len();
        }
        let mut pool = set;
        let mut count = 0;
        while let Some(v) = pool.first() {
            pool.remove(v);
            let mut cand = pool.and(self.two_way[v]);
            while let Some(u) = cand.first() {
                pool.remove(u);
                cand = cand.without(u).and(self.two_way[u]);
            }
            count += 1;
        }
        count
    }
}

/// Vertices per block of the subset table.
const BLOCK: usize = 16;

/// A run of consecutive vertices with ρ tabulated for every subset.
struct Block {
    start: usize,
    len: usize,
    rho: Vec<u8>,
}

impl Block {
    fn new<const W: usize>(g: &MaskGraph<W>, start: usize, len: usize) -> Self {
        let inn: Vec<u32> = (start..start + len).map(|v| g.inn[v].bits(start, len)).collect();
        let size = 1usize << len;
        // a subset is acyclic iff it has a source whose removal leaves an
        // acyclic subset
        let mut acyclic = vec![false; size];
        let mut rho = vec![0u8; size];
        acyclic[0] = true;
        for s in 1..size {
            let set = s as u32;
            let mut m = set;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if inn[v] & set == 0 {
                    acyclic[s] = acyclic[s & !(1 << v)];
                    break;
                }
            }
            rho[s] = if acyclic[s] {
                set.count_ones() as u8
            } else {
                let mut best = 0;
                let mut m = set;
                while m != 0 {
                    let v = m.trailing_zeros();
                    m &= m - 1;
                    best = best.max(rho[s & !(1 << v)]);
                }
                best
            };
        }
        Block { start, len, rho }
    }
}
