//! Lexicographic branch-and-bound for maximum independent sets in an
//! undirected conflict relation.
//!
//! Candidate sets are explored in lexicographic order of their sorted vertex
//! lists and the incumbent is replaced only on strict improvement, so the
//! first maximum found is the lexicographically least one.

use super::mask::Mask;

pub(crate) struct LexIndependent<'a, const W: usize> {
    conflict: &'a [Mask<W>],
    best: Mask<W>,
    best_size: usize,
}

impl<'a, const W: usize> LexIndependent<'a, W> {
    /// `conflict[v]` must be symmetric and exclude `v`.
    pub fn solve(conflict: &'a [Mask<W>]) -> Mask<W> {
        let mut s = LexIndependent {
            conflict,
            best: Mask::EMPTY,
            best_size: 0,
        };
        s.search(Mask::EMPTY, 0, Mask::full(conflict.len()));
        s.best
    }

    /// `|P| − ⌈m/Δ⌉`: every vertex cover of the conflict edges inside `p`
    /// needs at least `m/Δ` vertices.
    fn degree_bound(&self, p: Mask<W>) -> usize {
        let size = p.len();
        let (mut twice_edges, mut max_deg) = (0usize, 0usize);
        for v in p.iter() {
            let d = self.conflict[v].and(p).len();
            twice_edges += d;
            max_deg = max_deg.max(d);
        }
        if max_deg == 0 {
            return size;
        }
        let m = twice_edges / 2;
        size - m.div_ceil(max_deg)
    }

    fn search(&mut self, r: Mask<W>, r_size: usize, p: Mask<W>) {
        if r_size > self.best_size {
            self.best = r;
            self.best_size = r_size;
        }
        if p.is_empty() || r_size + self.degree_bound(p) <= self.best_size {
            return;
        }
        for v in p.iter() {
            let rest = p.above(v);
            self.search(r.with(v), r_size + 1, rest.minus(self.conflict[v]));
            if r_size + rest.len() <= self.best_size {
                break;
            }
        }
    }
}
