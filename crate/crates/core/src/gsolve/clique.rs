//! Transitive cliques: vertex sets admitting a total order in which every
//! forward pair is an edge.

use super::mask::{Mask, MaskGraph};

pub(crate) struct LexTransitive<'a, const W: usize> {
    /// `adjacent[v]`: vertices joined to `v` in at least one direction.
    adjacent: &'a [Mask<W>],
    /// Edges present in one direction only; these fix the order.
    forced: &'a MaskGraph<W>,
    best: Mask<W>,
    best_size: usize,
}

impl<'a, const W: usize> LexTransitive<'a, W> {
    pub fn solve(adjacent: &'a [Mask<W>], forced: &'a MaskGraph<W>) -> Mask<W> {
        let mut s = LexTransitive {
            adjacent,
            forced,
            best: Mask::EMPTY,
            best_size: 0,
        };
        s.search(Mask::EMPTY, 0, Mask::full(adjacent.len()));
        s.best
    }

    fn search(&mut self, r: Mask<W>, r_size: usize, p: Mask<W>) {
        if r_size > self.best_size {
            self.best = r;
            self.best_size = r_size;
        }
        if r_size + p.len() <= self.best_size {
            return;
        }
        for v in p.iter() {
            let rest = p.above(v);
            if !self.forced.on_cycle(v, r) {
                self.search(r.with(v), r_size + 1, rest.and(self.adjacent[v]));
            }
            if r_size + rest.len() <= self.best_size {
                break;
            }
        }
    }
}
