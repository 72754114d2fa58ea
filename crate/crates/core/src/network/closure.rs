//! Algebraic closure: composition tightening interleaved with projection
//! closure until nothing changes.

use std::collections::VecDeque;

use super::Network;
use crate::rcc8::{CompositionTable, Rcc8Relation};
use crate::sequence::projection_close;

/// Reasoning operations bound to one composition table.
#[derive(Clone, Copy, Debug)]
pub struct Engine<'t> {
    table: &'t CompositionTable,
}

impl Engine<'static> {
    pub fn standard() -> Engine<'static> {
        Engine {
            table: CompositionTable::standard(),
        }
    }
}

impl Default for Engine<'static> {
    fn default() -> Self {
        Engine::standard()
    }
}

/// Pending pairs `(x, y)` with `x < y`.
struct PairQueue {
    n: usize,
    queue: VecDeque<(usize, usize)>,
    queued: Vec<bool>,
}

impl PairQueue {
    fn new(n: usize) -> PairQueue {
        PairQueue {
            n,
            queue: VecDeque::new(),
            queued: vec![false; n * n],
        }
    }

    fn push(&mut self, x: usize, y: usize) {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        if !self.queued[x * self.n + y] {
            self.queued[x * self.n + y] = true;
            self.queue.push_back((x, y));
        }
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        let (x, y) = self.queue.pop_front()?;
        self.queued[x * self.n + y] = false;
        Some((x, y))
    }
}

impl<'t> Engine<'t> {
    pub fn new(table: &'t CompositionTable) -> Engine<'t> {
        Engine { table }
    }

    pub fn table(&self) -> &'t CompositionTable {
        self.table
    }

    /// The algebraic closure of `net`.
    pub fn algebraic_closure(&self, net: &Network) -> Network {
        let mut out = net.clone();
        self.close(&mut out);
        out
    }

    /// Closes `net` in place to the full fixed point. Returns `false` when
    /// the result is trivially unsatisfiable.
    pub fn close(&self, net: &mut Network) -> bool {
        let all: Vec<_> = net.pairs().collect();
        self.propagate(net, &all, false);
        !net.is_trivially_unsatisfiable()
    }

    /// Closes `net` in place, assuming every pair outside `changed` already
    /// satisfies the closure conditions. Stops at the first empty component
    /// and returns `false` then; the network is left partially closed.
    pub(crate) fn close_from(&self, net: &mut Network, changed: &[(usize, usize)]) -> bool {
        self.propagate(net, changed, true)
    }

    fn propagate(&self, net: &mut Network, seeds: &[(usize, usize)], fail_fast: bool) -> bool {
        let n = net.var_count();
        let sem = net.semantics();
        let mut queue = PairQueue::new(n);
        for &(x, y) in seeds {
            let at = net.offset(x, y);
            let m = sem.len();
            let mut rel = net.cells[at..at + m].to_vec();
            if projection_close(&mut rel, &sem) {
                net.write(x, y, &rel);
            }
            if fail_fast && rel.iter().any(|r| r.is_empty()) {
                return false;
            }
            queue.push(x, y);
        }
        let mut scratch = vec![Rcc8Relation::EMPTY; sem.len()];
        while let Some((i, j)) = queue.pop() {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // rel(i,k) ⊆ rel(i,j) ∘ rel(j,k)
                if self.tighten(net, i, j, k, &mut scratch) {
                    if fail_fast && scratch.iter().any(|r| r.is_empty()) {
                        return false;
                    }
                    queue.push(i, k);
                }
                // rel(k,j) ⊆ rel(k,i) ∘ rel(i,j)
                if self.tighten(net, k, i, j, &mut scratch) {
                    if fail_fast && scratch.iter().any(|r| r.is_empty()) {
                        return false;
                    }
                    queue.push(k, j);
                }
            }
            debug_assert!(net.is_converse_symmetric());
        }
        true
    }

    /// `rel(a,c) ← ⌣(rel(a,c) ∩ rel(a,b) ∘ rel(b,c))`; returns whether it
    /// changed, leaving the new relation in `scratch`.
    fn tighten(
        &self,
        net: &mut Network,
        a: usize,
        b: usize,
        c: usize,
        scratch: &mut [Rcc8Relation],
    ) -> bool {
        let m = scratch.len();
        let (ab, bc, ac) = (net.offset(a, b), net.offset(b, c), net.offset(a, c));
        let mut changed = false;
        for t in 0..m {
            let old = net.cells[ac + t];
            let new = old & self.table.compose(net.cells[ab + t], net.cells[bc + t]);
            changed |= new != old;
            scratch[t] = new;
        }
        if !changed {
            return false;
        }
        projection_close(scratch, &net.semantics());
        net.write(a, c, scratch);
        true
    }

    /// The same closure with pending pairs processed in the order chosen by
    /// `pick(len) -> position`, one pair at a time.
    pub fn algebraic_closure_scheduled(
        &self,
        net: &Network,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> Network {
        let mut out = net.clone();
        let sem = out.semantics();
        let mut pending: Vec<(usize, usize)> = out.pairs().collect();
        for &(x, y) in &pending {
            let mut rel = out.relation(x, y).to_vec();
            if projection_close(&mut rel, &sem) {
                out.write(x, y, &rel);
            }
        }
        let mut scratch = vec![Rcc8Relation::EMPTY; sem.len()];
        let n = out.var_count();
        while !pending.is_empty() {
            let at = pick(pending.len()) % pending.len();
            let (i, j) = pending.swap_remove(at);
            let push = |p: (usize, usize), pending: &mut Vec<(usize, usize)>| {
                let p = if p.0 < p.1 { p } else { (p.1, p.0) };
                if !pending.contains(&p) {
                    pending.push(p);
                }
            };
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if self.tighten(&mut out, i, j, k, &mut scratch) {
                    push((i, k), &mut pending);
                }
                if self.tighten(&mut out, k, i, j, &mut scratch) {
                    push((k, j), &mut pending);
                }
            }
        }
        out
    }

    /// Closed under composition and every relation projection-closed.
    pub fn is_algebraically_closed(&self, net: &Network) -> bool {
        let n = net.var_count();
        let m = net.len();
        for x in 0..n {
            for z in 0..n {
                if x == z {
                    continue;
                }
                if !net.seq(x, z).is_projection_closed() {
                    return false;
                }
                for y in 0..n {
                    if y == x || y == z {
                        continue;
                    }
                    for t in 0..m {
                        let bound = self
                            .table
                            .compose(net.relation(x, y)[t], net.relation(y, z)[t]);
                        if !net.relation(x, z)[t].is_subset(bound) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Algebraically closed and not trivially unsatisfiable, as given.
    pub fn is_algebraically_consistent(&self, net: &Network) -> bool {
        !net.is_trivially_unsatisfiable() && self.is_algebraically_closed(net)
    }

    /// Whether the closure of `net` is not trivially unsatisfiable.
    pub fn closure_is_consistent(&self, net: &Network) -> bool {
        let mut work = net.clone();
        let all: Vec<_> = work.pairs().collect();
        self.propagate(&mut work, &all, true)
    }
}

/// Algebraic closure under the standard composition table.
pub fn algebraic_closure(net: &Network) -> Network {
    Engine::standard().algebraic_closure(net)
}

pub fn is_algebraically_consistent(net: &Network) -> bool {
    Engine::standard().is_algebraically_consistent(net)
}
