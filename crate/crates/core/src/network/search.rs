//! Weak satisfiability: searching for an algebraically closed scenario.

use super::{Engine, Network, Scenario};
use crate::error::NetworkError;
use crate::projection::Semantics;
use crate::rcc8::{h_c8, h_h8, BasicRelation, CompositionTable, Rcc8Relation};

/// Soft limits for [`brute_force_scenarios`].
pub const BRUTE_FORCE_MAX_VARS: usize = 5;
pub const BRUTE_FORCE_MAX_LEN: usize = 4;

impl<'t> Engine<'t> {
    /// An algebraically closed scenario refining `net`, or `None` when there
    /// is none.
    ///
    /// Backtracks over whole basic tuples of one pair at a time, re-closing
    /// after every choice. The pair with the fewest remaining tuples is
    /// branched on first, and its refinement witness (`h_H8`/`h_C8` image of
    /// each component) is tried first.
    pub fn find_closed_scenario(&self, net: &Network) -> Option<Scenario> {
        let mut work = net.clone();
        let all: Vec<_> = work.pairs().collect();
        if !self.close_from(&mut work, &all) {
            return None;
        }
        self.search(work)
            .map(|net| Scenario::new(net).expect("search ends on basic tuples"))
    }

    fn search(&self, net: Network) -> Option<Network> {
        let Some((x, y)) = net
            .pairs()
            .filter(|&(x, y)| net.relation(x, y).iter().any(|r| !r.is_basic()))
            .min_by_key(|&(x, y)| {
                net.relation(x, y)
                    .iter()
                    .map(|r| r.len() as u64)
                    .product::<u64>()
            })
        else {
            return Some(net);
        };
        let rel = net.relation(x, y).to_vec();
        for tuple in candidate_tuples(&rel, &net.semantics()) {
            let mut child = net.clone();
            child.write(x, y, &tuple);
            if self.close_from(&mut child, &[(x, y)]) {
                if let Some(found) = self.search(child) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Exhaustive enumeration of the algebraically closed scenarios refining
    /// `net`, stopping after `limit` of them.
    ///
    /// Plain chronological backtracking over single components: every
    /// composition triangle and every adjacent projection edge is checked
    /// once all of its components are assigned, and nothing is propagated.
    /// Variables are added one at a time, so each triangle is complete as
    /// soon as its last pair is assigned.
    pub fn brute_force_scenarios(
        &self,
        net: &Network,
        limit: usize,
        allow_large: bool,
    ) -> Result<Vec<Scenario>, NetworkError> {
        let (n, m) = (net.var_count(), net.len());
        if !allow_large && (n > BRUTE_FORCE_MAX_VARS || m > BRUTE_FORCE_MAX_LEN) {
            return Err(NetworkError::InstanceTooLarge(format!(
                "{n} variables, length {m} (limits {BRUTE_FORCE_MAX_VARS} and {BRUTE_FORCE_MAX_LEN})"
            )));
        }
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2 * m);
        for v in 1..n {
            for u in 0..v {
                for t in 0..m {
                    cells.push((u, v, t));
                }
            }
        }
        let mut oracle = Oracle {
            table: self.table(),
            net,
            sem: net.semantics(),
            cells: &cells,
            value: vec![None; n * n * m],
            out: Vec::new(),
            limit,
        };
        if limit > 0 {
            oracle.run(0);
        }
        Ok(oracle.out)
    }
}

/// Basic tuples inside `rel` whose adjacent components respect the
/// projections, refinement witness first.
fn candidate_tuples(rel: &[Rcc8Relation], sem: &Semantics) -> Vec<Vec<Rcc8Relation>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rel.len());
    enumerate_tuples(rel, sem, &mut current, &mut out);
    let preferred: Vec<Rcc8Relation> = rel.iter().map(|&r| witness_choice(r)).collect();
    if let Some(pos) = out.iter().position(|t| *t == preferred) {
        let first = out.remove(pos);
        out.insert(0, first);
    }
    out
}

fn witness_choice(r: Rcc8Relation) -> Rcc8Relation {
    if r.in_h8() || r.in_q8() {
        h_h8(r)
    } else if r.in_c8() {
        h_c8(r)
    } else {
        r
    }
}

fn enumerate_tuples(
    rel: &[Rcc8Relation],
    sem: &Semantics,
    current: &mut Vec<Rcc8Relation>,
    out: &mut Vec<Vec<Rcc8Relation>>,
) {
    let t = current.len();
    if t == rel.len() {
        out.push(current.clone());
        return;
    }
    for b in rel[t].iter() {
        let cur = Rcc8Relation::basic(b);
        if let Some(&prev) = current.last() {
            if !cur.is_subset(sem.projection(t - 1, t).apply(prev))
                || !prev.is_subset(sem.projection(t, t - 1).apply(cur))
            {
                continue;
            }
        }
        current.push(cur);
        enumerate_tuples(rel, sem, current, out);
        current.pop();
    }
}

struct Oracle<'a> {
    table: &'a CompositionTable,
    net: &'a Network,
    sem: Semantics,
    cells: &'a [(usize, usize, usize)],
    // (x * n + y) * m + t, only x < y filled
    value: Vec<Option<BasicRelation>>,
    out: Vec<Scenario>,
    limit: usize,
}

impl Oracle<'_> {
    fn slot(&self, x: usize, y: usize, t: usize) -> usize {
        (x * self.net.var_count() + y) * self.sem.len() + t
    }

    /// Value of `(x, y)` at `t` for any ordering of `x` and `y`.
    fn get(&self, x: usize, y: usize, t: usize) -> Option<BasicRelation> {
        if x < y {
            self.value[self.slot(x, y, t)]
        } else {
            self.value[self.slot(y, x, t)].map(BasicRelation::converse)
        }
    }

    fn run(&mut self, at: usize) -> bool {
        if at == self.cells.len() {
            let mut scenario = self.net.clone();
            for &(u, v, t) in self.cells {
                let b = self.get(u, v, t).expect("all cells assigned");
                scenario.set_component(u, v, t, b.into());
            }
            self.out.push(Scenario(scenario));
            return self.out.len() >= self.limit;
        }
        let (u, v, t) = self.cells[at];
        for b in self.net.relation(u, v)[t].iter() {
            let slot = self.slot(u, v, t);
            self.value[slot] = Some(b);
            if self.consistent(u, v, t) && self.run(at + 1) {
                return true;
            }
            self.value[slot] = None;
        }
        false
    }

    fn consistent(&self, u: usize, v: usize, t: usize) -> bool {
        let b = self.get(u, v, t).expect("just assigned");
        if t > 0 {
            let prev = self.get(u, v, t - 1).expect("earlier index assigned");
            let ok = self.sem.projection(t - 1, t).apply_basic(prev).contains(b)
                && self.sem.projection(t, t - 1).apply_basic(b).contains(prev);
            if !ok {
                return false;
            }
        }
        // Triangles {w, u, v} with w < v whose other two pairs are assigned.
        for w in 0..v {
            if w == u {
                continue;
            }
            let (Some(_), Some(_)) = (self.get(w, u, t), self.get(w, v, t)) else {
                continue;
            };
            let tri = [u, v, w];
            for &x in &tri {
                for &y in &tri {
                    for &z in &tri {
                        if x == y || y == z || x == z {
                            continue;
                        }
                        let xy = self.get(x, y, t).expect("assigned");
                        let yz = self.get(y, z, t).expect("assigned");
                        let xz = self.get(x, z, t).expect("assigned");
                        if !self.table.compose_basic(xy, yz).contains(xz) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// [`Engine::find_closed_scenario`] under the standard table.
pub fn find_closed_scenario(net: &Network) -> Option<Scenario> {
    Engine::standard().find_closed_scenario(net)
}

/// [`Engine::brute_force_scenarios`] under the standard table, with the
/// size guard enabled.
pub fn brute_force_scenarios(net: &Network, limit: usize) -> Result<Vec<Scenario>, NetworkError> {
    Engine::standard().brute_force_scenarios(net, limit, false)
}
