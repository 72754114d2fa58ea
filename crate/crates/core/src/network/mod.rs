//! Constraint networks whose edges are relation sequences.

mod closure;
mod format;
mod search;

use std::fmt;

use crate::error::NetworkError;
use crate::projection::Semantics;
use crate::rcc8::{BasicRelation, Rcc8Relation};
use crate::sequence::SeqRelation;

pub use closure::{algebraic_closure, is_algebraically_consistent, Engine};
pub use search::{
    brute_force_scenarios, find_closed_scenario, BRUTE_FORCE_MAX_LEN, BRUTE_FORCE_MAX_VARS,
};

/// A network over relation sequences. Relations are stored for every ordered
/// pair of distinct variables and kept converse-symmetric; pairs never set
/// are universal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Network {
    vars: Vec<String>,
    sem: Semantics,
    // (x * n + y) * m + t; the diagonal is unused.
    cells: Vec<Rcc8Relation>,
}

impl Network {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        sem: Semantics,
    ) -> Result<Network, NetworkError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(NetworkError::DuplicateVariable(v.clone()));
            }
        }
        let n = vars.len();
        Ok(Network {
            cells: vec![Rcc8Relation::UNIVERSAL; n * n * sem.len()],
            vars,
            sem,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn semantics(&self) -> Semantics {
        self.sem
    }

    pub fn len(&self) -> usize {
        self.sem.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, NetworkError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| NetworkError::UnknownVariable(name.to_string()))
    }

    #[inline]
    pub(crate) fn offset(&self, x: usize, y: usize) -> usize {
        (x * self.vars.len() + y) * self.sem.len()
    }

    /// The components of `rel(x, y)`.
    #[inline]
    pub fn relation(&self, x: usize, y: usize) -> &[Rcc8Relation] {
        debug_assert_ne!(x, y);
        let at = self.offset(x, y);
        &self.cells[at..at + self.sem.len()]
    }

    pub fn seq(&self, x: usize, y: usize) -> SeqRelation {
        SeqRelation::new(self.relation(x, y).to_vec(), self.sem).expect("length matches semantics")
    }

    /// Replaces `rel(x, y)` and its converse.
    pub fn set(&mut self, x: usize, y: usize, rel: &[Rcc8Relation]) -> Result<(), NetworkError> {
        if x == y {
            return Err(NetworkError::SelfPair(self.vars[x].clone()));
        }
        if rel.len() != self.sem.len() {
            return Err(
                crate::error::SemanticsError::LengthMismatch(rel.len(), self.sem.len()).into(),
            );
        }
        self.write(x, y, rel);
        Ok(())
    }

    pub fn set_by_name(&mut self, x: &str, y: &str, rel: &SeqRelation) -> Result<(), NetworkError> {
        let (x, y) = (self.var_index(x)?, self.var_index(y)?);
        self.set(x, y, rel.parts())
    }

    /// Replaces one component of `rel(x, y)` (0-based index) and its converse.
    pub fn set_component(&mut self, x: usize, y: usize, t: usize, r: Rcc8Relation) {
        assert_ne!(x, y);
        let at = self.offset(x, y) + t;
        self.cells[at] = r;
        let back = self.offset(y, x) + t;
        self.cells[back] = r.converse();
    }

    /// Intersects `rel(x, y)` with `rel`.
    pub fn refine(&mut self, x: usize, y: usize, rel: &[Rcc8Relation]) -> Result<(), NetworkError> {
        let merged: Vec<Rcc8Relation> = self
            .relation(x, y)
            .iter()
            .zip(rel)
            .map(|(&a, &b)| a & b)
            .collect();
        self.set(x, y, &merged)
    }

    pub(crate) fn write(&mut self, x: usize, y: usize, rel: &[Rcc8Relation]) {
        let m = self.sem.len();
        let at = self.offset(x, y);
        self.cells[at..at + m].copy_from_slice(rel);
        let back = self.offset(y, x);
        for (t, r) in rel.iter().enumerate() {
            self.cells[back + t] = r.converse();
        }
    }

    /// Ordered pairs `(x, y)` with `x < y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.vars.len();
        (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
    }

    pub fn is_trivially_unsatisfiable(&self) -> bool {
        self.pairs()
            .any(|(x, y)| self.relation(x, y).iter().any(|r| r.is_empty()))
    }

    /// Every relation is a basic tuple.
    pub fn is_scenario(&self) -> bool {
        self.pairs()
            .all(|(x, y)| self.relation(x, y).iter().all(|r| r.is_basic()))
    }

    /// `self ⊆ other`, pair by pair and index by index.
    pub fn refines(&self, other: &Network) -> bool {
        self.vars == other.vars
            && self.sem.len() == other.sem.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn is_converse_symmetric(&self) -> bool {
        let m = self.sem.len();
        self.pairs().all(|(x, y)| {
            (0..m).all(|t| self.relation(x, y)[t].converse() == self.relation(y, x)[t])
        })
    }

    /// The classical network at 0-based index `t`.
    pub fn slice(&self, t: usize) -> Slice {
        let n = self.vars.len();
        let mut slice = Slice::new(self.vars.clone()).expect("variables already validated");
        for (x, y) in self.pairs() {
            slice.set(x, y, self.relation(x, y)[t]);
        }
        debug_assert_eq!(slice.var_count(), n);
        slice
    }

    pub fn parse(text: &str) -> Result<Network, crate::error::ParseError> {
        format::parse_network(text)
    }

    pub fn to_text(&self) -> String {
        format::write_network(self)
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A classical RCC8 network: one relation per ordered pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slice {
    vars: Vec<String>,
    cells: Vec<Rcc8Relation>,
}

impl Slice {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Slice, NetworkError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(NetworkError::DuplicateVariable(v.clone()));
            }
        }
        let n = vars.len();
        Ok(Slice {
            cells: vec![Rcc8Relation::UNIVERSAL; n * n],
            vars,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, NetworkError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| NetworkError::UnknownVariable(name.to_string()))
    }

    pub fn get(&self, x: usize, y: usize) -> Rcc8Relation {
        if x == y {
            return Rcc8Relation::EQ;
        }
        self.cells[x * self.vars.len() + y]
    }

    pub fn set(&mut self, x: usize, y: usize, r: Rcc8Relation) {
        assert_ne!(x, y, "a variable cannot be related to itself");
        let n = self.vars.len();
        self.cells[x * n + y] = r;
        self.cells[y * n + x] = r.converse();
    }

    pub fn set_by_name(&mut self, x: &str, y: &str, r: Rcc8Relation) -> Result<(), NetworkError> {
        let (xi, yi) = (self.var_index(x)?, self.var_index(y)?);
        if xi == yi {
            return Err(NetworkError::SelfPair(x.to_string()));
        }
        self.set(xi, yi, r);
        Ok(())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.vars.len();
        (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
    }

    /// Every relation is a single basic relation.
    pub fn is_scenario(&self) -> bool {
        self.pairs().all(|(x, y)| self.get(x, y).is_basic())
    }

    pub fn basic(&self, x: usize, y: usize) -> Option<BasicRelation> {
        self.get(x, y).as_basic()
    }

    /// A length-1 sequence network holding this slice.
    pub fn to_network(&self) -> Network {
        let mut net = Network::new(
            self.vars.clone(),
            Semantics::neighbour(1).expect("positive length"),
        )
        .expect("variables already validated");
        for (x, y) in self.pairs() {
            net.write(x, y, &[self.get(x, y)]);
        }
        net
    }
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_network().to_text())
    }
}

/// A network whose relations are all basic tuples.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scenario(Network);

impl Scenario {
    pub fn new(net: Network) -> Option<Scenario> {
        net.is_scenario().then_some(Scenario(net))
    }

    pub fn network(&self) -> &Network {
        &self.0
    }

    pub fn into_network(self) -> Network {
        self.0
    }

    pub fn basic(&self, x: usize, y: usize, t: usize) -> BasicRelation {
        self.0.relation(x, y)[t]
            .as_basic()
            .expect("scenario relations are basic")
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sem(m: usize) -> Semantics {
        Semantics::neighbour(m).unwrap()
    }

    #[test]
    fn converse_is_maintained() {
        let mut net = Network::new(["a", "b", "c"], sem(2)).unwrap();
        net.set(
            0,
            1,
            &[Rcc8Relation::TPP, Rcc8Relation::NTPP | Rcc8Relation::DC],
        )
        .unwrap();
        assert_eq!(
            net.relation(1, 0),
            &[Rcc8Relation::TPPI, Rcc8Relation::NTPPI | Rcc8Relation::DC]
        );
        assert!(net.is_converse_symmetric());
        assert_eq!(net.relation(0, 2), &[Rcc8Relation::UNIVERSAL; 2]);
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            Network::new(["a", "a"], sem(1)),
            Err(NetworkError::DuplicateVariable(_))
        ));
        let mut net = Network::new(["a", "b"], sem(2)).unwrap();
        assert!(net.set(0, 0, &[Rcc8Relation::EQ; 2]).is_err());
        assert!(net.set(0, 1, &[Rcc8Relation::EQ]).is_err());
        assert!(matches!(
            net.var_index("z"),
            Err(NetworkError::UnknownVariable(_))
        ));
    }

    #[test]
    fn slices_read_one_index() {
        let mut net = Network::new(["a", "b"], sem(2)).unwrap();
        net.set(0, 1, &[Rcc8Relation::DC, Rcc8Relation::EC])
            .unwrap();
        let s = net.slice(1);
        assert_eq!(s.get(0, 1), Rcc8Relation::EC);
        assert_eq!(s.get(1, 0), Rcc8Relation::EC);
        assert_eq!(s.get(0, 0), Rcc8Relation::EQ);
    }

    #[test]
    fn scenario_requires_basic_tuples() {
        let mut net = Network::new(["a", "b"], sem(1)).unwrap();
        assert!(Scenario::new(net.clone()).is_none());
        net.set(0, 1, &[Rcc8Relation::PO]).unwrap();
        assert!(Scenario::new(net).is_some());
    }
}
