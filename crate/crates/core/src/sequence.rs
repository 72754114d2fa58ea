//! Sequences of RCC8 relations, one per time index.

use std::fmt;
use std::ops::Index;

use crate::error::{ParseError, SemanticsError};
use crate::projection::Semantics;
use crate::rcc8::{h_c8, h_h8, BasicRelation, Rcc8Relation};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeqRelation {
    parts: Vec<Rcc8Relation>,
    sem: Semantics,
}

impl SeqRelation {
    pub fn new(parts: Vec<Rcc8Relation>, sem: Semantics) -> Result<SeqRelation, SemanticsError> {
        if parts.len() != sem.len() {
            return Err(SemanticsError::LengthMismatch(parts.len(), sem.len()));
        }
        Ok(SeqRelation { parts, sem })
    }

    pub fn universal(sem: Semantics) -> SeqRelation {
        SeqRelation {
            parts: vec![Rcc8Relation::UNIVERSAL; sem.len()],
            sem,
        }
    }

    pub fn from_basics(
        basics: &[BasicRelation],
        sem: Semantics,
    ) -> Result<SeqRelation, SemanticsError> {
        SeqRelation::new(basics.iter().map(|&b| b.into()).collect(), sem)
    }

    pub fn parts(&self) -> &[Rcc8Relation] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Rcc8Relation> {
        self.parts
    }

    pub fn semantics(&self) -> Semantics {
        self.sem
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// 0-based component.
    pub fn get(&self, i: usize) -> Rcc8Relation {
        self.parts[i]
    }

    pub fn is_trivially_unsatisfiable(&self) -> bool {
        self.parts.iter().any(|r| r.is_empty())
    }

    /// Every component is a single basic relation.
    pub fn is_basic(&self) -> bool {
        self.parts.iter().all(|r| r.is_basic())
    }

    /// `self ⊆ other` componentwise.
    pub fn refines(&self, other: &SeqRelation) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// Number of basic tuples contained in this relation.
    pub fn basic_count(&self) -> u64 {
        self.parts.iter().map(|r| r.len() as u64).product()
    }

    fn zip_with(
        &self,
        other: &SeqRelation,
        f: impl Fn(Rcc8Relation, Rcc8Relation) -> Rcc8Relation,
    ) -> Result<SeqRelation, SemanticsError> {
        if self.len() != other.len() {
            return Err(SemanticsError::LengthMismatch(self.len(), other.len()));
        }
        Ok(SeqRelation {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            sem: self.sem,
        })
    }

    pub fn union(&self, other: &SeqRelation) -> Result<SeqRelation, SemanticsError> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &SeqRelation) -> Result<SeqRelation, SemanticsError> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn compose(&self, other: &SeqRelation) -> Result<SeqRelation, SemanticsError> {
        self.zip_with(other, Rcc8Relation::compose)
    }

    pub fn converse(&self) -> SeqRelation {
        SeqRelation {
            parts: self.parts.iter().map(|r| r.converse()).collect(),
            sem: self.sem,
        }
    }

    /// The greatest projection-closed relation below `self`.
    pub fn projection_closure(&self) -> SeqRelation {
        let mut out = self.clone();
        projection_close(&mut out.parts, &self.sem);
        out
    }

    /// Same fixed point, processing pending indices in the order chosen by
    /// `pick`, which receives the number of pending indices and returns the
    /// position of the next one.
    pub fn projection_closure_scheduled(
        &self,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> SeqRelation {
        let mut out = self.clone();
        let mut pending: Vec<usize> = (0..out.len()).collect();
        while !pending.is_empty() {
            let at = pick(pending.len()) % pending.len();
            let j = pending.swap_remove(at);
            if let Some(changed) = tighten(&mut out.parts, &self.sem, j) {
                for i in changed {
                    if !pending.contains(&i) {
                        pending.push(i);
                    }
                }
            }
        }
        out
    }

    pub fn is_projection_closed(&self) -> bool {
        let m = self.len();
        (0..m).all(|j| {
            (0..m)
                .filter(|&i| i != j)
                .all(|i| self.parts[j].is_subset(self.sem.projection(i, j).apply(self.parts[i])))
        })
    }

    /// Projection-closed and not trivially unsatisfiable.
    pub fn is_conv_consistent(&self) -> bool {
        !self.is_trivially_unsatisfiable() && self.is_projection_closed()
    }

    /// Componentwise `h_H8` where `use_c8[i]` is false, `h_C8` where true.
    pub fn refine_with(&self, use_c8: &[bool]) -> SeqRelation {
        SeqRelation {
            parts: self
                .parts
                .iter()
                .zip(use_c8)
                .map(|(&r, &c8)| if c8 { h_c8(r) } else { h_h8(r) })
                .collect(),
            sem: self.sem,
        }
    }

    /// Parses whitespace-separated relation tokens.
    pub fn parse(text: &str, sem: Semantics) -> Result<SeqRelation, ParseError> {
        let parts = parse_relation_list(text)?;
        let len = parts.len();
        SeqRelation::new(parts, sem).map_err(|_| {
            ParseError::at(0, format!("expected {} relations, found {len}", sem.len()))
        })
    }
}

impl Index<usize> for SeqRelation {
    type Output = Rcc8Relation;

    fn index(&self, i: usize) -> &Rcc8Relation {
        &self.parts[i]
    }
}

impl fmt::Display for SeqRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SeqRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Splits a line into relation tokens; braces may contain spaces.
pub(crate) fn parse_relation_list(text: &str) -> Result<Vec<Rcc8Relation>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let end = if rest.starts_with('{') {
            rest.find('}')
                .map(|i| i + 1)
                .ok_or_else(|| ParseError::MalformedRelation(rest.to_string()))?
        } else {
            rest.find(char::is_whitespace).unwrap_or(rest.len())
        };
        out.push(rest[..end].parse()?);
        rest = rest[end..].trim_start();
    }
    Ok(out)
}

/// Recomputes component `j` from all others; returns the indices to revisit
/// when it changed.
fn tighten(parts: &mut [Rcc8Relation], sem: &Semantics, j: usize) -> Option<Vec<usize>> {
    let m = parts.len();
    let mut next = parts[j];
    for i in 0..m {
        if i != j {
            next &= sem.projection(i, j).apply(parts[i]);
        }
    }
    if next == parts[j] {
        return None;
    }
    parts[j] = next;
    Some(if next.is_empty() {
        (0..m).filter(|&i| i != j).collect()
    } else {
        [j.wrapping_sub(1), j + 1]
            .into_iter()
            .filter(|&i| i < m)
            .collect()
    })
}

/// In-place projection closure with a FIFO worklist. Returns whether any
/// component changed.
pub(crate) fn projection_close(parts: &mut [Rcc8Relation], sem: &Semantics) -> bool {
    let m = parts.len();
    if m < 2 {
        return false;
    }
    let mut queued = vec![true; m];
    let mut queue: std::collections::VecDeque<usize> = (0..m).collect();
    let mut changed = false;
    while let Some(j) = queue.pop_front() {
        queued[j] = false;
        if let Some(revisit) = tighten(parts, sem, j) {
            changed = true;
            for i in revisit {
                if !queued[i] {
                    queued[i] = true;
                    queue.push_back(i);
                }
            }
        }
    }
    changed
}
