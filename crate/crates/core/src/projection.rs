//! Projections carrying a relation from one time index to another.
//!
//! Three kinds are tabulated on basic relations: the neighbourhood
//! projection (continuous transitions between consecutive instants) and the
//! two dominance projections (from an open interval to its bounding
//! instants, and back). Only six rows are tabulated per kind; the TPPI and
//! NTPPI rows follow from `p(r⁻) = p(r)⁻`.

use std::fmt;

use crate::error::SemanticsError;
use crate::rcc8::{BasicRelation, Rcc8Relation};

const DC: u8 = 1 << 0;
const EC: u8 = 1 << 1;
const PO: u8 = 1 << 2;
const TPP: u8 = 1 << 3;
const NTPP: u8 = 1 << 4;
const TPPI: u8 = 1 << 5;
const NTPPI: u8 = 1 << 6;
const EQ: u8 = 1 << 7;

// Rows for DC, EC, PO, TPP, NTPP, EQ.
const NEIGHBOUR_ROWS: [u8; 6] = [
    DC | EC,
    DC | EC | PO,
    EC | PO | TPP | TPPI | EQ,
    PO | TPP | NTPP | EQ,
    TPP | NTPP | EQ,
    PO | TPP | NTPP | TPPI | NTPPI | EQ,
];

const UP_ROWS: [u8; 6] = [
    DC | EC,
    EC,
    EC | PO | TPP | TPPI | EQ,
    TPP | EQ,
    NTPP | TPP | EQ,
    EQ,
];

const DOWN_ROWS: [u8; 6] = [DC, DC | EC | PO, PO, PO | TPP | NTPP, NTPP, !(DC | EC)];

const fn converse_bits(r: u8) -> u8 {
    let keep = r & (DC | EC | PO | EQ);
    let mut out = keep;
    if r & TPP != 0 {
        out |= TPPI;
    }
    if r & NTPP != 0 {
        out |= NTPPI;
    }
    if r & TPPI != 0 {
        out |= TPP;
    }
    if r & NTPPI != 0 {
        out |= NTPP;
    }
    out
}

/// Completes a six-row table to all eight basic relations.
const fn complete(rows: [u8; 6]) -> [u8; 8] {
    [
        rows[0],
        rows[1],
        rows[2],
        rows[3],
        rows[4],
        converse_bits(rows[3]),
        converse_bits(rows[4]),
        rows[5],
    ]
}

/// Extends a basic table to all 256 relations by distributivity.
const fn extend(basic: [u8; 8]) -> [u8; 256] {
    let mut out = [0u8; 256];
    let mut r = 0usize;
    while r < 256 {
        let mut acc = 0u8;
        let mut i = 0;
        while i < 8 {
            if r & (1 << i) != 0 {
                acc |= basic[i];
            }
            i += 1;
        }
        out[r] = acc;
        r += 1;
    }
    out
}

static NEIGHBOUR: [u8; 256] = extend(complete(NEIGHBOUR_ROWS));
static UP: [u8; 256] = extend(complete(UP_ROWS));
static DOWN: [u8; 256] = extend(complete(DOWN_ROWS));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectionKind {
    /// Consecutive instants.
    Neighbour,
    /// From an open interval to an adjacent bounding instant.
    DominanceUp,
    /// From an instant to an adjacent open interval.
    DominanceDown,
    /// No constraint between the indices.
    Universal,
}

impl ProjectionKind {
    #[inline]
    pub fn apply(self, r: Rcc8Relation) -> Rcc8Relation {
        let bits = r.bits() as usize;
        Rcc8Relation::from_bits(match self {
            ProjectionKind::Neighbour => NEIGHBOUR[bits],
            ProjectionKind::DominanceUp => UP[bits],
            ProjectionKind::DominanceDown => DOWN[bits],
            ProjectionKind::Universal => {
                if r.is_empty() {
                    0
                } else {
                    0xff
                }
            }
        })
    }

    pub fn apply_basic(self, b: BasicRelation) -> Rcc8Relation {
        self.apply(Rcc8Relation::basic(b))
    }
}

/// `project(kind, r)`.
pub fn project(kind: ProjectionKind, r: Rcc8Relation) -> Rcc8Relation {
    kind.apply(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemanticsKind {
    /// Relations hold at consecutive instants with no change in between.
    NeighbourInstants,
    /// Relations hold on a partition of time into instants and open intervals.
    TimePartition,
}

/// Which position a time partition starts with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PartitionLayout {
    /// Positions 1, 3, 5, … are instants; 2, 4, 6, … open intervals.
    #[default]
    InstantFirst,
    /// Positions 1, 3, 5, … are open intervals.
    IntervalFirst,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Semantics {
    kind: SemanticsKind,
    len: usize,
    layout: PartitionLayout,
}

impl Semantics {
    pub fn neighbour(len: usize) -> Result<Semantics, SemanticsError> {
        Semantics::new(SemanticsKind::NeighbourInstants, len)
    }

    pub fn partition(len: usize) -> Result<Semantics, SemanticsError> {
        Semantics::new(SemanticsKind::TimePartition, len)
    }

    pub fn new(kind: SemanticsKind, len: usize) -> Result<Semantics, SemanticsError> {
        if len == 0 {
            return Err(SemanticsError::ZeroLength);
        }
        if kind == SemanticsKind::TimePartition && len % 2 != 0 {
            return Err(SemanticsError::OddPartition(len));
        }
        Ok(Semantics {
            kind,
            len,
            layout: PartitionLayout::InstantFirst,
        })
    }

    /// Same semantics with another partition layout; no effect on
    /// neighbouring-instant semantics.
    pub fn with_layout(self, layout: PartitionLayout) -> Semantics {
        Semantics { layout, ..self }
    }

    /// Same kind and layout, different length.
    pub fn with_len(self, len: usize) -> Result<Semantics, SemanticsError> {
        Ok(Semantics::new(self.kind, len)?.with_layout(self.layout))
    }

    #[inline]
    pub fn kind(&self) -> SemanticsKind {
        self.kind
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn layout(&self) -> PartitionLayout {
        self.layout
    }

    /// Whether 1-based position `i` denotes an instant. Always true under
    /// neighbouring-instant semantics.
    pub fn is_instant(&self, i: usize) -> bool {
        match self.kind {
            SemanticsKind::NeighbourInstants => true,
            SemanticsKind::TimePartition => match self.layout {
                PartitionLayout::InstantFirst => i % 2 == 1,
                PartitionLayout::IntervalFirst => i % 2 == 0,
            },
        }
    }

    /// The projection carrying index `i` to index `j` (1-based).
    pub fn adjacency_projection(
        &self,
        i: usize,
        j: usize,
    ) -> Result<ProjectionKind, SemanticsError> {
        if i == 0 || j == 0 || i > self.len || j > self.len || i == j {
            return Err(SemanticsError::IndexOutOfRange { i, j, m: self.len });
        }
        Ok(self.projection(i - 1, j - 1))
    }

    /// 0-based variant of [`Semantics::adjacency_projection`] without range
    /// checks.
    #[inline]
    pub(crate) fn projection(&self, from: usize, to: usize) -> ProjectionKind {
        if from.abs_diff(to) != 1 {
            return ProjectionKind::Universal;
        }
        match self.kind {
            SemanticsKind::NeighbourInstants => ProjectionKind::Neighbour,
            SemanticsKind::TimePartition => {
                if self.is_instant(from + 1) {
                    ProjectionKind::DominanceDown
                } else {
                    ProjectionKind::DominanceUp
                }
            }
        }
    }
}

impl fmt::Debug for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.layout) {
            (SemanticsKind::NeighbourInstants, _) => write!(f, "neighbour(m={})", self.len),
            (SemanticsKind::TimePartition, PartitionLayout::InstantFirst) => {
                write!(f, "partition(m={})", self.len)
            }
            (SemanticsKind::TimePartition, PartitionLayout::IntervalFirst) => {
                write!(f, "partition(m={}, interval first)", self.len)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ProjectionKind::*;

    const KINDS: [ProjectionKind; 3] = [Neighbour, DominanceUp, DominanceDown];

    fn rel(bits: u8) -> Rcc8Relation {
        Rcc8Relation::from_bits(bits)
    }

    #[test]
    fn printed_rows() {
        assert_eq!(project(Neighbour, Rcc8Relation::DC), rel(DC | EC));
        assert_eq!(
            project(Neighbour, Rcc8Relation::EQ),
            rel(PO | TPP | NTPP | TPPI | NTPPI | EQ)
        );
        assert_eq!(project(DominanceUp, Rcc8Relation::TPP), rel(TPP | EQ));
        assert_eq!(project(DominanceDown, Rcc8Relation::EQ), rel(!(DC | EC)));
        assert_eq!(project(Neighbour, Rcc8Relation::EMPTY), Rcc8Relation::EMPTY);
        assert_eq!(project(Universal, Rcc8Relation::EMPTY), Rcc8Relation::EMPTY);
        assert_eq!(
            project(Universal, Rcc8Relation::PO),
            Rcc8Relation::UNIVERSAL
        );
    }

    #[test]
    fn derived_rows() {
        assert_eq!(
            project(Neighbour, Rcc8Relation::TPPI),
            rel(PO | TPPI | NTPPI | EQ)
        );
        assert_eq!(
            project(DominanceUp, Rcc8Relation::NTPPI),
            rel(NTPPI | TPPI | EQ)
        );
        assert_eq!(
            project(DominanceDown, Rcc8Relation::TPPI),
            rel(PO | TPPI | NTPPI)
        );
    }

    #[test]
    fn reflexive_on_basics() {
        for kind in KINDS {
            for b in BasicRelation::ALL {
                assert!(kind.apply_basic(b).contains(b), "{kind:?} {b}");
            }
        }
    }

    #[test]
    fn neighbourhood_is_symmetric() {
        for a in BasicRelation::ALL {
            for b in BasicRelation::ALL {
                assert_eq!(
                    Neighbour.apply_basic(a).contains(b),
                    Neighbour.apply_basic(b).contains(a)
                );
            }
        }
    }

    #[test]
    fn dominance_directions_transpose() {
        for a in BasicRelation::ALL {
            for b in BasicRelation::ALL {
                assert_eq!(
                    DominanceUp.apply_basic(a).contains(b),
                    DominanceDown.apply_basic(b).contains(a),
                    "{a} {b}"
                );
            }
        }
    }

    #[test]
    fn distributive_and_converse_compatible() {
        for kind in KINDS.into_iter().chain([Universal]) {
            for r in Rcc8Relation::all() {
                assert_eq!(kind.apply(r.converse()), kind.apply(r).converse());
                for s in Rcc8Relation::all() {
                    assert_eq!(kind.apply(r | s), kind.apply(r) | kind.apply(s));
                }
            }
        }
    }

    #[test]
    fn wiring() {
        let n = Semantics::neighbour(3).unwrap();
        assert_eq!(n.adjacency_projection(1, 2).unwrap(), Neighbour);
        assert_eq!(n.adjacency_projection(2, 1).unwrap(), Neighbour);
        assert_eq!(n.adjacency_projection(1, 3).unwrap(), Universal);
        assert!(n.adjacency_projection(0, 1).is_err());
        assert!(n.adjacency_projection(1, 4).is_err());
        assert!(n.adjacency_projection(2, 2).is_err());

        let p = Semantics::partition(4).unwrap();
        assert_eq!(p.adjacency_projection(1, 2).unwrap(), DominanceDown);
        assert_eq!(p.adjacency_projection(2, 1).unwrap(), DominanceUp);
        assert_eq!(p.adjacency_projection(2, 3).unwrap(), DominanceUp);
        assert_eq!(p.adjacency_projection(3, 4).unwrap(), DominanceDown);
        assert_eq!(p.adjacency_projection(1, 4).unwrap(), Universal);

        let flipped = p.with_layout(PartitionLayout::IntervalFirst);
        assert_eq!(flipped.adjacency_projection(1, 2).unwrap(), DominanceUp);
    }

    #[test]
    fn partition_length_must_be_even() {
        assert_eq!(
            Semantics::partition(3),
            Err(SemanticsError::OddPartition(3))
        );
        assert_eq!(Semantics::neighbour(0), Err(SemanticsError::ZeroLength));
        assert!(Semantics::neighbour(1).is_ok());
    }
}
