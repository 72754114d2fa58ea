//! The RCC8 relation algebra.
//!
//! A relation is a set of the eight basic relations stored in one byte. Bit
//! `i` holds the basic relation of index `i` in the fixed order
//! `DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ`; that order is also the
//! serialization order of every text format in this crate.

mod classes;
mod table;

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};
use std::str::FromStr;

use crate::error::ParseError;

pub use classes::{h_c8, h_h8, Fragment};
pub use table::{CompositionTable, TableCheck, ValidationReport};

/// One of the eight jointly exhaustive, pairwise disjoint RCC8 relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum BasicRelation {
    Dc = 0,
    Ec = 1,
    Po = 2,
    Tpp = 3,
    Ntpp = 4,
    Tppi = 5,
    Ntppi = 6,
    Eq = 7,
}

impl BasicRelation {
    pub const ALL: [BasicRelation; 8] = [
        BasicRelation::Dc,
        BasicRelation::Ec,
        BasicRelation::Po,
        BasicRelation::Tpp,
        BasicRelation::Ntpp,
        BasicRelation::Tppi,
        BasicRelation::Ntppi,
        BasicRelation::Eq,
    ];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> BasicRelation {
        Self::ALL[i]
    }

    pub const fn converse(self) -> BasicRelation {
        match self {
            BasicRelation::Tpp => BasicRelation::Tppi,
            BasicRelation::Ntpp => BasicRelation::Ntppi,
            BasicRelation::Tppi => BasicRelation::Tpp,
            BasicRelation::Ntppi => BasicRelation::Ntpp,
            b => b,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            BasicRelation::Dc => "DC",
            BasicRelation::Ec => "EC",
            BasicRelation::Po => "PO",
            BasicRelation::Tpp => "TPP",
            BasicRelation::Ntpp => "NTPP",
            BasicRelation::Tppi => "TPPI",
            BasicRelation::Ntppi => "NTPPI",
            BasicRelation::Eq => "EQ",
        }
    }
}

impl fmt::Display for BasicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasicRelation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        BasicRelation::ALL
            .into_iter()
            .find(|b| b.name() == upper)
            .ok_or_else(|| ParseError::UnknownRelation(s.trim().to_string()))
    }
}

/// A (possibly empty) union of basic relations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rcc8Relation(u8);

impl Rcc8Relation {
    pub const EMPTY: Rcc8Relation = Rcc8Relation(0);
    pub const UNIVERSAL: Rcc8Relation = Rcc8Relation(0xff);

    pub const DC: Rcc8Relation = Self::basic(BasicRelation::Dc);
    pub const EC: Rcc8Relation = Self::basic(BasicRelation::Ec);
    pub const PO: Rcc8Relation = Self::basic(BasicRelation::Po);
    pub const TPP: Rcc8Relation = Self::basic(BasicRelation::Tpp);
    pub const NTPP: Rcc8Relation = Self::basic(BasicRelation::Ntpp);
    pub const TPPI: Rcc8Relation = Self::basic(BasicRelation::Tppi);
    pub const NTPPI: Rcc8Relation = Self::basic(BasicRelation::Ntppi);
    pub const EQ: Rcc8Relation = Self::basic(BasicRelation::Eq);

    #[inline]
    pub const fn from_bits(bits: u8) -> Rcc8Relation {
        Rcc8Relation(bits)
    }

    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn basic(b: BasicRelation) -> Rcc8Relation {
        Rcc8Relation(1 << b as u8)
    }

    pub fn from_basics<I: IntoIterator<Item = BasicRelation>>(basics: I) -> Rcc8Relation {
        basics
            .into_iter()
            .fold(Self::EMPTY, |r, b| r | Self::basic(b))
    }

    /// All 256 relations in bit order.
    pub fn all() -> impl Iterator<Item = Rcc8Relation> {
        (0..=255u8).map(Rcc8Relation)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_universal(self) -> bool {
        self.0 == 0xff
    }

    #[inline]
    pub const fn contains(self, b: BasicRelation) -> bool {
        self.0 & (1 << b as u8) != 0
    }

    /// `self ⊆ other`.
    #[inline]
    pub const fn is_subset(self, other: Rcc8Relation) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: Rcc8Relation) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_basic(self) -> bool {
        self.0.count_ones() == 1
    }

    /// The single basic relation, if this relation is a singleton.
    pub fn as_basic(self) -> Option<BasicRelation> {
        self.is_basic()
            .then(|| BasicRelation::from_index(self.0.trailing_zeros() as usize))
    }

    /// Members in bit order.
    pub fn iter(self) -> impl Iterator<Item = BasicRelation> {
        BasicRelation::ALL
            .into_iter()
            .filter(move |b| self.contains(*b))
    }

    pub fn converse(self) -> Rcc8Relation {
        CONVERSE[self.0 as usize]
    }

    /// Weak composition through the standard table.
    pub fn compose(self, other: Rcc8Relation) -> Rcc8Relation {
        CompositionTable::standard().compose(self, other)
    }

    /// `{b}` when `b ∈ self`, `self` otherwise.
    pub fn a_refine(self, b: BasicRelation) -> Rcc8Relation {
        if self.contains(b) {
            Rcc8Relation::basic(b)
        } else {
            self
        }
    }
}

static CONVERSE: [Rcc8Relation; 256] = build_converse();

const fn build_converse() -> [Rcc8Relation; 256] {
    let mut out = [Rcc8Relation::EMPTY; 256];
    let mut r = 0usize;
    while r < 256 {
        let mut bits = 0u8;
        let mut i = 0usize;
        while i < 8 {
            if r & (1 << i) != 0 {
                bits |= 1 << BasicRelation::ALL[i].converse() as u8;
            }
            i += 1;
        }
        out[r] = Rcc8Relation(bits);
        r += 1;
    }
    out
}

impl From<BasicRelation> for Rcc8Relation {
    fn from(b: BasicRelation) -> Self {
        Rcc8Relation::basic(b)
    }
}

impl BitOr for Rcc8Relation {
    type Output = Rcc8Relation;
    fn bitor(self, rhs: Self) -> Self {
        Rcc8Relation(self.0 | rhs.0)
    }
}

impl BitOrAssign for Rcc8Relation {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for Rcc8Relation {
    type Output = Rcc8Relation;
    fn bitand(self, rhs: Self) -> Self {
        Rcc8Relation(self.0 & rhs.0)
    }
}

impl BitAndAssign for Rcc8Relation {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for Rcc8Relation {
    type Output = Rcc8Relation;
    fn sub(self, rhs: Self) -> Self {
        Rcc8Relation(self.0 & !rhs.0)
    }
}

impl Not for Rcc8Relation {
    type Output = Rcc8Relation;
    fn not(self) -> Self {
        Rcc8Relation(!self.0)
    }
}

impl fmt::Display for Rcc8Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_universal() {
            return f.write_str("*");
        }
        f.write_str("{")?;
        for (i, b) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(b.name())?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Rcc8Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rcc8Relation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "*" {
            return Ok(Rcc8Relation::UNIVERSAL);
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| ParseError::MalformedRelation(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Rcc8Relation::EMPTY);
        }
        inner
            .split(',')
            .map(|tok| tok.parse::<BasicRelation>().map(Rcc8Relation::basic))
            .try_fold(Rcc8Relation::EMPTY, |acc, b| Ok(acc | b?))
    }
}
