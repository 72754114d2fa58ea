//! The maximal tractable classes of RCC8 and their witness refinements.
//!
//! Membership predicates are evaluated literally on the bitset, including
//! the four enumerated relations of NP8.

use std::fmt;
use std::str::FromStr;

use super::{BasicRelation, Rcc8Relation};
use crate::error::ParseError;

const DC: Rcc8Relation = Rcc8Relation::DC;
const EC: Rcc8Relation = Rcc8Relation::EC;
const PO: Rcc8Relation = Rcc8Relation::PO;
const TPP: Rcc8Relation = Rcc8Relation::TPP;
const NTPP: Rcc8Relation = Rcc8Relation::NTPP;
const TPPI: Rcc8Relation = Rcc8Relation::TPPI;
const NTPPI: Rcc8Relation = Rcc8Relation::NTPPI;
const EQ: Rcc8Relation = Rcc8Relation::EQ;

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

impl Rcc8Relation {
    /// Relations touching both proper-part sides without PO.
    pub fn in_n(self) -> bool {
        !PO.is_subset(self) && self.intersects(TPP | NTPP) && self.intersects(TPPI | NTPPI)
    }

    pub fn in_np8(self) -> bool {
        if self.in_n() {
            return true;
        }
        [Rcc8Relation::EMPTY, DC].into_iter().any(|r1| {
            [NTPP, NTPPI]
                .into_iter()
                .any(|r2| self == r1 | EC | r2 | EQ)
        })
    }

    pub fn in_p8(self) -> bool {
        !self.in_np8()
    }

    pub fn in_h8(self) -> bool {
        self.in_p8()
            && implies((NTPP | EQ).is_subset(self), TPP.is_subset(self))
            && implies((NTPPI | EQ).is_subset(self), TPPI.is_subset(self))
    }

    pub fn in_q8(self) -> bool {
        self.in_p8()
            && implies(
                EQ.is_subset(self) && self.intersects(TPP | NTPP | TPPI | NTPPI),
                PO.is_subset(self),
            )
    }

    pub fn in_c8(self) -> bool {
        self.in_p8()
            && implies(
                EC.is_subset(self) && self.intersects(TPP | NTPP | TPPI | NTPPI | EQ),
                PO.is_subset(self),
            )
    }

    /// H8 members whose non-tangential parts come with the tangential ones.
    pub fn in_hntpp(self) -> bool {
        self.in_h8()
            && implies(NTPP.is_subset(self), TPP.is_subset(self))
            && implies(NTPPI.is_subset(self), TPPI.is_subset(self))
    }
}

/// `a_TPPI ∘ a_TPP ∘ a_PO ∘ a_EC ∘ a_DC`, innermost first.
pub fn h_h8(r: Rcc8Relation) -> Rcc8Relation {
    use BasicRelation::*;
    [Dc, Ec, Po, Tpp, Tppi]
        .into_iter()
        .fold(r, |acc, b| acc.a_refine(b))
}

/// `a_TPPI ∘ a_TPP ∘ a_NTPPI ∘ a_NTPP ∘ a_PO ∘ a_DC`, innermost first.
pub fn h_c8(r: Rcc8Relation) -> Rcc8Relation {
    use BasicRelation::*;
    [Dc, Po, Ntpp, Ntppi, Tpp, Tppi]
        .into_iter()
        .fold(r, |acc, b| acc.a_refine(b))
}

/// Named relation sets used for classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    H8,
    Q8,
    C8,
    Hntpp,
    Full,
}

impl Fragment {
    pub const ALL: [Fragment; 5] = [
        Fragment::H8,
        Fragment::Q8,
        Fragment::C8,
        Fragment::Hntpp,
        Fragment::Full,
    ];

    pub fn contains(self, r: Rcc8Relation) -> bool {
        match self {
            Fragment::H8 => r.in_h8(),
            Fragment::Q8 => r.in_q8(),
            Fragment::C8 => r.in_c8(),
            Fragment::Hntpp => r.in_hntpp(),
            Fragment::Full => true,
        }
    }

    /// The refinement extracting a basic witness from members.
    pub fn refinement(self) -> fn(Rcc8Relation) -> Rcc8Relation {
        match self {
            Fragment::C8 => h_c8,
            _ => h_h8,
        }
    }

    pub fn members(self) -> impl Iterator<Item = Rcc8Relation> {
        Rcc8Relation::all().filter(move |r| self.contains(*r))
    }

    pub fn name(self) -> &'static str {
        match self {
            Fragment::H8 => "H8",
            Fragment::Q8 => "Q8",
            Fragment::C8 => "C8",
            Fragment::Hntpp => "HNTPP",
            Fragment::Full => "FULL",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fragment {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        Fragment::ALL
            .into_iter()
            .find(|f| f.name() == upper)
            .ok_or_else(|| ParseError::UnknownFragment(s.trim().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_predicate_examples() {
        assert!(!(DC | EC | NTPP | EQ).in_p8());
        assert!(TPP.in_h8());
        assert!((TPP | NTPPI).in_n());
        assert!(!(TPP | NTPPI).in_h8());
        assert!(Rcc8Relation::EMPTY.in_h8());
        assert!(Rcc8Relation::UNIVERSAL.in_h8());
        assert!(Rcc8Relation::UNIVERSAL.in_q8());
        assert!(Rcc8Relation::UNIVERSAL.in_c8());
    }

    #[test]
    fn np8_enumerated_members() {
        for r in [
            EC | NTPP | EQ,
            DC | EC | NTPP | EQ,
            EC | NTPPI | EQ,
            DC | EC | NTPPI | EQ,
        ] {
            assert!(r.in_np8() && !r.in_n(), "{r}");
        }
        assert!(!(EC | NTPP | EQ | PO).in_np8());
    }

    #[test]
    fn hntpp_examples() {
        assert!(!NTPP.in_hntpp());
        assert!((TPP | NTPP | EQ).in_hntpp());
        assert!(DC.in_hntpp());
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(h_h8(DC | EC), DC);
        assert_eq!(h_h8(TPP), TPP);
        assert_eq!(h_c8(PO | TPP | NTPP), PO);
        assert_eq!(h_h8(Rcc8Relation::EMPTY), Rcc8Relation::EMPTY);
        assert_eq!(h_c8(Rcc8Relation::EMPTY), Rcc8Relation::EMPTY);
    }

    #[test]
    fn fragment_names_parse() {
        for f in Fragment::ALL {
            assert_eq!(f.name().parse::<Fragment>().unwrap(), f);
        }
        assert_eq!("hntpp".parse::<Fragment>().unwrap(), Fragment::Hntpp);
    }
}
