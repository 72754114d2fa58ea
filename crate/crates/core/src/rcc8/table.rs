//! Weak composition of RCC8 relations.

use std::fmt;
use std::sync::OnceLock;

use super::{BasicRelation, Rcc8Relation};
use crate::error::TableError;

const DC: u8 = 1 << 0;
const EC: u8 = 1 << 1;
const PO: u8 = 1 << 2;
const TPP: u8 = 1 << 3;
const NTPP: u8 = 1 << 4;
const TPPI: u8 = 1 << 5;
const NTPPI: u8 = 1 << 6;
const EQ: u8 = 1 << 7;
const ALL: u8 = 0xff;

/// The standard RCC8 composition table: `STANDARD[a][b]` holds the basic
/// relations possible between `x` and `z` given `x a y` and `y b z`.
/// Rows and columns follow the bit order.
#[rustfmt::skip]
const STANDARD: [[u8; 8]; 8] = [
    // DC
    [ALL, DC | EC | PO | TPP | NTPP, DC | EC | PO | TPP | NTPP, DC | EC | PO | TPP | NTPP,
     DC | EC | PO | TPP | NTPP, DC, DC, DC],
    // EC
    [DC | EC | PO | TPPI | NTPPI, DC | EC | PO | TPP | TPPI | EQ, DC | EC | PO | TPP | NTPP,
     EC | PO | TPP | NTPP, PO | TPP | NTPP, DC | EC, DC, EC],
    // PO
    [DC | EC | PO | TPPI | NTPPI, DC | EC | PO | TPPI | NTPPI, ALL, PO | TPP | NTPP,
     PO | TPP | NTPP, DC | EC | PO | TPPI | NTPPI, DC | EC | PO | TPPI | NTPPI, PO],
    // TPP
    [DC, DC | EC, DC | EC | PO | TPP | NTPP, TPP | NTPP, NTPP,
     DC | EC | PO | TPP | TPPI | EQ, DC | EC | PO | TPPI | NTPPI, TPP],
    // NTPP
    [DC, DC, DC | EC | PO | TPP | NTPP, NTPP, NTPP, DC | EC | PO | TPP | NTPP, ALL, NTPP],
    // TPPI
    [DC | EC | PO | TPPI | NTPPI, EC | PO | TPPI | NTPPI, PO | TPPI | NTPPI,
     PO | TPP | TPPI | EQ, PO | TPP | NTPP, TPPI | NTPPI, NTPPI, TPPI],
    // NTPPI
    [DC | EC | PO | TPPI | NTPPI, PO | TPPI | NTPPI, PO | TPPI | NTPPI, PO | TPPI | NTPPI,
     PO | TPP | NTPP | TPPI | NTPPI | EQ, NTPPI, NTPPI, NTPPI],
    // EQ
    [DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ],
];

/// A composition table on basic relations, extended to all 256×256 pairs
/// of relations by distributivity.
#[derive(Clone)]
pub struct CompositionTable {
    basic: [[Rcc8Relation; 8]; 8],
    full: Box<[Rcc8Relation]>,
}

impl CompositionTable {
    pub fn from_basic(basic: [[Rcc8Relation; 8]; 8]) -> CompositionTable {
        let mut full = vec![Rcc8Relation::EMPTY; 256 * 256].into_boxed_slice();
        for r in 1..256usize {
            // Split off the lowest member and reuse the row already built for the rest.
            let low = r.trailing_zeros() as usize;
            let rest = r & (r - 1);
            for s in 1..256usize {
                let mut acc = full[rest * 256 + s];
                let mut bits = s;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    acc |= basic[low][b];
                    bits &= bits - 1;
                }
                full[r * 256 + s] = acc;
            }
        }
        CompositionTable { basic, full }
    }

    /// The embedded standard table, validated on first use.
    ///
    /// Panics if the embedded data fails validation, which would mean the
    /// crate itself is broken.
    pub fn standard() -> &'static CompositionTable {
        static TABLE: OnceLock<CompositionTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let table = CompositionTable::standard_unchecked();
            if let Err(err) = table.validate() {
                panic!("embedded RCC8 composition table is invalid: {err}");
            }
            table
        })
    }

    /// The embedded standard table without running the validator.
    pub fn standard_unchecked() -> CompositionTable {
        let mut basic = [[Rcc8Relation::EMPTY; 8]; 8];
        for (a, row) in STANDARD.iter().enumerate() {
            for (b, &bits) in row.iter().enumerate() {
                basic[a][b] = Rcc8Relation::from_bits(bits);
            }
        }
        CompositionTable::from_basic(basic)
    }

    #[inline]
    pub fn compose_basic(&self, a: BasicRelation, b: BasicRelation) -> Rcc8Relation {
        self.basic[a.index()][b.index()]
    }

    #[inline]
    pub fn compose(&self, r: Rcc8Relation, s: Rcc8Relation) -> Rcc8Relation {
        self.full[r.bits() as usize * 256 + s.bits() as usize]
    }

    pub fn basic_entries(&self) -> &[[Rcc8Relation; 8]; 8] {
        &self.basic
    }

    /// Overwrites one basic cell, rebuilding the extended table.
    pub fn with_entry(&self, a: BasicRelation, b: BasicRelation, value: Rcc8Relation) -> Self {
        let mut basic = self.basic;
        basic[a.index()][b.index()] = value;
        CompositionTable::from_basic(basic)
    }

    /// Runs every check and returns the full report; fails if any gating
    /// check fails.
    pub fn validate(&self) -> Result<ValidationReport, TableError> {
        let report = self.report();
        match report.checks.iter().find(|c| c.gating && !c.passed) {
            Some(c) => Err(TableError::TableInvalid(format!(
                "{}: {}",
                c.name, c.detail
            ))),
            None => Ok(report),
        }
    }

    pub fn report(&self) -> ValidationReport {
        use BasicRelation as B;
        let mut checks = Vec::new();

        let mut identity = None;
        for b in B::ALL {
            let single = Rcc8Relation::basic(b);
            if self.compose_basic(B::Eq, b) != single {
                identity = Some(format!("EQ∘{b} = {}", self.compose_basic(B::Eq, b)));
                break;
            }
            if self.compose_basic(b, B::Eq) != single {
                identity = Some(format!("{b}∘EQ = {}", self.compose_basic(b, B::Eq)));
                break;
            }
        }
        checks.push(TableCheck::gate("identity", identity));

        let mut converse = None;
        'outer: for a in B::ALL {
            for b in B::ALL {
                let lhs = self.compose_basic(a, b).converse();
                let rhs = self.compose_basic(b.converse(), a.converse());
                if lhs != rhs {
                    converse = Some(format!(
                        "({a}∘{b})⁻ = {lhs} but {}∘{} = {rhs}",
                        b.converse(),
                        a.converse()
                    ));
                    break 'outer;
                }
            }
        }
        checks.push(TableCheck::gate("converse-symmetry", converse));

        let r = |bits: u8| Rcc8Relation::from_bits(bits);
        let anchor =
            |name: &'static str, got: Rcc8Relation, want: Rcc8Relation, gating| TableCheck {
                name,
                gating,
                passed: got == want,
                detail: if got == want {
                    format!("{got}")
                } else {
                    format!("expected {want}, table gives {got}")
                },
            };
        checks.push(anchor(
            "anchor DC∘DC",
            self.compose(r(DC), r(DC)),
            r(ALL),
            true,
        ));
        checks.push(anchor(
            "anchor (EC∘EC)∩(EC∘NTPP)",
            self.compose(r(EC), r(EC)) & self.compose(r(EC), r(NTPP)),
            r(PO | TPP),
            true,
        ));
        checks.push(anchor(
            "anchor TPPI∘TPP",
            self.compose(r(TPPI), r(TPP)),
            r(PO | TPP | TPPI | EQ),
            true,
        ));
        // Weak composition of TPP with itself contains NTPP in every RCC8
        // table, so this expectation is reported but does not gate.
        checks.push(anchor(
            "anchor (TPP∪EQ)∘TPP",
            self.compose(r(TPP | EQ), r(TPP)),
            r(TPP),
            false,
        ));
        ValidationReport { checks }
    }
}

impl fmt::Debug for CompositionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompositionTable")
            .field("basic", &self.basic)
            .finish()
    }
}

impl PartialEq for CompositionTable {
    fn eq(&self, other: &Self) -> bool {
        self.basic == other.basic
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub name: &'static str,
    pub passed: bool,
    /// A failing gating check makes the table unusable.
    pub gating: bool,
    pub detail: String,
}

impl TableCheck {
    fn gate(name: &'static str, failure: Option<String>) -> TableCheck {
        TableCheck {
            name,
            gating: true,
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| "ok".to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<TableCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&TableCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}
