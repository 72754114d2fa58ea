//! Executable checks of the finite claims this crate is built on: the
//! six-region network whose closure is consistent but has no closed
//! scenario, the exhaustive class and refinement suites, and the worked closure examples.

use std::fmt;

use crate::error::VerifyError;
use crate::network::{Engine, Network};
use crate::projection::{PartitionLayout, ProjectionKind, Semantics};
use crate::rcc8::{BasicRelation, CompositionTable, Fragment, Rcc8Relation};
use crate::sequence::SeqRelation;

const GAP_NETWORK: &str = "\
semantics: neighbour
length: 4
vars: u v w x y z
x y : {NTPP} * * {NTPPI}
x z : {NTPP} * * *
w z : * * {NTPP} *
y z : {TPPI} {PO,TPP,TPPI,EQ} * *
w x : {TPPI} {PO,TPP,TPPI,EQ} * *
w y : * {PO,TPP} * *
x u : * * * {NTPPI}
v u : * {NTPPI} * *
y u : * * {PO,TPP,TPPI,EQ} {TPP}
v x : * * {PO,TPP,TPPI,EQ} {TPP}
v y : * * {PO,TPPI} *
";

/// Expected closure, one orientation per pair. `*` is universal, `*-A-B`
/// removes basics from it, `A|B` is a union.
const GAP_CLOSURE: [(&str, &str, [&str; 4]); 15] = [
    ("x", "y", ["NTPP", "TPP|NTPP|EQ", "TPPI|NTPPI|EQ", "NTPPI"]),
    ("y", "z", ["TPPI", "PO|TPPI|EQ", "*-DC-EC", "*-DC"]),
    ("x", "z", ["NTPP", "TPP|NTPP|EQ", "*-DC-EC", "*-DC-EC"]),
    ("w", "x", ["TPPI", "PO|TPPI|EQ", "*-DC-NTPPI", "*"]),
    ("w", "y", ["PO|TPP|NTPP", "PO|TPP", "*-DC-NTPPI", "*"]),
    (
        "w",
        "z",
        ["PO|TPP|NTPP", "TPP|NTPP|EQ", "NTPP", "TPP|NTPP|EQ"],
    ),
    ("u", "x", ["*-DC", "*-DC-EC", "TPP|NTPP|EQ", "NTPP"]),
    ("u", "y", ["*-DC-EC", "*-DC-EC", "PO|TPPI|EQ", "TPPI"]),
    ("u", "z", ["*-DC-EC", "*-DC-EC", "*-DC", "*-DC"]),
    ("u", "w", ["*-DC", "*", "*", "*"]),
    ("v", "x", ["*-DC", "*-DC-EC-NTPP", "PO|TPP|EQ", "TPP"]),
    (
        "v",
        "y",
        ["*-DC-EC", "*-DC-EC-NTPP", "PO|TPPI", "EC|PO|TPPI|NTPPI"],
    ),
    ("v", "z", ["*-DC-EC", "*-DC-EC", "*-DC", "*"]),
    ("v", "w", ["*-DC", "*", "*", "*"]),
    (
        "v",
        "u",
        ["TPPI|NTPPI|EQ", "NTPPI", "TPPI|NTPPI|EQ", "PO|TPPI|NTPPI"],
    ),
];

fn rel(expr: &str) -> Rcc8Relation {
    let basic =
        |s: &str| Rcc8Relation::basic(s.parse::<BasicRelation>().expect("basic relation name"));
    if let Some(rest) = expr.strip_prefix('*') {
        rest.split('-')
            .filter(|s| !s.is_empty())
            .fold(Rcc8Relation::UNIVERSAL, |acc, s| acc - basic(s))
    } else {
        expr.split('|')
            .fold(Rcc8Relation::EMPTY, |acc, s| acc | basic(s))
    }
}

/// Six regions over four neighbouring instants; its closure is consistent
/// yet contains no algebraically closed scenario.
pub fn closure_gap_network() -> Network {
    Network::parse(GAP_NETWORK).expect("built-in network parses")
}

/// The expected closure of [`closure_gap_network`] as `(x, y, relation)`.
pub fn closure_gap_expected() -> Vec<(&'static str, &'static str, [Rcc8Relation; 4])> {
    GAP_CLOSURE
        .iter()
        .map(|&(x, y, parts)| (x, y, parts.map(rel)))
        .collect()
}

/// First difference between `closed` and the expected closure, comparing
/// both orientations of every listed pair.
pub fn closure_gap_mismatch(closed: &Network) -> Option<String> {
    for (x, y, want) in closure_gap_expected() {
        let (xi, yi) = (closed.var_index(x).ok()?, closed.var_index(y).ok()?);
        let got = closed.relation(xi, yi);
        let back = closed.relation(yi, xi);
        for t in 0..4 {
            if got[t] != want[t] || back[t] != want[t].converse() {
                return Some(format!(
                    "{x}{y} at index {}: expected {}, got {}",
                    t + 1,
                    want[t],
                    got[t]
                ));
            }
        }
    }
    None
}

/// Outcome of one exhaustive suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Suite {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Suite {
        Suite {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

/// HNTPP is closed under intersection, composition and converse.
pub fn hntpp_subclass_suite(table: &CompositionTable) -> SuiteOutcome {
    let mut suite = Suite::new("hntpp-subclass");
    let members: Vec<_> = Fragment::Hntpp.members().collect();
    for &r in &members {
        suite.check(r.converse().in_hntpp(), || format!("converse of {r}"));
        for &s in &members {
            suite.check((r & s).in_hntpp(), || format!("{r} ∩ {s}"));
            let c = table.compose(r, s);
            suite.check(c.in_hntpp(), || format!("{r} ∘ {s} = {c}"));
        }
    }
    suite.finish()
}

/// The neighbourhood projection maps Q8 into HNTPP and HNTPP into Q8.
pub fn neighbour_swap_suite() -> SuiteOutcome {
    let mut suite = Suite::new("neighbour-swaps-q8-hntpp");
    for r in Fragment::Q8.members() {
        let p = ProjectionKind::Neighbour.apply(r);
        suite.check(p.in_hntpp(), || format!("Q8 member {r} projects to {p}"));
    }
    for r in Fragment::Hntpp.members() {
        let p = ProjectionKind::Neighbour.apply(r);
        suite.check(p.in_q8(), || format!("HNTPP member {r} projects to {p}"));
    }
    suite.finish()
}

fn refinement_suite(
    name: &'static str,
    sem: Semantics,
    products: &[(Fragment, Fragment)],
) -> SuiteOutcome {
    let mut suite = Suite::new(name);
    for &(a, b) in products {
        let spec = crate::fragments::FragmentSpec::new(vec![a, b], sem);
        for r1 in a.members() {
            for r2 in b.members() {
                let r = SeqRelation::new(vec![r1, r2], sem).expect("length 2");
                if !r.is_conv_consistent() {
                    continue;
                }
                let h = spec.refine(&r);
                suite.check(h.is_conv_consistent() && h.refines(&r), || {
                    format!("{a}×{b}: ({r}) refines to ({h})")
                });
            }
        }
    }
    suite.finish()
}

/// Refining a ⌣-consistent pair over Q8×Q8, Q8×H8 or H8×Q8 at neighbouring
/// instants keeps it ⌣-consistent.
pub fn neighbour_refinement_suite() -> SuiteOutcome {
    use Fragment::{H8, Q8};
    refinement_suite(
        "neighbour-refinement",
        Semantics::neighbour(2).expect("positive length"),
        &[(Q8, Q8), (Q8, H8), (H8, Q8)],
    )
}

/// Same as [`neighbour_refinement_suite`] for an instant followed by an
/// interval, over {H8,Q8}×{H8,Q8,C8}.
pub fn partition_refinement_suite(layout: PartitionLayout) -> SuiteOutcome {
    use Fragment::{C8, H8, Q8};
    let mut products = Vec::new();
    for a in [H8, Q8] {
        for b in [H8, Q8, C8] {
            products.push((a, b));
        }
    }
    refinement_suite(
        "partition-refinement",
        Semantics::partition(2)
            .expect("even length")
            .with_layout(layout),
        &products,
    )
}

/// Outside N, the up projection lands in H8 and the down projection in
/// H8 ∩ Q8 ∩ C8.
pub fn dominance_suite() -> SuiteOutcome {
    let mut suite = Suite::new("dominance-lands-in-classes");
    for r in Rcc8Relation::all().filter(|r| !r.in_n()) {
        let up = ProjectionKind::DominanceUp.apply(r);
        suite.check(up.in_h8(), || format!("up {r} = {up}"));
        let down = ProjectionKind::DominanceDown.apply(r);
        suite.check(down.in_h8() && down.in_q8() && down.in_c8(), || {
            format!("down {r} = {down}")
        });
    }
    suite.finish()
}

pub fn exhaustive_suites(table: &CompositionTable, layout: PartitionLayout) -> Vec<SuiteOutcome> {
    vec![
        hntpp_subclass_suite(table),
        neighbour_swap_suite(),
        neighbour_refinement_suite(),
        partition_refinement_suite(layout),
        dominance_suite(),
    ]
}

/// One worked projection-closure example: input, semantics, expected output.
pub struct WorkedExample {
    pub name: &'static str,
    pub sem: Semantics,
    pub input: Vec<Rcc8Relation>,
    pub expected: Vec<Rcc8Relation>,
}

pub fn worked_examples(layout: PartitionLayout) -> Vec<WorkedExample> {
    vec![
        WorkedExample {
            name: "neighbour m=3",
            sem: Semantics::neighbour(3).expect("positive length"),
            input: ["TPP|NTPP|TPPI|NTPPI", "PO|EQ", "EC|DC"].map(rel).to_vec(),
            expected: ["TPP|TPPI", "PO", "EC"].map(rel).to_vec(),
        },
        WorkedExample {
            name: "partition m=4",
            sem: Semantics::partition(4)
                .expect("even length")
                .with_layout(layout),
            input: ["TPP|NTPP", "PO|EQ", "EC|DC", "DC"].map(rel).to_vec(),
            expected: ["TPP", "PO", "EC", "DC"].map(rel).to_vec(),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, id: u8) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// The first failing claim as an error.
    pub fn into_result(self) -> Result<Report, VerifyError> {
        match self.claims.iter().find(|c| !c.passed) {
            Some(c) => Err(VerifyError::VerificationFailure {
                claim: c.id,
                detail: c.detail.clone(),
            }),
            None => Ok(self),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "claim {} {verdict} {}: {}", c.id, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// What the checks run against; the defaults are the shipped table and
/// layout, the fields exist so faults can be injected.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig<'t> {
    pub table: &'t CompositionTable,
    pub layout: PartitionLayout,
}

impl Default for VerifyConfig<'static> {
    fn default() -> Self {
        VerifyConfig {
            table: CompositionTable::standard(),
            layout: PartitionLayout::default(),
        }
    }
}

pub fn verify_all() -> Report {
    verify_with(VerifyConfig::default())
}

pub fn verify_with(config: VerifyConfig<'_>) -> Report {
    let engine = Engine::new(config.table);
    let net = closure_gap_network();
    let closed = engine.algebraic_closure(&net);

    let claim = |id, name, result: Result<String, String>| match result {
        Ok(detail) => Claim {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => Claim {
            id,
            name,
            passed: false,
            detail,
        },
    };

    let mut claims = Vec::with_capacity(7);
    claims.push(claim(
        1,
        "closure-reproduction",
        match closure_gap_mismatch(&closed) {
            None => Ok("all 15 relations match in both orientations".into()),
            Some(d) => Err(d),
        },
    ));
    claims.push(claim(
        2,
        "closure-consistent",
        if engine.is_algebraically_consistent(&closed) {
            Ok("closed and no empty component".into())
        } else if closed.is_trivially_unsatisfiable() {
            Err("closure has an empty component".into())
        } else {
            Err("closure is not a fixed point".into())
        },
    ));
    claims.push(claim(
        3,
        "no-closed-scenario",
        match engine.find_closed_scenario(&net) {
            None => Ok("search finds no algebraically closed scenario".into()),
            Some(s) => Err(format!("found scenario:\n{s}")),
        },
    ));
    claims.push(claim(
        4,
        "eq-refinement-replay",
        replay_eq_refinement(&engine, &closed),
    ));
    claims.push(claim(
        5,
        "two-slice-derivative",
        two_slice_derivative(&engine, &closed),
    ));
    claims.push(claim(6, "exhaustive-suites", {
        let suites = exhaustive_suites(config.table, config.layout);
        let cases: usize = suites.iter().map(|s| s.cases).sum();
        match suites.iter().find(|s| !s.passed()) {
            None => Ok(format!("{} suites, {cases} cases", suites.len())),
            Some(s) => Err(format!(
                "{}: {}",
                s.name,
                s.failure.as_deref().unwrap_or("")
            )),
        }
    }));
    claims.push(claim(7, "worked-examples", {
        let mut result = Ok("both closures match".to_string());
        for ex in worked_examples(config.layout) {
            let got = SeqRelation::new(ex.input.clone(), ex.sem)
                .expect("example length")
                .projection_closure();
            if got.parts() != ex.expected.as_slice() {
                let want = SeqRelation::new(ex.expected, ex.sem).expect("example length");
                result = Err(format!("{}: expected ({want}), got ({got})", ex.name));
                break;
            }
        }
        result
    }));
    Report { claims }
}

/// Pinning `xy` to EQ at index 2 and re-closing empties a relation, as
/// the w-row at index 2 cannot agree with x, y and z all being equal.
/// TPP and NTPP are replayed as well.
fn replay_eq_refinement(engine: &Engine<'_>, closed: &Network) -> Result<String, String> {
    let idx = |v: &str| closed.var_index(v).expect("known variable");
    let (w, x, y, z) = (idx("w"), idx("x"), idx("y"), idx("z"));
    let t = 1;
    let row = closed.relation(w, x)[t] & closed.relation(w, y)[t] & closed.relation(w, z)[t];
    if !row.is_empty() {
        return Err(format!("wx ∩ wy ∩ wz at index 2 is {row}, not empty"));
    }
    let mut pinned = closed.clone();
    pinned.set_component(x, y, t, Rcc8Relation::EQ);
    let reclosed = engine.algebraic_closure(&pinned);
    if !reclosed.is_trivially_unsatisfiable() {
        return Err("closure after pinning xy to EQ at index 2 has no empty component".into());
    }
    let w_row_empty = [x, y, z]
        .iter()
        .any(|&o| reclosed.relation(w, o)[t].is_empty());
    if !w_row_empty {
        return Err("pinning xy to EQ at index 2 did not empty the w-row".into());
    }
    for b in [Rcc8Relation::TPP, Rcc8Relation::NTPP] {
        let mut pinned = closed.clone();
        pinned.set_component(x, y, t, b);
        if engine.closure_is_consistent(&pinned) {
            return Err(format!("pinning xy to {b} at index 2 stays consistent"));
        }
    }
    Ok("EQ, TPP and NTPP at index 2 each close to an empty relation".into())
}

/// Slices 2 and 3 of the closure as a two-instant network.
pub fn two_slice_derivative(engine: &Engine<'_>, closed: &Network) -> Result<String, String> {
    let sem = Semantics::neighbour(2).expect("positive length");
    let mut derived = Network::new(closed.vars().to_vec(), sem).expect("same variables");
    for (x, y) in closed.pairs() {
        let r = closed.relation(x, y);
        derived.set(x, y, &r[1..3]).expect("length 2");
    }
    if !engine.is_algebraically_consistent(&derived) {
        return Err("derived network is not algebraically consistent".into());
    }
    match engine.find_closed_scenario(&derived) {
        None => Ok("consistent and without a closed scenario".into()),
        Some(s) => Err(format!("derived network has scenario:\n{s}")),
    }
}
