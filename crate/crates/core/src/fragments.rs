//! Classification of networks against the tractable Cartesian classes, the
//! componentwise witness refinement, and the closure-only decision
//! procedure for networks inside a tractable class.

use std::fmt;

use crate::network::{Engine, Network, Scenario};
use crate::projection::{Semantics, SemanticsKind};
use crate::rcc8::{Fragment, Rcc8Relation};
use crate::sequence::SeqRelation;

/// One relation set per time index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentSpec {
    per_index: Vec<Fragment>,
    sem: Semantics,
}

impl FragmentSpec {
    /// Panics if `per_index` does not have one entry per index of `sem`.
    pub fn new(per_index: Vec<Fragment>, sem: Semantics) -> FragmentSpec {
        assert_eq!(per_index.len(), sem.len(), "one fragment per index");
        FragmentSpec { per_index, sem }
    }

    pub fn per_index(&self) -> &[Fragment] {
        &self.per_index
    }

    pub fn semantics(&self) -> Semantics {
        self.sem
    }

    pub fn conforms(&self, rel: &[Rcc8Relation]) -> bool {
        rel.len() == self.per_index.len()
            && rel.iter().zip(&self.per_index).all(|(&r, f)| f.contains(r))
    }

    /// Every relation of `net` conforms.
    pub fn covers(&self, net: &Network) -> bool {
        net.pairs()
            .all(|(x, y)| self.conforms(net.relation(x, y)) && self.conforms(net.relation(y, x)))
    }

    /// Whether index `i` (0-based) is refined with `h_C8` rather than `h_H8`.
    pub fn uses_c8(&self, i: usize) -> bool {
        !matches!(
            self.per_index[i],
            Fragment::H8 | Fragment::Q8 | Fragment::Hntpp
        )
    }

    /// `H_S` on a single relation: `h_H8` where the index's set is inside H8
    /// or Q8, `h_C8` everywhere else.
    pub fn refine(&self, rel: &SeqRelation) -> SeqRelation {
        let use_c8: Vec<bool> = (0..self.per_index.len()).map(|i| self.uses_c8(i)).collect();
        rel.refine_with(&use_c8)
    }

    /// `H_S` applied to every relation of `net`.
    pub fn refine_network(&self, net: &Network) -> Network {
        let mut out = net.clone();
        for (x, y) in net.pairs() {
            let refined = self.refine(&net.seq(x, y));
            out.set(x, y, refined.parts()).expect("same shape");
        }
        out
    }
}

/// `H_S_refine(R, spec)`.
pub fn h_s_refine(rel: &SeqRelation, spec: &FragmentSpec) -> SeqRelation {
    spec.refine(rel)
}

/// Index patterns recognised by [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    /// Consecutive instants; every slice in H8 or Q8 and no two adjacent
    /// slices that fit only H8. Algebraically consistent networks are
    /// satisfiable, but closure may leave the class.
    SeparatedH8Q8,
    /// Consecutive instants; HNTPP on even indices, Q8 on odd ones.
    HntppOnEven,
    /// Consecutive instants; HNTPP on odd indices, Q8 on even ones.
    HntppOnOdd,
    /// Partition; instants in H8 or Q8, intervals in H8, Q8 or C8.
    PartitionMixed,
    /// Partition; instants in H8, intervals in H8, Q8 or C8.
    PartitionH8Instants,
}

impl Pattern {
    pub fn label(self) -> &'static str {
        match self {
            Pattern::SeparatedH8Q8 => "PROP2",
            Pattern::HntppOnEven => "PROP3_EVEN_HNTPP",
            Pattern::HntppOnOdd => "PROP3_ODD_HNTPP",
            Pattern::PartitionMixed => "PROP4",
            Pattern::PartitionH8Instants => "THEOREM1",
        }
    }

    /// Closure alone decides networks matching this pattern.
    pub fn is_decisive(self) -> bool {
        matches!(
            self,
            Pattern::HntppOnEven | Pattern::HntppOnOdd | Pattern::PartitionH8Instants
        )
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentReport {
    /// For each index, the fragments containing every relation of that slice.
    pub per_index: Vec<Vec<Fragment>>,
    pub patterns: Vec<Pattern>,
    sem: Semantics,
}

impl FragmentReport {
    pub fn fits(&self, i: usize, f: Fragment) -> bool {
        self.per_index[i].contains(&f)
    }

    pub fn matches(&self, p: Pattern) -> bool {
        self.patterns.contains(&p)
    }

    /// The first decisive pattern matched, if any.
    pub fn decisive_pattern(&self) -> Option<Pattern> {
        self.patterns.iter().copied().find(|p| p.is_decisive())
    }

    /// A per-index fragment choice realising `pattern`.
    pub fn spec_for(&self, pattern: Pattern) -> Option<FragmentSpec> {
        if !self.matches(pattern) {
            return None;
        }
        let m = self.per_index.len();
        let pick = |i: usize, options: &[Fragment]| {
            options
                .iter()
                .copied()
                .find(|&f| self.fits(i, f))
                .expect("pattern matched")
        };
        let per_index = (0..m)
            .map(|i| {
                let even = (i + 1) % 2 == 0;
                match pattern {
                    Pattern::HntppOnEven if even => Fragment::Hntpp,
                    Pattern::HntppOnOdd if !even => Fragment::Hntpp,
                    Pattern::HntppOnEven | Pattern::HntppOnOdd => Fragment::Q8,
                    Pattern::SeparatedH8Q8 => pick(i, &[Fragment::Q8, Fragment::H8]),
                    Pattern::PartitionMixed | Pattern::PartitionH8Instants => {
                        if self.sem.is_instant(i + 1) {
                            pick(i, &[Fragment::H8, Fragment::Q8])
                        } else {
                            pick(i, &[Fragment::H8, Fragment::Q8, Fragment::C8])
                        }
                    }
                }
            })
            .collect();
        Some(FragmentSpec::new(per_index, self.sem))
    }
}

impl fmt::Display for FragmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, frags) in self.per_index.iter().enumerate() {
            write!(f, "{}:", i + 1)?;
            for frag in frags {
                write!(f, " {frag}")?;
            }
            writeln!(f)?;
        }
        for p in &self.patterns {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Per-slice fragment membership and the matching index patterns.
pub fn classify(net: &Network) -> FragmentReport {
    let sem = net.semantics();
    let m = sem.len();
    let per_index: Vec<Vec<Fragment>> = (0..m)
        .map(|t| {
            Fragment::ALL
                .into_iter()
                .filter(|f| {
                    net.pairs().all(|(x, y)| {
                        f.contains(net.relation(x, y)[t]) && f.contains(net.relation(y, x)[t])
                    })
                })
                .collect()
        })
        .collect();
    let fits = |i: usize, f: Fragment| per_index[i].contains(&f);

    let mut patterns = Vec::new();
    match sem.kind() {
        SemanticsKind::NeighbourInstants => {
            let h8_only = |i: usize| fits(i, Fragment::H8) && !fits(i, Fragment::Q8);
            let all_h8_or_q8 = (0..m).all(|i| fits(i, Fragment::H8) || fits(i, Fragment::Q8));
            if all_h8_or_q8 && (1..m).all(|i| !(h8_only(i - 1) && h8_only(i))) {
                patterns.push(Pattern::SeparatedH8Q8);
            }
            let alternating = |hntpp_on_even: bool| {
                (0..m).all(|i| {
                    let even = (i + 1) % 2 == 0;
                    if even == hntpp_on_even {
                        fits(i, Fragment::Hntpp)
                    } else {
                        fits(i, Fragment::Q8)
                    }
                })
            };
            if alternating(true) {
                patterns.push(Pattern::HntppOnEven);
            }
            if alternating(false) {
                patterns.push(Pattern::HntppOnOdd);
            }
        }
        SemanticsKind::TimePartition => {
            let interval_ok =
                |i: usize| fits(i, Fragment::H8) || fits(i, Fragment::Q8) || fits(i, Fragment::C8);
            let mixed = (0..m).all(|i| {
                if sem.is_instant(i + 1) {
                    fits(i, Fragment::H8) || fits(i, Fragment::Q8)
                } else {
                    interval_ok(i)
                }
            });
            if mixed {
                patterns.push(Pattern::PartitionMixed);
            }
            let strict = (0..m).all(|i| {
                if sem.is_instant(i + 1) {
                    fits(i, Fragment::H8)
                } else {
                    interval_ok(i)
                }
            });
            if strict {
                patterns.push(Pattern::PartitionH8Instants);
            }
        }
    }
    FragmentReport {
        per_index,
        patterns,
        sem,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    NotCovered,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::NotCovered => "NOT_COVERED",
        })
    }
}

/// Result of the closure-only procedure, with a witness when satisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TractableOutcome {
    Sat(Scenario),
    Unsat,
    NotCovered,
}

impl TractableOutcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            TractableOutcome::Sat(_) => Verdict::Sat,
            TractableOutcome::Unsat => Verdict::Unsat,
            TractableOutcome::NotCovered => Verdict::NotCovered,
        }
    }
}

impl<'t> Engine<'t> {
    /// Decides weak satisfiability by closure alone when `net` lies in a
    /// decisive class. The witness is `H_S` applied to the closed network.
    pub fn solve_tractable(&self, net: &Network) -> TractableOutcome {
        let report = classify(net);
        let Some(pattern) = report.decisive_pattern() else {
            return TractableOutcome::NotCovered;
        };
        let mut closed = net.clone();
        if !self.close(&mut closed) {
            return TractableOutcome::Unsat;
        }
        let spec = report.spec_for(pattern).expect("pattern matched");
        let refined = spec.refine_network(&closed);
        let witness = if refined.is_scenario() && self.is_algebraically_consistent(&refined) {
            Scenario::new(refined)
        } else {
            // Not expected inside the decisive classes; search keeps the
            // answer sound regardless.
            self.find_closed_scenario(&closed)
        };
        match witness {
            Some(s) => TractableOutcome::Sat(s),
            None => TractableOutcome::Unsat,
        }
    }

    pub fn decide_tractable(&self, net: &Network) -> Verdict {
        let report = classify(net);
        if report.decisive_pattern().is_none() {
            return Verdict::NotCovered;
        }
        if self.closure_is_consistent(net) {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }
}

/// [`Engine::decide_tractable`] under the standard table.
pub fn decide_tractable(net: &Network) -> Verdict {
    Engine::standard().decide_tractable(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rcc8::Rcc8Relation as R;

    fn two_vars(sem: Semantics, rel: &[R]) -> Network {
        let mut net = Network::new(["x", "y"], sem).unwrap();
        net.set(0, 1, rel).unwrap();
        net
    }

    #[test]
    fn universal_network_fits_everything() {
        let net = Network::new(["a", "b", "c"], Semantics::neighbour(3).unwrap()).unwrap();
        let report = classify(&net);
        for frags in &report.per_index {
            assert_eq!(frags, &Fragment::ALL.to_vec());
        }
        assert!(report.matches(Pattern::HntppOnEven));
        assert!(report.matches(Pattern::HntppOnOdd));
        assert!(report.matches(Pattern::SeparatedH8Q8));
    }

    #[test]
    fn n_class_relation_is_full_only() {
        let sem = Semantics::neighbour(2).unwrap();
        let net = two_vars(sem, &[R::TPP | R::NTPPI, R::UNIVERSAL]);
        let report = classify(&net);
        assert_eq!(report.per_index[0], vec![Fragment::Full]);
        assert!(report.patterns.is_empty());
        assert_eq!(decide_tractable(&net), Verdict::NotCovered);
    }

    #[test]
    fn refine_q8_pair() {
        let sem = Semantics::neighbour(2).unwrap();
        let spec = FragmentSpec::new(vec![Fragment::Q8, Fragment::Q8], sem);
        let r = SeqRelation::new(vec![R::PO | R::TPP, R::PO | R::TPP | R::NTPP], sem).unwrap();
        assert!(spec.conforms(r.parts()));
        assert!(r.is_conv_consistent());
        let refined = h_s_refine(&r, &spec);
        assert_eq!(refined.parts(), &[R::PO, R::PO]);
        assert!(refined.is_conv_consistent());
    }

    #[test]
    fn refine_leaves_basic_tuples() {
        let sem = Semantics::partition(2).unwrap();
        let spec = FragmentSpec::new(vec![Fragment::H8, Fragment::C8], sem);
        let r = SeqRelation::new(vec![R::TPP, R::NTPP], sem).unwrap();
        assert_eq!(h_s_refine(&r, &spec), r);
    }

    #[test]
    fn c8_index_uses_h_c8() {
        let sem = Semantics::partition(2).unwrap();
        let spec = FragmentSpec::new(vec![Fragment::H8, Fragment::C8], sem);
        assert!(!spec.uses_c8(0));
        assert!(spec.uses_c8(1));
        let r = SeqRelation::new(vec![R::PO | R::TPP, R::EC | R::PO | R::NTPP], sem).unwrap();
        // h_C8 drops EC before PO is considered.
        assert_eq!(h_s_refine(&r, &spec).parts(), &[R::PO, R::PO]);
    }

    #[test]
    fn partition_h8_c8_network_is_decided() {
        let sem = Semantics::partition(2).unwrap();
        let net = two_vars(sem, &[R::TPP | R::EQ, R::PO | R::TPP | R::NTPP]);
        let report = classify(&net);
        assert!(report.matches(Pattern::PartitionH8Instants));
        assert_eq!(decide_tractable(&net), Verdict::Sat);
        assert!(crate::network::find_closed_scenario(&net).is_some());
        let TractableOutcome::Sat(witness) = Engine::standard().solve_tractable(&net) else {
            panic!("expected a witness");
        };
        assert!(witness.network().refines(&net));
    }

    #[test]
    fn empty_closure_is_unsat() {
        let sem = Semantics::partition(2).unwrap();
        let net = two_vars(sem, &[R::DC, R::PO]);
        assert_eq!(decide_tractable(&net), Verdict::Unsat);
        assert_eq!(
            Engine::standard().solve_tractable(&net),
            TractableOutcome::Unsat
        );
    }

    #[test]
    fn report_text() {
        let sem = Semantics::neighbour(2).unwrap();
        let net = two_vars(sem, &[R::NTPP, R::TPP]);
        let text = classify(&net).to_string();
        assert_eq!(
            text,
            "1: H8 Q8 C8 FULL\n2: H8 Q8 C8 HNTPP FULL\nPROP2\nPROP3_EVEN_HNTPP\n"
        );
    }
}
