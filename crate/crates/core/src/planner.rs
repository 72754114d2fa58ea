//! Planning a continuous evolution from one classical scenario to another.

use crate::error::PlanError;
use crate::fragments::TractableOutcome;
use crate::network::{Engine, Network, Scenario, Slice};
use crate::projection::{Semantics, SemanticsKind};

/// A sequence of `steps` slices starting at `start` and reaching `goal`,
/// every slice refining the constraints. `constraints` is empty (no
/// constraints), a single network applied at every index, or one network
/// per index. Under partition semantics the goal sits on the last instant.
///
/// `Ok(None)` means no algebraically closed scenario exists.
pub fn plan(
    start: &Slice,
    goal: &Slice,
    steps: usize,
    constraints: &[Slice],
    kind: SemanticsKind,
) -> Result<Option<Scenario>, PlanError> {
    Engine::standard().plan(start, goal, steps, constraints, kind)
}

impl<'t> Engine<'t> {
    pub fn plan(
        &self,
        start: &Slice,
        goal: &Slice,
        steps: usize,
        constraints: &[Slice],
        kind: SemanticsKind,
    ) -> Result<Option<Scenario>, PlanError> {
        let sem = Semantics::new(kind, steps).map_err(crate::error::NetworkError::from)?;
        let net = self.plan_network(start, goal, constraints, sem)?;
        let witness = match self.solve_tractable(&net) {
            TractableOutcome::Sat(s) => Some(s),
            TractableOutcome::Unsat => None,
            TractableOutcome::NotCovered => self.find_closed_scenario(&net),
        };
        Ok(witness)
    }

    /// The sequence network a plan is searched in.
    pub fn plan_network(
        &self,
        start: &Slice,
        goal: &Slice,
        constraints: &[Slice],
        sem: Semantics,
    ) -> Result<Network, PlanError> {
        if !start.is_scenario() || !goal.is_scenario() {
            return Err(PlanError::NotAScenario);
        }
        let m = sem.len();
        if !(constraints.len() <= 1 || constraints.len() == m) {
            return Err(PlanError::ConstraintCount {
                expected: m,
                found: constraints.len(),
            });
        }
        let order = |other: &Slice, what: &str| -> Result<Vec<usize>, PlanError> {
            let mismatch = || {
                PlanError::VariableMismatch(format!(
                    "start has [{}], {what} has [{}]",
                    start.vars().join(" "),
                    other.vars().join(" ")
                ))
            };
            if other.var_count() != start.var_count() {
                return Err(mismatch());
            }
            start
                .vars()
                .iter()
                .map(|v| other.var_index(v).map_err(|_| mismatch()))
                .collect()
        };
        let goal_order = order(goal, "goal")?;
        let constraint_orders = constraints
            .iter()
            .map(|c| order(c, "constraints"))
            .collect::<Result<Vec<_>, _>>()?;
        let constraint_at = |t: usize, x: usize, y: usize| match constraints.len() {
            0 => crate::rcc8::Rcc8Relation::UNIVERSAL,
            1 => constraints[0].get(constraint_orders[0][x], constraint_orders[0][y]),
            _ => constraints[t].get(constraint_orders[t][x], constraint_orders[t][y]),
        };

        let goal_at = match sem.kind() {
            SemanticsKind::NeighbourInstants => m - 1,
            SemanticsKind::TimePartition => m - 2,
        };
        let mut net = Network::new(start.vars().to_vec(), sem)?;
        for (x, y) in start.pairs() {
            let s = start.get(x, y);
            let g = goal.get(goal_order[x], goal_order[y]);
            if !s.is_subset(constraint_at(0, x, y)) {
                return Err(PlanError::InfeasibleEndpoints("start"));
            }
            if !g.is_subset(constraint_at(goal_at, x, y)) {
                return Err(PlanError::InfeasibleEndpoints("goal"));
            }
            let mut rel: Vec<_> = (0..m).map(|t| constraint_at(t, x, y)).collect();
            rel[0] &= s;
            rel[goal_at] &= g;
            net.set(x, y, &rel)?;
        }
        Ok(net)
    }
}
