mod common;

use rand::Rng;
use seqrcc::network::{find_closed_scenario, Engine, Network, Slice};
use seqrcc::planner::plan;
use seqrcc::projection::{Semantics, SemanticsKind};

fn random_scenario(rng: &mut common::TestRng, n: usize) -> Slice {
    loop {
        let mut net = Network::new(
            common::VAR_NAMES[..n].iter().copied(),
            Semantics::neighbour(1).unwrap(),
        )
        .unwrap();
        let pairs: Vec<_> = net.pairs().collect();
        for (x, y) in pairs {
            net.set(x, y, &[common::random_relation(rng)]).unwrap();
        }
        if let Some(s) = find_closed_scenario(&net) {
            return s.network().slice(0);
        }
    }
}

fn loose_constraints(rng: &mut common::TestRng, start: &Slice, goal: &Slice) -> Slice {
    let mut c = Slice::new(start.vars().to_vec()).unwrap();
    for (x, y) in start.pairs() {
        let extra = common::random_relation(rng) | common::random_relation(rng);
        c.set(x, y, start.get(x, y) | goal.get(x, y) | extra);
    }
    c
}

fn check_witness(w: &Network, start: &Slice, goal: &Slice, constraints: &[Slice], goal_at: usize) {
    assert!(w.is_scenario());
    assert!(Engine::standard().is_algebraically_consistent(w));
    assert_eq!(&w.slice(0), start);
    assert_eq!(&w.slice(goal_at), goal);
    for t in 0..w.len() {
        let c = match constraints.len() {
            0 => continue,
            1 => &constraints[0],
            _ => &constraints[t],
        };
        let s = w.slice(t);
        for (x, y) in s.pairs() {
            assert!(s.get(x, y).is_subset(c.get(x, y)));
        }
    }
}

#[test]
fn monotone_in_steps() {
    let mut rng = common::rng(23);
    let mut successes = 0;
    for _ in 0..150 {
        let n = rng.gen_range(2..=3);
        let start = random_scenario(&mut rng, n);
        let goal = random_scenario(&mut rng, n);
        let constraints = if rng.gen_bool(0.5) {
            vec![loose_constraints(&mut rng, &start, &goal)]
        } else {
            Vec::new()
        };
        for (kind, step) in [
            (SemanticsKind::NeighbourInstants, 1),
            (SemanticsKind::TimePartition, 2),
        ] {
            let mut reached = false;
            for m in (step..=6).step_by(step) {
                let found = plan(&start, &goal, m, &constraints, kind).unwrap();
                if reached {
                    assert!(found.is_some(), "lost reachability at m={m}");
                }
                if let Some(w) = found {
                    let goal_at = if step == 1 { m - 1 } else { m - 2 };
                    check_witness(w.network(), &start, &goal, &constraints, goal_at);
                    reached = true;
                    successes += 1;
                }
            }
        }
    }
    assert!(successes > 100, "{successes}");
}

#[test]
fn per_index_constraints_apply_index_by_index() {
    let start = {
        let mut s = Slice::new(["x", "y"]).unwrap();
        s.set(0, 1, seqrcc::rcc8::Rcc8Relation::DC);
        s
    };
    let mut goal = start.clone();
    goal.set(0, 1, seqrcc::rcc8::Rcc8Relation::PO);
    let free = Slice::new(["x", "y"]).unwrap();
    let mut stay = free.clone();
    stay.set(0, 1, seqrcc::rcc8::Rcc8Relation::DC);
    // Index 2 pinned to DC: DC, DC, EC, PO.
    let constraints = [free.clone(), stay, free.clone(), free];
    let w = plan(
        &start,
        &goal,
        4,
        &constraints,
        SemanticsKind::NeighbourInstants,
    )
    .unwrap()
    .unwrap();
    check_witness(w.network(), &start, &goal, &constraints, 3);
    assert_eq!(
        w.network().relation(0, 1)[2],
        seqrcc::rcc8::Rcc8Relation::EC
    );
}
