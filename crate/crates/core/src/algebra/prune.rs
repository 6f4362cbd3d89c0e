use super::{restrict_dmts, restrict_naa};
use crate::model::{Dmts, Lts, Moves, Naa};

/// Least fixed point of `B ↦ seed ∪ pred(B)` where `pred(B)` holds the states
/// all of whose options lead into `B`.
fn backward_closure(n: usize, forced: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let mut bad = vec![false; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            if !bad[s] && forced(s, &bad) {
                bad[s] = true;
                changed = true;
            }
        }
        if !changed {
            return bad;
        }
    }
}

/// States of an acceptance automaton that no implementation can match: those
/// whose every admissible set (vacuously, if there is none) has a move into
/// such a state.
pub fn inconsistent_naa(n: &Naa) -> Vec<bool> {
    backward_closure(n.num_states(), |s, bad| {
        n.tran(s).iter().all(|m| m.iter().any(|&(_, t)| bad[t]))
    })
}

/// States of a DMTS that no implementation can match: those with a must-set
/// lying entirely inside such states (an empty must-set in particular).
pub fn inconsistent_dmts(d: &Dmts) -> Vec<bool> {
    backward_closure(d.num_states(), |s, bad| {
        d.must(s).iter().any(|m| m.iter().all(|&(_, t)| bad[t]))
    })
}

/// Removes inconsistent states and every admissible set leading into them.
pub fn prune_naa(n: &Naa) -> Naa {
    let bad = inconsistent_naa(n);
    let keep: Vec<bool> = bad.iter().map(|b| !b).collect();
    restrict_naa(n, &keep)
}

/// Removes inconsistent states, shrinking may- and must-transitions accordingly.
pub fn prune_dmts(d: &Dmts) -> Dmts {
    let bad = inconsistent_dmts(d);
    let keep: Vec<bool> = bad.iter().map(|b| !b).collect();
    restrict_dmts(d, &keep)
}

/// An implementation of a consistent automaton, built by taking the least
/// admissible set at every state reached from the first initial state.
///
/// Returns `None` when there is no initial state or a reached state has no
/// admissible set; after [`prune_naa`] that only happens for the empty automaton.
pub fn witness_implementation(n: &Naa) -> Option<Lts> {
    let &start = n.initials().first()?;
    let mut id = vec![usize::MAX; n.num_states()];
    let mut order = vec![start];
    id[start] = 0;
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        let choice = n.tran(s).first()?;
        for &(_, t) in choice {
            if id[t] == usize::MAX {
                id[t] = order.len();
                order.push(t);
            }
        }
        i += 1;
    }
    let mut reached: Vec<usize> = order.clone();
    reached.sort_unstable();
    let mut dense = vec![usize::MAX; n.num_states()];
    for (k, &s) in reached.iter().enumerate() {
        dense[s] = k;
    }
    let succ: Vec<Moves> = reached
        .iter()
        .map(|&s| n.tran(s)[0].iter().map(|&(a, t)| (a, dense[t])).collect())
        .collect();
    Some(Lts::from_sorted_parts(
        n.alphabet().clone(),
        reached.iter().map(|&s| n.state_name(s).to_string()).collect(),
        dense[start],
        succ,
    ))
}
