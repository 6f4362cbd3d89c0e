//! Disjunction, conjunction, parallel composition, reachability and pruning.

mod prune;

pub use prune::{inconsistent_dmts, inconsistent_naa, prune_dmts, prune_naa, witness_implementation};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{names, Dmts, Moves, Naa, SupportMode};
use crate::translate::MAX_SUBSET_BASE;

/// Names for the disjoint union of two state spaces; both sides get an `L:`/`R:`
/// prefix when any name occurs on both sides.
fn union_names(left: &[String], right: &[String]) -> Vec<String> {
    let l: HashSet<&String> = left.iter().collect();
    if right.iter().any(|r| l.contains(r)) {
        left.iter()
            .map(|s| format!("L:{s}"))
            .chain(right.iter().map(|s| format!("R:{s}")))
            .collect()
    } else {
        left.iter().chain(right).cloned().collect()
    }
}

/// `(l,r)` names for the product `left × right`, index `l * |right| + r`.
pub(crate) fn product_names(left: &[String], right: &[String]) -> Vec<String> {
    let mut taken = HashSet::with_capacity(left.len() * right.len());
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let name = names::fresh(&names::pair(l, r), |c| taken.contains(c));
            taken.insert(name.clone());
            out.push(name);
        }
    }
    out
}

fn shift(m: &[(usize, usize)], by: usize) -> Moves {
    m.iter().map(|&(a, t)| (a, t + by)).collect()
}

/// Disjunction of acceptance automata: the disjoint union.
pub fn or_naa(left: &Naa, right: &Naa) -> Result<Naa> {
    left.alphabet().ensure_same(right.alphabet())?;
    let k = left.num_states();
    let states = union_names(left.states(), right.states());
    let initials = left
        .initials()
        .iter()
        .copied()
        .chain(right.initials().iter().map(|&i| i + k))
        .collect();
    let tran = (0..k)
        .map(|s| left.tran(s).to_vec())
        .chain((0..right.num_states()).map(|s| right.tran(s).iter().map(|m| shift(m, k)).collect()))
        .collect();
    Naa::new(left.alphabet().clone(), states, initials, tran)
}

/// Disjunction of DMTS: the disjoint union.
pub fn or_dmts(left: &Dmts, right: &Dmts) -> Result<Dmts> {
    left.alphabet().ensure_same(right.alphabet())?;
    let k = left.num_states();
    let states = union_names(left.states(), right.states());
    let initials = left
        .initials()
        .iter()
        .copied()
        .chain(right.initials().iter().map(|&i| i + k))
        .collect();
    let may = (0..k)
        .map(|s| left.may(s).to_vec())
        .chain((0..right.num_states()).map(|s| shift(right.may(s), k)))
        .collect();
    let must = (0..k)
        .map(|s| left.must(s).to_vec())
        .chain((0..right.num_states()).map(|s| right.must(s).iter().map(|m| shift(m, k)).collect()))
        .collect();
    Dmts::new(left.alphabet().clone(), states, initials, may, must, SupportMode::Strict)
}

/// An automaton with exactly one initial state and the same implementations.
///
/// A fresh state offers every admissible set of every initial state. The input
/// always refines the result. The converse refinement holds exactly when some
/// initial state is refined by all the others; two incomparable initial states
/// cannot be merged into one up to mutual refinement. Without initial states
/// the result is the inconsistent automaton.
pub fn single_initial(n: &Naa) -> Naa {
    if n.initials().is_empty() {
        return Naa::bottom(n.alphabet());
    }
    let fresh = names::fresh("init", |c| n.state_index(c).is_some());
    let mut states = n.states().to_vec();
    states.push(fresh);
    let mut tran: Vec<Vec<Moves>> = (0..n.num_states()).map(|s| n.tran(s).to_vec()).collect();
    tran.push(n.initials().iter().flat_map(|&i| n.tran(i).iter().cloned()).collect());
    let new = states.len() - 1;
    Naa::new(n.alphabet().clone(), states, vec![new], tran).expect("fresh initial state")
}

/// Conjunction of DMTS by synchronous product.
///
/// Every must-set of either component is kept, restricted to the moves the
/// other component allows.
pub fn and_dmts(left: &Dmts, right: &Dmts) -> Result<Dmts> {
    left.alphabet().ensure_same(right.alphabet())?;
    let (n1, n2) = (left.num_states(), right.num_states());
    let pair = |t1: usize, t2: usize| t1 * n2 + t2;
    let mut may = Vec::with_capacity(n1 * n2);
    let mut must = Vec::with_capacity(n1 * n2);
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let joint: Moves = left
                .may(s1)
                .iter()
                .flat_map(|&(a, t1)| {
                    right
                        .may(s2)
                        .iter()
                        .filter(move |&&(b, _)| b == a)
                        .map(move |&(_, t2)| (a, pair(t1, t2)))
                })
                .collect();
            let mut sets = Vec::new();
            for n in left.must(s1) {
                sets.push(
                    n.iter()
                        .flat_map(|&(a, t1)| {
                            right
                                .may(s2)
                                .iter()
                                .filter(move |&&(b, _)| b == a)
                                .map(move |&(_, t2)| (a, pair(t1, t2)))
                        })
                        .collect::<Moves>(),
                );
            }
            for n in right.must(s2) {
                sets.push(
                    n.iter()
                        .flat_map(|&(a, t2)| {
                            left.may(s1)
                                .iter()
                                .filter(move |&&(b, _)| b == a)
                                .map(move |&(_, t1)| (a, pair(t1, t2)))
                        })
                        .collect::<Moves>(),
                );
            }
            may.push(joint);
            must.push(sets);
        }
    }
    let initials = left
        .initials()
        .iter()
        .flat_map(|&i| right.initials().iter().map(move |&j| pair(i, j)))
        .collect();
    Dmts::new(
        left.alphabet().clone(),
        product_names(left.states(), right.states()),
        initials,
        may,
        must,
        SupportMode::Strict,
    )
}

/// Conjunction of acceptance automata with the default size guard.
pub fn and_naa(left: &Naa, right: &Naa) -> Result<Naa> {
    and_naa_with_limit(left, right, MAX_SUBSET_BASE)
}

/// Conjunction of acceptance automata.
///
/// A set `M` of moves into the product is admissible at `(s1, s2)` when its two
/// projections are admissible at `s1` and `s2`. For each pair of admissible
/// sets the candidates are the synchronised moves; `limit` bounds their number.
pub fn and_naa_with_limit(left: &Naa, right: &Naa, limit: usize) -> Result<Naa> {
    left.alphabet().ensure_same(right.alphabet())?;
    let limit = limit.min(30);
    let (n1, n2) = (left.num_states(), right.num_states());
    let mut tran = Vec::with_capacity(n1 * n2);
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let mut family: Vec<Moves> = Vec::new();
            for m1 in left.tran(s1) {
                for m2 in right.tran(s2) {
                    let mut cand = Vec::new();
                    let mut cover1 = vec![0u32; m1.len()];
                    let mut cover2 = vec![0u32; m2.len()];
                    for (i, &(a, t1)) in m1.iter().enumerate() {
                        for (j, &(b, t2)) in m2.iter().enumerate() {
                            if a == b {
                                if cand.len() == limit {
                                    return Err(Error::guard(
                                        format!(
                                            "synchronised moves at ({},{})",
                                            left.state_name(s1),
                                            right.state_name(s2)
                                        ),
                                        limit + 1,
                                        limit,
                                    ));
                                }
                                cover1[i] |= 1 << cand.len();
                                cover2[j] |= 1 << cand.len();
                                cand.push((a, t1 * n2 + t2));
                            }
                        }
                    }
                    if cover1.contains(&0) || cover2.contains(&0) {
                        continue;
                    }
                    for mask in 0u32..1 << cand.len() {
                        if cover1.iter().chain(&cover2).all(|&c| c & mask != 0) {
                            family.push(
                                (0..cand.len())
                                    .filter(|&i| mask >> i & 1 == 1)
                                    .map(|i| cand[i])
                                    .collect(),
                            );
                        }
                    }
                }
            }
            family.sort();
            family.dedup();
            tran.push(family);
        }
    }
    let initials = left
        .initials()
        .iter()
        .flat_map(|&i| right.initials().iter().map(move |&j| i * n2 + j))
        .collect();
    Naa::new(
        left.alphabet().clone(),
        product_names(left.states(), right.states()),
        initials,
        tran,
    )
}

/// Parallel composition with full synchronisation on every action.
pub fn compose_naa(left: &Naa, right: &Naa) -> Result<Naa> {
    left.alphabet().ensure_same(right.alphabet())?;
    let (n1, n2) = (left.num_states(), right.num_states());
    let mut tran = Vec::with_capacity(n1 * n2);
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let mut family: Vec<Moves> = Vec::new();
            for m1 in left.tran(s1) {
                for m2 in right.tran(s2) {
                    family.push(
                        m1.iter()
                            .flat_map(|&(a, t1)| {
                                m2.iter()
                                    .filter(move |&&(b, _)| b == a)
                                    .map(move |&(_, t2)| (a, t1 * n2 + t2))
                            })
                            .collect(),
                    );
                }
            }
            family.sort();
            family.dedup();
            tran.push(family);
        }
    }
    let initials = left
        .initials()
        .iter()
        .flat_map(|&i| right.initials().iter().map(move |&j| i * n2 + j))
        .collect();
    Naa::new(
        left.alphabet().clone(),
        product_names(left.states(), right.states()),
        initials,
        tran,
    )
}

/// Keeps the states flagged in `keep`; indices of kept states keep their relative order.
fn index_map(keep: &[bool]) -> Vec<usize> {
    let mut next = 0;
    keep.iter()
        .map(|&k| {
            let i = next;
            if k {
                next += 1;
            }
            if k {
                i
            } else {
                usize::MAX
            }
        })
        .collect()
}

fn reachable(n: usize, initials: &[usize], succ: impl Fn(usize, &mut dyn FnMut(usize))) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = initials.to_vec();
    for &i in initials {
        seen[i] = true;
    }
    while let Some(s) = stack.pop() {
        succ(s, &mut |t| {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        });
    }
    seen
}

pub(crate) fn restrict_naa(n: &Naa, keep: &[bool]) -> Naa {
    let map = index_map(keep);
    let fix = |m: &Moves| -> Moves { m.iter().map(|&(a, t)| (a, map[t])).collect() };
    let states = (0..n.num_states()).filter(|&s| keep[s]).map(|s| n.state_name(s).to_string()).collect();
    let initials = n.initials().iter().filter(|&&i| keep[i]).map(|&i| map[i]).collect();
    let tran = (0..n.num_states())
        .filter(|&s| keep[s])
        .map(|s| {
            n.tran(s)
                .iter()
                .filter(|m| m.iter().all(|&(_, t)| keep[t]))
                .map(fix)
                .collect()
        })
        .collect();
    Naa::from_sorted_parts(n.alphabet().clone(), states, initials, tran)
}

pub(crate) fn restrict_dmts(d: &Dmts, keep: &[bool]) -> Dmts {
    let map = index_map(keep);
    let fix = |m: &[(usize, usize)]| -> Moves {
        m.iter().filter(|&&(_, t)| keep[t]).map(|&(a, t)| (a, map[t])).collect()
    };
    let states = (0..d.num_states()).filter(|&s| keep[s]).map(|s| d.state_name(s).to_string()).collect();
    let initials = d.initials().iter().filter(|&&i| keep[i]).map(|&i| map[i]).collect();
    let kept = (0..d.num_states()).filter(|&s| keep[s]);
    let may = kept.clone().map(|s| fix(d.may(s))).collect();
    let must = kept
        .map(|s| {
            let mut sets: Vec<Moves> = d.must(s).iter().map(|m| fix(m)).collect();
            sets.sort();
            sets.dedup();
            sets
        })
        .collect();
    Dmts::from_sorted_parts(d.alphabet().clone(), states, initials, may, must)
}

/// Restriction to the states reachable from the initial states through admissible sets.
pub fn reach_naa(n: &Naa) -> Naa {
    let keep = reachable(n.num_states(), n.initials(), |s, f| {
        n.tran(s).iter().flatten().for_each(|&(_, t)| f(t))
    });
    restrict_naa(n, &keep)
}

/// Restriction to the states reachable from the initial states through may-transitions.
pub fn reach_dmts(d: &Dmts) -> Dmts {
    let keep = reachable(d.num_states(), d.initials(), |s, f| d.may(s).iter().for_each(|&(_, t)| f(t)));
    restrict_dmts(d, &keep)
}
