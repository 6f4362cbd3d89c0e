//! Translations between the three specification formalisms.
//!
//! All of them preserve the set of implementations: `db` and `bd` move between
//! DMTS and acceptance automata, `bh` turns an acceptance automaton into an HML
//! declaration, and `hd ∘ normalize` turns a declaration back into a DMTS.

mod hd;
mod normal;

pub use hd::{hd, BOTTOM, TOP};
pub use normal::{normalize, normalize_with_limit, Clause, NfBody, NormalFormDecl, DEFAULT_MAX_VARS};

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::model::{names, Dmts, Formula, HmlDecl, Moves, Naa, SupportMode};

/// Largest set whose subsets are enumerated when materialising admissible sets.
pub const MAX_SUBSET_BASE: usize = 16;

/// DMTS to acceptance automaton with the default size guard.
///
/// A set `M` of may-transitions is admissible at `s` when it contains at least
/// one element of every must-set of `s`.
pub fn db(d: &Dmts) -> Result<Naa> {
    db_with_limit(d, MAX_SUBSET_BASE)
}

/// [`db`] with an explicit bound on the number of may-successors per state.
pub fn db_with_limit(d: &Dmts, limit: usize) -> Result<Naa> {
    let mut tran = Vec::with_capacity(d.num_states());
    for s in 0..d.num_states() {
        let may = d.may(s);
        if may.len() > limit.min(30) {
            return Err(Error::guard(
                format!("may-successors of {}", d.state_name(s)),
                may.len(),
                limit.min(30),
            ));
        }
        let must_masks: Vec<u32> = d
            .must(s)
            .iter()
            .map(|n| {
                n.iter()
                    .map(|p| 1u32 << may.binary_search(p).expect("must-support"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let mut family: Vec<Moves> = (0u32..1 << may.len())
            .filter(|&m| must_masks.iter().all(|&n| m & n != 0))
            .map(|m| {
                (0..may.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| may[i])
                    .collect()
            })
            .collect();
        family.sort();
        tran.push(family);
    }
    Ok(Naa::from_sorted_parts(
        d.alphabet().clone(),
        d.states().to_vec(),
        d.initials().to_vec(),
        tran,
    ))
}

/// Acceptance automaton to DMTS.
///
/// Every admissible set becomes a state. A state `M` has, for each `(a, s')`
/// in `M`, a must-set offering every admissible set of `s'` under `a`.
pub fn bd(n: &Naa) -> Dmts {
    let mut index: BTreeMap<&Moves, usize> = BTreeMap::new();
    for s in 0..n.num_states() {
        for m in n.tran(s) {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let mut order: Vec<(&Moves, usize)> = index.iter().map(|(m, &i)| (*m, i)).collect();
    order.sort_by_key(|&(_, i)| i);
    let mut taken = HashSet::new();
    let state_names: Vec<String> = order
        .iter()
        .map(|(m, _)| {
            let base = names::moves(n.alphabet(), n.states(), m);
            let name = names::fresh(&base, |c| taken.contains(c));
            taken.insert(name.clone());
            name
        })
        .collect();
    let mut may = vec![Moves::new(); order.len()];
    let mut must = vec![Vec::new(); order.len()];
    for &(m, i) in &order {
        for &(a, target) in m {
            let set: Moves = n.tran(target).iter().map(|m2| (a, index[m2])).collect();
            may[i].extend(set.iter().copied());
            must[i].push(set);
        }
    }
    let mut initials: Vec<usize> = n
        .initials()
        .iter()
        .flat_map(|&s0| n.tran(s0).iter().map(|m| index[m]))
        .collect();
    initials.sort_unstable();
    initials.dedup();
    Dmts::new(n.alphabet().clone(), state_names, initials, may, must, SupportMode::Strict)
        .expect("bd produces supported musts over fresh names")
}

/// Acceptance automaton to HML declaration: one variable per state.
///
/// Each admissible set `M` of `s` contributes the disjunct
/// `⋀ <a>t for (a,t) ∈ M  ∧  ⋀_a [a](⋁ of the a-targets in M)`.
pub fn bh(n: &Naa) -> HmlDecl {
    let k = n.alphabet().len();
    let decl = (0..n.num_states())
        .map(|s| {
            Formula::disj(n.tran(s).iter().map(|m| {
                let diamonds = m.iter().map(|&(a, t)| Formula::diamond(a, Formula::Var(t)));
                let boxes = (0..k).map(|a| {
                    let targets = m.iter().filter(|&&(b, _)| b == a).map(|&(_, t)| Formula::Var(t));
                    Formula::boxed(a, Formula::disj(targets))
                });
                Formula::conj(diamonds.chain(boxes))
            }))
        })
        .collect();
    HmlDecl::new(
        n.alphabet().clone(),
        n.states().to_vec(),
        n.initials().to_vec(),
        decl,
    )
    .expect("bh preserves the state space")
}
