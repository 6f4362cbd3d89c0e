//! Modal refinement, implementation membership and model checking.

mod compiled;
mod hml;

pub use compiled::CompiledDmts;
pub use hml::{hml_check, Assignment, CheckOutcome};

use std::collections::VecDeque;

use crate::error::Result;
use crate::model::{Alphabet, Dmts, Lts, Moves, Naa, Spec};

/// Why a pair was removed from the candidate relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The left state has a may-transition with no related counterpart on the right.
    UnmatchedMay { action: usize, target: usize },
    /// The right state's must-set with this index is not covered by any left must-set.
    UnmatchedMust { index: usize },
    /// The left state's admissible set with this index has no matching set on the right.
    UnmatchedSet { index: usize },
}

/// One removal step of the fixpoint computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub left: usize,
    pub right: usize,
    pub cause: Violation,
}

/// The greatest modal refinement relation between two systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementRelation {
    /// Related `(left, right)` state pairs, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Whether every left initial state is related to some right initial state.
    pub initialised: bool,
}

impl RefinementRelation {
    pub fn contains(&self, left: usize, right: usize) -> bool {
        self.pairs.binary_search(&(left, right)).is_ok()
    }
}

/// Evidence that refinement fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// A left initial state related to no right initial state.
    pub left_initial: usize,
    /// Every pair removal performed, in order.
    pub removals: Vec<Removal>,
}

impl Counterexample {
    /// Human-readable trace, one removal per line, using state names.
    pub fn describe(&self, alphabet: &Alphabet, left: &[String], right: &[String]) -> String {
        let mut out = String::new();
        for r in &self.removals {
            let why = match &r.cause {
                Violation::UnmatchedMay { action, target } => format!(
                    "may {} -{}-> {} has no counterpart",
                    left[r.left],
                    alphabet.symbol(*action),
                    left[*target]
                ),
                Violation::UnmatchedMust { index } => format!("must-set #{index} of {} is not covered", right[r.right]),
                Violation::UnmatchedSet { index } => {
                    format!("admissible set #{index} of {} has no match", left[r.left])
                }
            };
            out.push_str(&format!("drop ({}, {}): {why}\n", left[r.left], right[r.right]));
        }
        out.push_str(&format!(
            "initial state {} is related to no initial state on the right\n",
            left[self.left_initial]
        ));
        out
    }
}

/// Outcome of a refinement check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Refines(RefinementRelation),
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Refines(_))
    }
}

struct Fixpoint {
    alive: Vec<bool>,
    removals: Vec<Removal>,
}

/// Greatest-fixpoint pruning of `left × right`.
///
/// `check(l, r, alive)` reports a violation for pair `(l, r)` under the current
/// relation. Removing a pair re-queues every pair of predecessors.
fn greatest_fixpoint(
    n1: usize,
    n2: usize,
    pred1: &[Vec<usize>],
    pred2: &[Vec<usize>],
    mut check: impl FnMut(usize, usize, &[bool]) -> Option<Violation>,
) -> Fixpoint {
    let mut alive = vec![true; n1 * n2];
    let mut queued = vec![true; n1 * n2];
    let mut work: VecDeque<usize> = (0..n1 * n2).collect();
    let mut removals = Vec::new();
    while let Some(p) = work.pop_front() {
        queued[p] = false;
        let (l, r) = (p / n2, p % n2);
        let Some(cause) = check(l, r, &alive) else { continue };
        alive[p] = false;
        removals.push(Removal { left: l, right: r, cause });
        for &pl in &pred1[l] {
            for &pr in &pred2[r] {
                let q = pl * n2 + pr;
                if alive[q] && !queued[q] {
                    queued[q] = true;
                    work.push_back(q);
                }
            }
        }
    }
    Fixpoint { alive, removals }
}

fn predecessors<'a>(n: usize, succ: impl Fn(usize) -> Box<dyn Iterator<Item = usize> + 'a>) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); n];
    for s in 0..n {
        for t in succ(s) {
            pred[t].push(s);
        }
    }
    for p in &mut pred {
        p.sort_unstable();
        p.dedup();
    }
    pred
}

fn dmts_predecessors(d: &Dmts) -> Vec<Vec<usize>> {
    predecessors(d.num_states(), |s| Box::new(d.may(s).iter().map(|&(_, t)| t)))
}

fn naa_predecessors(n: &Naa) -> Vec<Vec<usize>> {
    predecessors(n.num_states(), |s| Box::new(n.tran(s).iter().flatten().map(|&(_, t)| t)))
}

fn conclude(fp: Fixpoint, n2: usize, left_initials: &[usize], right_initials: &[usize]) -> Verdict {
    let failing = left_initials
        .iter()
        .copied()
        .find(|&l| !right_initials.iter().any(|&r| fp.alive[l * n2 + r]));
    match failing {
        Some(left_initial) => Verdict::Fails(Counterexample {
            left_initial,
            removals: fp.removals,
        }),
        None => {
            let pairs = fp
                .alive
                .iter()
                .enumerate()
                .filter(|(_, &a)| a)
                .map(|(p, _)| (p / n2, p % n2))
                .collect();
            Verdict::Refines(RefinementRelation {
                pairs,
                initialised: true,
            })
        }
    }
}

/// Does `(a, t1)` have an `a`-labelled counterpart `(a, t2)` in `moves` with `(t1, t2)` related?
#[inline]
fn matched(a: usize, t1: usize, moves: &[(usize, usize)], alive: &[bool], n2: usize) -> bool {
    moves.iter().any(|&(b, t2)| b == a && alive[t1 * n2 + t2])
}

/// The local refinement condition for DMTS at `(s1, s2)`.
fn dmts_local(d1: &Dmts, d2: &Dmts, s1: usize, s2: usize, alive: &[bool]) -> Option<Violation> {
    let n2 = d2.num_states();
    for &(a, t1) in d1.may(s1) {
        if !matched(a, t1, d2.may(s2), alive, n2) {
            return Some(Violation::UnmatchedMay { action: a, target: t1 });
        }
    }
    for (index, target) in d2.must(s2).iter().enumerate() {
        let covered = d1
            .must(s1)
            .iter()
            .any(|n1| n1.iter().all(|&(a, t1)| matched(a, t1, target, alive, n2)));
        if !covered {
            return Some(Violation::UnmatchedMust { index });
        }
    }
    None
}

/// Two admissible sets match when every move on either side has a related move on the other.
#[inline]
fn sets_match(m1: &[(usize, usize)], m2: &[(usize, usize)], alive: &[bool], n2: usize) -> bool {
    m1.iter().all(|&(a, t1)| matched(a, t1, m2, alive, n2))
        && m2
            .iter()
            .all(|&(a, t2)| m1.iter().any(|&(b, t1)| b == a && alive[t1 * n2 + t2]))
}

fn mask_of(m: &[(usize, usize)]) -> u64 {
    m.iter().fold(0, |acc, &(a, _)| acc | 1 << a)
}

fn set_masks(n: &Naa) -> Vec<Vec<u64>> {
    (0..n.num_states())
        .map(|s| n.tran(s).iter().map(|m| mask_of(m)).collect())
        .collect()
}

fn naa_local(
    m1s: &[Moves],
    n2: &Naa,
    masks2: &[u64],
    s2: usize,
    alive: &[bool],
) -> Option<Violation> {
    let k2 = n2.num_states();
    for (index, m1) in m1s.iter().enumerate() {
        let mask = mask_of(m1);
        let found = n2
            .tran(s2)
            .iter()
            .zip(masks2)
            .any(|(m2, &mk)| mk == mask && sets_match(m1, m2, alive, k2));
        if !found {
            return Some(Violation::UnmatchedSet { index });
        }
    }
    None
}

/// Modal refinement `left ≤m right` between DMTS.
pub fn refine_dmts(left: &Dmts, right: &Dmts) -> Result<Verdict> {
    left.alphabet().ensure_same(right.alphabet())?;
    let (n1, n2) = (left.num_states(), right.num_states());
    let fp = greatest_fixpoint(
        n1,
        n2,
        &dmts_predecessors(left),
        &dmts_predecessors(right),
        |s1, s2, alive| dmts_local(left, right, s1, s2, alive),
    );
    Ok(conclude(fp, n2, left.initials(), right.initials()))
}

/// Modal refinement `left ≤m right` between acceptance automata.
pub fn refine_naa(left: &Naa, right: &Naa) -> Result<Verdict> {
    left.alphabet().ensure_same(right.alphabet())?;
    let (n1, n2) = (left.num_states(), right.num_states());
    let masks = set_masks(right);
    let fp = greatest_fixpoint(
        n1,
        n2,
        &naa_predecessors(left),
        &naa_predecessors(right),
        |s1, s2, alive| naa_local(left.tran(s1), right, &masks[s2], s2, alive),
    );
    Ok(conclude(fp, n2, left.initials(), right.initials()))
}

/// Greatest fixpoint restricted to the pairs reachable from `starts`.
///
/// A pair's local condition only consults pairs one matching step away, so the
/// restriction is exact on the explored pairs. Implementations are small, which
/// makes plain round-robin re-checking cheaper than maintaining predecessor lists.
fn reachable_fixpoint<'s, I: Iterator<Item = &'s (usize, usize)>>(
    imp: &Lts,
    n2: usize,
    starts: &[usize],
    spec_moves: impl Fn(usize) -> I,
    check: impl Fn(usize, usize, &[bool]) -> bool,
) -> Vec<bool> {
    let n1 = imp.num_states();
    let mut seen = vec![false; n1 * n2];
    let mut pairs = Vec::new();
    let mut stack = Vec::new();
    for &r in starts {
        let p = imp.initial() * n2 + r;
        if !seen[p] {
            seen[p] = true;
            stack.push(p);
        }
    }
    while let Some(p) = stack.pop() {
        pairs.push(p);
        let (s1, s2) = (p / n2, p % n2);
        for &(b, t2) in spec_moves(s2) {
            for &(a, t1) in imp.successors(s1) {
                let q = t1 * n2 + t2;
                if a == b && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    // `seen` doubles as the relation: unexplored pairs are never consulted.
    let mut alive = seen;
    let mut changed = true;
    while changed {
        changed = false;
        for &p in &pairs {
            if alive[p] && !check(p / n2, p % n2, &alive) {
                alive[p] = false;
                changed = true;
            }
        }
    }
    alive
}

/// Whether `imp` implements the DMTS `spec`.
///
/// Equivalent to `refine_dmts(&Dmts::from_lts(imp), spec)`, but only explores
/// pairs reachable from the initial ones.
pub fn implements_dmts(imp: &Lts, spec: &Dmts) -> Result<bool> {
    imp.alphabet().ensure_same(spec.alphabet())?;
    let n2 = spec.num_states();
    let alive = reachable_fixpoint(
        imp,
        n2,
        spec.initials(),
        |s2| spec.may(s2).iter(),
        |s1, s2, alive| {
            let succ = imp.successors(s1);
            succ.iter().all(|&(a, t1)| matched(a, t1, spec.may(s2), alive, n2))
                && spec
                    .must(s2)
                    .iter()
                    .all(|target| succ.iter().any(|&(a, t1)| matched(a, t1, target, alive, n2)))
        },
    );
    Ok(spec.initials().iter().any(|&r| alive[imp.initial() * n2 + r]))
}

/// Whether `imp` implements the acceptance automaton `spec`.
pub fn implements_naa(imp: &Lts, spec: &Naa) -> Result<bool> {
    imp.alphabet().ensure_same(spec.alphabet())?;
    let n2 = spec.num_states();
    let alive = reachable_fixpoint(
        imp,
        n2,
        spec.initials(),
        |s2| spec.tran(s2).iter().flatten(),
        |s1, s2, alive| {
            let m1 = imp.successors(s1);
            let mask = mask_of(m1);
            spec.tran(s2)
                .iter()
                .any(|m2| mask_of(m2) == mask && sets_match(m1, m2, alive, n2))
        },
    );
    Ok(spec.initials().iter().any(|&r| alive[imp.initial() * n2 + r]))
}

/// Whether `imp` implements `spec`, whatever its formalism.
pub fn implements(imp: &Lts, spec: &Spec) -> Result<bool> {
    spec.implemented_by(imp)
}

/// Mutual modal refinement of acceptance automata.
pub fn mreq_naa(a: &Naa, b: &Naa) -> Result<bool> {
    Ok(refine_naa(a, b)?.holds() && refine_naa(b, a)?.holds())
}

/// Mutual modal refinement of DMTS.
pub fn mreq_dmts(a: &Dmts, b: &Dmts) -> Result<bool> {
    Ok(refine_dmts(a, b)?.holds() && refine_dmts(b, a)?.holds())
}

/// Modal refinement between specifications of any formalism.
///
/// Two DMTS-shaped operands are compared directly; everything else goes through
/// the acceptance-automaton translation.
pub fn refine(left: &Spec, right: &Spec) -> Result<Verdict> {
    match (left.to_dmts_if_native(), right.to_dmts_if_native()) {
        (Some(l), Some(r)) => refine_dmts(&l, &r),
        _ => refine_naa(&left.to_naa()?, &right.to_naa()?),
    }
}

/// Mutual modal refinement between specifications of any formalism.
pub fn mreq(a: &Spec, b: &Spec) -> Result<bool> {
    Ok(refine(a, b)?.holds() && refine(b, a)?.holds())
}

impl Spec {
    fn to_dmts_if_native(&self) -> Option<Dmts> {
        match self {
            Spec::Lts(l) => Some(Dmts::from_lts(l)),
            Spec::Mts(d) | Spec::Dmts(d) => Some(d.clone()),
            _ => None,
        }
    }
}
