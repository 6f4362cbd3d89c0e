use std::collections::{BTreeSet, HashMap, HashSet};

use super::{choice_product, pairs_name, Explorer, Pairs, QuotientOptions};
use crate::algebra::{prune_naa, reach_naa};
use crate::error::{Error, Result};
use crate::model::{names, Moves, Naa};

/// An equivalent automaton in which the admissible sets of each state are
/// pairwise disjoint.
///
/// When a move `(a, u)` occurs in more than one admissible set of a state, every
/// occurrence after the first is redirected to a fresh copy `u'` of `u`.
pub fn disjointify(n: &Naa) -> Naa {
    let mut names_out: Vec<String> = n.states().to_vec();
    let mut taken: HashSet<String> = names_out.iter().cloned().collect();
    let mut copy_of: Vec<usize> = Vec::new();
    let mut tran: Vec<Vec<Moves>> = Vec::with_capacity(n.num_states());
    for t in 0..n.num_states() {
        let mut used = HashSet::new();
        let mut family = Vec::with_capacity(n.tran(t).len());
        for m in n.tran(t) {
            let mut out = Moves::with_capacity(m.len());
            for &(a, u) in m {
                if used.insert((a, u)) {
                    out.push((a, u));
                } else {
                    let name = names::fresh(&format!("{}'", n.state_name(u)), |c| taken.contains(c));
                    taken.insert(name.clone());
                    names_out.push(name);
                    copy_of.push(u);
                    out.push((a, names_out.len() - 1));
                }
            }
            family.push(out);
        }
        tran.push(family);
    }
    for &u in &copy_of {
        tran.push(tran[u].clone());
    }
    Naa::new(n.alphabet().clone(), names_out, n.initials().to_vec(), tran).expect("fresh copies")
}

/// Distinct targets of `action` over all admissible sets, per state and action.
fn successors_by_action(n: &Naa) -> Vec<Vec<Vec<usize>>> {
    let k = n.alphabet().len();
    (0..n.num_states())
        .map(|s| {
            let mut by = vec![Vec::new(); k];
            for (a, t) in n.support(s) {
                by[a].push(t);
            }
            by
        })
        .collect()
}

/// What one possible transition `(a, r)` demands of a dividend state, for one
/// divisor admissible set `Y`: per `(a, y)` in `Y`, the dividend moves `(a, s')`
/// with `s'/y` in `r`, as a mask over the dividend state's support.
struct Demand {
    any: u64,
    each: Vec<u64>,
}

/// Builds the quotient `dividend / divisor` of acceptance automata.
///
/// The divisor is made disjoint first. There is one initial quotient state for
/// each function picking a dividend initial state `f(t0)` for every divisor
/// initial state `t0`, namely `{f(t0)/t0 | t0}`. A set `X` of possible transitions is
/// admissible at `q` when for every pair `s/t` in `q` and every admissible set
/// `Y` of `t` there is an admissible set `K` of `s` such that each pair of
/// moves `(a, r) ∈ X`, `(a, y) ∈ Y` is witnessed by some `(a, s') ∈ K` with
/// `s'/y ∈ r`, and each move of `K` is such a witness.
pub fn quotient_naa(dividend: &Naa, divisor: &Naa, opts: &QuotientOptions) -> Result<Naa> {
    dividend.alphabet().ensure_same(divisor.alphabet())?;
    let alphabet = dividend.alphabet().clone();
    let k = alphabet.len();
    let full = alphabet.full_mask();
    let s = dividend;
    let t = disjointify(divisor);
    if s.initials().is_empty() && !t.initials().is_empty() {
        return Ok(Naa::bottom(&alphabet));
    }
    // One initial state per way of assigning a dividend initial state to every
    // divisor initial state.
    let choices = vec![s.initials().to_vec(); t.initials().len()];
    let assignments = choice_product(&choices, opts.max_states, "initial quotient states")?;

    let alpha_s: Vec<u64> = (0..s.num_states()).map(|x| s.enabled_mask(x)).collect();
    let alpha_t: Vec<u64> = (0..t.num_states()).map(|x| t.enabled_mask(x)).collect();
    let succ_s = successors_by_action(s);
    let succ_t = successors_by_action(&t);
    let mut support_bits: Vec<HashMap<(usize, usize), u32>> = Vec::with_capacity(s.num_states());
    let mut tran_s_masks: Vec<Vec<u64>> = Vec::with_capacity(s.num_states());
    for x in 0..s.num_states() {
        let sup = s.support(x);
        if sup.len() > 64 {
            return Err(Error::guard(format!("moves of {}", s.state_name(x)), sup.len(), 64));
        }
        let bits: HashMap<(usize, usize), u32> = sup.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        tran_s_masks.push(
            s.tran(x)
                .iter()
                .map(|m| m.iter().fold(0u64, |acc, mv| acc | 1 << bits[mv]))
                .collect(),
        );
        support_bits.push(bits);
    }

    let mut ex = Explorer::new(opts.max_states);
    let mut initials = Vec::with_capacity(assignments.len());
    for f in assignments {
        let mut q0: Pairs = f.into_iter().zip(t.initials().iter().copied()).collect();
        q0.sort_unstable();
        initials.push(ex.intern(q0)?);
    }
    initials.sort_unstable();
    initials.dedup();
    let mut tran: Vec<Vec<Moves>> = Vec::new();
    while let Some(qi) = ex.pop() {
        let q = ex.states[qi].clone();
        if q.is_empty() {
            let mut family: Vec<Moves> = (0u64..1 << k)
                .map(|m| (0..k).filter(|&a| m >> a & 1 == 1).map(|a| (a, qi)).collect())
                .collect();
            family.sort();
            tran.push(family);
            continue;
        }
        let gamma = q
            .iter()
            .fold(full, |g, &(si, ti)| g & (alpha_s[si] | (full & !alpha_t[ti])));
        let mut postran: Vec<(usize, Pairs)> = Vec::new();
        for a in (0..k).filter(|&a| gamma >> a & 1 == 1) {
            let mut slots = Vec::new();
            let mut choices = Vec::new();
            for &(si, ti) in &q {
                for &tj in &succ_t[ti][a] {
                    slots.push(tj);
                    choices.push(succ_s[si][a].clone());
                }
            }
            let picks = choice_product(&choices, 1 << 16, "successor permutations")?;
            let rs: BTreeSet<Pairs> = picks
                .into_iter()
                .map(|pick| {
                    let mut r: Pairs = pick.into_iter().zip(slots.iter().copied()).collect();
                    r.sort_unstable();
                    r.dedup();
                    r
                })
                .collect();
            postran.extend(rs.into_iter().map(|r| (a, r)));
        }
        if postran.len() > opts.max_postran {
            return Err(Error::guard(
                format!("possible transitions of {}", pairs_name(&q, s.states(), t.states())),
                postran.len(),
                opts.max_postran,
            ));
        }

        // demands[c][y][p]: what possible transition p asks of component c under Y.
        let demands: Vec<Vec<Vec<Demand>>> = q
            .iter()
            .map(|&(si, ti)| {
                t.tran(ti)
                    .iter()
                    .map(|ys| {
                        postran
                            .iter()
                            .map(|(a, r)| {
                                let each: Vec<u64> = ys
                                    .iter()
                                    .filter(|&&(b, _)| b == *a)
                                    .map(|&(_, y)| {
                                        r.iter()
                                            .filter(|&&(_, ty)| ty == y)
                                            .filter_map(|&(sp, _)| support_bits[si].get(&(*a, sp)))
                                            .fold(0u64, |acc, &bit| acc | 1 << bit)
                                    })
                                    .collect();
                                Demand {
                                    any: each.iter().fold(0, |acc, m| acc | m),
                                    each,
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let mut family = Vec::new();
        for x in 0u64..1 << postran.len() {
            let admissible = q.iter().enumerate().all(|(c, &(si, _))| {
                demands[c].iter().all(|per_p| {
                    let mut allowed = 0u64;
                    let mut needs: Vec<u64> = Vec::new();
                    for (p, d) in per_p.iter().enumerate() {
                        if x >> p & 1 == 1 {
                            allowed |= d.any;
                            needs.extend(&d.each);
                        }
                    }
                    tran_s_masks[si]
                        .iter()
                        .any(|&kk| kk & !allowed == 0 && needs.iter().all(|&n| n & kk != 0))
                })
            });
            if admissible {
                family.push(x);
            }
        }
        let mut out: Vec<Moves> = Vec::with_capacity(family.len());
        for x in family {
            let mut m = Moves::new();
            for (p, (a, r)) in postran.iter().enumerate() {
                if x >> p & 1 == 1 {
                    m.push((*a, ex.intern(r.clone())?));
                }
            }
            m.sort_unstable();
            out.push(m);
        }
        out.sort();
        tran.push(out);
    }
    let names: Vec<String> = ex
        .states
        .iter()
        .map(|q| pairs_name(q, s.states(), t.states()))
        .collect();
    let quotient = Naa::new(alphabet, names, initials, tran)?;
    Ok(if opts.prune {
        reach_naa(&prune_naa(&quotient))
    } else {
        quotient
    })
}
