use std::collections::BTreeSet;

use super::{choice_product, pairs_name, Explorer, Pairs, QuotientOptions};
use crate::algebra::{prune_dmts, reach_dmts};
use crate::error::Result;
use crate::model::{Dmts, Moves, MtsView, SupportMode};

fn may_targets(d: &Dmts, x: usize, a: usize) -> Vec<usize> {
    d.may(x).iter().filter(|&&(b, _)| b == a).map(|&(_, t)| t).collect()
}

/// Builds the quotient `dividend / divisor` of two MTS, which in general is a DMTS.
///
/// Under an action `a` allowed at `q`, the may-successors of `q` pair every
/// `a`-successor of each divisor component with some `a`-successor of the
/// matching dividend component. Every must-transition `s_i → s'` of a dividend
/// component becomes the must-set of those successors that contain `s'/t'` for
/// a must-successor `t'` of `t_i`. With `opts.prune` the result is pruned and
/// restricted to reachable states.
pub fn quotient_mts(dividend: MtsView<'_>, divisor: MtsView<'_>, opts: &QuotientOptions) -> Result<Dmts> {
    let (s, t) = (dividend.dmts(), divisor.dmts());
    s.alphabet().ensure_same(t.alphabet())?;
    let alphabet = s.alphabet().clone();
    let k = alphabet.len();
    let full = alphabet.full_mask();
    let enabled = |d: &Dmts, x: usize| d.may(x).iter().fold(0u64, |acc, &(a, _)| acc | 1 << a);
    let alpha_s: Vec<u64> = (0..s.num_states()).map(|x| enabled(s, x)).collect();
    let alpha_t: Vec<u64> = (0..t.num_states()).map(|x| enabled(t, x)).collect();

    let mut ex = Explorer::new(opts.max_states);
    ex.intern(vec![(dividend.initial(), divisor.initial())])?;
    let mut may: Vec<Moves> = Vec::new();
    let mut must: Vec<Vec<Moves>> = Vec::new();
    while let Some(qi) = ex.pop() {
        let q = ex.states[qi].clone();
        if q.is_empty() {
            may.push((0..k).map(|a| (a, qi)).collect());
            must.push(Vec::new());
            continue;
        }
        let gamma = q
            .iter()
            .fold(full, |g, &(si, ti)| g & (alpha_s[si] | (full & !alpha_t[ti])));
        let mut may_q = Moves::new();
        let mut by_action: Vec<Vec<(usize, Pairs)>> = vec![Vec::new(); k];
        for a in (0..k).filter(|&a| gamma >> a & 1 == 1) {
            let mut slots = Vec::new();
            let mut choices = Vec::new();
            for &(si, ti) in &q {
                for tj in may_targets(t, ti, a) {
                    slots.push(tj);
                    choices.push(may_targets(s, si, a));
                }
            }
            let picks = choice_product(&choices, opts.max_postran.max(1) << 8, "successor permutations")?;
            let rs: BTreeSet<Pairs> = picks
                .into_iter()
                .map(|pick| {
                    let mut r: Pairs = pick.into_iter().zip(slots.iter().copied()).collect();
                    r.sort_unstable();
                    r.dedup();
                    r
                })
                .collect();
            if rs.len() > opts.max_postran {
                return Err(crate::error::Error::guard(
                    format!("may-successors of {}", pairs_name(&q, s.states(), t.states())),
                    rs.len(),
                    opts.max_postran,
                ));
            }
            for r in rs {
                let id = ex.intern(r.clone())?;
                may_q.push((a, id));
                by_action[a].push((id, r));
            }
        }
        let mut must_q = Vec::new();
        for &(si, ti) in &q {
            for (a, sp) in dividend.must_moves(si) {
                let set: Moves = by_action[a]
                    .iter()
                    .filter(|(_, r)| {
                        divisor
                            .must_moves(ti)
                            .any(|(b, tp)| b == a && r.binary_search(&(sp, tp)).is_ok())
                    })
                    .map(|&(id, _)| (a, id))
                    .collect();
                must_q.push(set);
            }
        }
        may.push(may_q);
        must.push(must_q);
    }
    let names = ex
        .states
        .iter()
        .map(|q| pairs_name(q, s.states(), t.states()))
        .collect();
    let raw = Dmts::new(alphabet, names, vec![0], may, must, SupportMode::Strict)?;
    Ok(if opts.prune {
        reach_dmts(&prune_dmts(&raw))
    } else {
        raw
    })
}
