use super::normal::{NfBody, NormalFormDecl};
use std::collections::HashSet;

use crate::model::{names as naming, Dmts, Moves, SupportMode};

pub const TOP: &str = "⊤";
pub const BOTTOM: &str = "⊥";

/// Normal-form declaration to DMTS.
///
/// Every disjunct `k` of a variable `x` becomes a state `x#k`; `⊤` (may
/// self-loops on every action) stands for `tt` and `⊥` (an empty must-set) is
/// the inconsistent state. Each diamond of the disjunct yields a must-set over
/// the disjunct states of its target; the may-successors under `a` are the
/// disjunct states of the box target for `a` together with those of the
/// `a`-diamond targets.
pub fn hd(nf: &NormalFormDecl) -> Dmts {
    let n = nf.num_vars();
    let mut names: Vec<String> = vec![TOP.into(), BOTTOM.into()];
    let (top, bottom) = (0usize, 1usize);
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut first = vec![0usize; n];
    for x in 0..n {
        first[x] = names.len();
        if let NfBody::Clauses(cs) = nf.body(x) {
            for k in 1..=cs.len() {
                let name = naming::fresh(&format!("{}#{k}", nf.name(x)), |c| taken.contains(c));
                taken.insert(name.clone());
                names.push(name);
            }
        }
    }
    let rep = |x: usize| -> Vec<usize> {
        match nf.body(x) {
            NfBody::True => vec![top],
            NfBody::Clauses(cs) => (first[x]..first[x] + cs.len()).collect(),
        }
    };
    let k = nf.alphabet().len();
    let mut may = vec![Moves::new(); names.len()];
    let mut must: Vec<Vec<Moves>> = vec![Vec::new(); names.len()];
    may[top] = (0..k).map(|a| (a, top)).collect();
    must[bottom].push(Moves::new());
    for x in 0..n {
        let NfBody::Clauses(cs) = nf.body(x) else { continue };
        for (i, c) in cs.iter().enumerate() {
            let s = first[x] + i;
            for &(a, y) in &c.diamonds {
                let set: Moves = rep(y).into_iter().map(|t| (a, t)).collect();
                may[s].extend(set.iter().copied());
                must[s].push(set);
            }
            for (a, &y) in c.boxes.iter().enumerate() {
                may[s].extend(rep(y).into_iter().map(|t| (a, t)));
            }
        }
    }
    let initials = nf.initials().iter().flat_map(|&x| rep(x)).collect();
    Dmts::new(nf.alphabet().clone(), names, initials, may, must, SupportMode::Strict)
        .expect("hd builds supported musts")
}
