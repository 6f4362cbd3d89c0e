//! Quotients: the most permissive specification whose composition with a
//! divisor refines a dividend.
//!
//! Quotient states are finite sets of pairs `s/t`, written `{s1/t1,s2/t2}`;
//! the empty set `{}` is the universal state.

mod mts;
mod naa;

pub use mts::quotient_mts;
pub use naa::{disjointify, quotient_naa};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Size guards and post-processing switches for the quotient constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Largest number of possible transitions (acceptance automata) or
    /// may-successors per action (MTS) of a single quotient state.
    pub max_postran: usize,
    /// Largest number of quotient states explored.
    pub max_states: usize,
    /// Remove inconsistent states and restrict to reachable ones afterwards.
    pub prune: bool,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            max_postran: 16,
            max_states: 100_000,
            prune: true,
        }
    }
}

/// A quotient state: sorted, duplicate-free `(dividend, divisor)` index pairs.
pub(crate) type Pairs = Vec<(usize, usize)>;

pub(crate) fn pairs_name(pairs: &Pairs, left: &[String], right: &[String]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|&(s, t)| format!("{}/{}", left[s], right[t]))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// Interning table for quotient states discovered during exploration.
pub(crate) struct Explorer {
    index: HashMap<Pairs, usize>,
    pub(crate) states: Vec<Pairs>,
    next: usize,
    max_states: usize,
}

impl Explorer {
    pub(crate) fn new(max_states: usize) -> Self {
        Explorer {
            index: HashMap::new(),
            states: Vec::new(),
            next: 0,
            max_states,
        }
    }

    pub(crate) fn intern(&mut self, q: Pairs) -> Result<usize> {
        if let Some(&i) = self.index.get(&q) {
            return Ok(i);
        }
        if self.states.len() >= self.max_states {
            return Err(Error::guard("quotient states", self.states.len() + 1, self.max_states));
        }
        let i = self.states.len();
        self.index.insert(q.clone(), i);
        self.states.push(q);
        Ok(i)
    }

    /// Next state whose outgoing structure has not been built yet.
    pub(crate) fn pop(&mut self) -> Option<usize> {
        (self.next < self.states.len()).then(|| {
            self.next += 1;
            self.next - 1
        })
    }
}

/// Every way to pick one element from each of `choices`, as index vectors.
pub(crate) fn choice_product<T: Copy>(choices: &[Vec<T>], limit: usize, what: &str) -> Result<Vec<Vec<T>>> {
    let mut total: usize = 1;
    for c in choices {
        total = total.saturating_mul(c.len());
    }
    if total > limit {
        return Err(Error::guard(what.to_string(), total, limit));
    }
    let mut out = vec![Vec::with_capacity(choices.len())];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    Ok(out)
}
