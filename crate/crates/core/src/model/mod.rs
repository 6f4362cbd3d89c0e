//! The specification formalisms and their implementation objects.

mod alphabet;
mod dmts;
mod hml;
mod lts;
mod naa;
mod spec;

pub use alphabet::{Alphabet, MAX_ACTIONS};
pub use dmts::{Dmts, DmtsBuilder, MtsView, SupportMode};
pub use hml::{Formula, HmlDecl};
pub use lts::Lts;
pub use naa::{Naa, NaaBuilder};
pub use spec::{Kind, Spec};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A set of `(action, target)` pairs, kept sorted and free of duplicates.
pub type Moves = Vec<(usize, usize)>;

pub(crate) fn sort_moves(m: &mut Moves) {
    m.sort_unstable();
    m.dedup();
}

/// Sorts `names`, rejecting duplicates, and returns the sorted list with the map
/// from old positions to new positions.
pub(crate) fn canonical_order(names: Vec<String>) -> Result<(Vec<String>, Vec<usize>)> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    if let Some(w) = order.windows(2).find(|w| names[w[0]] == names[w[1]]) {
        return Err(Error::DuplicateState(names[w[0]].clone()));
    }
    let mut map = vec![0; names.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    let mut slots: Vec<Option<String>> = names.into_iter().map(Some).collect();
    let sorted = order.iter().map(|&o| slots[o].take().unwrap()).collect();
    Ok((sorted, map))
}

pub(crate) fn remap_moves(m: &[(usize, usize)], map: &[usize]) -> Moves {
    let mut out: Moves = m.iter().map(|&(a, t)| (a, map[t])).collect();
    sort_moves(&mut out);
    out
}

/// Permutes `items` so that the element at old position `i` ends up at `map[i]`.
pub(crate) fn permute<T>(items: Vec<T>, map: &[usize]) -> Vec<T> {
    let mut slots: Vec<Option<T>> = (0..items.len()).map(|_| None).collect();
    for (old, item) in items.into_iter().enumerate() {
        slots[map[old]] = Some(item);
    }
    slots.into_iter().map(Option::unwrap).collect()
}

pub(crate) fn check_index(idx: usize, len: usize, what: &str) -> Result<()> {
    if idx < len {
        Ok(())
    } else {
        Err(Error::UnknownState(format!("{what} index {idx}")))
    }
}

/// Name-to-index interning used by the builders and the parser.
#[derive(Debug, Default, Clone)]
pub(crate) struct Interner {
    map: HashMap<String, usize>,
    names: Vec<String>,
}

impl Interner {
    pub(crate) fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.map.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.map.insert(name.to_string(), i);
        i
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    pub(crate) fn into_names(self) -> Vec<String> {
        self.names
    }
}

/// Printable names for generated states.
pub mod names {
    use super::Alphabet;

    /// `(left,right)`, the name of a product state.
    pub fn pair(left: &str, right: &str) -> String {
        format!("({left},{right})")
    }

    /// `{(a,s0),(b,s1)}`, the name of a state standing for an admissible set.
    pub fn moves(alphabet: &Alphabet, states: &[String], moves: &[(usize, usize)]) -> String {
        let body: Vec<String> = moves
            .iter()
            .map(|&(a, t)| format!("({},{})", alphabet.symbol(a), states[t]))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    /// Appends primes to `base` until `taken` rejects it no longer.
    pub fn fresh(base: &str, taken: impl Fn(&str) -> bool) -> String {
        let mut name = base.to_string();
        while taken(&name) {
            name.push('\'');
        }
        name
    }
}
