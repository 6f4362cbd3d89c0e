use super::{canonical_order, check_index, remap_moves, permute, sort_moves, Alphabet, Interner, Moves};
use crate::error::{Error, Result};

/// A finite labelled transition system with a single initial state.
///
/// States are indexed in name order, so two systems built from the same data
/// compare equal regardless of insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lts {
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    succ: Vec<Moves>,
}

impl Lts {
    /// Builds an LTS from state names, the initial index and `(source, action, target)` triples.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = states.len();
        check_index(initial, n, "initial")?;
        let mut succ = vec![Moves::new(); n];
        for (s, a, t) in transitions {
            check_index(s, n, "source")?;
            check_index(t, n, "target")?;
            if a >= alphabet.len() {
                return Err(Error::UnknownAction(format!("action index {a}")));
            }
            succ[s].push((a, t));
        }
        let (states, map) = canonical_order(states)?;
        let succ = permute(succ, &map)
            .into_iter()
            .map(|m| remap_moves(&m, &map))
            .collect();
        Ok(Lts {
            alphabet,
            states,
            initial: map[initial],
            succ,
        })
    }

    /// Builds an LTS from named triples; states are collected from the initial state and the triples.
    pub fn from_triples(alphabet: Alphabet, initial: &str, transitions: &[(&str, &str, &str)]) -> Result<Self> {
        let mut names = Interner::default();
        let init = names.intern(initial);
        let mut trans = Vec::with_capacity(transitions.len());
        for &(s, a, t) in transitions {
            let a = alphabet.lookup(a)?;
            trans.push((names.intern(s), a, names.intern(t)));
        }
        Lts::new(alphabet, names.into_names(), init, trans)
    }

    /// Fast path for callers that already hold canonically ordered data.
    pub(crate) fn from_sorted_parts(alphabet: Alphabet, states: Vec<String>, initial: usize, mut succ: Vec<Moves>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        succ.iter_mut().for_each(sort_moves);
        Lts {
            alphabet,
            states,
            initial,
            succ,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.binary_search_by(|s| s.as_str().cmp(name)).ok()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Outgoing `(action, target)` pairs of `s`, sorted.
    pub fn successors(&self, s: usize) -> &[(usize, usize)] {
        &self.succ[s]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, m)| m.iter().map(move |&(a, t)| (s, a, t)))
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// The one-state system with a self-loop on every action; the unit of parallel composition.
    pub fn unit(alphabet: &Alphabet) -> Lts {
        let succ = vec![alphabet.actions().map(|a| (a, 0)).collect()];
        Lts::from_sorted_parts(alphabet.clone(), vec!["u".into()], 0, succ)
    }
}
