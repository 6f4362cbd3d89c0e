use super::{canonical_order, check_index, permute, remap_moves, Alphabet, Interner, Lts, Moves};
use crate::error::{Error, Result};

/// A nondeterministic acceptance automaton.
///
/// Every state carries a family of admissible transition sets; an implementation
/// state matches it by choosing one set and realising exactly that set (up to
/// refinement of the targets).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Naa {
    alphabet: Alphabet,
    states: Vec<String>,
    initials: Vec<usize>,
    tran: Vec<Vec<Moves>>,
}

impl Naa {
    /// Index-based constructor; `tran[s]` lists the admissible sets of `s` in any order.
    pub fn new(alphabet: Alphabet, states: Vec<String>, initials: Vec<usize>, tran: Vec<Vec<Moves>>) -> Result<Self> {
        let n = states.len();
        if tran.len() != n {
            return Err(Error::InvariantViolation(format!(
                "{n} states but {} transition families",
                tran.len()
            )));
        }
        for &i in &initials {
            check_index(i, n, "initial")?;
        }
        for &(a, t) in tran.iter().flatten().flatten() {
            check_index(t, n, "target")?;
            if a >= alphabet.len() {
                return Err(Error::UnknownAction(format!("action index {a}")));
            }
        }
        let (states, map) = canonical_order(states)?;
        let mut initials: Vec<usize> = initials.iter().map(|&i| map[i]).collect();
        initials.sort_unstable();
        initials.dedup();
        let tran = permute(tran, &map)
            .into_iter()
            .map(|sets| {
                let mut sets: Vec<Moves> = sets.iter().map(|m| remap_moves(m, &map)).collect();
                sets.sort();
                sets.dedup();
                sets
            })
            .collect();
        Ok(Naa {
            alphabet,
            states,
            initials,
            tran,
        })
    }

    /// Constructor for data that is already canonical (sorted names, sorted families).
    pub(crate) fn from_sorted_parts(alphabet: Alphabet, states: Vec<String>, initials: Vec<usize>, tran: Vec<Vec<Moves>>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(tran.iter().all(|f| f.windows(2).all(|w| w[0] < w[1])));
        Naa {
            alphabet,
            states,
            initials,
            tran,
        }
    }

    /// Each LTS state gets exactly one admissible set: its outgoing transitions.
    pub fn from_lts(l: &Lts) -> Naa {
        let tran = (0..l.num_states()).map(|s| vec![l.successors(s).to_vec()]).collect();
        Naa::from_sorted_parts(l.alphabet().clone(), l.states().to_vec(), vec![l.initial()], tran)
    }

    /// Succeeds iff there is one initial state and every state has exactly one admissible set.
    pub fn to_lts(&self) -> Option<Lts> {
        if self.initials.len() != 1 || self.tran.iter().any(|f| f.len() != 1) {
            return None;
        }
        let succ = self.tran.iter().map(|f| f[0].clone()).collect();
        Some(Lts::from_sorted_parts(
            self.alphabet.clone(),
            self.states.clone(),
            self.initials[0],
            succ,
        ))
    }

    /// The inconsistent specification: no states, no implementations.
    pub fn bottom(alphabet: &Alphabet) -> Naa {
        Naa::from_sorted_parts(alphabet.clone(), Vec::new(), Vec::new(), Vec::new())
    }

    /// The universal specification: one state whose admissible sets are all subsets of `Σ × {top}`.
    pub fn top(alphabet: &Alphabet) -> Naa {
        let k = alphabet.len();
        assert!(k <= 16, "top over more than 16 actions would have over 65536 admissible sets");
        let family: Vec<Moves> = (0u32..1 << k)
            .map(|mask| (0..k).filter(|&a| mask >> a & 1 == 1).map(|a| (a, 0)).collect())
            .collect();
        let mut family = family;
        family.sort();
        Naa::from_sorted_parts(alphabet.clone(), vec!["top".into()], vec![0], vec![family])
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

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    /// The admissible sets of `s`, sorted.
    pub fn tran(&self, s: usize) -> &[Moves] {
        &self.tran[s]
    }

    /// Total number of admissible sets over all states.
    pub fn num_sets(&self) -> usize {
        self.tran.iter().map(Vec::len).sum()
    }

    /// Actions that occur in some admissible set of `s`, as a bit mask.
    pub fn enabled_mask(&self, s: usize) -> u64 {
        self.tran[s]
            .iter()
            .flatten()
            .fold(0, |acc, &(a, _)| acc | 1 << a)
    }

    /// All `(action, target)` pairs occurring in some admissible set of `s`, sorted.
    pub fn support(&self, s: usize) -> Moves {
        let mut all: Moves = self.tran[s].iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn with_initials(&self, initials: &[usize]) -> Result<Naa> {
        for &i in initials {
            check_index(i, self.states.len(), "initial")?;
        }
        let mut n = self.clone();
        n.initials = initials.to_vec();
        n.initials.sort_unstable();
        n.initials.dedup();
        Ok(n)
    }

}

/// Name-based construction of an [`Naa`].
///
/// ```
/// use modspec::{Alphabet, NaaBuilder};
/// let mut b = NaaBuilder::new(Alphabet::new(["a", "b"]).unwrap());
/// b.initial("s0");
/// b.admit("s0", &[("a", "s0")]).unwrap();
/// b.admit("s0", &[("a", "s0"), ("b", "s0")]).unwrap();
/// assert_eq!(b.build().unwrap().tran(0).len(), 2);
/// ```
#[derive(Debug, Clone)]
pub struct NaaBuilder {
    alphabet: Alphabet,
    names: Interner,
    initials: Vec<usize>,
    sets: Vec<(usize, Moves)>,
}

impl NaaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        NaaBuilder {
            alphabet,
            names: Interner::default(),
            initials: Vec::new(),
            sets: Vec::new(),
        }
    }

    /// Declares a state; a state with no admissible set is inconsistent.
    pub fn state(&mut self, name: &str) -> usize {
        self.names.intern(name)
    }

    pub fn initial(&mut self, name: &str) -> &mut Self {
        let s = self.names.intern(name);
        self.initials.push(s);
        self
    }

    /// Adds one admissible set to `state`.
    pub fn admit(&mut self, state: &str, set: &[(&str, &str)]) -> Result<&mut Self> {
        let s = self.names.intern(state);
        let mut m = Moves::with_capacity(set.len());
        for &(a, t) in set {
            m.push((self.alphabet.lookup(a)?, self.names.intern(t)));
        }
        self.sets.push((s, m));
        Ok(self)
    }

    pub fn build(self) -> Result<Naa> {
        let mut tran = vec![Vec::new(); self.names.len()];
        for (s, m) in self.sets {
            tran[s].push(m);
        }
        Naa::new(self.alphabet, self.names.into_names(), self.initials, tran)
    }
}
