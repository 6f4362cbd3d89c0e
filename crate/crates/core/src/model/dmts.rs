use super::{canonical_order, check_index, permute, remap_moves, sort_moves, Alphabet, Interner, Lts, Moves};
use crate::error::{Error, Result};

/// How to treat a must-transition whose `(action, target)` is not also a may-transition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SupportMode {
    /// Reject the input with [`Error::MustNotSupported`].
    #[default]
    Strict,
    /// Add the missing may-transitions.
    Repair,
}

/// A disjunctive modal transition system.
///
/// Each state has may-transitions (what an implementation is allowed to do) and
/// a list of must-sets; an implementation must realise at least one element of
/// every must-set. Every element of a must-set is also a may-transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dmts {
    alphabet: Alphabet,
    states: Vec<String>,
    initials: Vec<usize>,
    may: Vec<Moves>,
    must: Vec<Vec<Moves>>,
}

impl Dmts {
    /// Index-based constructor. `may[s]` and `must[s]` describe state `s`; order and
    /// duplicates are irrelevant.
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        initials: Vec<usize>,
        may: Vec<Moves>,
        must: Vec<Vec<Moves>>,
        mode: SupportMode,
    ) -> Result<Self> {
        let n = states.len();
        if may.len() != n || must.len() != n {
            return Err(Error::InvariantViolation(format!(
                "{n} states but {} may-lists and {} must-lists",
                may.len(),
                must.len()
            )));
        }
        for &i in &initials {
            check_index(i, n, "initial")?;
        }
        let k = alphabet.len();
        for m in may.iter().chain(must.iter().flatten()) {
            for &(a, t) in m {
                check_index(t, n, "target")?;
                if a >= k {
                    return Err(Error::UnknownAction(format!("action index {a}")));
                }
            }
        }
        let (states, map) = canonical_order(states)?;
        let mut initials: Vec<usize> = initials.iter().map(|&i| map[i]).collect();
        initials.sort_unstable();
        initials.dedup();
        let mut may: Vec<Moves> = permute(may, &map).iter().map(|m| remap_moves(m, &map)).collect();
        let must: Vec<Vec<Moves>> = permute(must, &map)
            .into_iter()
            .map(|sets| {
                let mut sets: Vec<Moves> = sets.iter().map(|m| remap_moves(m, &map)).collect();
                sets.sort();
                sets.dedup();
                sets
            })
            .collect();
        for s in 0..n {
            for &(a, t) in must[s].iter().flatten() {
                if may[s].binary_search(&(a, t)).is_err() {
                    match mode {
                        SupportMode::Strict => {
                            return Err(Error::MustNotSupported {
                                state: states[s].clone(),
                                action: alphabet.symbol(a).to_string(),
                                target: states[t].clone(),
                            })
                        }
                        SupportMode::Repair => {
                            may[s].push((a, t));
                            sort_moves(&mut may[s]);
                        }
                    }
                }
            }
        }
        Ok(Dmts {
            alphabet,
            states,
            initials,
            may,
            must,
        })
    }

    /// The implementation shape of an LTS: one initial state and a singleton must per transition.
    pub fn from_lts(l: &Lts) -> Dmts {
        let may: Vec<Moves> = (0..l.num_states()).map(|s| l.successors(s).to_vec()).collect();
        let must = may.iter().map(|m| m.iter().map(|&p| vec![p]).collect()).collect();
        Dmts {
            alphabet: l.alphabet().clone(),
            states: l.states().to_vec(),
            initials: vec![l.initial()],
            may,
            must,
        }
    }

    /// One state allowing every action and requiring nothing.
    pub fn top(alphabet: &Alphabet) -> Dmts {
        Dmts {
            alphabet: alphabet.clone(),
            states: vec!["top".into()],
            initials: vec![0],
            may: vec![alphabet.actions().map(|a| (a, 0)).collect()],
            must: vec![Vec::new()],
        }
    }

    /// No states and no initial states.
    pub fn bottom(alphabet: &Alphabet) -> Dmts {
        Dmts {
            alphabet: alphabet.clone(),
            states: Vec::new(),
            initials: Vec::new(),
            may: Vec::new(),
            must: Vec::new(),
        }
    }

    /// Constructor for data that is already canonical.
    pub(crate) fn from_sorted_parts(
        alphabet: Alphabet,
        states: Vec<String>,
        initials: Vec<usize>,
        may: Vec<Moves>,
        must: Vec<Vec<Moves>>,
    ) -> Dmts {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        Dmts {
            alphabet,
            states,
            initials,
            may,
            must,
        }
    }

    /// The inverse of [`Dmts::from_lts`]: succeeds iff the system has exactly the implementation shape.
    pub fn to_lts(&self) -> Option<Lts> {
        if self.initials.len() != 1 {
            return None;
        }
        for s in 0..self.states.len() {
            let singles: Vec<Moves> = self.may[s].iter().map(|&p| vec![p]).collect();
            if singles != self.must[s] {
                return None;
            }
        }
        Some(Lts::from_sorted_parts(
            self.alphabet.clone(),
            self.states.clone(),
            self.initials[0],
            self.may.clone(),
        ))
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

    /// May-successors of `s` as sorted `(action, target)` pairs.
    pub fn may(&self, s: usize) -> &[(usize, usize)] {
        &self.may[s]
    }

    /// Must-sets of `s`, each sorted; the list itself is sorted.
    pub fn must(&self, s: usize) -> &[Moves] {
        &self.must[s]
    }

    pub fn num_may(&self) -> usize {
        self.may.iter().map(Vec::len).sum()
    }

    pub fn num_must(&self) -> usize {
        self.must.iter().map(Vec::len).sum()
    }

    /// Same system with a different set of initial states.
    pub fn with_initials(&self, initials: &[usize]) -> Result<Dmts> {
        let mut d = self.clone();
        for &i in initials {
            check_index(i, d.states.len(), "initial")?;
        }
        d.initials = initials.to_vec();
        d.initials.sort_unstable();
        d.initials.dedup();
        Ok(d)
    }

    /// Checks the MTS shape: one initial state and singleton must-sets.
    pub fn as_mts(&self) -> Result<MtsView<'_>> {
        if self.initials.len() != 1 {
            return Err(Error::NotAnMts(format!(
                "{} initial states, exactly one required",
                self.initials.len()
            )));
        }
        for (s, sets) in self.must.iter().enumerate() {
            if let Some(bad) = sets.iter().find(|m| m.len() != 1) {
                let shown: Vec<String> = bad
                    .iter()
                    .map(|&(a, t)| format!("({},{})", self.alphabet.symbol(a), self.states[t]))
                    .collect();
                return Err(Error::NotAnMts(format!(
                    "state {} has must-set {{{}}} of size {}",
                    self.states[s],
                    shown.join(","),
                    bad.len()
                )));
            }
        }
        Ok(MtsView(self))
    }

    pub fn is_mts(&self) -> bool {
        self.as_mts().is_ok()
    }

}

/// A [`Dmts`] certified to be a modal transition system.
#[derive(Clone, Copy, Debug)]
pub struct MtsView<'a>(&'a Dmts);

impl<'a> MtsView<'a> {
    pub fn dmts(&self) -> &'a Dmts {
        self.0
    }

    pub fn initial(&self) -> usize {
        self.0.initials[0]
    }

    /// Targets of the singleton must-transitions of `s`.
    pub fn must_moves(&self, s: usize) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.0.must[s].iter().map(|m| m[0])
    }
}

/// Name-based construction of a [`Dmts`].
///
/// ```
/// use modspec::{Alphabet, DmtsBuilder};
/// let mut b = DmtsBuilder::new(Alphabet::new(["a", "b"]).unwrap());
/// b.initial("s");
/// b.may("s", "a", "s").unwrap();
/// b.may("s", "b", "s").unwrap();
/// b.must("s", &[("a", "s")]).unwrap();
/// let d = b.build().unwrap();
/// assert_eq!(d.num_may(), 2);
/// ```
#[derive(Debug, Clone)]
pub struct DmtsBuilder {
    alphabet: Alphabet,
    names: Interner,
    initials: Vec<usize>,
    may: Vec<(usize, usize, usize)>,
    must: Vec<(usize, Moves)>,
    mode: SupportMode,
}

impl DmtsBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        DmtsBuilder {
            alphabet,
            names: Interner::default(),
            initials: Vec::new(),
            may: Vec::new(),
            must: Vec::new(),
            mode: SupportMode::Strict,
        }
    }

    pub fn support_mode(&mut self, mode: SupportMode) -> &mut Self {
        self.mode = mode;
        self
    }

    /// Declares a state without adding transitions.
    pub fn state(&mut self, name: &str) -> usize {
        self.names.intern(name)
    }

    pub fn initial(&mut self, name: &str) -> &mut Self {
        let s = self.names.intern(name);
        self.initials.push(s);
        self
    }

    pub fn may(&mut self, source: &str, action: &str, target: &str) -> Result<&mut Self> {
        let a = self.alphabet.lookup(action)?;
        let s = self.names.intern(source);
        let t = self.names.intern(target);
        self.may.push((s, a, t));
        Ok(self)
    }

    pub fn must(&mut self, source: &str, set: &[(&str, &str)]) -> Result<&mut Self> {
        let s = self.names.intern(source);
        let mut m = Moves::with_capacity(set.len());
        for &(a, t) in set {
            m.push((self.alphabet.lookup(a)?, self.names.intern(t)));
        }
        self.must.push((s, m));
        Ok(self)
    }

    pub fn build(self) -> Result<Dmts> {
        let n = self.names.len();
        let mut may = vec![Moves::new(); n];
        for (s, a, t) in self.may {
            may[s].push((a, t));
        }
        let mut must = vec![Vec::new(); n];
        for (s, m) in self.must {
            must[s].push(m);
        }
        Dmts::new(self.alphabet, self.names.into_names(), self.initials, may, must, self.mode)
    }
}
