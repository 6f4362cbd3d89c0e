use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on the number of actions; action sets are handled as `u64` masks internally.
pub const MAX_ACTIONS: usize = 64;

/// A finite, non-empty, lexicographically ordered set of action names.
///
/// Actions are referred to by their index in this ordering everywhere else in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut syms: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if syms.is_empty() {
            return Err(Error::InvalidAlphabet("an alphabet needs at least one action".into()));
        }
        if let Some(bad) = syms.iter().find(|s| s.is_empty()) {
            return Err(Error::InvalidAlphabet(format!("empty action name {bad:?}")));
        }
        syms.sort();
        if let Some(w) = syms.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlphabet(format!("duplicate action `{}`", w[0])));
        }
        if syms.len() > MAX_ACTIONS {
            return Err(Error::InvalidAlphabet(format!(
                "{} actions given, at most {MAX_ACTIONS} are supported",
                syms.len()
            )));
        }
        Ok(Alphabet(syms.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, action: usize) -> &str {
        &self.0[action]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.binary_search_by(|s| s.as_str().cmp(symbol)).ok()
    }

    pub(crate) fn lookup(&self, symbol: &str) -> Result<usize> {
        self.index_of(symbol)
            .ok_or_else(|| Error::UnknownAction(symbol.to_string()))
    }

    pub fn actions(&self) -> std::ops::Range<usize> {
        0..self.0.len()
    }

    /// Mask with one bit per action.
    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Fails with an alphabet mismatch unless both alphabets are equal.
    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}
