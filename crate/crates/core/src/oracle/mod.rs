//! Ground truth by brute force: bounded enumeration of implementations.
//!
//! Refinement between specifications is a sufficient condition for inclusion
//! of implementation sets. The functions here compute those sets exactly, but
//! only for implementations up to a fixed number of states.

mod enumerate;
mod random;

pub use enumerate::{canonical_code, enum_codes, enum_lts, Code, Codes, EnumBound, DEFAULT_MAX_BITS, DEFAULT_MAX_STATES};
pub use random::{gen_dmts, gen_hml, gen_lts, gen_mts, gen_naa, gen_random, GenParams};

use crate::error::Result;
use crate::model::{Dmts, Lts, Spec};
use crate::refine::CompiledDmts;

/// A specification set up for repeated membership queries.
enum Matcher<'a> {
    Compiled(CompiledDmts),
    Direct(&'a Spec),
}

impl<'a> Matcher<'a> {
    fn new(spec: &'a Spec) -> Self {
        match spec {
            Spec::Lts(l) => Matcher::Compiled(CompiledDmts::new(&Dmts::from_lts(l))),
            Spec::Mts(d) | Spec::Dmts(d) => Matcher::Compiled(CompiledDmts::new(d)),
            _ => Matcher::Direct(spec),
        }
    }

    fn accepts(&self, imp: &Lts) -> Result<bool> {
        match self {
            Matcher::Compiled(c) => c.implemented_by(imp),
            Matcher::Direct(spec) => spec.implemented_by(imp),
        }
    }
}

/// All canonical systems within a bound, materialised once and reused for
/// many membership queries.
#[derive(Clone, Debug)]
pub struct Universe {
    bound: EnumBound,
    codes: Vec<Code>,
    systems: Vec<Lts>,
}

impl Universe {
    pub fn new(bound: EnumBound) -> Result<Self> {
        let codes: Vec<Code> = enum_codes(&bound)?.collect();
        let systems = codes.iter().map(|c| c.to_lts(&bound.alphabet)).collect();
        Ok(Universe { bound, codes, systems })
    }

    pub fn bound(&self) -> &EnumBound {
        &self.bound
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn systems(&self) -> &[Lts] {
        &self.systems
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    /// Membership of every system, in enumeration order.
    pub fn membership(&self, spec: &Spec) -> Result<Vec<bool>> {
        let m = Matcher::new(spec);
        self.systems.iter().map(|l| m.accepts(l)).collect()
    }

    /// The bounded implementation set of `spec`.
    pub fn impl_set(&self, spec: &Spec) -> Result<ImplSet> {
        let m = Matcher::new(spec);
        let mut members = Vec::new();
        for (c, l) in self.codes.iter().zip(&self.systems) {
            if m.accepts(l)? {
                members.push(*c);
            }
        }
        Ok(ImplSet { members })
    }

    /// The first system (in enumeration order) implementing exactly one of the two.
    pub fn first_difference(&self, a: &Spec, b: &Spec) -> Result<Option<&Lts>> {
        let (ma, mb) = (Matcher::new(a), Matcher::new(b));
        for l in &self.systems {
            if ma.accepts(l)? != mb.accepts(l)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }

    /// The first system implementing `a` but not `b`.
    pub fn first_escape(&self, a: &Spec, b: &Spec) -> Result<Option<&Lts>> {
        let (ma, mb) = (Matcher::new(a), Matcher::new(b));
        for l in &self.systems {
            if ma.accepts(l)? && !mb.accepts(l)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}

/// A bounded implementation set, as canonical codes in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplSet {
    members: Vec<Code>,
}

impl ImplSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn codes(&self) -> &[Code] {
        &self.members
    }

    /// Whether the reachable part of `lts` (up to renaming) is a member.
    pub fn contains(&self, lts: &Lts) -> bool {
        canonical_code(lts).is_some_and(|c| self.members.binary_search(&c).is_ok())
    }

    pub fn is_subset(&self, other: &ImplSet) -> bool {
        self.members.iter().all(|c| other.members.binary_search(c).is_ok())
    }
}

/// Bounded implementation set of `spec`.
pub fn impl_set(spec: &Spec, bound: &EnumBound) -> Result<ImplSet> {
    Universe::new(bound.clone())?.impl_set(spec)
}

/// Bounded thorough refinement: every implementation of `a` within the bound implements `b`.
pub fn tr_bounded(a: &Spec, b: &Spec, bound: &EnumBound) -> Result<bool> {
    Ok(Universe::new(bound.clone())?.first_escape(a, b)?.is_none())
}

/// Bounded thorough equivalence.
pub fn treq_bounded(a: &Spec, b: &Spec, bound: &EnumBound) -> Result<bool> {
    Ok(Universe::new(bound.clone())?.first_difference(a, b)?.is_none())
}
