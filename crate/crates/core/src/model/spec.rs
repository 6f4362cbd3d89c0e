use std::fmt;

use super::{Alphabet, Dmts, HmlDecl, Lts, Naa};
use crate::error::Result;
use crate::{refine, translate};

/// The formalism tag of a specification document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Lts,
    Mts,
    Dmts,
    Naa,
    Hml,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Lts => "lts",
            Kind::Mts => "mts",
            Kind::Dmts => "dmts",
            Kind::Naa => "naa",
            Kind::Hml => "hml",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Kind> {
        Some(match word {
            "lts" => Kind::Lts,
            "mts" => Kind::Mts,
            "dmts" => Kind::Dmts,
            "naa" => Kind::Naa,
            "hml" => Kind::Hml,
            _ => return None,
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A specification in any of the supported formalisms.
///
/// `Mts` holds a [`Dmts`] that has passed the MTS shape check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Lts(Lts),
    Mts(Dmts),
    Dmts(Dmts),
    Naa(Naa),
    Hml(HmlDecl),
}

impl Spec {
    pub fn kind(&self) -> Kind {
        match self {
            Spec::Lts(_) => Kind::Lts,
            Spec::Mts(_) => Kind::Mts,
            Spec::Dmts(_) => Kind::Dmts,
            Spec::Naa(_) => Kind::Naa,
            Spec::Hml(_) => Kind::Hml,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Spec::Lts(l) => l.alphabet(),
            Spec::Mts(d) | Spec::Dmts(d) => d.alphabet(),
            Spec::Naa(n) => n.alphabet(),
            Spec::Hml(h) => h.alphabet(),
        }
    }

    /// The specification as an acceptance automaton.
    pub fn to_naa(&self) -> Result<Naa> {
        Ok(match self {
            Spec::Lts(l) => Naa::from_lts(l),
            Spec::Mts(d) | Spec::Dmts(d) => translate::db(d)?,
            Spec::Naa(n) => n.clone(),
            Spec::Hml(h) => translate::db(&translate::hd(&translate::normalize(h)?))?,
        })
    }

    /// The specification as a disjunctive modal transition system.
    pub fn to_dmts(&self) -> Result<Dmts> {
        Ok(match self {
            Spec::Lts(l) => Dmts::from_lts(l),
            Spec::Mts(d) | Spec::Dmts(d) => d.clone(),
            Spec::Naa(n) => translate::bd(n),
            Spec::Hml(h) => translate::hd(&translate::normalize(h)?),
        })
    }

    /// The specification as an HML declaration.
    pub fn to_hml(&self) -> Result<HmlDecl> {
        Ok(match self {
            Spec::Lts(l) => translate::bh(&Naa::from_lts(l)),
            Spec::Mts(d) | Spec::Dmts(d) => translate::bh(&translate::db(d)?),
            Spec::Naa(n) => translate::bh(n),
            Spec::Hml(h) => h.clone(),
        })
    }

    /// Whether `imp` is an implementation of this specification.
    ///
    /// An LTS used as a specification is read in its DMTS shape, so this is modal refinement.
    pub fn implemented_by(&self, imp: &Lts) -> Result<bool> {
        match self {
            Spec::Lts(l) => refine::implements_dmts(imp, &Dmts::from_lts(l)),
            Spec::Mts(d) | Spec::Dmts(d) => refine::implements_dmts(imp, d),
            Spec::Naa(n) => refine::implements_naa(imp, n),
            Spec::Hml(h) => refine::hml_check(imp, h).map(|o| o.holds),
        }
    }
}

impl From<Lts> for Spec {
    fn from(l: Lts) -> Self {
        Spec::Lts(l)
    }
}

impl From<Naa> for Spec {
    fn from(n: Naa) -> Self {
        Spec::Naa(n)
    }
}

impl From<HmlDecl> for Spec {
    fn from(h: HmlDecl) -> Self {
        Spec::Hml(h)
    }
}

impl From<Dmts> for Spec {
    /// MTS-shaped systems are tagged `Mts`.
    fn from(d: Dmts) -> Self {
        if d.is_mts() {
            Spec::Mts(d)
        } else {
            Spec::Dmts(d)
        }
    }
}
