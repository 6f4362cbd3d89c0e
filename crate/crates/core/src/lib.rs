//! Behavioural and logical specification theories over finite transition systems.
//!
//! Three formalisms of equal expressive power are supported: disjunctive modal
//! transition systems ([`Dmts`]), acceptance automata ([`Naa`]) and
//! Hennessy-Milner logic with greatest fixed points ([`HmlDecl`]). Each
//! specification denotes a set of implementations, finite labelled transition
//! systems ([`Lts`]).
//!
//! ```
//! use modspec::{parse, refine::refine};
//!
//! let imp = parse("lts { alphabet a; init i; may i a i; }").unwrap();
//! let spec = parse("mts { alphabet a; init s; may s a s; }").unwrap();
//! assert!(refine(&imp, &spec).unwrap().holds());
//! ```

pub mod algebra;
pub mod dot;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quotient;
pub mod refine;
pub mod text;
pub mod translate;

pub use dot::export_dot;
pub use error::{Error, Result};
pub use model::{Alphabet, Dmts, DmtsBuilder, Formula, HmlDecl, Kind, Lts, Moves, MtsView, Naa, NaaBuilder, Spec, SupportMode};
pub use text::{parse, parse_with, serialize};
