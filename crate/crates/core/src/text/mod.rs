//! The textual document format shared by every formalism.
//!
//! ```text
//! dmts {
//!   alphabet a, b;
//!   init s;
//!   may s a t;
//!   must s {(a, t)};
//! }
//! ```
//!
//! Identifiers are either bare (letters, digits and `_'.#:^-⊤⊥`) or double-quoted
//! with `\"` and `\\` escapes. Line comments start with `//`.

mod lexer;
mod parse;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Dmts, Formula, HmlDecl, Naa, Spec, SupportMode};

/// Words that must be quoted when used as identifiers.
pub(crate) const RESERVED: &[&str] = &["alphabet", "init", "may", "must", "state", "tt", "ff"];

/// Parses a document, rejecting must-transitions without a matching may-transition.
///
/// ```
/// let spec = modspec::parse("naa { alphabet a; init s; state s {{}, {(a, s)}}; }").unwrap();
/// assert_eq!(spec.kind(), modspec::Kind::Naa);
/// ```
pub fn parse(text: &str) -> Result<Spec> {
    parse::parse_document(text, SupportMode::Strict)
}

/// Parses a document with an explicit must-support policy.
pub fn parse_with(text: &str, mode: SupportMode) -> Result<Spec> {
    parse::parse_document(text, mode)
}

/// Renders an identifier, quoting it when it would not survive as a bare word.
pub fn quote_ident(name: &str) -> String {
    let bare = !name.is_empty() && name.chars().all(lexer::is_bare_char) && !RESERVED.contains(&name);
    if bare {
        return name.to_string();
    }
    let mut s = String::with_capacity(name.len() + 2);
    s.push('"');
    for c in name.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

fn id_list<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    names.into_iter().map(quote_ident).collect::<Vec<_>>().join(", ")
}

fn header(out: &mut String, keyword: &str, alphabet: &Alphabet, initials: Vec<&str>) {
    let _ = writeln!(out, "{keyword} {{");
    let _ = writeln!(out, "  alphabet {};", id_list(alphabet.symbols().iter().map(String::as_str)));
    if initials.is_empty() {
        out.push_str("  init;\n");
    } else {
        let _ = writeln!(out, "  init {};", id_list(initials));
    }
}

fn move_set(d_alpha: &Alphabet, states: &[String], m: &[(usize, usize)]) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|&(a, t)| format!("({}, {})", quote_ident(d_alpha.symbol(a)), quote_ident(&states[t])))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn write_transitions(out: &mut String, keyword: &str, d: &Dmts, with_must: bool) {
    let names = d.states();
    header(out, keyword, d.alphabet(), d.initials().iter().map(|&s| names[s].as_str()).collect());
    let n = d.num_states();
    let mut mentioned = vec![false; n];
    for &s in d.initials() {
        mentioned[s] = true;
    }
    for s in 0..n {
        for &(_, t) in d.may(s) {
            mentioned[s] = true;
            mentioned[t] = true;
        }
        if with_must && !d.must(s).is_empty() {
            mentioned[s] = true;
        }
    }
    for s in (0..n).filter(|&s| !mentioned[s]) {
        let _ = writeln!(out, "  state {};", quote_ident(&names[s]));
    }
    for s in 0..n {
        let src = quote_ident(&names[s]);
        for &(a, t) in d.may(s) {
            let _ = writeln!(out, "  may {src} {} {};", quote_ident(d.alphabet().symbol(a)), quote_ident(&names[t]));
        }
        if with_must {
            for set in d.must(s) {
                let _ = writeln!(out, "  must {src} {};", move_set(d.alphabet(), names, set));
            }
        }
    }
    out.push_str("}\n");
}

fn write_naa(out: &mut String, n: &Naa) {
    let names = n.states();
    header(out, "naa", n.alphabet(), n.initials().iter().map(|&s| names[s].as_str()).collect());
    for s in 0..n.num_states() {
        let family: Vec<String> = n.tran(s).iter().map(|m| move_set(n.alphabet(), names, m)).collect();
        let _ = writeln!(out, "  state {} {{{}}};", quote_ident(&names[s]), family.join(", "));
    }
    out.push_str("}\n");
}

/// Binding strength of the context a subformula is printed in.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Or,
    And,
    Prefix,
}

/// Prints a formula with the fewest parentheses that parse back to the same tree.
pub fn formula_to_string(h: &HmlDecl, f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, h, f, Prec::Or);
    s
}

fn write_formula(out: &mut String, h: &HmlDecl, f: &Formula, ctx: Prec) {
    match f {
        Formula::True => out.push_str("tt"),
        Formula::False => out.push_str("ff"),
        Formula::Var(x) => out.push_str(&quote_ident(h.var_name(*x))),
        Formula::Diamond(a, g) => {
            let _ = write!(out, "<{}>", quote_ident(h.alphabet().symbol(*a)));
            write_formula(out, h, g, Prec::Prefix);
        }
        Formula::Box(a, g) => {
            let _ = write!(out, "[{}]", quote_ident(h.alphabet().symbol(*a)));
            write_formula(out, h, g, Prec::Prefix);
        }
        Formula::And(l, r) => {
            let paren = ctx > Prec::And;
            if paren {
                out.push('(');
            }
            write_formula(out, h, l, Prec::And);
            out.push_str(" & ");
            write_formula(out, h, r, Prec::Prefix);
            if paren {
                out.push(')');
            }
        }
        Formula::Or(l, r) => {
            let paren = ctx > Prec::Or;
            if paren {
                out.push('(');
            }
            write_formula(out, h, l, Prec::Or);
            out.push_str(" | ");
            write_formula(out, h, r, Prec::And);
            if paren {
                out.push(')');
            }
        }
    }
}

fn write_hml(out: &mut String, h: &HmlDecl) {
    header(out, "hml", h.alphabet(), h.initials().iter().map(|&x| h.var_name(x)).collect());
    for x in 0..h.num_vars() {
        let _ = writeln!(out, "  {} = {};", quote_ident(h.var_name(x)), formula_to_string(h, h.body(x)));
    }
    out.push_str("}\n");
}

/// Renders a specification in canonical document form; `parse` inverts it exactly.
pub fn serialize(spec: &Spec) -> String {
    let mut out = String::new();
    match spec {
        Spec::Lts(l) => write_transitions(&mut out, "lts", &Dmts::from_lts(l), false),
        Spec::Mts(d) => write_transitions(&mut out, "mts", d, true),
        Spec::Dmts(d) => write_transitions(&mut out, "dmts", d, true),
        Spec::Naa(n) => write_naa(&mut out, n),
        Spec::Hml(h) => write_hml(&mut out, h),
    }
    out
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

impl FromStr for Spec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
