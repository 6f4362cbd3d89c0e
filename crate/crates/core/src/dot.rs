//! Graphviz rendering.
//!
//! May-only transitions are dashed, singleton must-transitions solid, and a
//! must-set with zero or several elements goes through a small junction node.
//! Initial states receive an arrow from an unlabelled point.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::model::{Dmts, Formula, HmlDecl, Naa, Spec};
use crate::text::formula_to_string;

fn q(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn open(out: &mut String, node_shape: &str) {
    out.push_str("digraph spec {\n  rankdir=LR;\n");
    let _ = writeln!(out, "  node [shape={node_shape}];");
}

fn states_and_initials(out: &mut String, names: &[String], initials: &[usize]) {
    for name in names {
        let _ = writeln!(out, "  {};", q(name));
    }
    for (k, &s) in initials.iter().enumerate() {
        let p = q(&format!("_init{k}"));
        let _ = writeln!(out, "  {p} [shape=point, label=\"\"];");
        let _ = writeln!(out, "  {p} -> {};", q(&names[s]));
    }
}

fn dmts_dot(out: &mut String, d: &Dmts, implementation: bool) {
    let names = d.states();
    let sym = |a: usize| q(d.alphabet().symbol(a));
    open(out, "circle");
    states_and_initials(out, names, d.initials());
    let mut junction = 0;
    for s in 0..d.num_states() {
        let singles: BTreeSet<(usize, usize)> =
            d.must(s).iter().filter(|m| m.len() == 1).map(|m| m[0]).collect();
        for &(a, t) in d.may(s) {
            let style = if implementation || singles.contains(&(a, t)) { "" } else { ", style=dashed" };
            let _ = writeln!(out, "  {} -> {} [label={}{style}];", q(&names[s]), q(&names[t]), sym(a));
        }
        if implementation {
            continue;
        }
        for set in d.must(s).iter().filter(|m| m.len() != 1) {
            let j = q(&format!("_must{junction}"));
            junction += 1;
            let _ = writeln!(out, "  {j} [shape=point, label=\"\"];");
            let _ = writeln!(out, "  {} -> {j} [arrowhead=none];", q(&names[s]));
            for &(a, t) in set {
                let _ = writeln!(out, "  {j} -> {} [label={}];", q(&names[t]), sym(a));
            }
        }
    }
    out.push_str("}\n");
}

fn naa_dot(out: &mut String, n: &Naa) {
    let names = n.states();
    open(out, "circle");
    states_and_initials(out, names, n.initials());
    let mut point = 0;
    for s in 0..n.num_states() {
        for set in n.tran(s) {
            let p = q(&format!("_set{point}"));
            point += 1;
            let _ = writeln!(out, "  {p} [shape=point, label=\"\"];");
            let _ = writeln!(out, "  {} -> {p} [arrowhead=none, style=dotted];", q(&names[s]));
            for &(a, t) in set {
                let _ = writeln!(out, "  {p} -> {} [label={}];", q(&names[t]), q(n.alphabet().symbol(a)));
            }
        }
    }
    out.push_str("}\n");
}

/// Collects each variable occurrence with the modal prefix leading to it.
fn occurrences(h: &HmlDecl, f: &Formula, prefix: &mut String, out: &mut BTreeSet<(usize, String)>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Var(x) => {
            out.insert((*x, prefix.clone()));
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            occurrences(h, l, prefix, out);
            occurrences(h, r, prefix, out);
        }
        Formula::Diamond(a, g) | Formula::Box(a, g) => {
            let len = prefix.len();
            let (o, c) = if matches!(f, Formula::Diamond(..)) { ('<', '>') } else { ('[', ']') };
            let _ = write!(prefix, "{o}{}{c}", h.alphabet().symbol(*a));
            occurrences(h, g, prefix, out);
            prefix.truncate(len);
        }
    }
}

fn hml_dot(out: &mut String, h: &HmlDecl) {
    open(out, "box");
    for x in 0..h.num_vars() {
        let label = format!("{} = {}", h.var_name(x), formula_to_string(h, h.body(x)));
        let _ = writeln!(out, "  {} [label={}];", q(h.var_name(x)), q(&label));
    }
    for (k, &x) in h.initials().iter().enumerate() {
        let p = q(&format!("_init{k}"));
        let _ = writeln!(out, "  {p} [shape=point, label=\"\"];");
        let _ = writeln!(out, "  {p} -> {};", q(h.var_name(x)));
    }
    for x in 0..h.num_vars() {
        let mut occ = BTreeSet::new();
        occurrences(h, h.body(x), &mut String::new(), &mut occ);
        for (y, prefix) in occ {
            let _ = writeln!(out, "  {} -> {} [label={}];", q(h.var_name(x)), q(h.var_name(y)), q(&prefix));
        }
    }
    out.push_str("}\n");
}

/// Renders a specification as a Graphviz digraph. Output is deterministic.
pub fn export_dot(spec: &Spec) -> String {
    let mut out = String::new();
    match spec {
        Spec::Lts(l) => dmts_dot(&mut out, &Dmts::from_lts(l), true),
        Spec::Mts(d) | Spec::Dmts(d) => dmts_dot(&mut out, d, false),
        Spec::Naa(n) => naa_dot(&mut out, n),
        Spec::Hml(h) => hml_dot(&mut out, h),
    }
    out
}
