//! The two-layer normal form of HML declarations.
//!
//! A normal-form variable is either `tt` or a disjunction of clauses
//! `⋀_j <a_j>x_j ∧ ⋀_{a∈Σ} [a]y_a` in which every diamond target `x_j` implies
//! the box target `y_{a_j}` of the same action.
//!
//! [`normalize`] works with *base variables*: the declared variables plus one
//! fresh variable per distinct subformula occurring under a modality. Each
//! normal-form variable stands for a conjunction of base variables, which is
//! how the side condition is enforced: the target of `<a>x` in a clause with
//! `[a]y` becomes the conjunction `x ∧ y`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{names, Alphabet, Formula, HmlDecl};

/// Default bound on the number of normal-form variables.
pub const DEFAULT_MAX_VARS: usize = 10_000;

const MAX_CLAUSES: usize = 100_000;

/// One disjunct: diamonds `(action, var)` and exactly one box target per action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub diamonds: Vec<(usize, usize)>,
    /// `boxes[a]` is the variable under `[a]`.
    pub boxes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfBody {
    True,
    /// A disjunction of clauses; empty means `ff`.
    Clauses(Vec<Clause>),
}

impl NfBody {
    pub fn is_true(&self) -> bool {
        matches!(self, NfBody::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, NfBody::Clauses(c) if c.is_empty())
    }
}

/// A declaration in normal form.
///
/// Besides the bodies it keeps, for every variable, the conjunction of base
/// variables it stands for and the base variables that conjunction is known to
/// imply; [`NormalFormDecl::side_condition_holds`] re-checks the side condition
/// from that record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormDecl {
    alphabet: Alphabet,
    names: Vec<String>,
    bodies: Vec<NfBody>,
    initials: Vec<usize>,
    conjuncts: Vec<Vec<usize>>,
    implied: Vec<Vec<usize>>,
}

impl NormalFormDecl {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn body(&self, x: usize) -> &NfBody {
        &self.bodies[x]
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    /// Every diamond target carries at least the conjuncts of the box of its action.
    pub fn side_condition_holds(&self) -> bool {
        self.bodies.iter().all(|b| match b {
            NfBody::True => true,
            NfBody::Clauses(cs) => cs.iter().all(|c| {
                c.diamonds.iter().all(|&(a, x)| {
                    self.conjuncts[c.boxes[a]]
                        .iter()
                        .all(|y| self.implied[x].binary_search(y).is_ok())
                })
            }),
        })
    }

    /// Renders the normal form as an ordinary declaration.
    ///
    /// Modal operators whose target is `tt` or `ff` are printed with the constant,
    /// and variables only used that way are left out.
    pub fn to_decl(&self) -> HmlDecl {
        let n = self.names.len();
        let target = |x: usize| match &self.bodies[x] {
            NfBody::True => Formula::True,
            b if b.is_false() => Formula::False,
            _ => Formula::Var(x),
        };
        let mut keep = vec![false; n];
        let mut queue: VecDeque<usize> = self.initials.iter().copied().collect();
        for &x in &self.initials {
            keep[x] = true;
        }
        let mut formulas: Vec<Option<Formula>> = vec![None; n];
        while let Some(x) = queue.pop_front() {
            let f = match &self.bodies[x] {
                NfBody::True => Formula::True,
                NfBody::Clauses(cs) => Formula::disj(cs.iter().map(|c| {
                    let dia = c.diamonds.iter().map(|&(a, y)| Formula::diamond(a, target(y)));
                    let bx = c.boxes.iter().enumerate().map(|(a, &y)| Formula::boxed(a, target(y)));
                    Formula::conj(dia.chain(bx))
                })),
            };
            f.for_each_var(&mut |y| {
                if !keep[y] {
                    keep[y] = true;
                    queue.push_back(y);
                }
            });
            formulas[x] = Some(f);
        }
        let kept: Vec<usize> = (0..n).filter(|&x| keep[x]).collect();
        let mut new_index = vec![usize::MAX; n];
        for (i, &x) in kept.iter().enumerate() {
            new_index[x] = i;
        }
        let decl = kept
            .iter()
            .map(|&x| formulas[x].as_ref().unwrap().map_vars(&|y| new_index[y]))
            .collect();
        HmlDecl::new(
            self.alphabet.clone(),
            kept.iter().map(|&x| self.names[x].clone()).collect(),
            self.initials.iter().map(|&x| new_index[x]).collect(),
            decl,
        )
        .expect("normal form variables are distinct")
    }

    /// Reads a declaration that is already in normal form.
    ///
    /// Accepted bodies are `tt`, `ff`, or disjunctions of clauses built from
    /// `<a>x` and exactly one `[a]y` per action, where `x` and `y` may also be
    /// `tt` or `ff`. The side condition must be evident: `x` equals `y`, `y` is
    /// `tt`, or `x` is `ff`.
    pub fn from_decl(decl: &HmlDecl) -> Result<NormalFormDecl> {
        let k = decl.alphabet().len();
        let mut names: Vec<String> = decl.vars().to_vec();
        let mut bodies: Vec<Option<NfBody>> = vec![None; names.len()];
        let mut aux: [Option<usize>; 2] = [None, None];
        let mut operand = |f: &Formula, names: &mut Vec<String>, bodies: &mut Vec<Option<NfBody>>| -> Result<usize> {
            let which = match f {
                Formula::Var(x) => return Ok(*x),
                Formula::True => 0,
                Formula::False => 1,
                other => return Err(Error::NotNormalForm(format!("modal operand {other:?} is not a variable"))),
            };
            if let Some(v) = aux[which] {
                return Ok(v);
            }
            let base = if which == 0 { "tt_" } else { "ff_" };
            let name = names::fresh(base, |c| names.iter().any(|n| n == c));
            names.push(name);
            bodies.push(Some(if which == 0 { NfBody::True } else { NfBody::Clauses(Vec::new()) }));
            aux[which] = Some(names.len() - 1);
            Ok(names.len() - 1)
        };
        for x in 0..decl.num_vars() {
            let body = match decl.body(x) {
                Formula::True => NfBody::True,
                f => {
                    let mut disjuncts = Vec::new();
                    flatten(f, true, &mut disjuncts);
                    let mut clauses = Vec::new();
                    for d in disjuncts {
                        if *d == Formula::False {
                            continue;
                        }
                        let mut atoms = Vec::new();
                        flatten(d, false, &mut atoms);
                        let mut diamonds = Vec::new();
                        let mut boxes = vec![None; k];
                        for atom in atoms {
                            match atom {
                                Formula::Diamond(a, g) => diamonds.push((*a, operand(g, &mut names, &mut bodies)?)),
                                Formula::Box(a, g) => {
                                    let y = operand(g, &mut names, &mut bodies)?;
                                    if boxes[*a].replace(y).is_some() {
                                        return Err(Error::NotNormalForm(format!(
                                            "two [{}] conjuncts in one disjunct of {}",
                                            decl.alphabet().symbol(*a),
                                            decl.var_name(x)
                                        )));
                                    }
                                }
                                other => {
                                    return Err(Error::NotNormalForm(format!(
                                        "conjunct {other:?} in the definition of {}",
                                        decl.var_name(x)
                                    )))
                                }
                            }
                        }
                        let boxes: Vec<usize> = boxes
                            .into_iter()
                            .enumerate()
                            .map(|(a, y)| {
                                y.ok_or_else(|| {
                                    Error::NotNormalForm(format!(
                                        "a disjunct of {} has no [{}] conjunct",
                                        decl.var_name(x),
                                        decl.alphabet().symbol(a)
                                    ))
                                })
                            })
                            .collect::<Result<_>>()?;
                        diamonds.sort_unstable();
                        diamonds.dedup();
                        clauses.push(Clause { diamonds, boxes });
                    }
                    NfBody::Clauses(clauses)
                }
            };
            bodies[x] = Some(body);
        }
        let bodies: Vec<NfBody> = bodies.into_iter().map(Option::unwrap).collect();
        let n = names.len();
        let conjuncts: Vec<Vec<usize>> = (0..n)
            .map(|x| if bodies[x].is_true() { vec![] } else { vec![x] })
            .collect();
        let implied: Vec<Vec<usize>> = (0..n)
            .map(|x| if bodies[x].is_false() { (0..n).collect() } else { conjuncts[x].clone() })
            .collect();
        let nf = NormalFormDecl {
            alphabet: decl.alphabet().clone(),
            names,
            bodies,
            initials: decl.initials().to_vec(),
            conjuncts,
            implied,
        };
        if !nf.side_condition_holds() {
            return Err(Error::NotNormalForm(
                "a diamond target does not evidently imply the box of its action".into(),
            ));
        }
        Ok(nf)
    }
}

/// Collects the operands of a nested `|` (when `or`) or `&` tree.
fn flatten<'f>(f: &'f Formula, or: bool, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::Or(l, r) if or => {
            flatten(l, or, out);
            flatten(r, or, out);
        }
        Formula::And(l, r) if !or => {
            flatten(l, or, out);
            flatten(r, or, out);
        }
        other => out.push(other),
    }
}

/// A conjunction of modal atoms over base variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct RawClause {
    diamonds: BTreeSet<(usize, usize)>,
    boxes: BTreeSet<(usize, usize)>,
}

impl RawClause {
    fn includes(&self, other: &RawClause) -> bool {
        other.diamonds.is_subset(&self.diamonds) && other.boxes.is_subset(&self.boxes)
    }

    fn merge(&self, other: &RawClause) -> RawClause {
        RawClause {
            diamonds: self.diamonds.union(&other.diamonds).copied().collect(),
            boxes: self.boxes.union(&other.boxes).copied().collect(),
        }
    }
}

/// Disjunction of raw clauses; `[∅]` is `tt`, `[]` is `ff`.
type Dnf = Vec<RawClause>;

fn is_tt(d: &Dnf) -> bool {
    d.len() == 1 && d[0] == RawClause::default()
}

/// Removes duplicates and clauses subsumed by a weaker clause.
fn absorb(mut d: Dnf) -> Dnf {
    d.sort();
    d.dedup();
    let keep: Vec<bool> = (0..d.len())
        .map(|i| !(0..d.len()).any(|j| j != i && d[i].includes(&d[j])))
        .collect();
    d.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect()
}

struct Normalizer<'a> {
    decl: &'a HmlDecl,
    limit: usize,
    base_source: Vec<Formula>,
    base_dnf: Vec<Option<Dnf>>,
    hoisted: HashMap<Formula, usize>,
    implies_memo: HashMap<(usize, usize), bool>,
    nf_index: HashMap<Vec<usize>, usize>,
    nf_sets: Vec<Vec<usize>>,
    nf_bodies: Vec<Option<NfBody>>,
    queue: VecDeque<usize>,
}

impl<'a> Normalizer<'a> {
    fn new(decl: &'a HmlDecl, limit: usize) -> Self {
        let n = decl.num_vars();
        Normalizer {
            decl,
            limit,
            base_source: (0..n).map(Formula::Var).collect(),
            base_dnf: vec![None; n],
            hoisted: HashMap::new(),
            implies_memo: HashMap::new(),
            nf_index: HashMap::new(),
            nf_sets: Vec::new(),
            nf_bodies: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Unfolds variables that occur outside any modality. A variable met again
    /// on the current unfolding path is replaced by `tt`, which leaves the
    /// greatest solution unchanged.
    fn expand(&self, f: &Formula, stack: &mut Vec<usize>) -> Formula {
        match f {
            Formula::Var(y) => {
                if stack.contains(y) {
                    Formula::True
                } else {
                    stack.push(*y);
                    let e = self.expand(self.decl.body(*y), stack);
                    stack.pop();
                    e
                }
            }
            Formula::And(l, r) => match (self.expand(l, stack), self.expand(r, stack)) {
                (Formula::False, _) | (_, Formula::False) => Formula::False,
                (Formula::True, g) | (g, Formula::True) => g,
                (l, r) => Formula::and(l, r),
            },
            Formula::Or(l, r) => match (self.expand(l, stack), self.expand(r, stack)) {
                (Formula::True, _) | (_, Formula::True) => Formula::True,
                (Formula::False, g) | (g, Formula::False) => g,
                (l, r) => Formula::or(l, r),
            },
            other => other.clone(),
        }
    }

    fn hoist(&mut self, f: &Formula) -> usize {
        if let Formula::Var(x) = f {
            return *x;
        }
        if let Some(&b) = self.hoisted.get(f) {
            return b;
        }
        let b = self.base_source.len();
        self.base_source.push(f.clone());
        self.base_dnf.push(None);
        self.hoisted.insert(f.clone(), b);
        b
    }

    fn dnf(&mut self, f: &Formula) -> Result<Dnf> {
        Ok(match f {
            Formula::True => vec![RawClause::default()],
            Formula::False => vec![],
            Formula::Var(_) => unreachable!("variables are unfolded before conversion"),
            Formula::Or(l, r) => {
                let mut d = self.dnf(l)?;
                d.extend(self.dnf(r)?);
                absorb(d)
            }
            Formula::And(l, r) => {
                let dl = self.dnf(l)?;
                let dr = self.dnf(r)?;
                if dl.len() * dr.len() > MAX_CLAUSES {
                    return Err(Error::guard("disjunctive normal form", dl.len() * dr.len(), MAX_CLAUSES));
                }
                absorb(dl.iter().flat_map(|c| dr.iter().map(|e| c.merge(e))).collect())
            }
            Formula::Diamond(a, g) => {
                if **g == Formula::False {
                    vec![]
                } else {
                    let b = self.hoist(g);
                    vec![RawClause {
                        diamonds: [(*a, b)].into(),
                        ..Default::default()
                    }]
                }
            }
            Formula::Box(a, g) => {
                if **g == Formula::True {
                    vec![RawClause::default()]
                } else {
                    let b = self.hoist(g);
                    vec![RawClause {
                        boxes: [(*a, b)].into(),
                        ..Default::default()
                    }]
                }
            }
        })
    }

    fn base_dnf(&mut self, b: usize) -> Result<Dnf> {
        if let Some(d) = &self.base_dnf[b] {
            return Ok(d.clone());
        }
        let source = self.base_source[b].clone();
        let expanded = match source {
            Formula::Var(x) => self.expand(self.decl.body(x), &mut vec![x]),
            other => self.expand(&other, &mut Vec::new()),
        };
        let d = self.dnf(&expanded)?;
        self.base_dnf[b] = Some(d.clone());
        Ok(d)
    }

    /// Sound syntactic implication between base variables: every clause of `b1`
    /// contains some clause of `b2`.
    fn implies(&mut self, b1: usize, b2: usize) -> Result<bool> {
        if b1 == b2 {
            return Ok(true);
        }
        if let Some(&v) = self.implies_memo.get(&(b1, b2)) {
            return Ok(v);
        }
        let d1 = self.base_dnf(b1)?;
        let d2 = self.base_dnf(b2)?;
        let v = d1.iter().all(|c1| d2.iter().any(|c2| c1.includes(c2)));
        self.implies_memo.insert((b1, b2), v);
        Ok(v)
    }

    /// Drops `tt` conjuncts and conjuncts implied by another one.
    fn minimize(&mut self, set: impl IntoIterator<Item = usize>) -> Result<Vec<usize>> {
        let mut items = Vec::new();
        for b in set {
            if !is_tt(&self.base_dnf(b)?) {
                items.push(b);
            }
        }
        items.sort_unstable();
        items.dedup();
        let mut keep = Vec::new();
        for &c in &items {
            let mut redundant = false;
            for &d in &items {
                if d != c && self.implies(d, c)? && (!self.implies(c, d)? || d < c) {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                keep.push(c);
            }
        }
        Ok(keep)
    }

    fn intern(&mut self, set: Vec<usize>) -> Result<usize> {
        if let Some(&x) = self.nf_index.get(&set) {
            return Ok(x);
        }
        if self.nf_sets.len() >= self.limit {
            return Err(Error::guard("normal-form variables", self.nf_sets.len() + 1, self.limit));
        }
        let x = self.nf_sets.len();
        self.nf_index.insert(set.clone(), x);
        self.nf_sets.push(set);
        self.nf_bodies.push(None);
        self.queue.push_back(x);
        Ok(x)
    }

    fn body_of(&mut self, set: &[usize]) -> Result<NfBody> {
        if set.is_empty() {
            return Ok(NfBody::True);
        }
        let mut product: Dnf = vec![RawClause::default()];
        for &b in set {
            let d = self.base_dnf(b)?;
            if product.len() * d.len() > MAX_CLAUSES {
                return Err(Error::guard("conjunction of clauses", product.len() * d.len(), MAX_CLAUSES));
            }
            product = absorb(product.iter().flat_map(|c| d.iter().map(|e| c.merge(e))).collect());
        }
        let k = self.decl.alphabet().len();
        let mut clauses = Vec::with_capacity(product.len());
        for raw in product {
            let mut box_sets: Vec<Vec<usize>> = vec![Vec::new(); k];
            for &(a, b) in &raw.boxes {
                box_sets[a].push(b);
            }
            let mut box_sets_min = Vec::with_capacity(k);
            for s in box_sets {
                box_sets_min.push(self.minimize(s)?);
            }
            let mut diamonds = Vec::with_capacity(raw.diamonds.len());
            for &(a, d) in &raw.diamonds {
                let z = self.minimize(box_sets_min[a].iter().copied().chain([d]))?;
                diamonds.push((a, self.intern(z)?));
            }
            diamonds.sort_unstable();
            diamonds.dedup();
            let mut boxes = Vec::with_capacity(k);
            for s in box_sets_min {
                boxes.push(self.intern(s)?);
            }
            clauses.push(Clause { diamonds, boxes });
        }
        clauses.sort();
        clauses.dedup();
        Ok(NfBody::Clauses(clauses))
    }

    fn run(mut self) -> Result<NormalFormDecl> {
        let mut initials = Vec::new();
        for &x in self.decl.initials() {
            let set = self.minimize([x])?;
            initials.push(self.intern(set)?);
        }
        while let Some(x) = self.queue.pop_front() {
            let set = self.nf_sets[x].clone();
            let body = self.body_of(&set)?;
            self.nf_bodies[x] = Some(body);
        }
        let names = self.assign_names()?;
        let nf_sets = std::mem::take(&mut self.nf_sets);
        let mut implied = Vec::with_capacity(nf_sets.len());
        let mentioned: BTreeSet<usize> = nf_sets.iter().flatten().copied().collect();
        for set in &nf_sets {
            let mut imp = Vec::new();
            for &b in &mentioned {
                let mut hit = false;
                for &c in set {
                    if self.implies(c, b)? {
                        hit = true;
                        break;
                    }
                }
                if hit {
                    imp.push(b);
                }
            }
            implied.push(imp);
        }
        initials.sort_unstable();
        initials.dedup();
        Ok(NormalFormDecl {
            alphabet: self.decl.alphabet().clone(),
            names,
            bodies: self.nf_bodies.into_iter().map(Option::unwrap).collect(),
            initials,
            conjuncts: nf_sets,
            implied,
        })
    }

    fn assign_names(&mut self) -> Result<Vec<String>> {
        let decl = self.decl;
        let n = self.nf_sets.len();
        let mut chosen: Vec<Option<String>> = vec![None; n];
        // A declared variable whose definition is `tt` lends its name to the empty conjunction.
        for x in 0..decl.num_vars() {
            if is_tt(&self.base_dnf(x)?) {
                if let Some(&v) = self.nf_index.get(&Vec::new()) {
                    chosen[v].get_or_insert_with(|| decl.var_name(x).to_string());
                }
            }
        }
        let mut hoisted_names = HashMap::new();
        let mut counter = 0;
        let mut base_name = |b: usize| -> String {
            if b < decl.num_vars() {
                return decl.var_name(b).to_string();
            }
            hoisted_names
                .entry(b)
                .or_insert_with(|| {
                    counter += 1;
                    format!("_{counter}")
                })
                .clone()
        };
        let mut taken: BTreeSet<String> = decl.vars().iter().cloned().collect();
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            let base = match chosen[x].take() {
                Some(name) => {
                    out.push(name);
                    continue;
                }
                None if self.nf_sets[x].is_empty() => "TT".to_string(),
                None => self.nf_sets[x].iter().map(|&b| base_name(b)).collect::<Vec<_>>().join("^"),
            };
            let singleton_declared = self.nf_sets[x].len() == 1 && self.nf_sets[x][0] < decl.num_vars();
            let name = if singleton_declared {
                base
            } else {
                names::fresh(&base, |c| taken.contains(c))
            };
            taken.insert(name.clone());
            out.push(name);
        }
        Ok(out)
    }
}

/// Brings a declaration into normal form without changing its implementations.
///
/// ```
/// use modspec::{parse, Spec, translate::{normalize, NfBody}};
/// let Spec::Hml(h) = parse("hml { alphabet a; init X; X = tt; }").unwrap() else { panic!() };
/// let nf = normalize(&h).unwrap();
/// assert_eq!(nf.body(nf.initials()[0]), &NfBody::True);
/// ```
pub fn normalize(decl: &HmlDecl) -> Result<NormalFormDecl> {
    normalize_with_limit(decl, DEFAULT_MAX_VARS)
}

/// [`normalize`] with an explicit bound on the number of normal-form variables.
pub fn normalize_with_limit(decl: &HmlDecl, limit: usize) -> Result<NormalFormDecl> {
    Normalizer::new(decl, limit).run()
}
