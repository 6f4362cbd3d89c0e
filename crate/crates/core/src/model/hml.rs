use super::{canonical_order, permute, Alphabet};
use crate::error::{Error, Result};

/// A formula of Hennessy-Milner logic with variables.
///
/// Variables are indices into the enclosing [`HmlDecl`]; actions are indices into its alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Var(usize),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `<a>φ`: some `a`-successor satisfies `φ`.
    Diamond(usize, Box<Formula>),
    /// `[a]φ`: every `a`-successor satisfies `φ`.
    Box(usize, Box<Formula>),
}

impl Formula {
    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn diamond(a: usize, f: Formula) -> Formula {
        Formula::Diamond(a, Box::new(f))
    }

    pub fn boxed(a: usize, f: Formula) -> Formula {
        Formula::Box(a, Box::new(f))
    }

    /// Left-nested conjunction; the empty conjunction is `tt`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; the empty disjunction is `ff`.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    /// Calls `f` on every variable occurrence.
    pub fn for_each_var(&self, f: &mut impl FnMut(usize)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Var(x) => f(*x),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.for_each_var(f);
                r.for_each_var(f);
            }
            Formula::Diamond(_, g) | Formula::Box(_, g) => g.for_each_var(f),
        }
    }

    /// Number of nested modal or boolean operators on the longest path.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Var(_) => 0,
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Diamond(_, g) | Formula::Box(_, g) => 1 + g.depth(),
        }
    }

    pub(crate) fn map_vars(&self, map: &impl Fn(usize) -> usize) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Var(x) => Formula::Var(map(*x)),
            Formula::And(l, r) => Formula::and(l.map_vars(map), r.map_vars(map)),
            Formula::Or(l, r) => Formula::or(l.map_vars(map), r.map_vars(map)),
            Formula::Diamond(a, g) => Formula::diamond(*a, g.map_vars(map)),
            Formula::Box(a, g) => Formula::boxed(*a, g.map_vars(map)),
        }
    }

    fn check(&self, vars: usize, actions: usize) -> Result<()> {
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Var(x) if *x < vars => Ok(()),
            Formula::Var(x) => Err(Error::UnboundVariable(format!("variable index {x}"))),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.check(vars, actions)?;
                r.check(vars, actions)
            }
            Formula::Diamond(a, g) | Formula::Box(a, g) => {
                if *a >= actions {
                    return Err(Error::UnknownAction(format!("action index {a}")));
                }
                g.check(vars, actions)
            }
        }
    }
}

/// An initialised declaration: variables, their defining formulae and the initial variables.
///
/// The meaning of each variable is the greatest solution of its defining equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HmlDecl {
    alphabet: Alphabet,
    vars: Vec<String>,
    initials: Vec<usize>,
    decl: Vec<Formula>,
}

impl HmlDecl {
    pub fn new(alphabet: Alphabet, vars: Vec<String>, initials: Vec<usize>, decl: Vec<Formula>) -> Result<Self> {
        let n = vars.len();
        if decl.len() != n {
            return Err(Error::InvariantViolation(format!(
                "{n} variables but {} definitions",
                decl.len()
            )));
        }
        for &i in &initials {
            if i >= n {
                return Err(Error::UnboundVariable(format!("initial index {i}")));
            }
        }
        for f in &decl {
            f.check(n, alphabet.len())?;
        }
        let (vars, map) = canonical_order(vars)?;
        let decl = permute(decl, &map)
            .iter()
            .map(|f| f.map_vars(&|x| map[x]))
            .collect();
        let mut initials: Vec<usize> = initials.iter().map(|&i| map[i]).collect();
        initials.sort_unstable();
        initials.dedup();
        Ok(HmlDecl {
            alphabet,
            vars,
            initials,
            decl,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, x: usize) -> &str {
        &self.vars[x]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn body(&self, x: usize) -> &Formula {
        &self.decl[x]
    }

    pub fn bodies(&self) -> &[Formula] {
        &self.decl
    }

    pub fn with_initials(&self, initials: &[usize]) -> Result<HmlDecl> {
        HmlDecl::new(self.alphabet.clone(), self.vars.clone(), initials.to_vec(), self.decl.clone())
    }
}
