use crate::error::Result;
use crate::model::{Formula, HmlDecl, Lts};

/// A solution candidate: for every variable the set of LTS states satisfying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    sets: Vec<Vec<bool>>,
}

impl Assignment {
    pub fn contains(&self, var: usize, state: usize) -> bool {
        self.sets[var][state]
    }

    /// States assigned to `var`, in index order.
    pub fn states_of(&self, var: usize) -> Vec<usize> {
        self.sets[var]
            .iter()
            .enumerate()
            .filter_map(|(s, &b)| b.then_some(s))
            .collect()
    }
}

/// Result of model checking an LTS against a declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    /// Some initial variable holds in the initial state.
    pub holds: bool,
    /// The greatest fixed point of the declaration over the LTS.
    pub assignment: Assignment,
}

/// Per-action successor sets of an LTS with at most 64 states, as bitmasks.
struct Steps {
    n: usize,
    succ: Vec<u64>,
}

impl Steps {
    fn new(lts: &Lts) -> Self {
        let n = lts.num_states();
        let mut succ = vec![0u64; lts.alphabet().len() * n];
        for (s, a, t) in lts.transitions() {
            succ[a * n + s] |= 1 << t;
        }
        Steps { n, succ }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn eval(&self, f: &Formula, sigma: &[u64]) -> u64 {
        match f {
            Formula::True => self.full(),
            Formula::False => 0,
            Formula::Var(x) => sigma[*x],
            Formula::And(l, r) => {
                let left = self.eval(l, sigma);
                if left == 0 {
                    0
                } else {
                    left & self.eval(r, sigma)
                }
            }
            Formula::Or(l, r) => self.eval(l, sigma) | self.eval(r, sigma),
            Formula::Diamond(a, g) => {
                let inner = self.eval(g, sigma);
                let row = &self.succ[a * self.n..(a + 1) * self.n];
                (0..self.n).filter(|&s| row[s] & inner != 0).fold(0, |acc, s| acc | 1 << s)
            }
            Formula::Box(a, g) => {
                let inner = self.eval(g, sigma);
                let row = &self.succ[a * self.n..(a + 1) * self.n];
                (0..self.n).filter(|&s| row[s] & !inner == 0).fold(0, |acc, s| acc | 1 << s)
            }
        }
    }

    fn solve(&self, decl: &HmlDecl) -> Vec<u64> {
        let mut sigma = vec![self.full(); decl.num_vars()];
        let mut next = sigma.clone();
        loop {
            for (x, f) in decl.bodies().iter().enumerate() {
                next[x] = self.eval(f, &sigma);
            }
            if next == sigma {
                return sigma;
            }
            std::mem::swap(&mut sigma, &mut next);
        }
    }
}

fn eval_large(f: &Formula, lts: &Lts, sigma: &[Vec<bool>]) -> Vec<bool> {
    let n = lts.num_states();
    match f {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Var(x) => sigma[*x].clone(),
        Formula::And(l, r) => {
            let right = eval_large(r, lts, sigma);
            eval_large(l, lts, sigma).iter().zip(right).map(|(a, b)| *a && b).collect()
        }
        Formula::Or(l, r) => {
            let right = eval_large(r, lts, sigma);
            eval_large(l, lts, sigma).iter().zip(right).map(|(a, b)| *a || b).collect()
        }
        Formula::Diamond(a, g) => {
            let inner = eval_large(g, lts, sigma);
            (0..n)
                .map(|s| lts.successors(s).iter().any(|&(b, t)| b == *a && inner[t]))
                .collect()
        }
        Formula::Box(a, g) => {
            let inner = eval_large(g, lts, sigma);
            (0..n)
                .map(|s| lts.successors(s).iter().all(|&(b, t)| b != *a || inner[t]))
                .collect()
        }
    }
}

fn solve_large(lts: &Lts, decl: &HmlDecl) -> Vec<Vec<bool>> {
    let mut sigma = vec![vec![true; lts.num_states()]; decl.num_vars()];
    loop {
        let next: Vec<Vec<bool>> = decl.bodies().iter().map(|f| eval_large(f, lts, &sigma)).collect();
        if next == sigma {
            return sigma;
        }
        sigma = next;
    }
}

/// Model checks `lts` against `decl` by iterating the declaration downward from
/// the full assignment until it stabilises.
///
/// ```
/// use modspec::{parse, Spec, Alphabet, Lts, refine::hml_check};
/// let Spec::Hml(h) = parse("hml { alphabet a,b; init X; X = <a>tt & [a]X & [b]X; }").unwrap() else { panic!() };
/// let loop_a = Lts::from_triples(Alphabet::new(["a", "b"]).unwrap(), "i", &[("i", "a", "i")]).unwrap();
/// assert!(hml_check(&loop_a, &h).unwrap().holds);
/// ```
pub fn hml_check(lts: &Lts, decl: &HmlDecl) -> Result<CheckOutcome> {
    lts.alphabet().ensure_same(decl.alphabet())?;
    let n = lts.num_states();
    let sets: Vec<Vec<bool>> = if n <= 64 {
        Steps::new(lts)
            .solve(decl)
            .into_iter()
            .map(|b| (0..n).map(|s| b >> s & 1 == 1).collect())
            .collect()
    } else {
        solve_large(lts, decl)
    };
    let holds = decl.initials().iter().any(|&x| sets[x][lts.initial()]);
    Ok(CheckOutcome {
        holds,
        assignment: Assignment { sets },
    })
}
