use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Alphabet, Dmts, Formula, HmlDecl, Kind, Lts, Moves, Naa, Spec, SupportMode};

/// Shape parameters for the random generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub alphabet: Alphabet,
    /// States (or variables) are drawn uniformly from `1..=max_states`.
    pub max_states: usize,
    /// Probability of each candidate transition.
    pub density: f64,
    /// Admissible sets per acceptance-automaton state are drawn from `1..=max_sets`.
    pub max_sets: usize,
    /// Must-sets per DMTS state are drawn from `0..=max_must`.
    pub max_must: usize,
    /// Initial states (or variables) are drawn from `1..=max_initials`.
    pub max_initials: usize,
    /// Formula depth bound.
    pub depth: usize,
}

impl GenParams {
    pub fn new(alphabet: Alphabet) -> Self {
        GenParams {
            alphabet,
            max_states: 3,
            density: 0.3,
            max_sets: 3,
            max_must: 2,
            max_initials: 2,
            depth: 3,
        }
    }

    pub fn with_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn state_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn pick_initials(r: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let count = r.gen_range(1..=max.max(1).min(n));
    let mut init: Vec<usize> = (0..count).map(|_| r.gen_range(0..n)).collect();
    init.sort_unstable();
    init.dedup();
    init
}

fn random_moves(r: &mut ChaCha8Rng, k: usize, n: usize, density: f64) -> Moves {
    let mut m = Moves::new();
    for a in 0..k {
        for t in 0..n {
            if r.gen_bool(density) {
                m.push((a, t));
            }
        }
    }
    m
}

pub fn gen_lts(p: &GenParams, seed: u64) -> Lts {
    let mut r = rng(seed);
    let n = r.gen_range(1..=p.max_states);
    let k = p.alphabet.len();
    let mut trans = Vec::new();
    for s in 0..n {
        for (a, t) in random_moves(&mut r, k, n, p.density) {
            trans.push((s, a, t));
        }
    }
    Lts::new(p.alphabet.clone(), state_names("i", n), 0, trans).expect("generated LTS is valid")
}

pub fn gen_naa(p: &GenParams, seed: u64) -> Naa {
    let mut r = rng(seed);
    let n = r.gen_range(1..=p.max_states);
    let k = p.alphabet.len();
    let tran = (0..n)
        .map(|_| {
            let sets = if r.gen_bool(0.08) { 0 } else { r.gen_range(1..=p.max_sets.max(1)) };
            (0..sets).map(|_| random_moves(&mut r, k, n, p.density)).collect()
        })
        .collect();
    let initials = pick_initials(&mut r, n, p.max_initials);
    Naa::new(p.alphabet.clone(), state_names("n", n), initials, tran).expect("generated NAA is valid")
}

pub fn gen_dmts(p: &GenParams, seed: u64) -> Dmts {
    let mut r = rng(seed);
    let n = r.gen_range(1..=p.max_states);
    let k = p.alphabet.len();
    let may: Vec<Moves> = (0..n).map(|_| random_moves(&mut r, k, n, p.density)).collect();
    let must = may
        .iter()
        .map(|m| {
            let count = r.gen_range(0..=p.max_must);
            (0..count)
                .map(|_| {
                    if m.is_empty() || r.gen_bool(0.05) {
                        return Moves::new();
                    }
                    let mut set: Moves = m.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
                    if set.is_empty() {
                        set.push(m[r.gen_range(0..m.len())]);
                    }
                    set
                })
                .collect()
        })
        .collect();
    let initials = pick_initials(&mut r, n, p.max_initials);
    Dmts::new(p.alphabet.clone(), state_names("d", n), initials, may, must, SupportMode::Strict)
        .expect("generated DMTS is valid")
}

/// A random MTS: one initial state and singleton must-sets.
pub fn gen_mts(p: &GenParams, seed: u64) -> Dmts {
    let mut r = rng(seed);
    let n = r.gen_range(1..=p.max_states);
    let k = p.alphabet.len();
    let may: Vec<Moves> = (0..n).map(|_| random_moves(&mut r, k, n, p.density)).collect();
    let must = may
        .iter()
        .map(|m| m.iter().filter(|_| r.gen_bool(0.5)).map(|&mv| vec![mv]).collect())
        .collect();
    let init = r.gen_range(0..n);
    Dmts::new(p.alphabet.clone(), state_names("m", n), vec![init], may, must, SupportMode::Strict)
        .expect("generated MTS is valid")
}

fn gen_formula(r: &mut ChaCha8Rng, depth: usize, vars: usize, k: usize) -> Formula {
    let leaf = |r: &mut ChaCha8Rng| {
        let x: f64 = r.gen();
        if x < 0.12 {
            Formula::True
        } else if x < 0.2 {
            Formula::False
        } else {
            Formula::Var(r.gen_range(0..vars))
        }
    };
    if depth == 0 {
        return leaf(r);
    }
    match r.gen_range(0..10) {
        0 | 1 => leaf(r),
        2 | 3 => Formula::and(gen_formula(r, depth - 1, vars, k), gen_formula(r, depth - 1, vars, k)),
        4 | 5 => Formula::or(gen_formula(r, depth - 1, vars, k), gen_formula(r, depth - 1, vars, k)),
        6 | 7 => Formula::diamond(r.gen_range(0..k), gen_formula(r, depth - 1, vars, k)),
        _ => Formula::boxed(r.gen_range(0..k), gen_formula(r, depth - 1, vars, k)),
    }
}

pub fn gen_hml(p: &GenParams, seed: u64) -> HmlDecl {
    let mut r = rng(seed);
    let n = r.gen_range(1..=p.max_states);
    let k = p.alphabet.len();
    let decl = (0..n).map(|_| gen_formula(&mut r, p.depth, n, k)).collect();
    let initials = pick_initials(&mut r, n, p.max_initials);
    HmlDecl::new(p.alphabet.clone(), state_names("X", n), initials, decl).expect("generated declaration is valid")
}

/// A seeded random specification of the given formalism.
///
/// ```
/// use modspec::{Alphabet, Kind, oracle::{gen_random, GenParams}};
/// let p = GenParams::new(Alphabet::new(["a", "b"]).unwrap());
/// assert_eq!(gen_random(Kind::Naa, &p, 7), gen_random(Kind::Naa, &p, 7));
/// ```
pub fn gen_random(kind: Kind, p: &GenParams, seed: u64) -> Spec {
    match kind {
        Kind::Lts => Spec::Lts(gen_lts(p, seed)),
        Kind::Mts => Spec::Mts(gen_mts(p, seed)),
        Kind::Dmts => Spec::Dmts(gen_dmts(p, seed)),
        Kind::Naa => Spec::Naa(gen_naa(p, seed)),
        Kind::Hml => Spec::Hml(gen_hml(p, seed)),
    }
}
