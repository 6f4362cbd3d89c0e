use crate::error::{Error, Result};
use crate::model::{Alphabet, Lts, Moves};

/// Size bound for exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumBound {
    pub max_states: usize,
    pub alphabet: Alphabet,
    /// Lifts the default guards; enumeration cost grows as `2^(|Σ|·n²)`.
    pub allow_large: bool,
}

/// Largest `max_states` accepted without `allow_large`.
pub const DEFAULT_MAX_STATES: usize = 4;
/// Largest number of adjacency bits (`|Σ|·n²`) accepted without `allow_large`.
pub const DEFAULT_MAX_BITS: usize = 24;

impl EnumBound {
    pub fn new(max_states: usize, alphabet: Alphabet) -> Self {
        EnumBound {
            max_states,
            alphabet,
            allow_large: false,
        }
    }

    pub fn allowing_large(mut self) -> Self {
        self.allow_large = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_states == 0 {
            return Err(Error::BoundTooLarge("max_states must be at least 1".into()));
        }
        let bits = self.alphabet.len() * self.max_states * self.max_states;
        if bits > 63 {
            return Err(Error::BoundTooLarge(format!(
                "{bits} adjacency bits exceed the 63-bit encoding"
            )));
        }
        if !self.allow_large {
            if self.max_states > DEFAULT_MAX_STATES {
                return Err(Error::BoundTooLarge(format!(
                    "max_states {} exceeds {DEFAULT_MAX_STATES}",
                    self.max_states
                )));
            }
            if bits > DEFAULT_MAX_BITS {
                return Err(Error::BoundTooLarge(format!(
                    "{bits} adjacency bits exceed {DEFAULT_MAX_BITS}"
                )));
            }
        }
        Ok(())
    }
}

/// An enumerated system: its state count and adjacency code.
///
/// Bit `(s·|Σ| + a)·n + t` of `code` is the transition `s -a-> t`; state 0 is initial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    pub states: usize,
    pub bits: u64,
}

impl Code {
    pub fn to_lts(self, alphabet: &Alphabet) -> Lts {
        let (n, k) = (self.states, alphabet.len());
        let width = n.to_string().len();
        let names = (0..n).map(|i| format!("s{i:0width$}")).collect();
        let succ: Vec<Moves> = (0..n)
            .map(|s| {
                let mut m = Moves::new();
                for a in 0..k {
                    for t in 0..n {
                        if self.bits >> ((s * k + a) * n + t) & 1 == 1 {
                            m.push((a, t));
                        }
                    }
                }
                m
            })
            .collect();
        Lts::from_sorted_parts(alphabet.clone(), names, 0, succ)
    }
}

fn all_reachable(bits: u64, n: usize, k: usize) -> bool {
    let mut seen: u32 = 1;
    let mut stack = vec![0usize];
    while let Some(s) = stack.pop() {
        for a in 0..k {
            for t in 0..n {
                if bits >> ((s * k + a) * n + t) & 1 == 1 && seen >> t & 1 == 0 {
                    seen |= 1 << t;
                    stack.push(t);
                }
            }
        }
    }
    seen.count_ones() as usize == n
}

fn permute_code(bits: u64, n: usize, k: usize, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let t = i % n;
        let sa = i / n;
        let (s, a) = (sa / k, sa % k);
        out |= 1 << ((perm[s] * k + a) * n + perm[t]);
    }
    out
}

/// Permutations of `0..n` fixing 0.
fn rooted_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// Lazily yields one code per isomorphism class of LTS whose states are all
/// reachable, by increasing state count and then increasing code.
#[derive(Debug)]
pub struct Codes {
    max_states: usize,
    k: usize,
    n: usize,
    next: u64,
    end: u64,
    perms: Vec<Vec<usize>>,
}

impl Codes {
    fn start_size(&mut self, n: usize) {
        self.n = n;
        self.next = 0;
        self.end = 1u64 << (self.k * n * n);
        self.perms = rooted_permutations(n);
    }
}

impl Iterator for Codes {
    type Item = Code;

    fn next(&mut self) -> Option<Code> {
        loop {
            if self.next == self.end {
                if self.n == self.max_states {
                    return None;
                }
                let n = self.n + 1;
                self.start_size(n);
            }
            let bits = self.next;
            self.next += 1;
            let (n, k) = (self.n, self.k);
            if !all_reachable(bits, n, k) {
                continue;
            }
            if self.perms.iter().skip(1).any(|p| permute_code(bits, n, k, p) < bits) {
                continue;
            }
            return Some(Code { states: n, bits });
        }
    }
}

/// Codes of all canonical systems within the bound.
pub fn enum_codes(bound: &EnumBound) -> Result<Codes> {
    bound.validate()?;
    let mut c = Codes {
        max_states: bound.max_states,
        k: bound.alphabet.len(),
        n: 1,
        next: 0,
        end: 0,
        perms: Vec::new(),
    };
    c.start_size(1);
    Ok(c)
}

/// Every LTS with at most `max_states` states, one per renaming class, with
/// all states reachable from the initial one.
///
/// ```
/// use modspec::{Alphabet, oracle::{enum_lts, EnumBound}};
/// let ab = Alphabet::new(["a", "b"]).unwrap();
/// assert_eq!(enum_lts(&EnumBound::new(1, ab)).unwrap().count(), 4);
/// ```
pub fn enum_lts(bound: &EnumBound) -> Result<impl Iterator<Item = Lts>> {
    let alphabet = bound.alphabet.clone();
    Ok(enum_codes(bound)?.map(move |c| c.to_lts(&alphabet)))
}

/// The canonical code of the reachable part of `lts`, if it has at most 8 reachable states.
pub fn canonical_code(lts: &Lts) -> Option<Code> {
    let k = lts.alphabet().len();
    let mut order = vec![lts.initial()];
    let mut pos = vec![usize::MAX; lts.num_states()];
    pos[lts.initial()] = 0;
    let mut i = 0;
    while i < order.len() {
        for &(_, t) in lts.successors(order[i]) {
            if pos[t] == usize::MAX {
                pos[t] = order.len();
                order.push(t);
            }
        }
        i += 1;
    }
    let n = order.len();
    if n > 8 || k * n * n > 63 {
        return None;
    }
    let mut bits = 0u64;
    for (s_new, &s) in order.iter().enumerate() {
        for &(a, t) in lts.successors(s) {
            bits |= 1 << ((s_new * k + a) * n + pos[t]);
        }
    }
    let best = rooted_permutations(n)
        .iter()
        .map(|p| permute_code(bits, n, k, p))
        .min()
        .unwrap();
    Some(Code { states: n, bits: best })
}
