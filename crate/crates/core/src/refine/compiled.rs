use crate::error::Result;
use crate::model::{Alphabet, Dmts, Lts};

/// A DMTS prepared for many membership queries.
///
/// May-targets and must-sets are stored as per-action bitsets over the DMTS
/// states, and the candidate relation as one such bitset per implementation
/// state, so each local check is a few word operations however large the
/// specification is.
///
/// ```
/// use modspec::{parse, Spec, refine::{implements_dmts, CompiledDmts}};
/// let Spec::Mts(d) = parse("mts { alphabet a; init s; may s a s; must s {(a, s)}; }").unwrap() else { panic!() };
/// let Spec::Lts(l) = parse("lts { alphabet a; init p; may p a p; }").unwrap() else { panic!() };
/// let compiled = CompiledDmts::new(&d);
/// assert_eq!(compiled.implemented_by(&l).unwrap(), implements_dmts(&l, &d).unwrap());
/// ```
#[derive(Clone, Debug)]
pub struct CompiledDmts {
    alphabet: Alphabet,
    /// Words per state bitset.
    words: usize,
    initials: Vec<u64>,
    /// `may[(s * k + a) * words..]`: the `a`-targets of `s`.
    may: Vec<u64>,
    /// Per state, its must-sets back to back, each `k * words` long.
    must: Vec<Vec<u64>>,
    full: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn meets(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).any(|(a, b)| a & b != 0)
}

impl CompiledDmts {
    pub fn new(spec: &Dmts) -> Self {
        let n = spec.num_states();
        let k = spec.alphabet().len();
        let words = n.div_ceil(64).max(1);
        let mut may = vec![0; n * k * words];
        let mut must = Vec::with_capacity(n);
        for s in 0..n {
            for &(a, t) in spec.may(s) {
                set_bit(&mut may[(s * k + a) * words..][..words], t);
            }
            let mut sets = vec![0; spec.must(s).len() * k * words];
            for (i, target) in spec.must(s).iter().enumerate() {
                for &(a, t) in target {
                    set_bit(&mut sets[(i * k + a) * words..][..words], t);
                }
            }
            must.push(sets);
        }
        let mut initials = vec![0; words];
        spec.initials().iter().for_each(|&s| set_bit(&mut initials, s));
        let mut full = vec![0; words];
        (0..n).for_each(|s| set_bit(&mut full, s));
        CompiledDmts {
            alphabet: spec.alphabet().clone(),
            words,
            initials,
            may,
            must,
            full,
        }
    }

    /// Whether `imp` implements the compiled DMTS; agrees with [`super::implements_dmts`].
    pub fn implemented_by(&self, imp: &Lts) -> Result<bool> {
        imp.alphabet().ensure_same(&self.alphabet)?;
        let (w, k) = (self.words, self.alphabet.len());
        let n1 = imp.num_states();
        let mut rel: Vec<u64> = self.full.repeat(n1);
        // Union of the related sets of all `a`-successors, per action.
        let mut reach = vec![0u64; k * w];
        let init = imp.initial();
        let mut changed = true;
        while changed {
            changed = false;
            for s1 in 0..n1 {
                reach.fill(0);
                for &(a, t1) in imp.successors(s1) {
                    for (r, x) in reach[a * w..][..w].iter_mut().zip(&rel[t1 * w..][..w]) {
                        *r |= x;
                    }
                }
                for word in 0..w {
                    let mut bits = rel[s1 * w + word];
                    while bits != 0 {
                        let s2 = word * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        if !self.local(imp, s1, s2, &rel, &reach) {
                            rel[s1 * w + word] &= !(1 << (s2 % 64));
                            changed = true;
                        }
                    }
                }
                if !meets(&rel[init * w..][..w], &self.initials) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn local(&self, imp: &Lts, s1: usize, s2: usize, rel: &[u64], reach: &[u64]) -> bool {
        let (w, k) = (self.words, self.alphabet.len());
        imp.successors(s1)
            .iter()
            .all(|&(a, t1)| meets(&self.may[(s2 * k + a) * w..][..w], &rel[t1 * w..][..w]))
            && self.must[s2].chunks(k * w).all(|set| meets(set, reach))
    }
}
