//! Exhaustive and seeded random generation of well-typed terms.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{type_of, ArrowType, Sig, Term};

/// Up to this size, generation enumerates every term.
pub const EXHAUSTIVE_MAX_SIZE: usize = 4;
/// Generator indices used by exhaustive enumeration and random atoms.
pub const DEFAULT_MAX_INDEX: u32 = 3;
pub const DEFAULT_SAMPLES: usize = 256;

/// Pins one end of the term being generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Src(u32),
    Tgt(u32),
}

#[derive(Clone, Debug)]
pub struct TermGen {
    pub sig: Sig,
    pub max_size: usize,
    pub want: Option<ArrowType>,
    pub seed: u64,
    pub samples: usize,
    pub max_index: u32,
}

impl TermGen {
    pub fn new(sig: Sig, max_size: usize) -> Self {
        assert!(max_size >= 1, "max_size must be positive");
        TermGen {
            sig,
            max_size,
            want: None,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            max_index: DEFAULT_MAX_INDEX,
        }
    }

    pub fn with_type(mut self, want: ArrowType) -> Self {
        self.want = Some(want);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn max_index(mut self, max_index: u32) -> Self {
        self.max_index = max_index;
        self
    }

    /// Every term of size ≤ `max_size` when that is at most
    /// [`EXHAUSTIVE_MAX_SIZE`], otherwise `samples` distinct random terms.
    pub fn generate(&self) -> Vec<Term> {
        if self.max_size <= EXHAUSTIVE_MAX_SIZE {
            // a requested type may name objects beyond the default index bound
            let max_index = match self.want {
                Some(w) => self.max_index.max(w.src.0).max(w.tgt.0),
                None => self.max_index,
            };
            let mut all = enumerate_terms(self.sig, self.max_size, max_index);
            if let Some(want) = self.want {
                all.retain(|t| type_of(self.sig, t).ok() == Some(want));
            }
            return all;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let attempts = self.samples.saturating_mul(64).max(1024);
        for _ in 0..attempts {
            if out.len() >= self.samples {
                break;
            }
            let size = rng.gen_range(1..=self.max_size);
            let end = self.want.map(|w| End::Src(w.src.0));
            let t = random_term(self.sig, &mut rng, size, end, self.max_index);
            if let Some(want) = self.want {
                if type_of(self.sig, &t).ok() != Some(want) {
                    continue;
                }
            }
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        out
    }
}

/// Convenience wrapper around [`TermGen`].
pub fn gen_terms(sig: Sig, max_size: usize, want: Option<ArrowType>, seed: u64) -> Vec<Term> {
    let mut g = TermGen::new(sig, max_size).seed(seed);
    g.want = want;
    g.generate()
}

/// All well-typed terms of size ≤ `max_size` whose generators carry indices
/// ≤ `max_index`, ordered by size and then by construction order.
pub fn enumerate_terms(sig: Sig, max_size: usize, max_index: u32) -> Vec<Term> {
    // by_size[s] holds (term, type) pairs of size exactly s
    let mut by_size: Vec<Vec<(Term, ArrowType)>> = vec![Vec::new()];
    for size in 1..=max_size {
        let mut level = Vec::new();
        if size == 1 {
            for n in 0..=max_index {
                for t in atoms(sig, n) {
                    let ty = type_of(sig, &t).expect("atoms typecheck");
                    level.push((t, ty));
                }
            }
        } else {
            for (t, ty) in &by_size[size - 1] {
                let ty = match sig {
                    Sig::SelfAdj => ty.shifted(),
                    Sig::Involutive => ty.negated(),
                };
                level.push((Term::wrap(sig, t.clone()), ty));
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                let mut by_tgt: HashMap<u32, Vec<usize>> = HashMap::new();
                for (i, (_, ty)) in by_size[right].iter().enumerate() {
                    by_tgt.entry(ty.tgt.0).or_default().push(i);
                }
                for (f, tf) in &by_size[left] {
                    if let Some(gs) = by_tgt.get(&tf.src.0) {
                        for &i in gs {
                            let (g, tg) = &by_size[right][i];
                            level.push((
                                Term::comp(f.clone(), g.clone()),
                                ArrowType {
                                    src: tg.src,
                                    tgt: tf.tgt,
                                },
                            ));
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().map(|(t, _)| t).collect()
}

fn atoms(sig: Sig, n: u32) -> [Term; 3] {
    match sig {
        Sig::SelfAdj => [Term::id(n), Term::phi(n), Term::gamma(n)],
        Sig::Involutive => [Term::id(n), Term::nr(n), Term::nl(n)],
    }
}

fn counit(sig: Sig, n: u32) -> Term {
    match sig {
        Sig::SelfAdj => Term::phi(n),
        Sig::Involutive => Term::nr(n),
    }
}

fn unit(sig: Sig, n: u32) -> Term {
    match sig {
        Sig::SelfAdj => Term::gamma(n),
        Sig::Involutive => Term::nl(n),
    }
}

/// A random well-typed term of size at most `size`, honouring `end`.
pub fn random_term<R: Rng + ?Sized>(
    sig: Sig,
    rng: &mut R,
    size: usize,
    end: Option<End>,
    max_index: u32,
) -> Term {
    if size >= 3 && rng.gen_bool(0.6) {
        let left = rng.gen_range(1..=size - 2);
        let right = size - 1 - left;
        return match end {
            Some(End::Tgt(a)) => {
                let f = random_term(sig, rng, left, Some(End::Tgt(a)), max_index);
                let src = type_of(sig, &f).expect("generated term typechecks").src.0;
                let g = random_term(sig, rng, right, Some(End::Tgt(src)), max_index);
                Term::comp(f, g)
            }
            _ => {
                let g = random_term(sig, rng, right, end, max_index);
                let tgt = type_of(sig, &g).expect("generated term typechecks").tgt.0;
                let f = random_term(sig, rng, left, Some(End::Src(tgt)), max_index);
                Term::comp(f, g)
            }
        };
    }
    if size >= 2 {
        // the operand's constraint: L keeps ends in place, ¬ swaps them
        let inner = match (sig, end) {
            (_, None) => Some(None),
            (_, Some(End::Src(0))) | (_, Some(End::Tgt(0))) => None,
            (Sig::SelfAdj, Some(End::Src(a))) => Some(Some(End::Src(a - 1))),
            (Sig::SelfAdj, Some(End::Tgt(a))) => Some(Some(End::Tgt(a - 1))),
            (Sig::Involutive, Some(End::Src(a))) => Some(Some(End::Tgt(a - 1))),
            (Sig::Involutive, Some(End::Tgt(a))) => Some(Some(End::Src(a - 1))),
        };
        if let Some(inner) = inner {
            let f = random_term(sig, rng, size - 1, inner, max_index);
            return Term::wrap(sig, f);
        }
    }
    match end {
        None => {
            let n = rng.gen_range(0..=max_index);
            atoms(sig, n)[rng.gen_range(0..3)].clone()
        }
        Some(End::Src(a)) => match rng.gen_range(0..3) {
            0 => Term::id(a),
            1 if a >= 2 => counit(sig, a - 2),
            _ => unit(sig, a),
        },
        Some(End::Tgt(a)) => match rng.gen_range(0..3) {
            0 => Term::id(a),
            1 if a >= 2 => unit(sig, a - 2),
            _ => counit(sig, a),
        },
    }
}

/// `count` random terms of size ≤ `max_size` from a fixed seed; duplicates
/// are kept so that the sequence length is exact.
pub fn random_terms(sig: Sig, max_size: usize, count: usize, seed: u64) -> Vec<Term> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_term(sig, &mut rng, size, None, DEFAULT_MAX_INDEX)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every syntax tree of the given size over the signature's
    /// constructors, typechecked afterwards.
    fn all_trees(sig: Sig, size: usize, max_index: u32) -> Vec<Term> {
        if size == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if size == 1 {
            for n in 0..=max_index {
                out.extend(atoms(sig, n));
            }
            return out;
        }
        for t in all_trees(sig, size - 1, max_index) {
            out.push(Term::wrap(sig, t));
        }
        for left in 1..size - 1 {
            for f in all_trees(sig, left, max_index) {
                for g in all_trees(sig, size - 1 - left, max_index) {
                    out.push(Term::comp(f.clone(), g));
                }
            }
        }
        out
    }

    #[test]
    fn size_one_with_type() {
        let ts = gen_terms(Sig::SelfAdj, 1, Some(ArrowType::new(2, 0)), 7);
        assert_eq!(ts, vec![Term::phi(0)]);
        let ts = gen_terms(Sig::SelfAdj, 1, Some(ArrowType::new(5, 5)), 7);
        assert_eq!(ts, vec![Term::id(5)]);
    }

    #[test]
    fn inv_endo_zero_up_to_size_two() {
        let want = ArrowType::new(0, 0);
        let oracle: Vec<Term> = (1..=2)
            .flat_map(|s| all_trees(Sig::Involutive, s, 3))
            .filter(|t| type_of(Sig::Involutive, t).ok() == Some(want))
            .collect();
        assert_eq!(oracle, vec![Term::id(0)]);
        assert_eq!(gen_terms(Sig::Involutive, 2, Some(want), 1), oracle);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for sig in [Sig::SelfAdj, Sig::Involutive] {
            let mut oracle: Vec<Term> = (1..=4)
                .flat_map(|s| all_trees(sig, s, 3))
                .filter(|t| type_of(sig, t).is_ok())
                .collect();
            let mut got = enumerate_terms(sig, 4, 3);
            oracle.sort();
            got.sort();
            assert_eq!(got, oracle);
        }
    }

    #[test]
    fn random_generation_is_seeded_and_typed() {
        for sig in [Sig::SelfAdj, Sig::Involutive] {
            let a = gen_terms(sig, 9, None, 42);
            let b = gen_terms(sig, 9, None, 42);
            assert_eq!(a, b);
            assert_eq!(a.len(), DEFAULT_SAMPLES);
            assert!(a.iter().all(|t| type_of(sig, t).is_ok() && t.size() <= 9));
            assert_ne!(a, gen_terms(sig, 9, None, 43));
        }
    }

    #[test]
    fn random_generation_respects_type() {
        let want = ArrowType::new(3, 1);
        for sig in [Sig::SelfAdj, Sig::Involutive] {
            let ts = TermGen::new(sig, 7)
                .with_type(want)
                .seed(3)
                .samples(40)
                .generate();
            assert!(!ts.is_empty());
            assert!(ts.iter().all(|t| type_of(sig, t).unwrap() == want));
        }
    }

    #[test]
    fn constrained_random_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for sig in [Sig::SelfAdj, Sig::Involutive] {
            for a in 0..6 {
                for size in 1..8 {
                    let t = random_term(sig, &mut rng, size, Some(End::Src(a)), 3);
                    assert_eq!(type_of(sig, &t).unwrap().src.0, a);
                    let t = random_term(sig, &mut rng, size, Some(End::Tgt(a)), 3);
                    assert_eq!(type_of(sig, &t).unwrap().tgt.0, a);
                }
            }
        }
    }
}
