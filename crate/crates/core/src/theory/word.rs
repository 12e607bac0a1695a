//! Terms modulo associativity, unit and functor laws.
//!
//! Pushing `L` (or `¬`) down to the generators and flattening composition
//! turns every term into a *word*: a list of letters `Wrap^k(X_n)` with `X`
//! the counit (`φ`/`n→`) or unit (`γ`/`n←`). Two terms have the same word
//! iff the structural schemas alone prove them equal. The remaining schemas
//! act on words as segment replacements; those are the search edges.

use crate::term::{ArrowType, Sig, Term};

use super::schema::{Dir, Rule, RuleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Kind {
    /// `φ` or `n→`: `n+2 -> n`.
    Counit,
    /// `γ` or `n←`: `n -> n+2`.
    Unit,
}

/// `Wrap^depth` applied to the generator of `kind` at `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub depth: u32,
    pub kind: Kind,
    pub base: u32,
}

impl Letter {
    pub fn new(depth: u32, kind: Kind, base: u32) -> Self {
        Letter { depth, kind, base }
    }

    pub fn ty(self, sig: Sig) -> ArrowType {
        let (s, t) = match self.kind {
            Kind::Counit => (self.base + 2, self.base),
            Kind::Unit => (self.base, self.base + 2),
        };
        let k = self.depth;
        if sig == Sig::Involutive && k % 2 == 1 {
            ArrowType::new(t + k, s + k)
        } else {
            ArrowType::new(s + k, t + k)
        }
    }

    fn deeper(self, by: u32) -> Letter {
        Letter {
            depth: self.depth + by,
            ..self
        }
    }

    pub fn tree(self, sig: Sig) -> Term {
        let atom = match (sig, self.kind) {
            (Sig::SelfAdj, Kind::Counit) => Term::phi(self.base),
            (Sig::SelfAdj, Kind::Unit) => Term::gamma(self.base),
            (Sig::Involutive, Kind::Counit) => Term::nr(self.base),
            (Sig::Involutive, Kind::Unit) => Term::nl(self.base),
        };
        Term::wrap_n(sig, atom, self.depth)
    }
}

/// A composite `w[0] ∘ w[1] ∘ … ∘ w[n-1]` with source `src`; the source is
/// kept so that the empty word still denotes a definite identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub src: u32,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(src: u32) -> Self {
        Word {
            src,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tgt(&self, sig: Sig) -> u32 {
        self.letters.first().map_or(self.src, |l| l.ty(sig).tgt.0)
    }

    /// The object between `letters[i-1]` and `letters[i]`; gap `len()` is the
    /// source and gap 0 the target.
    pub fn gap_obj(&self, sig: Sig, i: usize) -> u32 {
        match self.letters.get(i) {
            Some(l) => l.ty(sig).tgt.0,
            None => self.src,
        }
    }

    /// The word of `Wrap(w)`.
    pub fn wrapped(&self, sig: Sig) -> Word {
        wrap_letters(sig, &self.letters, 1, self.src_after_wrap(sig))
    }

    fn src_after_wrap(&self, sig: Sig) -> u32 {
        match sig {
            Sig::SelfAdj => self.src + 1,
            Sig::Involutive => self.tgt(sig) + 1,
        }
    }

    /// 128-bit fingerprint used by the search's visited sets.
    pub fn fingerprint(&self) -> u128 {
        fingerprint_parts(self.src, [&self.letters, &[], &[]])
    }
}

/// Fingerprint of the word `src; a ++ b ++ c`, computed without building it.
/// Two independent multiply-rotate lanes over packed letters.
pub fn fingerprint_parts(src: u32, parts: [&[Letter]; 3]) -> u128 {
    const K1: u64 = 0x9E37_79B9_7F4A_7C15;
    const K2: u64 = 0xC2B2_AE3D_27D4_EB4F;
    let mut h1 = (src as u64).wrapping_mul(K2) ^ 0x2545_F491_4F6C_DD1D;
    let mut h2 = (src as u64).wrapping_mul(K1) ^ 0x94D0_49BB_1331_11EB;
    let mut n = 0u64;
    for l in parts.into_iter().flatten() {
        let x = ((l.depth as u64) << 40) ^ ((l.kind as u64) << 33) ^ (l.base as u64) ^ (n << 48);
        h1 = (h1 ^ x).wrapping_mul(K1).rotate_left(27);
        h2 = (h2.wrapping_add(x)).wrapping_mul(K2).rotate_left(31) ^ (h2 >> 29);
        n += 1;
    }
    h1 = (h1 ^ n).wrapping_mul(K2);
    h2 = (h2 ^ (n << 7)).wrapping_mul(K1);
    h1 ^= h1 >> 32;
    h2 ^= h2 >> 29;
    ((h1 as u128) << 64) | h2 as u128
}

fn wrap_letters(sig: Sig, letters: &[Letter], k: u32, src: u32) -> Word {
    let mut out: Vec<Letter> = letters.iter().map(|l| l.deeper(k)).collect();
    if sig == Sig::Involutive && k % 2 == 1 {
        out.reverse();
    }
    Word { src, letters: out }
}

/// `Wrap^k` of a list of letters, as letters.
fn wrap_seg(sig: Sig, seg: &[Letter], k: u32) -> Vec<Letter> {
    wrap_letters(sig, seg, k, 0).letters
}

/// Inverse of [`wrap_seg`]; `None` if some letter is shallower than `k`.
fn unwrap_seg(sig: Sig, seg: &[Letter], k: u32) -> Option<Vec<Letter>> {
    let mut out = Vec::with_capacity(seg.len());
    for l in seg {
        out.push(Letter {
            depth: l.depth.checked_sub(k)?,
            ..*l
        });
    }
    if sig == Sig::Involutive && k % 2 == 1 {
        out.reverse();
    }
    Some(out)
}

fn seg_type(sig: Sig, seg: &[Letter]) -> ArrowType {
    let first = seg.first().expect("non-empty segment").ty(sig);
    let last = seg.last().expect("non-empty segment").ty(sig);
    ArrowType {
        src: last.src,
        tgt: first.tgt,
    }
}

/// The word of a well-typed term.
pub fn word_of(sig: Sig, t: &Term) -> Word {
    match t {
        Term::Id(a) => Word::empty(a.0),
        Term::Phi(a) | Term::Nr(a) => Word {
            src: a.0 + 2,
            letters: vec![Letter::new(0, Kind::Counit, a.0)],
        },
        Term::Gamma(a) | Term::Nl(a) => Word {
            src: a.0,
            letters: vec![Letter::new(0, Kind::Unit, a.0)],
        },
        Term::Comp(f, g) => {
            let mut w = word_of(sig, f);
            let wg = word_of(sig, g);
            w.letters.extend(wg.letters);
            w.src = wg.src;
            w
        }
        Term::Ell(f) | Term::Neg(f) => word_of(sig, f).wrapped(sig),
    }
}

/// The canonical tree of a word: a right-nested composition of letter trees,
/// or an identity for the empty word.
pub fn canonical_tree(sig: Sig, w: &Word) -> Term {
    canonical_of(sig, &w.letters, w.src)
}

fn canonical_of(sig: Sig, letters: &[Letter], src: u32) -> Term {
    match letters.split_last() {
        None => Term::id(src),
        Some((last, rest)) => rest
            .iter()
            .rev()
            .fold(last.tree(sig), |acc, l| Term::comp(l.tree(sig), acc)),
    }
}

/// One search edge: a rule instance applied inside `depth` wrappers to the
/// segment `[pos, pos + len)` of a word. `obj` is the rule's `A` for
/// insertions, where the segment is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub rule: RuleId,
    pub pos: u32,
    pub len: u32,
    pub depth: u32,
    pub obj: u32,
}

/// `(depth, kind, A offset)` of one template letter.
type Slot = (u32, Kind, u32);

/// A fixed template: both sides are letter lists at depth 0 in terms of `A`,
/// given as `(depth, kind, A offset)`; `id_offset` is the identity object
/// `A + id_offset` of a side that is empty.
struct Template {
    rule: Rule,
    lhs: &'static [Slot],
    rhs: &'static [Slot],
    id_offset: u32,
}

use Kind::{Counit as C, Unit as U};

const SELF_TEMPLATES: &[Template] = &[
    Template {
        rule: Rule::PhiGammaL1,
        lhs: &[(0, C, 1), (1, U, 0)],
        rhs: &[],
        id_offset: 1,
    },
    Template {
        rule: Rule::PhiGammaL2,
        lhs: &[(1, C, 0), (0, U, 1)],
        rhs: &[],
        id_offset: 1,
    },
    Template {
        rule: Rule::PhiGammaK,
        lhs: &[(1, C, 0), (1, U, 0)],
        rhs: &[(0, C, 1), (0, U, 1)],
        id_offset: 0,
    },
    Template {
        rule: Rule::PhiGammaJ,
        lhs: &[(0, C, 0), (0, U, 0)],
        rhs: &[],
        id_offset: 0,
    },
    Template {
        rule: Rule::GammaPhi,
        lhs: &[(0, U, 0), (0, C, 0)],
        rhs: &[],
        id_offset: 2,
    },
];

const INV_TEMPLATES: &[Template] = &[
    Template {
        rule: Rule::NrTriang,
        lhs: &[(0, C, 1), (1, C, 0)],
        rhs: &[],
        id_offset: 1,
    },
    Template {
        rule: Rule::NlTriang,
        lhs: &[(1, U, 0), (0, U, 1)],
        rhs: &[],
        id_offset: 1,
    },
    Template {
        rule: Rule::NrNlK,
        lhs: &[(1, U, 0), (1, C, 0)],
        rhs: &[(0, C, 1), (0, U, 1)],
        id_offset: 0,
    },
    Template {
        rule: Rule::NrNlJ,
        lhs: &[(0, C, 0), (0, U, 0)],
        rhs: &[],
        id_offset: 0,
    },
    Template {
        rule: Rule::NlNr,
        lhs: &[(0, U, 0), (0, C, 0)],
        rhs: &[],
        id_offset: 2,
    },
];

fn templates(sig: Sig) -> &'static [Template] {
    match sig {
        Sig::SelfAdj => SELF_TEMPLATES,
        Sig::Involutive => INV_TEMPLATES,
    }
}

impl Template {
    fn side(&self, dir: Dir) -> (&'static [Slot], &'static [Slot]) {
        match dir {
            Dir::L2R => (self.lhs, self.rhs),
            Dir::R2L => (self.rhs, self.lhs),
        }
    }
}

fn instantiate(side: &[Slot], a: u32) -> Vec<Letter> {
    side.iter()
        .map(|&(d, k, off)| Letter::new(d, k, a + off))
        .collect()
}

/// Binds `A` by matching a fixed template side against a segment.
fn match_template(side: &[Slot], seg: &[Letter]) -> Option<u32> {
    if side.len() != seg.len() || seg.is_empty() {
        return None;
    }
    let a = seg[0].base.checked_sub(side[0].2)?;
    (instantiate(side, a) == seg).then_some(a)
}

/// The counit and unit naturality schemas of the signature.
fn nat_rules(sig: Sig) -> (Rule, Rule) {
    match sig {
        Sig::SelfAdj => (Rule::PhiNat, Rule::GammaNat),
        Sig::Involutive => (Rule::NrNat, Rule::NlNat),
    }
}

/// Applies a naturality schema to an unwrapped segment.
///
/// counit: `[F.., C_a] <-> [C_b, shift2 F..]`; unit: `[shift2 F.., U_a] <-> [U_b, F..]`.
fn apply_nat(sig: Sig, kind: Kind, dir: Dir, seg: &[Letter]) -> Option<Vec<Letter>> {
    if seg.len() < 2 {
        return None;
    }
    let shift = |s: &[Letter]| s.iter().map(|l| l.deeper(2)).collect::<Vec<_>>();
    let unshift = |s: &[Letter]| unwrap_seg(Sig::SelfAdj, s, 2);
    let head = seg[0];
    let (init, last) = seg.split_at(seg.len() - 1);
    let last = last[0];
    let tail = &seg[1..];
    match (kind, dir) {
        (Kind::Counit, Dir::L2R) => {
            if last != Letter::new(0, Kind::Counit, last.base) {
                return None;
            }
            let b = seg_type(sig, init).tgt.0;
            let mut out = vec![Letter::new(0, Kind::Counit, b)];
            out.extend(shift(init));
            Some(out)
        }
        (Kind::Counit, Dir::R2L) => {
            if head != Letter::new(0, Kind::Counit, head.base) {
                return None;
            }
            let f = unshift(tail)?;
            let a = seg_type(sig, &f).src.0;
            let mut out = f;
            out.push(Letter::new(0, Kind::Counit, a));
            Some(out)
        }
        (Kind::Unit, Dir::L2R) => {
            if last != Letter::new(0, Kind::Unit, last.base) {
                return None;
            }
            let f = unshift(init)?;
            let b = seg_type(sig, &f).tgt.0;
            let mut out = vec![Letter::new(0, Kind::Unit, b)];
            out.extend(f);
            Some(out)
        }
        (Kind::Unit, Dir::R2L) => {
            if head != Letter::new(0, Kind::Unit, head.base) {
                return None;
            }
            let a = seg_type(sig, tail).src.0;
            let mut out = shift(tail);
            out.push(Letter::new(0, Kind::Unit, a));
            Some(out)
        }
    }
}

/// The unwrapped replacement an edge makes, as `(source, target)` letter
/// lists at depth 0, together with the rule's `A`.
pub struct EdgeInstance {
    pub source: Vec<Letter>,
    pub target: Vec<Letter>,
}

/// Computes the unwrapped source and target segments of `e` on `w`.
pub fn edge_instance(sig: Sig, w: &Word, e: &Edge) -> Option<EdgeInstance> {
    let (pos, len) = (e.pos as usize, e.len as usize);
    let seg = w.letters.get(pos..pos + len)?;
    let source = unwrap_seg(sig, seg, e.depth)?;
    let (cn, un) = nat_rules(sig);
    let target = if e.rule.rule == cn {
        apply_nat(sig, Kind::Counit, e.rule.dir, &source)?
    } else if e.rule.rule == un {
        apply_nat(sig, Kind::Unit, e.rule.dir, &source)?
    } else {
        let t = templates(sig).iter().find(|t| t.rule == e.rule.rule)?;
        let (src_side, tgt_side) = t.side(e.rule.dir);
        if src_side.is_empty() {
            if len != 0 || w.gap_obj(sig, pos) != e.obj + t.id_offset + e.depth {
                return None;
            }
            instantiate(tgt_side, e.obj)
        } else {
            let a = match_template(src_side, &source)?;
            instantiate(tgt_side, a)
        }
    };
    Some(EdgeInstance { source, target })
}

/// Replays one edge.
pub fn apply_edge(sig: Sig, w: &Word, e: &Edge) -> Option<Word> {
    edge_replacement(sig, w, e).map(|rep| splice(w, e, &rep))
}

/// Replacement letters (already wrapped) that an edge puts in place of its
/// segment, or `None` if the edge does not apply.
pub fn edge_replacement(sig: Sig, w: &Word, e: &Edge) -> Option<Vec<Letter>> {
    edge_instance(sig, w, e).map(|inst| wrap_seg(sig, &inst.target, e.depth))
}

/// Calls `visit(edge, replacement)` for every edge out of `w` that uses the
/// non-structural rules in `rules` and changes the word, in a deterministic
/// order.
pub fn for_each_edge(sig: Sig, rules: &[Rule], w: &Word, mut visit: impl FnMut(Edge, Vec<Letter>)) {
    let n = w.len();
    let uses = |r: Rule| rules.contains(&r);
    let (cn, un) = nat_rules(sig);
    let fixed: Vec<&Template> = templates(sig).iter().filter(|t| uses(t.rule)).collect();
    let nat: Vec<Rule> = [cn, un].into_iter().filter(|r| uses(*r)).collect();
    let mut try_edge = |e: Edge| {
        if let Some(rep) = edge_replacement(sig, w, &e) {
            let (pos, len) = (e.pos as usize, e.len as usize);
            if rep[..] != w.letters[pos..pos + len] {
                visit(e, rep);
            }
        }
    };
    let edge = |rule, dir, pos: usize, len: usize, depth, obj| Edge {
        rule: RuleId::new(rule, dir),
        pos: pos as u32,
        len: len as u32,
        depth,
        obj,
    };
    for pos in 0..n {
        let mut min_depth = u32::MAX;
        for end in pos + 1..=n {
            min_depth = min_depth.min(w.letters[end - 1].depth);
            let len = end - pos;
            for depth in 0..=min_depth {
                if len <= 2 {
                    for t in &fixed {
                        for dir in [Dir::L2R, Dir::R2L] {
                            if t.side(dir).0.len() == len {
                                try_edge(edge(t.rule, dir, pos, len, depth, 0));
                            }
                        }
                    }
                }
                if len >= 2 {
                    for &rule in &nat {
                        for dir in [Dir::L2R, Dir::R2L] {
                            try_edge(edge(rule, dir, pos, len, depth, 0));
                        }
                    }
                }
            }
        }
    }
    for gap in 0..=n {
        let o = w.gap_obj(sig, gap);
        for t in &fixed {
            for dir in [Dir::L2R, Dir::R2L] {
                if !t.side(dir).0.is_empty() {
                    continue;
                }
                for depth in 0..=o {
                    if let Some(a) = o.checked_sub(depth + t.id_offset) {
                        try_edge(edge(t.rule, dir, gap, 0, depth, a));
                    }
                }
            }
        }
    }
}

/// Splices an edge's replacement into `w`.
pub fn splice(w: &Word, e: &Edge, replacement: &[Letter]) -> Word {
    let (pos, len) = (e.pos as usize, e.len as usize);
    let mut letters = Vec::with_capacity(w.len() - len + replacement.len());
    letters.extend_from_slice(&w.letters[..pos]);
    letters.extend_from_slice(replacement);
    letters.extend_from_slice(&w.letters[pos + len..]);
    Word {
        src: w.src,
        letters,
    }
}

/// Fingerprint of `splice(w, e, replacement)`.
pub fn splice_fingerprint(w: &Word, e: &Edge, replacement: &[Letter]) -> u128 {
    let (pos, len) = (e.pos as usize, e.len as usize);
    fingerprint_parts(
        w.src,
        [&w.letters[..pos], replacement, &w.letters[pos + len..]],
    )
}

/// All edges out of `w` with their results.
pub fn edges(sig: Sig, rules: &[Rule], w: &Word) -> Vec<(Edge, Word)> {
    let mut out = Vec::new();
    for_each_edge(sig, rules, w, |e, rep| out.push((e, splice(w, &e, &rep))));
    out
}

/// Tree-level data for turning an edge into proof steps: the unwrapped
/// source and target instances of the cited schema, as terms.
pub fn edge_terms(sig: Sig, w: &Word, e: &Edge) -> Option<(Term, Term)> {
    let inst = edge_instance(sig, w, e)?;
    let schema = e.rule.rule.schema();
    let (cn, un) = nat_rules(sig);
    let subst = if e.rule.rule == cn || e.rule.rule == un {
        // the arrow variable f is the non-generator part of the L2R source
        let l2r_source = match e.rule.dir {
            Dir::L2R => &inst.source,
            Dir::R2L => &inst.target,
        };
        let (init, _) = l2r_source.split_at(l2r_source.len() - 1);
        let f = if e.rule.rule == cn {
            init.to_vec()
        } else {
            unwrap_seg(Sig::SelfAdj, init, 2)?
        };
        let ty = seg_type(sig, &f);
        let mut s = super::schema::Subst::default();
        if !schema.bind_arrow(sig, &mut s, 0, canonical_of(sig, &f, ty.src.0)) {
            return None;
        }
        s
    } else {
        let t = templates(sig).iter().find(|t| t.rule == e.rule.rule)?;
        let (src_side, _) = t.side(e.rule.dir);
        let a = if src_side.is_empty() {
            e.obj
        } else {
            match_template(src_side, &inst.source)?
        };
        super::schema::Subst::default().with_obj(0, a)
    };
    schema.sides(e.rule.dir, &subst)
}

/// Splits `w` around an edge's segment: `(prefix, suffix)` as canonical
/// trees, `None` where empty.
pub fn edge_context(sig: Sig, w: &Word, e: &Edge) -> (Option<Term>, Option<Term>) {
    let (pos, len) = (e.pos as usize, e.len as usize);
    let prefix = &w.letters[..pos];
    let suffix = &w.letters[pos + len..];
    let p = (!prefix.is_empty()).then(|| canonical_of(sig, prefix, w.gap_obj(sig, pos)));
    let s = (!suffix.is_empty()).then(|| canonical_of(sig, suffix, w.src));
    (p, s)
}
