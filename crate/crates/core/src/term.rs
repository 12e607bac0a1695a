//! Objects, arrow terms and typing for both signatures.
//!
//! Objects of the free categories on one letter are identified with naturals:
//! `n` stands for `L^n p` in the self-adjunction signature and `¬^n p` in the
//! involutive one. Both term languages share one tree type, [`Term`]; which
//! constructors are legal is decided by a [`Sig`] tag.

use std::fmt;

use crate::error::TypeError;

/// An object of either free category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub u32);

impl Obj {
    pub fn succ(self) -> Obj {
        Obj(self.0 + 1)
    }

    pub fn plus(self, k: u32) -> Obj {
        Obj(self.0 + k)
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Source and target of an arrow term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrowType {
    pub src: Obj,
    pub tgt: Obj,
}

impl ArrowType {
    pub fn new(src: u32, tgt: u32) -> Self {
        ArrowType {
            src: Obj(src),
            tgt: Obj(tgt),
        }
    }

    /// Type of `L f` given the type of `f`.
    pub fn shifted(self) -> Self {
        ArrowType {
            src: self.src.succ(),
            tgt: self.tgt.succ(),
        }
    }

    /// Type of `¬ f` given the type of `f`.
    pub fn negated(self) -> Self {
        ArrowType {
            src: self.tgt.succ(),
            tgt: self.src.succ(),
        }
    }
}

impl fmt::Display for ArrowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.tgt)
    }
}

/// Which of the two term languages a term belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sig {
    /// `1`, `φ`, `γ`, composition and the covariant `L`.
    SelfAdj,
    /// `1`, `n→`, `n←`, composition and the contravariant `¬`.
    Involutive,
}

impl Sig {
    pub fn name(self) -> &'static str {
        match self {
            Sig::SelfAdj => "self",
            Sig::Involutive => "inv",
        }
    }

    pub fn other(self) -> Sig {
        match self {
            Sig::SelfAdj => Sig::Involutive,
            Sig::Involutive => Sig::SelfAdj,
        }
    }
}

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An arrow term. `Comp(f, g)` is `f ∘ g`: `g` first, then `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Id(Obj),
    /// `φ_A : LLA → A`
    Phi(Obj),
    /// `γ_A : A → LLA`
    Gamma(Obj),
    /// `n→_A : ¬¬A → A`
    Nr(Obj),
    /// `n←_A : A → ¬¬A`
    Nl(Obj),
    Comp(Box<Term>, Box<Term>),
    Ell(Box<Term>),
    Neg(Box<Term>),
}

/// A path from the root of a term to one of its subterms. `Comp` has children
/// 0 (the left operand) and 1; `Ell` and `Neg` have the single child 0.
pub type Path = Vec<u8>;

impl Term {
    pub fn id(n: u32) -> Term {
        Term::Id(Obj(n))
    }

    pub fn phi(n: u32) -> Term {
        Term::Phi(Obj(n))
    }

    pub fn gamma(n: u32) -> Term {
        Term::Gamma(Obj(n))
    }

    pub fn nr(n: u32) -> Term {
        Term::Nr(Obj(n))
    }

    pub fn nl(n: u32) -> Term {
        Term::Nl(Obj(n))
    }

    pub fn comp(f: Term, g: Term) -> Term {
        Term::Comp(Box::new(f), Box::new(g))
    }

    pub fn ell(f: Term) -> Term {
        Term::Ell(Box::new(f))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Term) -> Term {
        Term::Neg(Box::new(f))
    }

    /// Applies the signature's unary operation (`L` or `¬`).
    pub fn wrap(sig: Sig, f: Term) -> Term {
        match sig {
            Sig::SelfAdj => Term::ell(f),
            Sig::Involutive => Term::neg(f),
        }
    }

    pub fn wrap_n(sig: Sig, mut f: Term, times: u32) -> Term {
        for _ in 0..times {
            f = Term::wrap(sig, f);
        }
        f
    }

    /// Number of constructor nodes, identities included.
    pub fn size(&self) -> usize {
        match self {
            Term::Id(_) | Term::Phi(_) | Term::Gamma(_) | Term::Nr(_) | Term::Nl(_) => 1,
            Term::Comp(f, g) => 1 + f.size() + g.size(),
            Term::Ell(f) | Term::Neg(f) => 1 + f.size(),
        }
    }

    pub fn is_id(&self) -> bool {
        matches!(self, Term::Id(_))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Comp(f, g) => vec![f, g],
            Term::Ell(f) | Term::Neg(f) => vec![f],
            _ => Vec::new(),
        }
    }

    pub fn subterm(&self, path: &[u8]) -> Option<&Term> {
        let mut t = self;
        for &i in path {
            t = match (t, i) {
                (Term::Comp(f, _), 0) => f,
                (Term::Comp(_, g), 1) => g,
                (Term::Ell(f), 0) | (Term::Neg(f), 0) => f,
                _ => return None,
            };
        }
        Some(t)
    }

    pub fn subterm_mut(&mut self, path: &[u8]) -> Option<&mut Term> {
        let mut t = self;
        for &i in path {
            t = match (t, i) {
                (Term::Comp(f, _), 0) => f,
                (Term::Comp(_, g), 1) => g,
                (Term::Ell(f), 0) | (Term::Neg(f), 0) => f,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Returns a copy with the subterm at `path` replaced, or `None` when the
    /// path leaves the term.
    pub fn replace_at(&self, path: &[u8], replacement: Term) -> Option<Term> {
        let mut out = self.clone();
        *out.subterm_mut(path)? = replacement;
        Some(out)
    }

    /// All subterm positions in pre-order.
    pub fn positions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(p) = stack.pop() {
            let t = self.subterm(&p).expect("position inside term");
            let n = t.children().len();
            for i in (0..n).rev() {
                let mut q = p.clone();
                q.push(i as u8);
                stack.push(q);
            }
            out.push(p);
        }
        out
    }

    /// The signature whose constructors this term uses, if it uses only one.
    /// Identities and compositions belong to both.
    pub fn uses_only(&self, sig: Sig) -> Result<(), Path> {
        fn go(t: &Term, sig: Sig, path: &mut Path) -> Result<(), Path> {
            let ok = match t {
                Term::Id(_) | Term::Comp(..) => true,
                Term::Phi(_) | Term::Gamma(_) | Term::Ell(_) => sig == Sig::SelfAdj,
                Term::Nr(_) | Term::Nl(_) | Term::Neg(_) => sig == Sig::Involutive,
            };
            if !ok {
                return Err(path.clone());
            }
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i as u8);
                go(c, sig, path)?;
                path.pop();
            }
            Ok(())
        }
        go(self, sig, &mut Vec::new())
    }
}

/// Computes the unique type of `t` in signature `sig`.
pub fn type_of(sig: Sig, t: &Term) -> Result<ArrowType, TypeError> {
    if let Err(path) = t.uses_only(sig) {
        return Err(TypeError::SignatureViolation { sig, path });
    }
    type_unchecked(t, &mut Vec::new())
}

fn type_unchecked(t: &Term, path: &mut Path) -> Result<ArrowType, TypeError> {
    Ok(match t {
        Term::Id(a) => ArrowType { src: *a, tgt: *a },
        Term::Phi(a) | Term::Nr(a) => ArrowType {
            src: a.plus(2),
            tgt: *a,
        },
        Term::Gamma(a) | Term::Nl(a) => ArrowType {
            src: *a,
            tgt: a.plus(2),
        },
        Term::Comp(f, g) => {
            path.push(0);
            let tf = type_unchecked(f, path)?;
            path.pop();
            path.push(1);
            let tg = type_unchecked(g, path)?;
            path.pop();
            if tg.tgt != tf.src {
                return Err(TypeError::CompositionMismatch {
                    path: path.clone(),
                    left: tf,
                    right: tg,
                });
            }
            ArrowType {
                src: tg.src,
                tgt: tf.tgt,
            }
        }
        Term::Ell(f) => {
            path.push(0);
            let tf = type_unchecked(f, path)?;
            path.pop();
            tf.shifted()
        }
        Term::Neg(f) => {
            path.push(0);
            let tf = type_unchecked(f, path)?;
            path.pop();
            tf.negated()
        }
    })
}
