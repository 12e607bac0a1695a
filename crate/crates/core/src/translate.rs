//! The dictionary between the two signatures: `¬` defined in the
//! self-adjunction language, `L` defined in the involutive language, and the
//! functors `F_A` and `F_S` built from them.
//!
//! Each function is plain structural recursion over the defining clauses;
//! nothing is simplified on the way.

use crate::term::Term;

/// `¬` inside the self-adjunction language:
/// `¬1_A = 1_{LA}`, `¬φ_A = Lγ_A`, `¬γ_A = Lφ_A`, `¬(f∘g) = ¬g∘¬f`, `¬Lf = L¬f`.
pub fn neg_in_s(f: &Term) -> Term {
    match f {
        Term::Id(a) => Term::Id(a.succ()),
        Term::Phi(a) => Term::ell(Term::Gamma(*a)),
        Term::Gamma(a) => Term::ell(Term::Phi(*a)),
        Term::Comp(f, g) => Term::comp(neg_in_s(g), neg_in_s(f)),
        Term::Ell(f) => Term::ell(neg_in_s(f)),
        Term::Nr(_) | Term::Nl(_) | Term::Neg(_) => {
            panic!("neg_in_s applied to an involutive term")
        }
    }
}

/// `L` inside the involutive language:
/// `L1_A = 1_{¬A}`, `Ln→_A = ¬n←_A`, `Ln←_A = ¬n→_A`, `L(f∘g) = Lf∘Lg`, `L¬f = ¬Lf`.
pub fn l_in_a(f: &Term) -> Term {
    match f {
        Term::Id(a) => Term::Id(a.succ()),
        Term::Nr(a) => Term::neg(Term::Nl(*a)),
        Term::Nl(a) => Term::neg(Term::Nr(*a)),
        Term::Comp(f, g) => Term::comp(l_in_a(f), l_in_a(g)),
        Term::Neg(f) => Term::neg(l_in_a(f)),
        Term::Phi(_) | Term::Gamma(_) | Term::Ell(_) => {
            panic!("l_in_a applied to a self-adjunction term")
        }
    }
}

/// `F_A`: self-adjunction terms to involutive terms.
pub fn functor_fa(f: &Term) -> Term {
    match f {
        Term::Id(a) => Term::Id(*a),
        Term::Phi(a) => Term::Nr(*a),
        Term::Gamma(a) => Term::Nl(*a),
        Term::Comp(f, g) => Term::comp(functor_fa(f), functor_fa(g)),
        Term::Ell(f) => l_in_a(&functor_fa(f)),
        Term::Nr(_) | Term::Nl(_) | Term::Neg(_) => {
            panic!("functor_fa applied to an involutive term")
        }
    }
}

/// `F_S`: involutive terms to self-adjunction terms.
pub fn functor_fs(f: &Term) -> Term {
    match f {
        Term::Id(a) => Term::Id(*a),
        Term::Nr(a) => Term::Phi(*a),
        Term::Nl(a) => Term::Gamma(*a),
        Term::Comp(f, g) => Term::comp(functor_fs(f), functor_fs(g)),
        Term::Neg(f) => neg_in_s(&functor_fs(f)),
        Term::Phi(_) | Term::Gamma(_) | Term::Ell(_) => {
            panic!("functor_fs applied to a self-adjunction term")
        }
    }
}

/// Translates into the other signature.
pub fn translate(from: crate::term::Sig, f: &Term) -> Term {
    match from {
        crate::term::Sig::SelfAdj => functor_fa(f),
        crate::term::Sig::Involutive => functor_fs(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::enumerate_terms;
    use crate::term::{type_of, ArrowType, Sig};

    #[test]
    fn clauses() {
        assert_eq!(neg_in_s(&Term::phi(0)), Term::ell(Term::gamma(0)));
        assert_eq!(
            neg_in_s(&Term::comp(Term::phi(0), Term::gamma(0))),
            Term::comp(Term::ell(Term::phi(0)), Term::ell(Term::gamma(0)))
        );
        assert_eq!(neg_in_s(&Term::id(3)), Term::id(4));
        assert_eq!(l_in_a(&Term::nr(0)), Term::neg(Term::nl(0)));
        assert_eq!(l_in_a(&Term::nl(0)), Term::neg(Term::nr(0)));
        assert_eq!(
            l_in_a(&Term::comp(Term::nr(0), Term::nl(0))),
            Term::comp(Term::neg(Term::nl(0)), Term::neg(Term::nr(0)))
        );
    }

    #[test]
    fn functors() {
        assert_eq!(functor_fa(&Term::phi(2)), Term::nr(2));
        assert_eq!(
            functor_fa(&Term::ell(Term::gamma(0))),
            Term::neg(Term::nr(0))
        );
        assert_eq!(functor_fa(&Term::id(0)), Term::id(0));
        assert_eq!(
            functor_fs(&Term::neg(Term::nr(0))),
            Term::ell(Term::gamma(0))
        );
        assert_eq!(functor_fs(&Term::nl(4)), Term::gamma(4));
        let t = Term::ell(Term::gamma(0));
        assert_eq!(functor_fs(&functor_fa(&t)), t);
    }

    #[test]
    fn types_preserved() {
        for t in enumerate_terms(Sig::SelfAdj, 4, 3) {
            let ty = type_of(Sig::SelfAdj, &t).unwrap();
            assert_eq!(type_of(Sig::Involutive, &functor_fa(&t)).unwrap(), ty);
            assert_eq!(
                type_of(Sig::SelfAdj, &neg_in_s(&t)).unwrap(),
                ArrowType::new(ty.tgt.0 + 1, ty.src.0 + 1)
            );
        }
        for t in enumerate_terms(Sig::Involutive, 4, 3) {
            let ty = type_of(Sig::Involutive, &t).unwrap();
            assert_eq!(type_of(Sig::SelfAdj, &functor_fs(&t)).unwrap(), ty);
            assert_eq!(type_of(Sig::Involutive, &l_in_a(&t)).unwrap(), ty.shifted());
        }
    }
}
