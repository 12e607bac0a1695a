//! Structural normalization with explicit steps: rewrites a term into the
//! canonical tree of its word using only associativity, unit and functor
//! schemas, recording every step so the result can be checked.

use crate::term::{Path, Sig, Term};

use super::proof::{Proof, Step};
use super::rewrite::apply_at;
use super::schema::{Dir, Rule, RuleId};

struct Rewriter {
    sig: Sig,
    proof: Proof,
    current: Term,
}

impl Rewriter {
    fn at(&self, path: &[u8]) -> &Term {
        self.current
            .subterm(path)
            .expect("normalizer path inside term")
    }

    fn step(&mut self, rule: Rule, path: &[u8]) {
        let id = RuleId::new(rule, Dir::L2R);
        let (subst, result) = apply_at(self.sig, id, &self.current, path)
            .unwrap_or_else(|| panic!("{rule} must apply at {path:?} in {}", self.current));
        self.proof.steps.push(Step {
            rule: id,
            path: path.to_vec(),
            subst,
            result: result.clone(),
        });
        self.current = result;
    }

    fn normalize_at(&mut self, path: &mut Path) {
        match self.at(path) {
            Term::Comp(..) => {
                for child in [0, 1] {
                    path.push(child);
                    self.normalize_at(path);
                    path.pop();
                }
                self.join_at(path);
            }
            Term::Ell(_) | Term::Neg(_) => {
                path.push(0);
                self.normalize_at(path);
                path.pop();
                self.push_wrapper_at(path);
            }
            _ => {}
        }
    }

    /// Joins two normal forms under a `Comp` at `path` into one.
    fn join_at(&mut self, path: &mut Path) {
        let Term::Comp(f, g) = self.at(path) else {
            return;
        };
        if g.is_id() {
            self.step(Rule::UnitRight, path);
        } else if f.is_id() {
            self.step(Rule::UnitLeft, path);
        } else if matches!(**f, Term::Comp(..)) {
            self.step(Rule::Assoc, path);
            path.push(1);
            self.join_at(path);
            path.pop();
        }
    }

    /// Pushes the wrapper at `path` into its normal-form child.
    fn push_wrapper_at(&mut self, path: &mut Path) {
        let (one, two) = match self.sig {
            Sig::SelfAdj => (Rule::LFunctor1, Rule::LFunctor2),
            Sig::Involutive => (Rule::Neg1, Rule::Neg2),
        };
        let child = self.at(path).children()[0];
        if child.is_id() {
            self.step(one, path);
        } else if matches!(child, Term::Comp(..)) {
            self.step(two, path);
            match self.sig {
                Sig::SelfAdj => {
                    path.push(1);
                    self.push_wrapper_at(path);
                    path.pop();
                }
                Sig::Involutive => {
                    path.push(0);
                    self.push_wrapper_at(path);
                    path.pop();
                    self.join_at(path);
                }
            }
        }
    }
}

/// Proof of `t = canonical_tree(word_of(t))` using structural schemas only.
pub fn normalize(sig: Sig, t: &Term) -> Proof {
    let mut rw = Rewriter {
        sig,
        proof: Proof::new(sig, t.clone()),
        current: t.clone(),
    };
    rw.normalize_at(&mut Vec::new());
    rw.proof
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{enumerate_terms, random_terms};
    use crate::text::parse;
    use crate::theory::word::{canonical_tree, word_of};
    use crate::theory::{verify_proof, Level, Theory};

    fn check(sig: Sig, t: &Term) {
        let p = normalize(sig, t);
        assert_eq!(p.end(), &canonical_tree(sig, &word_of(sig, t)), "{t}");
        assert!(p.rules().all(|r| r.is_structural()));
        verify_proof(Theory::new(sig, Level::Plain), &p).unwrap();
    }

    #[test]
    fn reaches_canonical_tree() {
        for sig in [Sig::SelfAdj, Sig::Involutive] {
            for t in enumerate_terms(sig, 4, 2) {
                check(sig, &t);
            }
            for t in random_terms(sig, 12, 300, 7) {
                check(sig, &t);
            }
        }
    }

    #[test]
    fn examples() {
        let sig = Sig::Involutive;
        let t = parse(sig, "neg (nr[0] . nl[0] . 1[0])").unwrap();
        let p = normalize(sig, &t);
        assert_eq!(p.end(), &parse(sig, "neg nl[0] . neg nr[0]").unwrap());
        let sig = Sig::SelfAdj;
        let t = parse(sig, "L L 1[0] . phi[2]").unwrap();
        assert_eq!(normalize(sig, &t).end(), &Term::phi(2));
        let canon = parse(sig, "phi[1] . L gam[0]").unwrap();
        assert!(normalize(sig, &canon).is_empty());
    }
}
