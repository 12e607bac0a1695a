//! Single rewrite steps on term trees.

use std::collections::BTreeSet;

use crate::term::{type_of, Path, Sig, Term};

use super::schema::{Dir, RuleId, Subst};
use super::Theory;

/// One application of one schema at one position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: RuleId,
    pub path: Path,
    pub subst: Subst,
    pub result: Term,
}

/// Rewrites the subterm of `t` at `path` with `rule`, returning the
/// substitution found by matching and the whole rewritten term. Fails when
/// the path leaves the term, the source side does not match, or the instance
/// would change the subterm's type.
pub fn apply_at(sig: Sig, rule: RuleId, t: &Term, path: &[u8]) -> Option<(Subst, Term)> {
    let sub = t.subterm(path)?;
    let schema = rule.rule.schema();
    let subst = schema.match_source(rule.dir, sig, sub)?;
    let (src, tgt) = schema.sides(rule.dir, &subst)?;
    debug_assert_eq!(&src, sub);
    let before = type_of(sig, sub).ok()?;
    if type_of(sig, &tgt).ok()? != before {
        return None;
    }
    Some((subst, t.replace_at(path, tgt)?))
}

/// Every single-step rewrite of `t` in `th`, in either direction, at every
/// position, in a deterministic order.
pub fn one_step_rewrites(th: Theory, t: &Term) -> Vec<Rewrite> {
    let mut out = Vec::new();
    for path in t.positions() {
        for rule in th.rules() {
            for dir in [Dir::L2R, Dir::R2L] {
                let id = RuleId::new(rule, dir);
                if let Some((subst, result)) = apply_at(th.sig, id, t, &path) {
                    out.push(Rewrite {
                        rule: id,
                        path: path.clone(),
                        subst,
                        result,
                    });
                }
            }
        }
    }
    out
}

/// The set of terms one rewrite step away from `t`.
pub fn rewrite_neighbors(th: Theory, t: &Term) -> BTreeSet<Term> {
    one_step_rewrites(th, t)
        .into_iter()
        .map(|r| r.result)
        .collect()
}
