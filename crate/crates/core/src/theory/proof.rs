//! Proof objects, an independent replay checker, and the line-oriented text
//! format.
//!
//! ```text
//! START <start term>
//! <rule> <L2R|R2L> <path> ⊢ <resulting term>
//! ```
//!
//! Paths are dot-separated child indices; the root is written `root`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{ProofFailure, ProofParseError, StepIndex};
use crate::term::{type_of, Path, Sig, Term};
use crate::text::{parse, print};

use super::schema::{Dir, Rule, RuleId, Subst};
use super::Theory;

pub const ROOT_PATH: &str = "root";
pub const TURNSTILE: &str = "⊢";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleId,
    pub path: Path,
    pub subst: Subst,
    /// The whole term after the step.
    pub result: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub sig: Sig,
    pub start: Term,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(sig: Sig, start: Term) -> Self {
        Proof {
            sig,
            start,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> &Term {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Rules cited by the proof, in order.
    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.steps.iter().map(|s| s.rule.rule)
    }

    /// The same chain of equalities read backwards.
    pub fn reversed(&self) -> Proof {
        Proof {
            sig: self.sig,
            start: self.end().clone(),
            steps: reverse_steps(&self.start, &self.steps),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: Proof) {
        debug_assert_eq!(self.end(), &other.start);
        self.steps.extend(other.steps);
    }

    /// Drops every stretch of steps that returns to a term seen before.
    pub fn without_detours(self) -> Proof {
        let mut kept: Vec<Step> = Vec::with_capacity(self.steps.len());
        // term -> number of kept steps after which it is the current term
        let mut at: HashMap<Term, usize> = HashMap::new();
        at.insert(self.start.clone(), 0);
        for step in self.steps {
            if let Some(&n) = at.get(&step.result) {
                for dropped in kept.drain(n..) {
                    at.remove(&dropped.result);
                }
                continue;
            }
            at.insert(step.result.clone(), kept.len() + 1);
            kept.push(step);
        }
        Proof {
            sig: self.sig,
            start: self.start,
            steps: kept,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "START {}", print(&self.start)).unwrap();
        for s in &self.steps {
            writeln!(
                out,
                "{} {} {} {} {}",
                s.rule.rule.name(),
                s.rule.dir.name(),
                format_path(&s.path),
                TURNSTILE,
                print(&s.result)
            )
            .unwrap();
        }
        out
    }

    /// Reads the text format. Substitutions are not part of the text; each is
    /// recovered by matching the cited schema's two sides against the terms
    /// before and after the step. A step whose sides do not match keeps an
    /// empty substitution and is rejected later by [`verify_proof`].
    pub fn parse_text(sig: Sig, text: &str) -> Result<Proof, ProofParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let (n, first) = lines.next().ok_or(ProofParseError::Malformed {
            line: 1,
            message: "empty proof".into(),
        })?;
        let start_text =
            first
                .strip_prefix("START ")
                .ok_or_else(|| ProofParseError::Malformed {
                    line: n,
                    message: "expected `START <term>`".into(),
                })?;
        let start =
            parse(sig, start_text).map_err(|source| ProofParseError::Term { line: n, source })?;
        let mut proof = Proof::new(sig, start);
        for (n, line) in lines {
            let (head, term_text) =
                line.split_once(TURNSTILE)
                    .ok_or_else(|| ProofParseError::Malformed {
                        line: n,
                        message: format!("missing `{TURNSTILE}`"),
                    })?;
            let fields: Vec<&str> = head.split_whitespace().collect();
            let [rule, dir, path] = fields[..] else {
                return Err(ProofParseError::Malformed {
                    line: n,
                    message: "expected `<rule> <L2R|R2L> <path>` before the turnstile".into(),
                });
            };
            let rule = Rule::from_name(rule).ok_or_else(|| ProofParseError::Malformed {
                line: n,
                message: format!("unknown rule `{rule}`"),
            })?;
            let dir = match dir {
                "L2R" => Dir::L2R,
                "R2L" => Dir::R2L,
                other => {
                    return Err(ProofParseError::Malformed {
                        line: n,
                        message: format!("unknown direction `{other}`"),
                    })
                }
            };
            let path = parse_path(path).ok_or_else(|| ProofParseError::Malformed {
                line: n,
                message: format!("bad position path `{path}`"),
            })?;
            let result = parse(sig, term_text.trim())
                .map_err(|source| ProofParseError::Term { line: n, source })?;
            let rule = RuleId::new(rule, dir);
            let subst = recover_subst(sig, rule, proof.end(), &path, &result).unwrap_or_default();
            proof.steps.push(Step {
                rule,
                path,
                subst,
                result,
            });
        }
        Ok(proof)
    }
}

fn recover_subst(
    sig: Sig,
    rule: RuleId,
    before: &Term,
    path: &[u8],
    after: &Term,
) -> Option<Subst> {
    let schema = rule.rule.schema();
    let mut s = schema.match_source(rule.dir, sig, before.subterm(path)?)?;
    let target = schema.match_source(rule.dir.flip(), sig, after.subterm(path)?)?;
    for (mine, theirs) in s.objs.iter_mut().zip(target.objs) {
        match (*mine, theirs) {
            (None, x) => *mine = x,
            (Some(a), Some(b)) if a != b => return None,
            _ => {}
        }
    }
    for (mine, theirs) in s.arrows.iter_mut().zip(target.arrows) {
        match (&mine, theirs) {
            (None, x) => *mine = x,
            (Some(a), Some(b)) if *a != b => return None,
            _ => {}
        }
    }
    Some(s)
}

pub fn format_path(path: &[u8]) -> String {
    if path.is_empty() {
        return ROOT_PATH.to_string();
    }
    path.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

pub fn parse_path(text: &str) -> Option<Path> {
    if text == ROOT_PATH {
        return Some(Vec::new());
    }
    text.split('.').map(|s| s.parse::<u8>().ok()).collect()
}

/// Reverses a chain of steps starting at `start`: the result starts at the
/// last term and walks back to `start`, each step citing the same schema in
/// the opposite direction.
pub fn reverse_steps(start: &Term, steps: &[Step]) -> Vec<Step> {
    let mut terms = Vec::with_capacity(steps.len() + 1);
    terms.push(start);
    terms.extend(steps.iter().map(|s| &s.result));
    steps
        .iter()
        .enumerate()
        .rev()
        .map(|(i, s)| Step {
            rule: RuleId::new(s.rule.rule, s.rule.dir.flip()),
            path: s.path.clone(),
            subst: s.subst.clone(),
            result: terms[i].clone(),
        })
        .collect()
}

/// Replays `proof` from its start term, checking every step against the
/// schemas of `th` only. Shares no code with the search.
pub fn verify_proof(th: Theory, proof: &Proof) -> Result<(), ProofFailure> {
    let fail = |step: StepIndex, reason: String| Err(ProofFailure { step, reason });
    if proof.sig != th.sig {
        return fail(
            StepIndex::Start,
            format!("proof is in the {} signature, theory is {}", proof.sig, th),
        );
    }
    let ty = match type_of(th.sig, &proof.start) {
        Ok(ty) => ty,
        Err(e) => {
            return fail(
                StepIndex::Start,
                format!("start term does not typecheck: {e}"),
            )
        }
    };
    let mut current = &proof.start;
    for (i, step) in proof.steps.iter().enumerate() {
        let at = StepIndex::Step(i);
        let rule = step.rule.rule;
        if !th.contains(rule) {
            return fail(at, format!("schema {rule} is not an axiom of {th}"));
        }
        let schema = rule.schema();
        if !schema.bindings_well_typed(th.sig, &step.subst) {
            return fail(at, format!("substitution {} is ill-typed", step.subst));
        }
        let Some((src, tgt)) = schema.sides(step.rule.dir, &step.subst) else {
            return fail(
                at,
                format!("substitution {} leaves variables unbound", step.subst),
            );
        };
        let Some(found) = current.subterm(&step.path) else {
            return fail(
                at,
                format!("position {} is outside the term", format_path(&step.path)),
            );
        };
        if *found != src {
            return fail(
                at,
                format!(
                    "{} does not match {} at {}",
                    step.rule,
                    print(found),
                    format_path(&step.path)
                ),
            );
        }
        match (type_of(th.sig, &src), type_of(th.sig, &tgt)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => return fail(at, format!("instance of {} is ill-typed", step.rule)),
        }
        let replayed = current
            .replace_at(&step.path, tgt)
            .expect("position checked above");
        if replayed != step.result {
            return fail(
                at,
                format!(
                    "recorded result {} differs from replay {}",
                    print(&step.result),
                    print(&replayed)
                ),
            );
        }
        match type_of(th.sig, &step.result) {
            Ok(t) if t == ty => {}
            _ => return fail(at, "result changes the type".to_string()),
        }
        current = &step.result;
    }
    Ok(())
}
