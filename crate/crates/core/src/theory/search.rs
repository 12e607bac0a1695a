//! Bounded bidirectional breadth-first equality search.
//!
//! Search runs on words (terms modulo associativity, unit and functor laws,
//! see [`super::word`]); every edge is later expanded into explicit tree
//! steps, so the returned proof cites every schema it uses, the structural
//! ones included, and is re-checked by [`verify_proof`] before it is
//! returned.

use std::collections::HashMap;

use crate::diagram::{interp, Mode, TLDiagram};
use crate::error::QueryError;
use crate::term::{type_of, Sig, Term};

use super::normalize::normalize;
use super::proof::{reverse_steps, verify_proof, Proof, Step};
use super::rewrite::apply_at;
use super::word::{
    apply_edge, edge_context, edge_terms, for_each_edge, splice, splice_fingerprint, word_of, Edge,
    Word,
};
use super::{Level, Rule, Theory, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqOptions {
    /// Maximum number of expanded words, summed over both directions.
    pub budget: usize,
    /// At level `Triv`, search for a rewrite proof instead of answering from
    /// the preorder property.
    pub with_proof: bool,
}

impl Default for EqOptions {
    fn default() -> Self {
        EqOptions {
            budget: DEFAULT_BUDGET,
            with_proof: false,
        }
    }
}

impl EqOptions {
    pub fn budget(budget: usize) -> Self {
        EqOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Proof(Proof),
    /// Same type in a trivial theory, whose free category is a preorder.
    Preorder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqVerdict {
    Equal(Witness),
    /// The diagrams of the two sides differ, so no proof exists.
    Distinct {
        left: TLDiagram,
        right: TLDiagram,
    },
    Unknown {
        expanded: usize,
    },
}

impl EqVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            EqVerdict::Equal(_) => "equal",
            EqVerdict::Distinct { .. } => "distinct",
            EqVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            EqVerdict::Equal(Witness::Proof(p)) => Some(p),
            _ => None,
        }
    }
}

/// Result of a bare proof search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Proof),
    GaveUp { expanded: usize },
}

/// True iff the two terms have the same type: in the trivial theories every
/// two parallel arrows are equal.
pub fn decide_trivial(sig: Sig, t1: &Term, t2: &Term) -> bool {
    matches!(
        (type_of(sig, t1), type_of(sig, t2)),
        (Ok(a), Ok(b)) if a == b
    )
}

/// The diagram mode that is sound for a level, if any.
pub fn sound_mode(level: Level) -> Option<Mode> {
    match level {
        Level::Plain | Level::K => Some(Mode::Count),
        Level::J => Some(Mode::Drop),
        Level::Triv => None,
    }
}

fn check_types(sig: Sig, t1: &Term, t2: &Term) -> Result<(), QueryError> {
    let (a, b) = (type_of(sig, t1)?, type_of(sig, t2)?);
    if a != b {
        return Err(QueryError::TypeMismatch { left: a, right: b });
    }
    Ok(())
}

pub fn eq_search(
    th: Theory,
    t1: &Term,
    t2: &Term,
    opts: EqOptions,
) -> Result<EqVerdict, QueryError> {
    check_types(th.sig, t1, t2)?;
    match sound_mode(th.level) {
        None if !opts.with_proof => return Ok(EqVerdict::Equal(Witness::Preorder)),
        None => {}
        Some(mode) => {
            let left = interp(th.sig, t1, mode)?;
            let right = interp(th.sig, t2, mode)?;
            if !left.eq_in(&right, mode) {
                return Ok(EqVerdict::Distinct { left, right });
            }
        }
    }
    Ok(match search_proof(th, t1, t2, opts.budget)? {
        SearchOutcome::Proved(p) => EqVerdict::Equal(Witness::Proof(p)),
        SearchOutcome::GaveUp { expanded } => EqVerdict::Unknown { expanded },
    })
}

/// Searches for a rewrite proof without consulting diagrams.
pub fn search_proof(
    th: Theory,
    t1: &Term,
    t2: &Term,
    budget: usize,
) -> Result<SearchOutcome, QueryError> {
    check_types(th.sig, t1, t2)?;
    let sig = th.sig;
    let rules: Vec<Rule> = th
        .rules()
        .into_iter()
        .filter(|r| !r.is_structural())
        .collect();
    let w1 = word_of(sig, t1);
    let w2 = word_of(sig, t2);
    let (path1, path2) = if w1 == w2 {
        (Vec::new(), Vec::new())
    } else {
        match bfs(sig, &rules, &w1, &w2, budget) {
            Ok(paths) => paths,
            Err(expanded) => return Ok(SearchOutcome::GaveUp { expanded }),
        }
    };
    let proof = build_proof(sig, t1, t2, &w1, &path1, &w2, &path2);
    if let Err(e) = verify_proof(th, &proof) {
        panic!(
            "search produced a proof that does not check: {e}\n{}",
            proof.to_text()
        );
    }
    Ok(SearchOutcome::Proved(proof))
}

const ROOT: u32 = u32::MAX;

struct Side {
    root: Word,
    /// `(parent, edge into this node)`; the root is node 0 with no edge.
    nodes: Vec<(u32, Option<Edge>)>,
    depth: Vec<u32>,
    seen: HashMap<u128, u32>,
    frontier: Vec<(u32, Word)>,
}

impl Side {
    fn new(root: &Word) -> Self {
        let mut seen = HashMap::new();
        seen.insert(root.fingerprint(), 0);
        Side {
            root: root.clone(),
            nodes: vec![(ROOT, None)],
            depth: vec![0],
            seen,
            frontier: vec![(0, root.clone())],
        }
    }

    fn path(&self, mut node: u32) -> Vec<Edge> {
        let mut out = Vec::new();
        while let (parent, Some(edge)) = self.nodes[node as usize] {
            out.push(edge);
            node = parent;
        }
        out.reverse();
        out
    }

    fn word(&self, sig: Sig, node: u32) -> Word {
        self.path(node).iter().fold(self.root.clone(), |w, e| {
            apply_edge(sig, &w, e).expect("recorded edge replays")
        })
    }
}

/// Returns the edge paths from each root to a common word, or the number of
/// expanded words when the budget runs out or the search space is exhausted.
fn bfs(
    sig: Sig,
    rules: &[Rule],
    w1: &Word,
    w2: &Word,
    budget: usize,
) -> Result<(Vec<Edge>, Vec<Edge>), usize> {
    let mut sides = [Side::new(w1), Side::new(w2)];
    let mut expanded = 0usize;
    loop {
        let this = if sides[0].frontier.len() <= sides[1].frontier.len() {
            0
        } else {
            1
        };
        let that = 1 - this;
        let frontier = std::mem::take(&mut sides[this].frontier);
        if frontier.is_empty() {
            return Err(expanded);
        }
        let mut best: Option<(u32, u32, u32)> = None;
        let mut next_frontier = Vec::new();
        for (node, word) in frontier {
            if expanded >= budget {
                break;
            }
            expanded += 1;
            let d = sides[this].depth[node as usize] + 1;
            let (lo, hi) = sides.split_at_mut(1);
            let (side, other) = if this == 0 {
                (&mut lo[0], &hi[0])
            } else {
                (&mut hi[0], &lo[0])
            };
            for_each_edge(sig, rules, &word, |edge, rep| {
                let fp = splice_fingerprint(&word, &edge, &rep);
                if side.seen.contains_key(&fp) {
                    return;
                }
                let id = side.nodes.len() as u32;
                side.nodes.push((node, Some(edge)));
                side.depth.push(d);
                side.seen.insert(fp, id);
                let next = splice(&word, &edge, &rep);
                if let Some(&there) = other.seen.get(&fp) {
                    let total = d + other.depth[there as usize];
                    if best.is_none_or(|(t, _, _)| total < t) && other.word(sig, there) == next {
                        best = Some((total, id, there));
                    }
                }
                next_frontier.push((id, next));
            });
        }
        if let Some((_, mine, theirs)) = best {
            let (a, b) = (sides[this].path(mine), sides[that].path(theirs));
            return Ok(if this == 0 { (a, b) } else { (b, a) });
        }
        if expanded >= budget {
            return Err(expanded);
        }
        sides[this].frontier = next_frontier;
    }
}

/// Tree steps from the canonical tree of `w` to that of `apply_edge(w, e)`.
fn edge_steps(sig: Sig, w: &Word, e: &Edge) -> Vec<Step> {
    let (src, tgt) = edge_terms(sig, w, e).expect("edge has an instance");
    let (prefix, suffix) = edge_context(sig, w, e);
    let mut x_path = match (&prefix, &suffix) {
        (None, None) => vec![],
        (None, Some(_)) => vec![0],
        (Some(_), None) => vec![1],
        (Some(_), Some(_)) => vec![1, 0],
    };
    let around = |mid: Term| {
        let mid = match &suffix {
            Some(s) => Term::comp(mid, s.clone()),
            None => mid,
        };
        match &prefix {
            Some(p) => Term::comp(p.clone(), mid),
            None => mid,
        }
    };
    let before = around(Term::wrap_n(sig, src, e.depth));
    x_path.extend(std::iter::repeat_n(0, e.depth as usize));
    let (subst, after) = apply_at(sig, e.rule, &before, &x_path).expect("edge instance applies");
    let into = normalize(sig, &before);
    let mut steps = reverse_steps(&before, &into.steps);
    steps.push(Step {
        rule: e.rule,
        path: x_path,
        subst,
        result: after.clone(),
    });
    debug_assert_eq!(after.subterm(&steps.last().unwrap().path), Some(&tgt));
    steps.extend(normalize(sig, &after).steps);
    steps
}

fn chain(sig: Sig, start: &Term, root: &Word, path: &[Edge]) -> Proof {
    let mut proof = normalize(sig, start);
    let mut w = root.clone();
    for e in path {
        proof.steps.extend(edge_steps(sig, &w, e));
        w = apply_edge(sig, &w, e).expect("recorded edge replays");
    }
    proof
}

fn build_proof(
    sig: Sig,
    t1: &Term,
    t2: &Term,
    w1: &Word,
    p1: &[Edge],
    w2: &Word,
    p2: &[Edge],
) -> Proof {
    let mut proof = chain(sig, t1, w1, p1);
    let back = chain(sig, t2, w2, p2);
    debug_assert_eq!(proof.end(), back.end());
    proof.steps.extend(reverse_steps(&back.start, &back.steps));
    proof.without_detours()
}
