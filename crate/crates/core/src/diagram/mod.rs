//! Temperley-Lieb diagrams with a circle count, and the interpretation of
//! arrow terms as diagrams.
//!
//! A diagram with `src` top points `T1..Tsrc` and `tgt` bottom points
//! `B1..Btgt` is stored as an involution on point indices: `T_i` is `i - 1`
//! and `B_j` is `src + j - 1`. `L` adds the leftmost strand, so `φ_n` caps the
//! two leftmost top points.

mod render;

use std::fmt;

use serde::Serialize;

use crate::error::{DiagramError, TypeError};
use crate::term::{type_of, Sig, Term};
use crate::translate::functor_fs;

pub use render::{render_ascii, render_svg};

/// Whether composition keeps (`Count`) or forgets (`Drop`) closed loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Count,
    Drop,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::Drop => "drop",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count" => Ok(Mode::Count),
            "drop" => Ok(Mode::Drop),
            _ => Err(format!("unknown mode `{s}` (expected count or drop)")),
        }
    }
}

/// A boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Top(i) => write!(f, "T{i}"),
            Point::Bottom(j) => write!(f, "B{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TLDiagram {
    src: usize,
    tgt: usize,
    partner: Vec<usize>,
    circles: u64,
}

impl TLDiagram {
    /// Builds a diagram from a partner array, checking that it is a perfect,
    /// non-crossing matching.
    pub fn from_partners(
        src: usize,
        tgt: usize,
        partner: Vec<usize>,
        circles: u64,
    ) -> Result<Self, DiagramError> {
        let n = src + tgt;
        if partner.len() != n {
            return Err(DiagramError::InvalidMatching(format!(
                "{} partners for {n} points",
                partner.len()
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= n || p == i || partner[p] != i {
                return Err(DiagramError::InvalidMatching(format!(
                    "point {i} is not properly paired"
                )));
            }
        }
        let d = TLDiagram {
            src,
            tgt,
            partner,
            circles,
        };
        if !d.is_planar() {
            return Err(DiagramError::InvalidMatching("matching crosses".into()));
        }
        Ok(d)
    }

    /// Internal constructor for diagrams planar by construction; planarity is
    /// still asserted.
    fn build(src: usize, tgt: usize, partner: Vec<usize>, circles: u64) -> Self {
        let d = TLDiagram {
            src,
            tgt,
            partner,
            circles,
        };
        assert!(d.is_planar(), "constructed a crossing diagram: {d}");
        d
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..n).map(|i| n + i).chain(0..n).collect();
        Self::build(n, n, partner, 0)
    }

    /// `φ_n`: caps `T1–T2`, through strands `T(i+2)–B(i)`.
    pub fn counit(n: usize) -> Self {
        let src = n + 2;
        let mut partner = vec![0; src + n];
        partner[0] = 1;
        partner[1] = 0;
        for i in 0..n {
            partner[i + 2] = src + i;
            partner[src + i] = i + 2;
        }
        Self::build(src, n, partner, 0)
    }

    /// `γ_n`: cup `B1–B2`, through strands `T(i)–B(i+2)`.
    pub fn unit(n: usize) -> Self {
        let tgt = n + 2;
        let mut partner = vec![0; n + tgt];
        partner[n] = n + 1;
        partner[n + 1] = n;
        for i in 0..n {
            partner[i] = n + i + 2;
            partner[n + i + 2] = i;
        }
        Self::build(n, tgt, partner, 0)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn circles(&self) -> u64 {
        self.circles
    }

    pub fn with_circles(&self, circles: u64) -> Self {
        TLDiagram {
            circles,
            ..self.clone()
        }
    }

    pub fn point(&self, index: usize) -> Point {
        if index < self.src {
            Point::Top(index + 1)
        } else {
            Point::Bottom(index - self.src + 1)
        }
    }

    pub fn index(&self, p: Point) -> usize {
        match p {
            Point::Top(i) => i - 1,
            Point::Bottom(j) => self.src + j - 1,
        }
    }

    pub fn partner_of(&self, p: Point) -> Point {
        self.point(self.partner[self.index(p)])
    }

    /// Every pair once, in point-index order of its first point.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p)
            .map(|(i, &p)| (self.point(i), self.point(p)))
            .collect()
    }

    /// Non-crossing in the cyclic order `T1..Tsrc, Btgt..B1`.
    pub fn is_planar(&self) -> bool {
        let pos = |i: usize| {
            if i < self.src {
                i
            } else {
                self.src + (self.src + self.tgt - 1 - i)
            }
        };
        let n = self.src + self.tgt;
        let mut at = vec![0; n];
        for i in 0..n {
            at[pos(i)] = i;
        }
        let mut stack = Vec::new();
        for &i in &at {
            let p = pos(self.partner[i]);
            if p > pos(i) {
                stack.push(p);
            } else if stack.pop() != Some(pos(i)) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Prepends one through strand `T1–B1`.
    pub fn l_shift(&self) -> Self {
        let (src, tgt) = (self.src + 1, self.tgt + 1);
        let map = |i: usize| if i < self.src { i + 1 } else { i + 2 };
        let mut partner = vec![0; src + tgt];
        partner[0] = src;
        partner[src] = 0;
        for (i, &p) in self.partner.iter().enumerate() {
            partner[map(i)] = map(p);
        }
        Self::build(src, tgt, partner, self.circles)
    }

    /// `self ∘ below`: `below` is stacked on top, so its bottom points are
    /// glued to the top points of `self`.
    pub fn compose(&self, below: &TLDiagram) -> Result<Self, DiagramError> {
        let (f, g) = (self, below);
        if g.tgt != f.src {
            return Err(DiagramError::BoundaryMismatch {
                upper: g.tgt,
                lower: f.src,
            });
        }
        let g_n = g.src + g.tgt;
        let mut uf = UnionFind::new(g_n + f.src + f.tgt);
        for (i, &p) in g.partner.iter().enumerate() {
            uf.union(i, p);
        }
        for (i, &p) in f.partner.iter().enumerate() {
            uf.union(g_n + i, g_n + p);
        }
        for j in 0..g.tgt {
            uf.union(g.src + j, g_n + j);
        }
        // outer points: g's top, then f's bottom
        let outer: Vec<usize> = (0..g.src).chain(g_n + f.src..g_n + f.src + f.tgt).collect();
        let (src, tgt) = (g.src, f.tgt);
        let mut partner = vec![usize::MAX; src + tgt];
        let mut seen_at: Vec<Option<usize>> = vec![None; uf.len()];
        for (k, &node) in outer.iter().enumerate() {
            let r = uf.find(node);
            match seen_at[r] {
                Some(other) => {
                    partner[k] = other;
                    partner[other] = k;
                }
                None => seen_at[r] = Some(k),
            }
        }
        let mut loops = 0;
        let mut counted = vec![false; uf.len()];
        for j in 0..g.tgt {
            let r = uf.find(g.src + j);
            if seen_at[r].is_none() && !counted[r] {
                counted[r] = true;
                loops += 1;
            }
        }
        Ok(Self::build(
            src,
            tgt,
            partner,
            f.circles + g.circles + loops,
        ))
    }

    /// Equal boundaries and matchings, and in `Count` mode equal circles.
    pub fn eq_in(&self, other: &TLDiagram, mode: Mode) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.partner == other.partner
            && (mode == Mode::Drop || self.circles == other.circles)
    }

    pub fn to_json(&self) -> DiagramJson {
        let mut pairs: Vec<[String; 2]> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (a.to_string(), b.to_string());
                if a <= b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        pairs.sort();
        DiagramJson {
            src: self.src,
            tgt: self.tgt,
            pairs,
            circles: self.circles,
        }
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {{", self.src, self.tgt)?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}–{b}")?;
        }
        write!(f, "}}, {})", self.circles)
    }
}

/// The wire form of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramJson {
    pub src: usize,
    pub tgt: usize,
    pub pairs: Vec<[String; 2]>,
    pub circles: u64,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn compose(f: &TLDiagram, g: &TLDiagram) -> Result<TLDiagram, DiagramError> {
    f.compose(g)
}

pub fn l_shift(d: &TLDiagram) -> TLDiagram {
    d.l_shift()
}

pub fn diagram_eq(d1: &TLDiagram, d2: &TLDiagram, mode: Mode) -> bool {
    d1.eq_in(d2, mode)
}

/// The diagram of a term. Involutive terms are first translated into the
/// self-adjunction language.
pub fn interp(sig: Sig, t: &Term, mode: Mode) -> Result<TLDiagram, TypeError> {
    type_of(sig, t)?;
    let self_term;
    let t = match sig {
        Sig::SelfAdj => t,
        Sig::Involutive => {
            self_term = functor_fs(t);
            &self_term
        }
    };
    Ok(interp_self(t, mode))
}

fn interp_self(t: &Term, mode: Mode) -> TLDiagram {
    let d = match t {
        Term::Id(a) => TLDiagram::identity(a.0 as usize),
        Term::Phi(a) => TLDiagram::counit(a.0 as usize),
        Term::Gamma(a) => TLDiagram::unit(a.0 as usize),
        Term::Comp(f, g) => interp_self(f, mode)
            .compose(&interp_self(g, mode))
            .expect("typed term composes"),
        Term::Ell(f) => interp_self(f, mode).l_shift(),
        Term::Nr(_) | Term::Nl(_) | Term::Neg(_) => {
            unreachable!("translated to the self-adjunction language")
        }
    };
    match mode {
        Mode::Count => d,
        Mode::Drop => d.with_circles(0),
    }
}

/// Diagram equality of two terms: `Count` mode for the plain and K levels,
/// `Drop` for J. A sound necessary condition for provable equality, never a
/// proof.
pub fn semantic_eq(sig: Sig, mode: Mode, t1: &Term, t2: &Term) -> Result<bool, TypeError> {
    Ok(interp(sig, t1, mode)?.eq_in(&interp(sig, t2, mode)?, mode))
}
