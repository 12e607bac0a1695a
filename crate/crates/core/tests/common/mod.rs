//! Test oracles that share no code with the library's semantics.
#![allow(dead_code)]

use std::collections::BTreeSet;

use adjcalc::{Sig, Term};

/// A diagram as seen by the oracle: boundary sizes, the set of boundary
/// pairs written as `("T1", "B3")` with the smaller label first, and the
/// number of closed loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub src: usize,
    pub tgt: usize,
    pub pairs: BTreeSet<(String, String)>,
    pub circles: usize,
}

/// A string net: nodes of degree at most two, with top and bottom boundary
/// lists (left to right).
struct Net {
    adj: Vec<Vec<usize>>,
}

impl Net {
    fn node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn nodes(&mut self, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.node()).collect()
    }

    /// Builds the net of `t`; returns `(top, bottom)`. Involutive terms are
    /// drawn directly: `¬f` is `f` upside down with one new strand on the
    /// left.
    fn build(&mut self, t: &Term) -> (Vec<usize>, Vec<usize>) {
        match t {
            Term::Id(a) => {
                let n = a.0 as usize;
                let (top, bot) = (self.nodes(n), self.nodes(n));
                for i in 0..n {
                    self.link(top[i], bot[i]);
                }
                (top, bot)
            }
            Term::Phi(a) | Term::Nr(a) => {
                let n = a.0 as usize;
                let (top, bot) = (self.nodes(n + 2), self.nodes(n));
                self.link(top[0], top[1]);
                for i in 0..n {
                    self.link(top[i + 2], bot[i]);
                }
                (top, bot)
            }
            Term::Gamma(a) | Term::Nl(a) => {
                let n = a.0 as usize;
                let (top, bot) = (self.nodes(n), self.nodes(n + 2));
                self.link(bot[0], bot[1]);
                for i in 0..n {
                    self.link(top[i], bot[i + 2]);
                }
                (top, bot)
            }
            Term::Comp(f, g) => {
                let (gt, gb) = self.build(g);
                let (ft, fb) = self.build(f);
                assert_eq!(gb.len(), ft.len(), "oracle: ill-typed composition");
                for (a, b) in gb.iter().zip(&ft) {
                    self.link(*a, *b);
                }
                (gt, fb)
            }
            Term::Ell(f) => {
                let (mut top, mut bot) = self.build(f);
                let (x, y) = (self.node(), self.node());
                self.link(x, y);
                top.insert(0, x);
                bot.insert(0, y);
                (top, bot)
            }
            Term::Neg(f) => {
                let (bot, top) = self.build(f);
                let (mut top, mut bot) = (top, bot);
                let (x, y) = (self.node(), self.node());
                self.link(x, y);
                top.insert(0, x);
                bot.insert(0, y);
                (top, bot)
            }
        }
    }
}

/// Path-traces the net of `t`.
pub fn trace(_sig: Sig, t: &Term) -> Traced {
    let mut net = Net { adj: Vec::new() };
    let (top, bot) = net.build(t);
    let mut label = vec![None; net.adj.len()];
    for (i, &n) in top.iter().enumerate() {
        label[n] = Some(format!("T{}", i + 1));
    }
    for (i, &n) in bot.iter().enumerate() {
        label[n] = Some(format!("B{}", i + 1));
    }
    let mut visited = vec![false; net.adj.len()];
    let mut pairs = BTreeSet::new();
    for &start in top.iter().chain(&bot) {
        if visited[start] {
            continue;
        }
        let (mut prev, mut cur) = (None, start);
        visited[cur] = true;
        while let Some(next) = net.adj[cur].iter().copied().find(|&n| Some(n) != prev) {
            prev = Some(cur);
            cur = next;
            visited[cur] = true;
            if label[cur].is_some() {
                break;
            }
        }
        let (a, b) = (
            label[start].clone().unwrap(),
            label[cur].clone().expect("path ends on the boundary"),
        );
        pairs.insert(if a <= b { (a, b) } else { (b, a) });
    }
    let mut circles = 0;
    for n in 0..net.adj.len() {
        if visited[n] {
            continue;
        }
        circles += 1;
        let mut stack = vec![n];
        visited[n] = true;
        while let Some(x) = stack.pop() {
            for &y in &net.adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    Traced {
        src: top.len(),
        tgt: bot.len(),
        pairs,
        circles,
    }
}

/// The library diagram in the oracle's terms.
pub fn as_traced(d: &adjcalc::TLDiagram) -> Traced {
    Traced {
        src: d.src(),
        tgt: d.tgt(),
        pairs: d
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (a.to_string(), b.to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect(),
        circles: d.circles() as usize,
    }
}

/// Instances `(lhs, rhs)` of `rule`'s schema with object variable `A = a`.
/// Arrow variables are filled, in dependency order, from `pool` seeded
/// random terms whose source is already fixed by earlier bindings; schemas
/// without arrow variables have one instance.
pub fn schema_instances(
    sig: Sig,
    rule: adjcalc::Rule,
    a: u32,
    pool: usize,
    max_size: usize,
    seed: u64,
) -> Vec<(Term, Term)> {
    use adjcalc::gen::{random_term, End, DEFAULT_MAX_INDEX};
    use adjcalc::theory::{Dir, Subst};
    use rand::SeedableRng;

    let schema = rule.schema();
    let base = Subst::default().with_obj(0, a);
    let vars: Vec<usize> = schema
        .arrow_types
        .iter()
        .rev()
        .map(|&(v, _, _)| v)
        .collect();
    let count = if vars.is_empty() { 1 } else { pool };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ ((rule as u64) << 32) ^ a as u64);
    let mut out = Vec::new();
    for _ in 0..count {
        let mut s = base.clone();
        for &v in &vars {
            let (es, _) = schema
                .arrow_types
                .iter()
                .find(|(w, _, _)| *w == v)
                .map(|&(_, es, et)| (es, et))
                .unwrap();
            let src =
                s.objs[es.var].expect("arrow variables are bound in dependency order") + es.plus;
            let size = rand::Rng::gen_range(&mut rng, 1..=max_size);
            let t = random_term(sig, &mut rng, size, Some(End::Src(src)), DEFAULT_MAX_INDEX);
            assert!(schema.bind_arrow(sig, &mut s, v, t));
        }
        let (l, r) = schema.sides(Dir::L2R, &s).expect("all variables bound");
        out.push((l, r));
    }
    out
}
