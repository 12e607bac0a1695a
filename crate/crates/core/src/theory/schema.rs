//! Equation schemas as pairs of term patterns, with matching and
//! instantiation.

use std::fmt;
use std::sync::OnceLock;

use crate::term::{type_of, ArrowType, Obj, Sig, Term};

use super::Level;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Assoc,
    UnitLeft,
    UnitRight,
    LFunctor1,
    LFunctor2,
    PhiNat,
    GammaNat,
    PhiGammaL1,
    PhiGammaL2,
    PhiGammaK,
    PhiGammaJ,
    GammaPhi,
    Neg1,
    Neg2,
    NrNat,
    NlNat,
    NrTriang,
    NlTriang,
    NrNlK,
    NrNlJ,
    NlNr,
}

impl Rule {
    pub const ALL: [Rule; 21] = [
        Rule::Assoc,
        Rule::UnitLeft,
        Rule::UnitRight,
        Rule::LFunctor1,
        Rule::LFunctor2,
        Rule::PhiNat,
        Rule::GammaNat,
        Rule::PhiGammaL1,
        Rule::PhiGammaL2,
        Rule::PhiGammaK,
        Rule::PhiGammaJ,
        Rule::GammaPhi,
        Rule::Neg1,
        Rule::Neg2,
        Rule::NrNat,
        Rule::NlNat,
        Rule::NrTriang,
        Rule::NlTriang,
        Rule::NrNlK,
        Rule::NrNlJ,
        Rule::NlNr,
    ];

    /// Stable name used in serialized proofs.
    pub fn name(self) -> &'static str {
        match self {
            Rule::Assoc => "assoc",
            Rule::UnitLeft => "unit-left",
            Rule::UnitRight => "unit-right",
            Rule::LFunctor1 => "L-functor-1",
            Rule::LFunctor2 => "L-functor-2",
            Rule::PhiNat => "phi-nat",
            Rule::GammaNat => "gam-nat",
            Rule::PhiGammaL1 => "phigamL-1",
            Rule::PhiGammaL2 => "phigamL-2",
            Rule::PhiGammaK => "phigamK",
            Rule::PhiGammaJ => "phigamJ",
            Rule::GammaPhi => "gamphi",
            Rule::Neg1 => "neg-1",
            Rule::Neg2 => "neg-2",
            Rule::NrNat => "nr-nat",
            Rule::NlNat => "nl-nat",
            Rule::NrTriang => "nr-triang",
            Rule::NlTriang => "nl-triang",
            Rule::NrNlK => "nrnlK",
            Rule::NrNlJ => "nrnlJ",
            Rule::NlNr => "nlnr",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Signatures in which the schema is stated.
    pub fn belongs_to(self, sig: Sig) -> bool {
        match self {
            Rule::Assoc | Rule::UnitLeft | Rule::UnitRight => true,
            Rule::LFunctor1
            | Rule::LFunctor2
            | Rule::PhiNat
            | Rule::GammaNat
            | Rule::PhiGammaL1
            | Rule::PhiGammaL2
            | Rule::PhiGammaK
            | Rule::PhiGammaJ
            | Rule::GammaPhi => sig == Sig::SelfAdj,
            _ => sig == Sig::Involutive,
        }
    }

    /// The weakest theory level containing the schema.
    pub fn level(self) -> Level {
        match self {
            Rule::PhiGammaK | Rule::NrNlK => Level::K,
            Rule::PhiGammaJ | Rule::NrNlJ => Level::J,
            Rule::GammaPhi | Rule::NlNr => Level::Triv,
            _ => Level::Plain,
        }
    }

    /// Assoc, unit and functor laws: the equations modulo which search runs.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            Rule::Assoc
                | Rule::UnitLeft
                | Rule::UnitRight
                | Rule::LFunctor1
                | Rule::LFunctor2
                | Rule::Neg1
                | Rule::Neg2
        )
    }

    pub fn schema(self) -> &'static Schema {
        static SCHEMAS: OnceLock<Vec<Schema>> = OnceLock::new();
        let all = SCHEMAS.get_or_init(|| Rule::ALL.into_iter().map(schema_of).collect());
        &all[self as usize]
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L2R,
    R2L,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L2R => Dir::R2L,
            Dir::R2L => Dir::L2R,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::L2R => "L2R",
            Dir::R2L => "R2L",
        }
    }
}

/// A schema together with the direction it is used in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId {
    pub rule: Rule,
    pub dir: Dir,
}

impl RuleId {
    pub fn new(rule: Rule, dir: Dir) -> Self {
        RuleId { rule, dir }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rule.name(), self.dir.name())
    }
}

/// `var + plus`, i.e. the object variable with `plus` extra `L`s or `¬`s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObjExpr {
    pub var: usize,
    pub plus: u32,
}

pub const OBJ_VARS: [&str; 4] = ["A", "B", "C", "D"];
pub const ARROW_VARS: [&str; 3] = ["f", "g", "h"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pat {
    Arrow(usize),
    Id(ObjExpr),
    Phi(ObjExpr),
    Gamma(ObjExpr),
    Nr(ObjExpr),
    Nl(ObjExpr),
    Comp(Box<Pat>, Box<Pat>),
    Ell(Box<Pat>),
    Neg(Box<Pat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub rule: Rule,
    pub lhs: Pat,
    pub rhs: Pat,
    /// Declared type of each arrow variable the schema uses.
    pub arrow_types: Vec<(usize, ObjExpr, ObjExpr)>,
}

impl Schema {
    pub fn side(&self, dir: Dir) -> (&Pat, &Pat) {
        match dir {
            Dir::L2R => (&self.lhs, &self.rhs),
            Dir::R2L => (&self.rhs, &self.lhs),
        }
    }

    /// Matches the source side of `dir` against `t`, binding every variable
    /// the source side (and the declared types of its arrow variables)
    /// determines.
    pub fn match_source(&self, dir: Dir, sig: Sig, t: &Term) -> Option<Subst> {
        let (src, _) = self.side(dir);
        let mut s = Subst::default();
        if self.match_pat(src, sig, t, &mut s) {
            Some(s)
        } else {
            None
        }
    }

    fn declared_type(&self, var: usize) -> Option<(ObjExpr, ObjExpr)> {
        self.arrow_types
            .iter()
            .find(|(v, _, _)| *v == var)
            .map(|&(_, s, t)| (s, t))
    }

    fn match_pat(&self, p: &Pat, sig: Sig, t: &Term, s: &mut Subst) -> bool {
        match (p, t) {
            (Pat::Arrow(v), _) => {
                if let Some(bound) = &s.arrows[*v] {
                    return bound == t;
                }
                let Ok(ty) = type_of(sig, t) else {
                    return false;
                };
                if let Some((es, et)) = self.declared_type(*v) {
                    if !s.unify(es, ty.src) || !s.unify(et, ty.tgt) {
                        return false;
                    }
                }
                s.arrows[*v] = Some(t.clone());
                true
            }
            (Pat::Id(e), Term::Id(a))
            | (Pat::Phi(e), Term::Phi(a))
            | (Pat::Gamma(e), Term::Gamma(a))
            | (Pat::Nr(e), Term::Nr(a))
            | (Pat::Nl(e), Term::Nl(a)) => s.unify(*e, *a),
            (Pat::Comp(pf, pg), Term::Comp(f, g)) => {
                self.match_pat(pf, sig, f, s) && self.match_pat(pg, sig, g, s)
            }
            (Pat::Ell(pf), Term::Ell(f)) | (Pat::Neg(pf), Term::Neg(f)) => {
                self.match_pat(pf, sig, f, s)
            }
            _ => false,
        }
    }

    /// Checks that each bound arrow variable has its declared type under the
    /// bound objects.
    pub fn bindings_well_typed(&self, sig: Sig, s: &Subst) -> bool {
        for &(v, es, et) in &self.arrow_types {
            let Some(t) = &s.arrows[v] else { continue };
            let Ok(ty) = type_of(sig, t) else {
                return false;
            };
            for (e, actual) in [(es, ty.src), (et, ty.tgt)] {
                match s.objs[e.var] {
                    Some(x) if x + e.plus != actual.0 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Both sides instantiated under `s`.
    pub fn sides(&self, dir: Dir, s: &Subst) -> Option<(Term, Term)> {
        let (src, tgt) = self.side(dir);
        Some((instantiate(src, s)?, instantiate(tgt, s)?))
    }

    /// Binds the declared type of arrow variable `var` from `t`.
    pub fn bind_arrow(&self, sig: Sig, s: &mut Subst, var: usize, t: Term) -> bool {
        let Ok(ty) = type_of(sig, &t) else {
            return false;
        };
        if let Some((es, et)) = self.declared_type(var) {
            if !s.unify(es, ty.src) || !s.unify(et, ty.tgt) {
                return false;
            }
        }
        s.arrows[var] = Some(t);
        true
    }

    /// Type shared by both sides under `s`, if both sides typecheck alike.
    pub fn instance_type(&self, sig: Sig, s: &Subst) -> Option<ArrowType> {
        let l = type_of(sig, &instantiate(&self.lhs, s)?).ok()?;
        let r = type_of(sig, &instantiate(&self.rhs, s)?).ok()?;
        (l == r).then_some(l)
    }
}

fn instantiate(p: &Pat, s: &Subst) -> Option<Term> {
    let obj = |e: &ObjExpr| s.objs[e.var].map(|x| Obj(x + e.plus));
    Some(match p {
        Pat::Arrow(v) => s.arrows[*v].clone()?,
        Pat::Id(e) => Term::Id(obj(e)?),
        Pat::Phi(e) => Term::Phi(obj(e)?),
        Pat::Gamma(e) => Term::Gamma(obj(e)?),
        Pat::Nr(e) => Term::Nr(obj(e)?),
        Pat::Nl(e) => Term::Nl(obj(e)?),
        Pat::Comp(f, g) => Term::comp(instantiate(f, s)?, instantiate(g, s)?),
        Pat::Ell(f) => Term::ell(instantiate(f, s)?),
        Pat::Neg(f) => Term::neg(instantiate(f, s)?),
    })
}

/// Values for a schema's object and arrow variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subst {
    pub objs: [Option<u32>; 4],
    pub arrows: [Option<Term>; 3],
}

impl Subst {
    /// Binds `e.var` so that `e` denotes `value`.
    pub fn unify(&mut self, e: ObjExpr, value: Obj) -> bool {
        let Some(x) = value.0.checked_sub(e.plus) else {
            return false;
        };
        match self.objs[e.var] {
            Some(y) => y == x,
            None => {
                self.objs[e.var] = Some(x);
                true
            }
        }
    }

    pub fn with_obj(mut self, var: usize, value: u32) -> Self {
        self.objs[var] = Some(value);
        self
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let r = if first { Ok(()) } else { f.write_str(", ") };
            first = false;
            r
        };
        for (i, o) in self.objs.iter().enumerate() {
            if let Some(x) = o {
                sep(f)?;
                write!(f, "{}={}", OBJ_VARS[i], x)?;
            }
        }
        for (i, t) in self.arrows.iter().enumerate() {
            if let Some(t) = t {
                sep(f)?;
                write!(f, "{}={}", ARROW_VARS[i], t)?;
            }
        }
        Ok(())
    }
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const F: usize = 0;
const G: usize = 1;
const H: usize = 2;

fn o(var: usize, plus: u32) -> ObjExpr {
    ObjExpr { var, plus }
}

fn comp(f: Pat, g: Pat) -> Pat {
    Pat::Comp(Box::new(f), Box::new(g))
}

fn ell(f: Pat) -> Pat {
    Pat::Ell(Box::new(f))
}

fn neg(f: Pat) -> Pat {
    Pat::Neg(Box::new(f))
}

fn schema_of(rule: Rule) -> Schema {
    use Pat::*;
    let f = || Arrow(F);
    let g = || Arrow(G);
    let h = || Arrow(H);
    let a = o(A, 0);
    let la = o(A, 1);
    let lla = o(A, 2);
    let (lhs, rhs, arrow_types) = match rule {
        Rule::Assoc => (
            comp(comp(f(), g()), h()),
            comp(f(), comp(g(), h())),
            vec![
                (F, o(C, 0), o(D, 0)),
                (G, o(B, 0), o(C, 0)),
                (H, a, o(B, 0)),
            ],
        ),
        Rule::UnitLeft => (comp(Id(o(B, 0)), f()), f(), vec![(F, a, o(B, 0))]),
        Rule::UnitRight => (comp(f(), Id(a)), f(), vec![(F, a, o(B, 0))]),
        Rule::LFunctor1 => (ell(Id(a)), Id(la), vec![]),
        Rule::LFunctor2 => (
            ell(comp(f(), g())),
            comp(ell(f()), ell(g())),
            vec![(F, o(B, 0), o(C, 0)), (G, a, o(B, 0))],
        ),
        Rule::PhiNat => (
            comp(f(), Phi(a)),
            comp(Phi(o(B, 0)), ell(ell(f()))),
            vec![(F, a, o(B, 0))],
        ),
        Rule::GammaNat => (
            comp(ell(ell(f())), Gamma(a)),
            comp(Gamma(o(B, 0)), f()),
            vec![(F, a, o(B, 0))],
        ),
        Rule::PhiGammaL1 => (comp(Phi(la), ell(Gamma(a))), Id(la), vec![]),
        Rule::PhiGammaL2 => (comp(ell(Phi(a)), Gamma(la)), Id(la), vec![]),
        Rule::PhiGammaK => (
            ell(comp(Phi(a), Gamma(a))),
            comp(Phi(la), Gamma(la)),
            vec![],
        ),
        Rule::PhiGammaJ => (comp(Phi(a), Gamma(a)), Id(a), vec![]),
        Rule::GammaPhi => (comp(Gamma(a), Phi(a)), Id(lla), vec![]),
        Rule::Neg1 => (neg(Id(a)), Id(la), vec![]),
        Rule::Neg2 => (
            neg(comp(f(), g())),
            comp(neg(g()), neg(f())),
            vec![(F, o(B, 0), o(C, 0)), (G, a, o(B, 0))],
        ),
        Rule::NrNat => (
            comp(f(), Nr(a)),
            comp(Nr(o(B, 0)), neg(neg(f()))),
            vec![(F, a, o(B, 0))],
        ),
        Rule::NlNat => (
            comp(neg(neg(f())), Nl(a)),
            comp(Nl(o(B, 0)), f()),
            vec![(F, a, o(B, 0))],
        ),
        Rule::NrTriang => (comp(Nr(la), neg(Nr(a))), Id(la), vec![]),
        Rule::NlTriang => (comp(neg(Nl(a)), Nl(la)), Id(la), vec![]),
        Rule::NrNlK => (neg(comp(Nr(a), Nl(a))), comp(Nr(la), Nl(la)), vec![]),
        Rule::NrNlJ => (comp(Nr(a), Nl(a)), Id(a), vec![]),
        Rule::NlNr => (comp(Nl(a), Nr(a)), Id(lla), vec![]),
    };
    Schema {
        rule,
        lhs,
        rhs,
        arrow_types,
    }
}

/// Pretty form of a pattern, e.g. `phi[A+1] . L gam[A]`.
pub fn show_pat(p: &Pat) -> String {
    fn obj(e: &ObjExpr) -> String {
        if e.plus == 0 {
            OBJ_VARS[e.var].to_string()
        } else {
            format!("{}+{}", OBJ_VARS[e.var], e.plus)
        }
    }
    fn operand(p: &Pat) -> String {
        match p {
            Pat::Comp(..) => format!("({})", show_pat(p)),
            _ => show_pat(p),
        }
    }
    match p {
        Pat::Arrow(v) => ARROW_VARS[*v].to_string(),
        Pat::Id(e) => format!("1[{}]", obj(e)),
        Pat::Phi(e) => format!("phi[{}]", obj(e)),
        Pat::Gamma(e) => format!("gam[{}]", obj(e)),
        Pat::Nr(e) => format!("nr[{}]", obj(e)),
        Pat::Nl(e) => format!("nl[{}]", obj(e)),
        Pat::Comp(f, g) => format!("{} . {}", operand(f), show_pat(g)),
        Pat::Ell(f) => format!("L {}", operand(f)),
        Pat::Neg(f) => format!("neg {}", operand(f)),
    }
}
