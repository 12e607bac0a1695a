//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test -p adjcalc-cli --test acceptance -- --nocapture` to see the
//! table.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use adjcalc::gen::{enumerate_terms, random_terms};
use adjcalc::{
    axioms, diagram_eq, eq_search, functor_fa, functor_fs, interp, neg_in_s, parse, print, type_of,
    verify_proof, ArrowType, EqOptions, EqVerdict, Level, Mode, Proof, Sig, TLDiagram, Term,
    Theory, Witness,
};
use adjcalc_cli::{run, EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LIMIT_AXIOMS: Duration = Duration::from_secs(10);
const LIMIT_TRIANGLES: Duration = Duration::from_secs(1);
const LIMIT_SEPARATION: Duration = Duration::from_secs(1);
const LIMIT_ROUND_TRIP: Duration = Duration::from_secs(60);
const LIMIT_DOUBLE_NEG: Duration = Duration::from_secs(30);
const LIMIT_TRIVIAL: Duration = Duration::from_secs(60);
const LIMIT_REPLAY: Duration = Duration::from_secs(10);
const LIMIT_PARSER: Duration = Duration::from_secs(2);
/// Largest unknown rate tolerated in the trivial-theory proof cross-check.
const MAX_UNKNOWN_RATE: f64 = 0.10;
const SEARCH_BUDGET: usize = 100_000;

/// Proofs and diagrams produced by the suites, checked again by 7 and 9.
#[derive(Default)]
struct Produced {
    proofs: Vec<(Theory, Proof)>,
    diagrams: Vec<TLDiagram>,
}

impl Produced {
    fn diagram(&mut self, sig: Sig, t: &Term, mode: Mode) -> TLDiagram {
        let d = interp(sig, t, mode).expect("suite terms typecheck");
        self.diagrams.push(d.clone());
        d
    }

    fn same(&mut self, sig: Sig, a: &Term, b: &Term, mode: Mode) -> bool {
        let (da, db) = (self.diagram(sig, a, mode), self.diagram(sig, b, mode));
        diagram_eq(&da, &db, mode)
    }

    /// Runs `eq_search` and records any proof.
    fn eq(&mut self, th: Theory, a: &Term, b: &Term, opts: EqOptions) -> EqVerdict {
        let v = eq_search(th, a, b, opts).expect("suite queries are well posed");
        if let EqVerdict::Equal(Witness::Proof(p)) = &v {
            self.proofs.push((th, p.clone()));
        }
        v
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> adjcalc_cli::Output {
    run(
        std::iter::once("adjcalc").chain(args.iter().copied()),
        &mut std::io::empty(),
    )
}

fn c1_axiom_soundness(p: &mut Produced) -> Outcome {
    let mut n = 0;
    for sig in [Sig::SelfAdj, Sig::Involutive] {
        for schema in axioms(Theory::new(sig, Level::Triv)) {
            let mode = match schema.rule.level() {
                Level::Plain | Level::K => Some(Mode::Count),
                Level::J => Some(Mode::Drop),
                Level::Triv => None,
            };
            for a in 0..=5 {
                for (l, r) in common::schema_instances(sig, schema.rule, a, 200, 6, 1) {
                    n += 1;
                    let (tl, tr) = (type_of(sig, &l), type_of(sig, &r));
                    ensure(tl.is_ok() && tl == tr, || {
                        format!("{}: {l} and {r} differ in type", schema.rule)
                    })?;
                    if let Some(mode) = mode {
                        ensure(p.same(sig, &l, &r, mode), || {
                            format!("{}: {l} vs {r} in {mode:?}", schema.rule)
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{n} instances"))
}

fn c2_triangles(p: &mut Produced) -> Outcome {
    let mut n = 0;
    for a in 0..=6u32 {
        let cases = [
            (
                Sig::SelfAdj,
                Term::comp(Term::phi(a + 1), Term::ell(Term::gamma(a))),
            ),
            (
                Sig::SelfAdj,
                Term::comp(Term::ell(Term::phi(a)), Term::gamma(a + 1)),
            ),
            (
                Sig::Involutive,
                Term::comp(Term::nr(a + 1), Term::neg(Term::nr(a))),
            ),
            (
                Sig::Involutive,
                Term::comp(Term::neg(Term::nl(a)), Term::nl(a + 1)),
            ),
        ];
        for (sig, lhs) in cases {
            let v = p.eq(
                Theory::new(sig, Level::Plain),
                &lhs,
                &Term::id(a + 1),
                EqOptions::budget(1000),
            );
            let len = v.proof().map(Proof::len);
            ensure(len == Some(1), || {
                format!(
                    "{lhs} = 1[{}]: {} with proof length {len:?}",
                    a + 1,
                    v.name()
                )
            })?;
            p.same(sig, &lhs, &Term::id(a + 1), Mode::Count);
            n += 1;
        }
    }
    Ok(format!("{n} equations, each in one step"))
}

fn c3_separation(p: &mut Produced) -> Outcome {
    let s = Sig::SelfAdj;
    let loop0 = Term::comp(Term::phi(0), Term::gamma(0));
    let k = p.eq(
        Theory::new(s, Level::K),
        &loop0,
        &Term::id(0),
        EqOptions::default(),
    );
    ensure(matches!(k, EqVerdict::Distinct { .. }), || {
        format!("K: {}", k.name())
    })?;
    let j = p.eq(
        Theory::new(s, Level::J),
        &loop0,
        &Term::id(0),
        EqOptions::default(),
    );
    ensure(matches!(j, EqVerdict::Equal(_)), || {
        format!("J: {}", j.name())
    })?;
    let a = Term::ell(loop0.clone());
    let b = Term::comp(Term::phi(1), Term::gamma(1));
    let kk = p.eq(Theory::new(s, Level::K), &a, &b, EqOptions::default());
    ensure(matches!(kk, EqVerdict::Equal(_)), || {
        format!("K, moved circle: {}", kk.name())
    })?;
    let circles = (
        p.diagram(s, &a, Mode::Count).circles(),
        p.diagram(s, &b, Mode::Count).circles(),
    );
    ensure(circles == (1, 1), || format!("circle counts {circles:?}"))?;
    Ok("distinct at K, equal at J, moved circle equal at K".into())
}

fn c4_round_trip(p: &mut Produced) -> Outcome {
    let mut proved = 0;
    for (sig, there_and_back) in [
        (
            Sig::SelfAdj,
            (|f: &Term| functor_fs(&functor_fa(f))) as fn(&Term) -> Term,
        ),
        (Sig::Involutive, |f: &Term| functor_fa(&functor_fs(f))),
    ] {
        for f in random_terms(sig, 10, 500, 4) {
            ensure(p.same(sig, &there_and_back(&f), &f, Mode::Count), || {
                format!("{sig}: diagrams differ for {f}")
            })?;
        }
        for f in enumerate_terms(sig, 4, 3) {
            let v = p.eq(
                Theory::new(sig, Level::Plain),
                &there_and_back(&f),
                &f,
                EqOptions::budget(SEARCH_BUDGET),
            );
            ensure(matches!(v, EqVerdict::Equal(_)), || {
                format!("{sig}: {} for {f}", v.name())
            })?;
            proved += 1;
        }
    }
    Ok(format!("1000 semantic checks, {proved} proofs at plain"))
}

fn c5_double_negation(p: &mut Produced) -> Outcome {
    let s = Sig::SelfAdj;
    let ll = |f: &Term| Term::ell(Term::ell(f.clone()));
    let nn = |f: &Term| neg_in_s(&neg_in_s(f));
    for f in random_terms(s, 8, 300, 5) {
        ensure(p.same(s, &ll(&f), &nn(&f), Mode::Count), || {
            format!("diagrams differ for {f}")
        })?;
    }
    let small = enumerate_terms(s, 4, 3);
    for f in &small {
        let v = p.eq(
            Theory::new(s, Level::Plain),
            &ll(f),
            &nn(f),
            EqOptions::budget(SEARCH_BUDGET),
        );
        ensure(matches!(v, EqVerdict::Equal(_)), || {
            format!("{} for {f}", v.name())
        })?;
    }
    Ok(format!(
        "300 semantic checks, {} proofs at plain",
        small.len()
    ))
}

fn c6_trivial(p: &mut Produced) -> Outcome {
    let s = Sig::SelfAdj;
    let th = Theory::new(s, Level::Triv);
    let terms = enumerate_terms(s, 5, 3);
    let mut by: HashMap<ArrowType, Vec<&Term>> = HashMap::new();
    for t in &terms {
        by.entry(type_of(s, t).unwrap()).or_default().push(t);
    }
    let mut types: Vec<_> = by.keys().copied().collect();
    types.sort_by_key(|ty| (ty.src.0, ty.tgt.0));
    let mut equal_pairs = Vec::new();
    for ty in &types {
        for a in &by[ty] {
            for b in &by[ty] {
                equal_pairs.push((*a, *b));
            }
        }
    }
    for (a, b) in &equal_pairs {
        let v = p.eq(th, a, b, EqOptions::default());
        ensure(v == EqVerdict::Equal(Witness::Preorder), || {
            format!("{a} vs {b}: {}", v.name())
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut rejected = 0;
    while rejected < 100 {
        let (a, b) = (
            terms.choose(&mut rng).unwrap(),
            terms.choose(&mut rng).unwrap(),
        );
        if type_of(s, a) == type_of(s, b) {
            continue;
        }
        let o = cli(&[
            "eq",
            "--sig",
            "self",
            "--theory",
            "triv",
            &print(a),
            &print(b),
        ]);
        ensure(
            o.code == EXIT_ERROR && o.stderr.lines().count() == 1,
            || format!("{a} vs {b}: exit {}", o.code),
        )?;
        rejected += 1;
    }

    let budget = SEARCH_BUDGET.to_string();
    let step = equal_pairs.len() / 50;
    let mut unknown = 0;
    for (a, b) in equal_pairs.iter().step_by(step).take(50) {
        let (pa, pb) = (print(a), print(b));
        let o = cli(&[
            "eq",
            "--sig",
            "self",
            "--theory",
            "triv",
            "--with-proof",
            "--emit-proof",
            "--budget",
            &budget,
            &pa,
            &pb,
        ]);
        match o.code {
            EXIT_OK => {
                let text = o
                    .stdout
                    .strip_prefix("equal\n")
                    .ok_or_else(|| format!("{pa} vs {pb}: {}", o.stdout))?;
                let proof = Proof::parse_text(s, text).map_err(|e| format!("{pa} vs {pb}: {e}"))?;
                ensure(proof.start == **a && proof.end() == *b, || {
                    format!("{pa} vs {pb}: wrong endpoints")
                })?;
                p.proofs.push((th, proof));
            }
            EXIT_UNKNOWN => unknown += 1,
            c => return Err(format!("{pa} vs {pb}: exit {c}")),
        }
    }
    let rate = unknown as f64 / 50.0;
    ensure(rate <= MAX_UNKNOWN_RATE, || format!("unknown rate {rate}"))?;
    Ok(format!(
        "{} equal pairs, 100 rejected, {unknown}/50 unknown with proof search",
        equal_pairs.len()
    ))
}

fn c7_replay(p: &Produced) -> Outcome {
    for (th, proof) in &p.proofs {
        verify_proof(*th, proof).map_err(|e| format!("{}: {e}", proof.start))?;
    }
    let nonempty: Vec<&(Theory, Proof)> = p.proofs.iter().filter(|(_, q)| !q.is_empty()).collect();
    ensure(nonempty.len() >= 100, || {
        format!("only {} non-empty proofs", nonempty.len())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mutants = 0;
    for (th, proof) in nonempty.choose_multiple(&mut rng, 100) {
        for i in 0..proof.len() {
            let mut bad = proof.clone();
            let ty = type_of(th.sig, &bad.steps[i].result).unwrap();
            bad.steps[i].result = Term::comp(Term::id(ty.tgt.0), bad.steps[i].result.clone());
            let mut flipped = proof.clone();
            flipped.steps[i].rule.dir = flipped.steps[i].rule.dir.flip();
            let mut moved = proof.clone();
            moved.steps[i].path.push(1);
            for m in [bad, flipped, moved] {
                ensure(verify_proof(*th, &m).is_err(), || {
                    format!("mutant of step {i} accepted: {}", m.to_text())
                })?;
                mutants += 1;
            }
        }
    }
    Ok(format!(
        "{} proofs replayed, {mutants} mutants rejected",
        p.proofs.len()
    ))
}

fn c8_parser() -> Outcome {
    for sig in [Sig::SelfAdj, Sig::Involutive] {
        for t in random_terms(sig, 16, 1000, 8) {
            let s = print(&t);
            ensure(s.is_ascii(), || format!("non-ASCII output {s}"))?;
            let back = parse(sig, &s).map_err(|e| format!("{s}: {e}"))?;
            ensure(back == t, || format!("{s} reparsed differently"))?;
        }
    }
    Ok("2000 round trips".into())
}

fn c9_planarity_and_determinism(p: &Produced) -> Outcome {
    let crossing = p.diagrams.iter().filter(|d| !d.is_planar()).count();
    ensure(crossing == 0, || format!("{crossing} crossing diagrams"))?;
    let argvs: [&[&str]; 4] = [
        &[
            "eq",
            "--sig",
            "self",
            "--theory",
            "k",
            "--emit-proof",
            "L (phi[0] . gam[0])",
            "phi[1] . gam[1]",
        ],
        &[
            "eq",
            "--sig",
            "inv",
            "--theory",
            "plain",
            "--emit-proof",
            "--json",
            "nr[1] . neg nr[0]",
            "1[1]",
        ],
        &[
            "render",
            "--sig",
            "self",
            "--format",
            "svg",
            "gam[1] . L (phi[0] . gam[0])",
        ],
        &["normalize", "--sig", "inv", "neg neg nl[0]"],
    ];
    for argv in argvs {
        let first = cli(argv);
        for _ in 0..5 {
            ensure(cli(argv) == first, || {
                format!("{argv:?} differs between runs")
            })?;
        }
    }
    Ok(format!(
        "{} diagrams planar, CLI output repeatable",
        p.diagrams.len()
    ))
}

#[test]
fn acceptance() {
    let mut p = Produced::default();
    let mut results: Vec<(u32, &str, Option<Duration>, Outcome, Duration)> = Vec::new();
    let mut timed = |n,
                     name,
                     limit: Option<Duration>,
                     f: &mut dyn FnMut(&mut Produced) -> Outcome,
                     p: &mut Produced| {
        let start = Instant::now();
        let out = f(p);
        results.push((n, name, limit, out, start.elapsed()));
    };
    timed(
        1,
        "axiom soundness",
        Some(LIMIT_AXIOMS),
        &mut c1_axiom_soundness,
        &mut p,
    );
    timed(
        2,
        "triangular equations",
        Some(LIMIT_TRIANGLES),
        &mut c2_triangles,
        &mut p,
    );
    timed(
        3,
        "K/J separation",
        Some(LIMIT_SEPARATION),
        &mut c3_separation,
        &mut p,
    );
    timed(
        4,
        "round-trip isomorphism",
        Some(LIMIT_ROUND_TRIP),
        &mut c4_round_trip,
        &mut p,
    );
    timed(
        5,
        "LL = neg neg",
        Some(LIMIT_DOUBLE_NEG),
        &mut c5_double_negation,
        &mut p,
    );
    timed(
        6,
        "trivial preorder",
        Some(LIMIT_TRIVIAL),
        &mut c6_trivial,
        &mut p,
    );
    timed(
        7,
        "proof replay",
        Some(LIMIT_REPLAY),
        &mut |p| c7_replay(p),
        &mut p,
    );
    timed(
        8,
        "parser round trip",
        Some(LIMIT_PARSER),
        &mut |_| c8_parser(),
        &mut p,
    );
    timed(
        9,
        "planarity and determinism",
        None,
        &mut |p| c9_planarity_and_determinism(p),
        &mut p,
    );

    let mut failed = 0;
    for (n, name, limit, out, took) in &results {
        let late = limit.is_some_and(|l| *took > l);
        let pass = out.is_ok() && !late;
        failed += usize::from(!pass);
        let detail = match out {
            Ok(s) | Err(s) => s,
        };
        let bound = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        let late = if late { ", over time" } else { "" };
        println!(
            "criterion {n} {name}: {} in {:.2}s{bound}: {detail}{late}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
