//! Arrow terms for the free self-adjunction and the free involutive
//! adjunction on one generator, their equational theories, and a
//! Temperley-Lieb diagram semantics that counts circles.
//!
//! ```
//! use adjcalc::{eq_search, parse, EqOptions, Level, Sig, Theory};
//!
//! let lhs = parse(Sig::SelfAdj, "phi[1] . L gam[0]").unwrap();
//! let rhs = parse(Sig::SelfAdj, "1[1]").unwrap();
//! let th = Theory::new(Sig::SelfAdj, Level::Plain);
//! let verdict = eq_search(th, &lhs, &rhs, EqOptions::budget(1000)).unwrap();
//! assert_eq!(verdict.proof().unwrap().len(), 1);
//! ```

pub mod diagram;
pub mod error;
pub mod gen;
pub mod term;
pub mod text;
pub mod theory;
pub mod translate;

pub use diagram::{
    compose, diagram_eq, interp, l_shift, render_ascii, render_svg, semantic_eq, Mode, TLDiagram,
};
pub use error::{
    DiagramError, ParseError, ProofFailure, ProofParseError, QueryError, StepIndex, TypeError,
};
pub use gen::{gen_terms, TermGen};
pub use term::{type_of, ArrowType, Obj, Path, Sig, Term};
pub use text::{parse, print, SourceSpan};
pub use theory::{
    axioms, decide_trivial, eq_search, rewrite_neighbors, search_proof, verify_proof, EqOptions,
    EqVerdict, Level, Proof, Rule, RuleId, Theory, Witness, DEFAULT_BUDGET,
};
pub use translate::{functor_fa, functor_fs, l_in_a, neg_in_s, translate};
