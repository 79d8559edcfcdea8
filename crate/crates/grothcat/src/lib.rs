//! Quivers with relations, finitely presented categories, and quiver
//! presentations of Grothendieck constructions of functors into k-linear
//! categories.
//!
//! The library computes, for a finitely presented index category
//! I = ⟨Q | R⟩ and a functor X: I → k-Cat whose values are presented by
//! quivers with linear relations:
//!
//! - the quotient category ⟨Q | R⟩ itself (bounded congruence saturation,
//!   hom sets, composition table): [`congruence`];
//! - hom-space bases and normal forms of kQ/⟨R⟩ over an exact field, plus
//!   algebra-coefficient variants AQ: [`path_algebra`];
//! - the Grothendieck construction Gr(X) as a concrete linear category and
//!   the diagonal case Gr(Δ(A)) ≅ AQ/⟨R⟩_A: [`grothendieck`];
//! - a synthesized quiver presentation (Q′, R′₁∪R′₂∪R′₃) of Gr(X) together
//!   with machinery that verifies it against the concrete construction:
//!   [`presentation_synth`].
//!
//! The `grothcat` binary exposes all of this behind a JSON problem-file
//! format; see the crate README and `docs/input-schema.md`.
//!
//! ```
//! use grothcat::congruence::saturate;
//! use grothcat::presentation_synth::{build_qprime, build_relations};
//! use grothcat::problem::{parse_str, Overrides};
//!
//! // A one-object index category with g² = g³ acting on a three-vertex
//! // fiber by shifting vertices.
//! let text = r#"{
//!     "index_category": {
//!         "quiver": {"vertices": ["1"],
//!                    "arrows": [{"id": "g", "tail": "1", "head": "1"}]},
//!         "relations": [{"lhs": ["g", "g"], "rhs": ["g", "g", "g"]}]
//!     },
//!     "fibers": {"1": {"quiver": {"vertices": ["1", "2", "3"],
//!         "arrows": [{"id": "a", "tail": "1", "head": "2"},
//!                    {"id": "b", "tail": "2", "head": "3"}]}}},
//!     "actions": {"g": {"vertex_map": {"1": "2", "2": "3", "3": "3"}}}
//! }"#;
//! let problem = parse_str(text, &Overrides::default()).unwrap();
//! let i_cat = saturate(&problem.i_quiver, &problem.i_relations, problem.index_bound).unwrap();
//! let functor = problem.functor.as_ref().unwrap();
//! let qprime = build_qprime(functor, i_cat.quiver()).unwrap();
//! let relations = build_relations(functor, &i_cat, &qprime).unwrap();
//! assert_eq!(qprime.quiver().vertex_count(), 3);
//! assert_eq!(qprime.quiver().arrow_count(), 5);
//! assert_eq!(relations.len(), 5);
//! ```

pub mod cli;
pub mod congruence;
pub mod functor_model;
pub mod grothendieck;
pub mod linalg;
pub mod path_algebra;
pub mod presentation_synth;
pub mod problem;
pub mod quiver;
pub mod scalar;

use congruence::PartialSaturation;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("cannot compose `{later}` after `{earlier}`: endpoints do not match")]
    Composition { later: String, earlier: String },
    #[error("paths `{0}` and `{1}` are not parallel")]
    NotParallel(String, String),
    #[error("{0}")]
    Input(String),
    #[error("saturation did not stabilize within bound {bound}; the category may be infinite")]
    NonStabilizing { bound: usize, partial: PartialSaturation },
    #[error("hom space ({src}, {dst}) may be infinite-dimensional: some path of length {bound} does not reduce to shorter paths")]
    PossiblyInfinite { src: String, dst: String, bound: usize },
    #[error(
        "relation ({lhs}, {rhs}) is not respected: images `{lhs_image}` and `{rhs_image}` differ"
    )]
    Factorization { lhs: String, rhs: String, lhs_image: String, rhs_image: String },
    #[error("path `{path}` exceeds the bound {bound} of this hom basis")]
    OutOfBound { path: String, bound: usize },
    #[error("vertex map does not induce a functor: {0}")]
    Induction(String),
    #[error("functor assignment is invalid:\n{0}")]
    InvalidFunctor(String),
}
