//! Exact construction, classification and separation of almost stretched
//! Gorenstein Artinian local algebras of type `(s, t)`.
//!
//! Everything happens over the rationals inside the finite-dimensional ring
//! `Q[[x1, ..., xh]] / n^(s+1)`:
//!
//! * [`series`] and [`subst`]: truncated power series, Hensel roots and
//!   changes of variables;
//! * [`quotient`]: ideal spans in reduced echelon form, membership, Hilbert
//!   functions, socle filtrations;
//! * [`models`]: the canonical ideals `I_{p,z}` and the model lists;
//! * [`classify`]: the normal-form pipeline emitting checkable certificates;
//! * [`invariants`]: computable isomorphism invariants (square-zero locus,
//!   the square-order invariant sigma);
//! * [`expr`] and [`cli`]: text syntax, JSON output and the command line.

pub mod classify;
pub mod cli;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod linalg;
pub mod models;
pub mod monomial;
pub mod quotient;
pub mod rat;
pub mod series;
pub mod subst;

pub use classify::{classify, classify_ideal, verify_certificate, Certificate};
pub use error::{Error, Result};
pub use expr::{format_expr, parse_expr, parse_ideal, parse_subst};
pub use invariants::{sigma_invariant, square_in_cube, square_zero_locus, LocusReport, SigmaReport};
pub use models::{couple_params, enumerate_models, ideal_from_a, model_ideal, type_check, ModelLabel};
pub use monomial::{ExpVec, MonomialIndex};
pub use quotient::{
    equal_spans, hilbert, member, quadric_initial_part, socle_filtration, span_ideal, CoupleParams,
    EchelonSubspace, HilbertFn, IdealPres,
};
pub use rat::Rat;
pub use series::Series;
pub use subst::{compose, substitute, Substitution};
