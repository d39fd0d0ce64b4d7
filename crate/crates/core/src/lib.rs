//! Exact verification of finite set-theoretic solutions of the Yang-Baxter
//! equation, the braces that produce them, and their Drinfeld twists.
//!
//! Everything is computed over exact rings: rationals and polynomials in the
//! spectral parameters. Identities are checked by structural equality of
//! canonical sparse matrices, never by tolerance.

pub mod baxter;
pub mod brace;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod frt;
pub mod lyubashenko;
pub mod matrix;
pub mod multi_twist;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod solution;
pub mod twist;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use matrix::{embed, kron, partial_transpose, poly_eval, RingMatrix};
pub use report::{Check, VerificationReport};
pub use scalar::{Indeterminate, Poly, Rational};
pub use solution::{
    check_constraints, enumerate_solutions, linearize, validate_solution, ConstraintReport, FiniteSolution,
};
pub use brace::{enumerate_braces, solution_from_brace, validate_brace, LeftBrace};
pub use twist::{
    build_eigen_pairing, twist_alt, twist_closed_form, twist_from_eigen, verify_similarity, EigenPairing,
};
pub use multi_twist::{
    cocycle_three, coproduct_twists, monodromy, n_twist, verify_factorization, verify_intertwining, Flavor,
    TwistFamily,
};
pub use baxter::{
    baxterize, verify_baxterized_factorization, verify_crossing, verify_spectral_ybe, verify_unitarity,
    verify_yangian_twist, BaxterizedR,
};
pub use frt::{build_evaluation_rep, coproduct_blocks, verify_exchange, verify_rtt, EvaluationRep};
pub use lyubashenko::{
    curious_observations, lyu_n_twist, lyubashenko_solution, permutation_from_cycles, verify_conjugation,
    verify_lyu_factorization, verify_lyubashenko, LyubashenkoData,
};
pub use corpus::{build_corpus, frozen_counts, Corpus, CorpusEntry};
