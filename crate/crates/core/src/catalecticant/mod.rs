//! Catalecticant matrices, their specializations at forms, Hilbert
//! functions, graded pieces of minor ideals, the 2×2 rewriting procedure and
//! secant checks.

mod form;
mod ideal;
mod rewrite;
mod secant;

pub use form::{
    build_generic, build_in, hilbert_function, power_sum_form, random_linear_forms, specialize, FormCoefficients,
    GenericCatalecticant, HilbertVector, NumericMatrix,
};
pub use ideal::{
    compare_ideals, gl_weights, ideal_graded_piece, ideal_graded_piece_in, strictness_certificate, ComparisonReport,
    GradedAmbient, IdealPiece, PairVerdict, StrictnessCertificate,
};
pub use rewrite::{rewrite_2x2_minor, rewrite_2x2_minor_with, split_range, Minor2, RewriteTerm, Split};
pub use secant::{secant_vanishing_check, SecantDegree, SecantReport};
