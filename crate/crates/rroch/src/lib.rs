//! Exact symbolic calculus for characteristic classes of vector bundles:
//! Chern classes and roots, Chern characters, Todd classes, the universal
//! integral Riemann-Roch polynomials, and a formal cohomology-ring model of
//! a projective bundle in which Riemann-Roch without denominators and the
//! Grothendieck-Riemann-Roch formula for zero sections are verified to a
//! chosen truncation degree.
//!
//! All arithmetic is exact (arbitrary-precision rationals, or polynomials
//! in a rank variable `t0` for symbolic-rank computations); every series is
//! truncated at a fixed weighted total degree.

pub mod arith;
pub mod bundlering;
pub mod chern;
pub mod error;
pub mod render;
pub mod report;
pub mod series;
pub mod symfunc;
pub mod universal;

pub use arith::{IVPoly, Rational, Scalar};
pub use bundlering::{
    verify_grr_zero_section, verify_pushforward_basis, verify_rr_without_denominators,
    ProjectiveModel, RingClass,
};
pub use chern::{SignedRoot, VirtualBundle};
pub use error::CalcError;
pub use report::{CaseReport, SuiteReport};
pub use universal::{
    big_g_r, g_r, verify_generating_identity, verify_lambda_chern, verify_star_kernel,
    UniversalContext,
};
pub use series::{
    exp, int_pow, inverse, log, pow_binomial, pow_rank, substitute, GradedRing, Monomial, Series,
    VarTable,
};
pub use symfunc::{
    elementary, expand_in_roots, is_symmetric, star0, star0_resolved, subset_product, Alphabet,
    ElementaryTarget,
};
