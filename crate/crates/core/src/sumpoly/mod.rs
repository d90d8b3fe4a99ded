//! Summation polynomials `S_{A,r}`: explicit construction by resultants,
//! pointwise evaluation, and vanishing tests backed by point relations.

mod degenerate;
pub mod mpoly;
mod resultant;
mod summation;
mod vanishing;

pub use degenerate::{
    additive_relation, degenerate_factorization_check, multiplicative_relation, FactorizationCheck,
    SingularKind,
};
pub use mpoly::{grevlex, var_names, MultiPoly, PolyDescriptor, TermDescriptor};
pub use resultant::{determinant, resultant, resultant_with_quadratic};
pub use summation::{eval_s3, s3_in, summation_poly, MAX_EXPLICIT_ARITY};
pub use vanishing::{
    point_relation, rational_point_relation, verify_vanishing_by_points, SummationInstance,
    Verdict, MAX_RELATION_ARITY,
};
