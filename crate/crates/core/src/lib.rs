//! Exact counting of monotone paths and arborescences on LP-oriented polytope
//! graphs, the flip graph of monotone paths, and its fiber-diagram model.
//!
//! All arithmetic is exact: coordinates and functionals live in a rational
//! field, counts are arbitrary-precision integers.

pub mod counting;
pub mod error;
pub mod families;
pub mod fibers;
pub mod io;
pub mod flips;
pub mod orientation;
pub mod polytope;
pub mod scalar;

pub use counting::{bound, check_bounds, count_arborescences, count_paths_dp, count_paths_lemma, BoundName, CountReport};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use orientation::{orient, random_generic_functional, Functional, Orientation};
pub use polytope::{Polytope, Skeleton};
pub use scalar::{ExactField, Scalar};

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;
pub type RationalPolytope = Polytope<Rational>;
pub type RationalFunctional = Functional<Rational>;
/// Machine-word rationals; fine for small families, overflow panics.
pub type Polytope64 = Polytope<num_rational::Ratio<i64>>;
