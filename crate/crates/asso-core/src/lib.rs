//! Exact enumeration of finite type cluster algebras and polytopal
//! realizations of their g-vector fans.
//!
//! The crate tracks seeds of a principal-coefficient cluster algebra together
//! with its Langlands dual in lockstep, certifies that the g-vectors span a
//! complete simplicial fan, lifts the fan to a generalized associahedron via
//! exchange submodular functions, and builds the universal associahedron over
//! universal coefficients. All certificates are computed in exact rational
//! arithmetic; floating point only appears in SVG rendering.

pub mod scalar;
pub mod vecmat;
pub mod simplex;
pub mod hull;
pub mod intlin;
pub mod exchange;
pub mod seed;
pub mod graph;
pub mod roots;
pub mod lift;
pub mod fan;
pub mod svg;
pub mod polytope;
pub mod universal;
pub mod typea;
pub mod builtins;
pub mod pipeline;

mod error;

pub use error::Error;

/// Exact rational scalar used throughout the certificates.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer backing [`Rat`].
pub type Int = num_bigint::BigInt;
/// Dense vector over [`Rat`].
pub type QVec = vecmat::Vector<Rat>;
/// Dense matrix over [`Rat`].
pub type QMat = vecmat::Matrix<Rat>;
/// Machine-integer coordinate vectors for g-, c-, d- and u-vectors.
pub type IVec = Vec<i64>;

/// Convenience constructor for an exact rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact rational p/q.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Rational vector from machine integers.
pub fn qvec(v: &[i64]) -> QVec {
    vecmat::Vector::from_vec(v.iter().map(|&x| rat(x)).collect())
}
