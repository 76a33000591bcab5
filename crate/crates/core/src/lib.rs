//! Exact Ehrhart quasi-polynomials of almost integral polytopes `c + P`,
//! where `P` is a lattice polytope and `c` a rational translation.
//!
//! Everything is exact: integers are `BigInt`, rationals `BigRational`. The
//! linear algebra and polynomial layers are generic over the scalar
//! ([`LatticeInt`] for integers, [`Field`] for exact fields); the geometry is
//! fixed to the aliases below.

pub mod characterize;
pub mod corpus;
pub mod count;
pub mod error;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod quasipoly;
pub mod reproduce;
pub mod scalar;
pub mod zonotope;

pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use polytope::{AlmostIntegralPolytope, LatticePolytope};
pub use scalar::{Field, LatticeInt, Rational};
pub use zonotope::ZonotopeSpec;

/// Polynomial with exact rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Quasi-polynomial with exact rational constituents.
pub type QuasiPoly = quasipoly::QuasiPolynomial<Rational>;
