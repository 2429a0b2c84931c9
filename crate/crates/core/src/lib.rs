//! Exact computational Lie theory: root systems and Weyl groups, Chevalley
//! bases, cyclotomic eigenspaces of Weyl elements, Moy-Prasad gradings on the
//! standard apartment, formal connections in Jordan form and Frenkel-Gross
//! connections.
//!
//! Nothing here uses floating point. The numeric core is written against the
//! [`scalar::Ring`] and [`scalar::Field`] traits and instantiated at the
//! concrete types re-exported below.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod exact;
pub mod fg;
pub mod formalconn;
pub mod linalg;
pub mod report;
pub mod rootdata;
pub mod scalar;
pub mod strata;
pub mod suites;
pub mod weyleigen;

pub use error::{Error, Result};
pub use exact::{CycloNum, ExactScalar, Poly, PuiseuxSeries};
pub use scalar::{Field, Ring, F61};

/// Arbitrary-precision rational numbers, stored in lowest terms.
pub type Rational = num_rational::BigRational;
pub type QMatrix = linalg::Matrix<Rational>;
pub type CycloMatrix = linalg::Matrix<CycloNum>;
/// Puiseux series with rational coefficients.
pub type QSeries = PuiseuxSeries<Rational>;
