//! Exact scalars and series: rationals, cyclotomic numbers, Puiseux series.

pub mod cyclo;
pub mod poly;
pub mod series;

pub use cyclo::{cyclo_minpoly, totient, CycloNum, ExactScalar};
pub use poly::Poly;
pub use series::PuiseuxSeries;
