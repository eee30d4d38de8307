//! Exact coefficient arithmetic: integer multivariate polynomials, the
//! pluggable coefficient field (rationals or rational functions in declared
//! parameters), truncated power series, and the Bernoulli series.

mod intpoly;
mod linalg;
mod poly;
mod scalar;
mod series;

pub use intpoly::{IntPoly, Mono};
pub use linalg::ScalarMatrix;
pub use poly::{factorial, Poly};
pub use scalar::{ParamSet, Scalar};
pub use series::{
    bernoulli_coeffs, bernoulli_series, invert_univariate, mono_table, unit_exp_series,
    MonoTable, TruncSeries,
};
