//! Exact exponential sums and integrals of rational polytopes, rigid
//! complement maps, the interpolators they induce, and local
//! Euler-Maclaurin summation and integration.

pub mod error;
pub mod euler;
pub mod exactmath;
pub mod genfun;
pub mod geometry;
pub mod interp;
pub mod io;
pub mod lattice;

pub use error::{Error, Result};
pub use exactmath::{ParamSet, Poly, Scalar, ScalarMatrix, TruncSeries};
pub use genfun::MeroFun;
pub use geometry::{Cone, Polytope};
pub use interp::{ComplementMap, Interpolator, InterpolatorKind};
pub use lattice::{LatticeContext, Rat, RatVec};
