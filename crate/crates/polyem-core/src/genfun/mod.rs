//! The meromorphic-function engine.
//!
//! A [`MeroFun`] is a finite sum of terms
//! `c * e^<xi,a> / (prod <xi,v_i> * prod (1 - e^<xi,w_j>))`,
//! the canonical carrier for exponential sums `S`, exponential integrals `I`
//! and the interpolators built from them. Vector data lives over the
//! coefficient field, so symbolic complement-map parameters flow through
//! unchanged. Equality is decided exactly by clearing denominators and
//! comparing exponential-polynomial normal forms; Taylor expansion at the
//! origin cancels poles by exact division and reports genuine poles as
//! errors.

mod merofun;
mod sums;
mod taylor;

pub use merofun::{ExpPoly, MeroFun, Term};
pub use sums::{i_of_cone, i_of_polytope, i_simplicial, s_interior_cone, s_interior_polytope,
    s_of_cone, s_of_polytope, s_simplicial};
pub use taylor::taylor_at_zero;

use crate::exactmath::Scalar;
use crate::lattice::{Rat, RatVec};

pub type ScalarVec = Vec<Scalar>;

pub fn scalar_vec(v: &[Rat]) -> ScalarVec {
    v.iter().map(|x| Scalar::from_rational(x.clone())).collect()
}

pub fn rational_vec(v: &[Scalar]) -> Option<RatVec> {
    v.iter().map(|s| s.as_rational().cloned()).collect()
}
