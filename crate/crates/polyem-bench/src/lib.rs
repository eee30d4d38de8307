//! Shared fixtures for the benchmark targets.

use polyem_core::exactmath::{ParamSet, Scalar};
use polyem_core::lattice::{vec_from_ints, LatticeContext};
use polyem_core::{ComplementMap, Cone, Polytope};

pub fn wide_triangle() -> Polytope {
    Polytope::new(
        LatticeContext::standard(2),
        vec![
            vec_from_ints(&[0, 0]),
            vec_from_ints(&[2, 0]),
            vec_from_ints(&[0, 1]),
        ],
    )
    .unwrap()
}

pub fn singular_cone() -> Cone {
    Cone::from_generators(
        LatticeContext::standard(2),
        vec_from_ints(&[0, 0]),
        vec![vec_from_ints(&[0, -1]), vec_from_ints(&[2, -1])],
    )
    .unwrap()
}

pub fn symbolic_flag() -> ComplementMap {
    let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
    let d1 = Scalar::param(&ps, 0);
    let d2 = Scalar::param(&ps, 1);
    ComplementMap::flag(
        vec![vec![d1, d2], vec![Scalar::zero(), Scalar::one()]],
        ps,
    )
    .unwrap()
}
