//! Exponential sums `S` and integrals `I` of cones and polytopes.
//!
//! Simplicial cones follow the fundamental-box formula; general pointed
//! cones are assembled from a half-open decomposition (for `S`) or from the
//! solid pieces of the same decomposition (for `I`, which ignores walls);
//! polytopes decompose over their vertex supporting cones. Anything
//! containing a line is zero.

use crate::error::Result;
use crate::exactmath::Scalar;
use crate::geometry::{
    halfopen_decompose, supporting_cone, Cone, HalfOpenSimplicialCone, Polytope,
};
use crate::lattice::relative_volume;

use super::merofun::{MeroFun, Term};
use super::scalar_vec;

/// `S` of a half-open simplicial cone: one term per fundamental-box lattice
/// point, with the generators as exponential denominators.
pub fn s_simplicial(piece: &HalfOpenSimplicialCone) -> Result<MeroFun> {
    let n = piece.lattice.dim();
    let points = piece.box_points()?;
    let exp_dens: Vec<Vec<Scalar>> = piece.generators.iter().map(|g| scalar_vec(g)).collect();
    let terms = points
        .into_iter()
        .map(|p| Term {
            coeff: Scalar::one(),
            point: scalar_vec(&p),
            lin_dens: Vec::new(),
            exp_dens: exp_dens.clone(),
        })
        .collect();
    Ok(MeroFun::from_terms(n, terms))
}

/// `I` of a simplicial cone with the given apex:
/// `(-1)^k vol(box) e^<xi,apex> / prod <xi, v_i>`.
pub fn i_simplicial(piece: &HalfOpenSimplicialCone) -> Result<MeroFun> {
    let n = piece.lattice.dim();
    let k = piece.generators.len();
    let vol = relative_volume(&piece.generators, &piece.lattice)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let term = Term {
        coeff: Scalar::from_rational(vol).mul(&Scalar::from_int(sign)),
        point: scalar_vec(&piece.apex),
        lin_dens: piece.generators.iter().map(|g| scalar_vec(g)).collect(),
        exp_dens: Vec::new(),
    };
    Ok(MeroFun::from_terms(n, vec![term]))
}

/// `S` of an arbitrary rational cone.
pub fn s_of_cone(cone: &Cone) -> Result<MeroFun> {
    let n = cone.ambient_dim();
    if !cone.is_pointed() {
        return Ok(MeroFun::zero(n));
    }
    let mut acc = MeroFun::zero(n);
    for piece in halfopen_decompose(cone)? {
        acc = acc.add(&s_simplicial(&piece)?);
    }
    Ok(acc)
}

/// `I` of an arbitrary rational cone (relative measure on its affine span).
pub fn i_of_cone(cone: &Cone) -> Result<MeroFun> {
    let n = cone.ambient_dim();
    if !cone.is_pointed() {
        return Ok(MeroFun::zero(n));
    }
    let dim = cone.dim();
    let mut acc = MeroFun::zero(n);
    for piece in halfopen_decompose(cone)? {
        // `I` is a solid valuation: walls do not matter, and every piece of
        // the decomposition is full-dimensional in the cone's span.
        debug_assert_eq!(piece.generators.len(), dim);
        acc = acc.add(&i_simplicial(&piece)?);
    }
    Ok(acc)
}

/// `S(P)` by the vertex-cone decomposition.
pub fn s_of_polytope(polytope: &Polytope) -> Result<MeroFun> {
    let n = polytope.ambient_dim();
    let mut acc = MeroFun::zero(n);
    for face in polytope.faces().iter().filter(|f| f.dim == 0) {
        let cone = supporting_cone(polytope, face)?;
        acc = acc.add(&s_of_cone(&cone)?);
    }
    Ok(acc)
}

/// `I(P)` by the vertex-cone decomposition.
pub fn i_of_polytope(polytope: &Polytope) -> Result<MeroFun> {
    let n = polytope.ambient_dim();
    let mut acc = MeroFun::zero(n);
    for face in polytope.faces().iter().filter(|f| f.dim == 0) {
        let cone = supporting_cone(polytope, face)?;
        acc = acc.add(&i_of_cone(&cone)?);
    }
    Ok(acc)
}

/// `S` of the relative interior of a polytope, by inclusion-exclusion over
/// the face lattice.
pub fn s_interior_polytope(polytope: &Polytope) -> Result<MeroFun> {
    let n = polytope.ambient_dim();
    let mut acc = MeroFun::zero(n);
    if polytope.is_empty() {
        return Ok(acc);
    }
    let top_dim = polytope.dim();
    for face in polytope.faces() {
        let sub = Polytope::new(polytope.lattice().clone(), polytope.face_vertices(face))?;
        let s = s_of_polytope(&sub)?;
        let sign = if (top_dim - face.dim) % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&s.scale(&Scalar::from_int(sign)));
    }
    Ok(acc)
}

/// `S` of the relative interior of a pointed cone.
pub fn s_interior_cone(cone: &Cone) -> Result<MeroFun> {
    let n = cone.ambient_dim();
    if !cone.is_pointed() {
        return Ok(MeroFun::zero(n));
    }
    let mut acc = MeroFun::zero(n);
    let top_dim = cone.dim();
    for face in cone.faces() {
        let gens: Vec<_> = face
            .generator_indices
            .iter()
            .map(|&i| cone.generators()[i].clone())
            .collect();
        let sub = Cone::from_generators(cone.lattice().clone(), cone.apex().clone(), gens)?;
        let s = s_of_cone(&sub)?;
        let sign = if (top_dim - face.dim) % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&s.scale(&Scalar::from_int(sign)));
    }
    Ok(acc)
}
