//! Rational cones and polytopes: face lattices, tangent/supporting and
//! transverse cones, duals, half-open simplicial decomposition and
//! fundamental-box lattice points.

mod cone;
mod halfopen;
mod polytope;

pub use cone::{caratheodory_member, Cone, ConeFace};
pub use halfopen::{box_lattice_points, halfopen_decompose, HalfOpenSimplicialCone};
pub use polytope::{Face, Polytope};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::{scale_rows_to_int, vec_sub, IntMat, LatticeContext, Rat, RatMatrix, RatVec};

/// A lattice point in the affine subspace `point + span(directions)`, if one
/// exists.
pub fn lattice_point_in_affine(
    lattice: &LatticeContext,
    point: &[Rat],
    directions: &[RatVec],
) -> Option<RatVec> {
    let n = lattice.dim();
    let c = lattice.to_lattice_coords(point);
    if directions.is_empty() {
        return if c.iter().all(|x| x.is_integer()) {
            Some(point.to_vec())
        } else {
            None
        };
    }
    let dirs: Vec<RatVec> = directions
        .iter()
        .map(|d| lattice.to_lattice_coords(d))
        .collect();
    let span = RatMatrix::from_rows(dirs);
    let ann = span.kernel();
    if ann.is_empty() {
        // The span is everything: any lattice point works.
        return Some(lattice.from_lattice_coords(
            &c.iter()
                .map(|x| Rat::from_integer(x.floor().to_integer()))
                .collect::<Vec<_>>(),
        ));
    }
    let ann_int = scale_rows_to_int(&ann);
    let a = IntMat::from_rows(ann_int.clone());
    // Need integer z with A z = A c; if A c is not integral there is none.
    let mut b = Vec::with_capacity(ann_int.len());
    for row in &ann_int {
        let mut acc = Rat::zero();
        for (j, coeff) in row.iter().enumerate() {
            acc += Rat::from_integer(coeff.clone()) * &c[j];
        }
        if !acc.is_integer() {
            return None;
        }
        b.push(acc.to_integer());
    }
    let z = a.solve_diophantine(&b)?;
    let zr: RatVec = z.into_iter().map(Rat::from_integer).collect();
    debug_assert_eq!(zr.len(), n);
    Some(lattice.from_lattice_coords(&zr))
}

/// Supporting cone of a polytope along one of its faces:
/// `Supp(P, F) = Tan(P, F) + x` for `x` in the relative interior of `F`.
pub fn supporting_cone(polytope: &Polytope, face: &Face) -> crate::Result<Cone> {
    let apex = if face.dim == 0 {
        polytope.face_vertices(face)[0].clone()
    } else {
        polytope.face_relint_point(face)
    };
    let gens: Vec<RatVec> = polytope
        .vertices()
        .iter()
        .map(|v| vec_sub(v, &apex))
        .filter(|d| !crate::lattice::is_zero_vec(d))
        .collect();
    let lineality = polytope.face_span(face);
    Cone::new(polytope.lattice().clone(), apex, gens, lineality)
}

/// Exhaustive lattice points of a polytope, bounded by a candidate guard.
pub fn polytope_lattice_points(polytope: &Polytope, guard: u128) -> crate::Result<Vec<RatVec>> {
    if polytope.is_empty() {
        return Ok(Vec::new());
    }
    let n = polytope.ambient_dim();
    let lattice = polytope.lattice();
    // Bounding box in lattice coordinates.
    let coords: Vec<RatVec> = polytope
        .vertices()
        .iter()
        .map(|v| lattice.to_lattice_coords(v))
        .collect();
    let lo: Vec<BigInt> = (0..n)
        .map(|i| coords.iter().map(|c| c[i].ceil().to_integer()).min().unwrap() - 1)
        .collect();
    let hi: Vec<BigInt> = (0..n)
        .map(|i| coords.iter().map(|c| c[i].floor().to_integer()).max().unwrap() + 1)
        .collect();
    let mut candidates: u128 = 1;
    for i in 0..n {
        let width = (&hi[i] - &lo[i] + BigInt::one())
            .to_string()
            .parse::<u128>()
            .unwrap_or(u128::MAX);
        candidates = candidates.saturating_mul(width);
    }
    if candidates > guard {
        return Err(crate::Error::SizeGuard {
            candidates,
            limit: guard,
        });
    }
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let z: RatVec = cursor.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let x = lattice.from_lattice_coords(&z);
        if polytope.contains(&x) {
            out.push(x);
        }
        for i in 0..n {
            cursor[i] += BigInt::one();
            if cursor[i] <= hi[i] {
                continue 'outer;
            }
            cursor[i] = lo[i].clone();
        }
        break;
    }
    out.sort();
    Ok(out)
}
