//! Shared helpers for the integration and acceptance suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use polyem_core::exactmath::{ParamSet, Scalar, ScalarMatrix};
use polyem_core::genfun::{i_of_cone, i_of_polytope, s_of_polytope, MeroFun};
use polyem_core::geometry::{polytope_lattice_points, supporting_cone, Cone, Polytope};
use polyem_core::lattice::{vec_from_ints, LatticeContext, Rat, RatVec};
use polyem_core::{ComplementMap, Interpolator};

pub fn z_lattice(dim: usize) -> LatticeContext {
    LatticeContext::standard(dim)
}

pub fn poly2(points: &[[i64; 2]]) -> Polytope {
    Polytope::new(
        z_lattice(2),
        points.iter().map(|p| vec_from_ints(p)).collect(),
    )
    .unwrap()
}

pub fn cone2(gens: &[[i64; 2]]) -> Cone {
    Cone::from_generators(
        z_lattice(2),
        vec_from_ints(&[0, 0]),
        gens.iter().map(|g| vec_from_ints(g)).collect(),
    )
    .unwrap()
}

pub fn unit_triangle() -> Polytope {
    poly2(&[[0, 0], [1, 0], [0, 1]])
}

pub fn wide_triangle() -> Polytope {
    poly2(&[[0, 0], [2, 0], [0, 1]])
}

pub fn sv(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Symbolic flag with line spanned by (d1, d2).
pub fn flag_d() -> ComplementMap {
    let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
    let d1 = Scalar::param(&ps, 0);
    let d2 = Scalar::param(&ps, 1);
    ComplementMap::flag(vec![vec![d1, d2], sv(&[0, 1])], ps).unwrap()
}

/// Symbolic inner product [[a,b],[b,c]].
pub fn inner_abc() -> ComplementMap {
    let ps = ParamSet::new(vec!["a".into(), "b".into(), "c".into()]);
    let a = Scalar::param(&ps, 0);
    let b = Scalar::param(&ps, 1);
    let c = Scalar::param(&ps, 2);
    ComplementMap::inner_product(
        ScalarMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]]),
        ps,
    )
    .unwrap()
}

pub fn d_params() -> (ParamSet, Scalar, Scalar) {
    let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
    let d1 = Scalar::param(&ps, 0);
    let d2 = Scalar::param(&ps, 1);
    (ps, d1, d2)
}

pub fn abc_params() -> (ParamSet, Scalar, Scalar, Scalar) {
    let ps = ParamSet::new(vec!["a".into(), "b".into(), "c".into()]);
    let a = Scalar::param(&ps, 0);
    let b = Scalar::param(&ps, 1);
    let c = Scalar::param(&ps, 2);
    (ps, a, b, c)
}

/// A full-dimensional random lattice polytope with coordinates in
/// `[-bound, bound]`.
pub fn random_lattice_polytope(
    rng: &mut ChaCha8Rng,
    dim: usize,
    bound: i64,
    points: usize,
) -> Polytope {
    loop {
        let pts: Vec<RatVec> = (0..points)
            .map(|_| {
                (0..dim)
                    .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                    .collect()
            })
            .collect();
        let p = Polytope::new(z_lattice(dim), pts).unwrap();
        if !p.is_empty() && p.dim() == dim {
            return p;
        }
    }
}

/// A random 2D lattice cone with primitive generators and apex at 0.
pub fn random_lattice_cone_2d(rng: &mut ChaCha8Rng, bound: i64) -> Cone {
    loop {
        let g1 = vec_from_ints(&[rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)]);
        let g2 = vec_from_ints(&[rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)]);
        let det = &g1[0] * &g2[1] - &g1[1] * &g2[0];
        if det == Rat::from_integer(0.into()) {
            continue;
        }
        return cone_from(&g1, &g2);
    }
}

/// A random unimodular 2D cone with apex at 0.
pub fn random_unimodular_cone_2d(rng: &mut ChaCha8Rng) -> Cone {
    loop {
        let a = rng.gen_range(-4i64..=4);
        let b = rng.gen_range(-4i64..=4);
        if num_integer::Integer::gcd(&a, &b) != 1 {
            continue;
        }
        // Complete (a, b) to a unimodular basis, then shear randomly.
        let (x, y) = bezout(a, b);
        let t = rng.gen_range(-3i64..=3);
        let v1 = vec_from_ints(&[a, b]);
        let v2 = vec_from_ints(&[-y + t * a, x + t * b]);
        let det = &v1[0] * &v2[1] - &v1[1] * &v2[0];
        assert_eq!(det, Rat::from_integer(1.into()));
        return cone_from(&v1, &v2);
    }
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    // x a + y b = gcd(a, b).
    if b == 0 {
        return (a.signum(), 0);
    }
    let (x1, y1) = bezout(b, a.rem_euclid(b));
    (y1, x1 - (a.div_euclid(b)) * y1)
}

fn cone_from(g1: &RatVec, g2: &RatVec) -> Cone {
    Cone::from_generators(z_lattice(2), vec_from_ints(&[0, 0]), vec![g1.clone(), g2.clone()])
        .unwrap()
}

/// Random positive-definite rational inner product on the dual space.
pub fn random_inner_product(rng: &mut ChaCha8Rng, dim: usize) -> ComplementMap {
    loop {
        // A^T W A with positive rational weights; positive definite when A
        // is invertible.
        let a: Vec<Vec<i64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(-3i64..=3)).collect())
            .collect();
        let weights: Vec<Rat> = (0..dim)
            .map(|_| Rat::new(rng.gen_range(1i64..=5).into(), rng.gen_range(1i64..=4).into()))
            .collect();
        let mut m = ScalarMatrix::zero(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Scalar::zero();
                for k in 0..dim {
                    let term = Scalar::from_int(a[k][i])
                        .mul(&Scalar::from_rational(weights[k].clone()))
                        .mul(&Scalar::from_int(a[k][j]));
                    acc = acc.add(&term);
                }
                m[(i, j)] = acc;
            }
        }
        if let Ok(cmap) = ComplementMap::inner_product(m, ParamSet::empty()) {
            return cmap;
        }
    }
}

/// A numeric flag that is generic for the given cones, by retrying.
pub fn random_generic_flag_2d(rng: &mut ChaCha8Rng, cones: &[Cone]) -> ComplementMap {
    'outer: loop {
        let p = rng.gen_range(5i64..=37);
        let q = rng.gen_range(5i64..=37);
        let flag = ComplementMap::flag(
            vec![sv(&[p, q]), sv(&[0, 1])],
            ParamSet::empty(),
        )
        .unwrap();
        let interp = Interpolator::new(flag.clone());
        for cone in cones {
            if interp.mu(cone).is_err() {
                continue 'outer;
            }
        }
        return flag;
    }
}

/// The finite exponential sum of a polytope by direct enumeration.
pub fn enumerated_exp_sum(p: &Polytope) -> MeroFun {
    let mut acc = MeroFun::zero(p.ambient_dim());
    for x in polytope_lattice_points(p, 10_000_000).unwrap() {
        acc = acc.add(&MeroFun::exp_point(&x));
    }
    acc
}

/// Check the defining identity `S(P) = sum_F mu(Supp(P,F)) I(F)`.
pub fn interpolator_identity_holds(interp: &Interpolator, p: &Polytope) -> bool {
    let n = p.ambient_dim();
    let s = s_of_polytope(p).unwrap();
    let mut rhs = MeroFun::zero(n);
    for face in p.faces() {
        let supp = supporting_cone(p, face).unwrap();
        let mu = interp.mu(&supp).unwrap();
        let sub = Polytope::new(p.lattice().clone(), p.face_vertices(face)).unwrap();
        rhs = rhs.add(&mu.mul(&i_of_polytope(&sub).unwrap()));
    }
    s.canonical_equal(&rhs)
}

/// Check the cone version of the defining identity.
pub fn cone_interpolator_identity_holds(interp: &Interpolator, k: &Cone) -> bool {
    let n = k.ambient_dim();
    let s = polyem_core::genfun::s_of_cone(k).unwrap();
    let mut rhs = MeroFun::zero(n);
    for face in k.faces() {
        let supp = k.supporting_cone(face).unwrap();
        let mu = interp.mu(&supp).unwrap();
        let gens: Vec<RatVec> = face
            .generator_indices
            .iter()
            .map(|&i| k.generators()[i].clone())
            .collect();
        let face_cone = Cone::new(
            k.lattice().clone(),
            k.apex().clone(),
            gens,
            k.lineality().to_vec(),
        )
        .unwrap();
        rhs = rhs.add(&mu.mul(&i_of_cone(&face_cone).unwrap()));
    }
    s.canonical_equal(&rhs)
}

/// The supporting cones at the three vertices of a triangle, keyed by
/// vertex.
pub fn vertex_cones(p: &Polytope) -> Vec<(RatVec, Cone)> {
    p.faces()
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| {
            let v = p.face_vertices(f)[0].clone();
            (v, supporting_cone(p, f).unwrap())
        })
        .collect()
}
