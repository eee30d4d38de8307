//! Closed forms for interpolators of cones of dimension at most two, used
//! as independent cross-checks of the recursion, and the two-dimensional
//! duality of constant terms.

use crate::error::{Error, Result};
use num_traits::Zero;
use crate::exactmath::{Scalar, ScalarMatrix};
use crate::genfun::{scalar_vec, MeroFun, Term};
use crate::geometry::Cone;
use crate::lattice::{primitive_normal, RatVec};

use super::{ComplementMap, ComplementMapKind, Interpolator, InterpolatorKind};

/// `B(<xi, u>)` as a meromorphic expression:
/// `1/(1 - e^<xi,u>) + 1/<xi,u>`.
pub(crate) fn bernoulli_of_form(u: &[Scalar]) -> MeroFun {
    let n = u.len();
    MeroFun::from_terms(
        n,
        vec![
            Term {
                coeff: Scalar::one(),
                point: vec![Scalar::zero(); n],
                lin_dens: Vec::new(),
                exp_dens: vec![u.to_vec()],
            },
            Term {
                coeff: Scalar::one(),
                point: vec![Scalar::zero(); n],
                lin_dens: vec![u.to_vec()],
                exp_dens: Vec::new(),
            },
        ],
    )
}

/// `1/<xi, v>` as a meromorphic expression.
fn inv_form(v: &[Scalar]) -> MeroFun {
    let n = v.len();
    MeroFun::from_terms(
        n,
        vec![Term {
            coeff: Scalar::one(),
            point: vec![Scalar::zero(); n],
            lin_dens: vec![v.to_vec()],
            exp_dens: Vec::new(),
        }],
    )
}

/// `1/(1 - e^<xi, w>)` as a meromorphic expression.
fn inv_one_minus_exp(w: &[Scalar]) -> MeroFun {
    let n = w.len();
    MeroFun::from_terms(
        n,
        vec![Term {
            coeff: Scalar::one(),
            point: vec![Scalar::zero(); n],
            lin_dens: Vec::new(),
            exp_dens: vec![w.to_vec()],
        }],
    )
}

/// The argument of the Bernoulli factor attached to a facet with primitive
/// inner normal `rho`: `<xi,c>/<rho,c>` for a flag with
/// `c` spanning `ann(L_1)`, or `Q(xi,rho)/Q(rho,rho)` for an inner product.
fn facet_form(psi: &ComplementMap, rho: &RatVec) -> Result<Vec<Scalar>> {
    let n = rho.len();
    let rho_s = scalar_vec(rho);
    match psi.kind() {
        ComplementMapKind::InnerProduct(q) => {
            let q_rho = q.mul_vec(&rho_s);
            let mut denom = Scalar::zero();
            for i in 0..n {
                denom = denom.add(&q_rho[i].mul(&rho_s[i]));
            }
            Ok(q_rho.iter().map(|c| c.div(&denom)).collect())
        }
        ComplementMapKind::Flag(vectors) => {
            // c spans the annihilator of L_1.
            let l1 = ScalarMatrix::from_rows(vec![vectors[0].clone()]);
            let kernel = l1.kernel();
            if kernel.len() != n - 1 {
                return Err(Error::GenericityFailure("degenerate flag line".into()));
            }
            let c = &kernel[0];
            let mut denom = Scalar::zero();
            for i in 0..n {
                denom = denom.add(&rho_s[i].mul(&c[i]));
            }
            if denom.is_zero() {
                return Err(Error::GenericityFailure(
                    "facet normal annihilates the flag line".into(),
                ));
            }
            Ok(c.iter().map(|x| x.div(&denom)).collect())
        }
    }
}

/// Closed form of `mu` for cones of dimension at most 2 in a 2-dimensional
/// space: a lattice point, a lattice ray, a half-plane with lattice
/// boundary, or a unimodular cone.
pub fn mu_closed_form_2d(psi: &ComplementMap, cone: &Cone) -> Result<MeroFun> {
    closed_form_2d(psi, cone, false)
}

/// Closed form of `nu` for the same shapes.
pub fn nu_closed_form_2d(psi: &ComplementMap, cone: &Cone) -> Result<MeroFun> {
    closed_form_2d(psi, cone, true)
}

fn closed_form_2d(psi: &ComplementMap, cone: &Cone, reverse: bool) -> Result<MeroFun> {
    let n = cone.ambient_dim();
    if n != 2 {
        return Err(Error::UnsupportedInput(
            "closed forms are stated in a two-dimensional space".into(),
        ));
    }
    let neg = |v: &[Scalar]| -> Vec<Scalar> { v.iter().map(|c| c.neg()).collect() };
    match (cone.lineality().len(), cone.dim()) {
        (0, 0) => Ok(MeroFun::one(n)),
        (0, 1) => {
            // Ray: B(<xi, v>) resp. B(-<xi, v>).
            let v = scalar_vec(&cone.generators()[0]);
            Ok(bernoulli_of_form(&if reverse { neg(&v) } else { v }))
        }
        (1, 2) => {
            // Half-plane: B of the facet form for the primitive inner
            // normal of the boundary line.
            let rho = primitive_normal(
                &[cone.lineality()[0].clone()],
                &cone.generators()[0],
                cone.lattice(),
            )?;
            let omega = facet_form(psi, &rho)?;
            Ok(bernoulli_of_form(&if reverse { neg(&omega) } else { omega }))
        }
        (0, 2) => {
            let rays = cone.extreme_rays();
            if rays.len() != 2 {
                return Err(Error::UnsupportedInput("expected two extreme rays".into()));
            }
            let v1 = &rays[0];
            let v2 = &rays[1];
            let vol = crate::lattice::relative_volume(&[v1.clone(), v2.clone()], cone.lattice())?;
            if !vol.is_integer() || vol != crate::lattice::rat_int(1) {
                return Err(Error::UnsupportedInput(
                    "closed form requires a unimodular cone".into(),
                ));
            }
            // Primitive inner normals: rho_i vanishes on v_i, positive on
            // the other ray.
            let rho1 = primitive_normal(&[v1.clone()], v2, cone.lattice())?;
            let rho2 = primitive_normal(&[v2.clone()], v1, cone.lattice())?;
            let v1s = scalar_vec(v1);
            let v2s = scalar_vec(v2);
            let omega1 = facet_form(psi, &rho1)?;
            let omega2 = facet_form(psi, &rho2)?;
            if !reverse {
                // 1/((1-e^{v1})(1-e^{v2})) - 1/(<v1><v2>)
                //   + B(omega1)/<v1> + B(omega2)/<v2>.
                let product = inv_one_minus_exp(&v1s).mul(&inv_one_minus_exp(&v2s));
                let ii = inv_form(&v1s).mul(&inv_form(&v2s));
                let b1 = bernoulli_of_form(&omega1).mul(&inv_form(&v1s));
                let b2 = bernoulli_of_form(&omega2).mul(&inv_form(&v2s));
                Ok(product.sub(&ii).add(&b1).add(&b2))
            } else {
                // 1/(<v1><v2>) - [ e^{v1}/(1-e^{v1}) B(-omega1)
                //   + e^{v2}/(1-e^{v2}) B(-omega2)
                //   + e^{v1+v2}/((1-e^{v1})(1-e^{v2})) ].
                let ii = inv_form(&v1s).mul(&inv_form(&v2s));
                let e1 = inv_one_minus_exp(&v1s).shift(&v1s);
                let e2 = inv_one_minus_exp(&v2s).shift(&v2s);
                let b1 = e1.mul(&bernoulli_of_form(&neg(&omega1)));
                let b2 = e2.mul(&bernoulli_of_form(&neg(&omega2)));
                let corner = inv_one_minus_exp(&v1s)
                    .mul(&inv_one_minus_exp(&v2s))
                    .shift(&v1s.iter().zip(&v2s).map(|(a, b)| a.add(b)).collect::<Vec<_>>());
                Ok(ii.sub(&b1.add(&b2).add(&corner)))
            }
        }
        _ => Err(Error::UnsupportedInput(
            "closed forms cover points, rays, half-planes and unimodular cones".into(),
        )),
    }
}

/// Constant-term duality in dimension at most 2:
/// `nu(K)(0) = mu*(K_dual)(0)` for the corresponding complement map on the
/// predual space. Returns the two constant terms alongside the verdict.
pub fn morelli_duality_check(
    psi: &ComplementMap,
    cone: &Cone,
) -> Result<(bool, Scalar, Scalar)> {
    if cone.ambient_dim() > 2 {
        return Err(Error::UnsupportedInput(
            "the duality statement covers dimension at most 2".into(),
        ));
    }
    if !cone.is_pointed() || cone.apex().iter().any(|c| !c.is_zero()) {
        return Err(Error::UnsupportedInput(
            "duality check expects a pointed cone with vertex at the origin".into(),
        ));
    }
    let interp = Interpolator::new(psi.clone());
    let nu0 = interp.constant_term(InterpolatorKind::Nu, cone)?;
    let dual_cone = cone.dual()?;
    let dual_psi = psi.dual_map()?;
    let dual_interp = Interpolator::new(dual_psi);
    let mu0 = dual_interp.constant_term(InterpolatorKind::Mu, &dual_cone)?;
    Ok((nu0 == mu0, nu0, mu0))
}

/// Dual-form helper used in tests of the inner-product constant term:
/// `1/4 + Q*(v1,v2)/12 (1/Q*(v1,v1) + 1/Q*(v2,v2))` for the dual inner
/// product `Q*` on `V` and a unimodular cone spanned by `v1, v2`.
pub fn inner_product_vertex_constant(
    q_dual: &ScalarMatrix,
    v1: &RatVec,
    v2: &RatVec,
) -> Scalar {
    let pair = |a: &RatVec, b: &RatVec| -> Scalar {
        let av = scalar_vec(a);
        let bv = scalar_vec(b);
        let qb = q_dual.mul_vec(&bv);
        let mut acc = Scalar::zero();
        for i in 0..av.len() {
            acc = acc.add(&av[i].mul(&qb[i]));
        }
        acc
    };
    let q12 = pair(v1, v2);
    let q11 = pair(v1, v1);
    let q22 = pair(v2, v2);
    Scalar::from_frac(1, 4).add(
        &q12.mul(&Scalar::from_frac(1, 12))
            .mul(&q11.inv().add(&q22.inv())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ParamSet;
    use crate::lattice::{vec_from_ints, LatticeContext};

    fn z2() -> LatticeContext {
        LatticeContext::standard(2)
    }

    fn cone2(gens: &[[i64; 2]]) -> Cone {
        Cone::from_generators(
            z2(),
            vec_from_ints(&[0, 0]),
            gens.iter().map(|g| vec_from_ints(g)).collect(),
        )
        .unwrap()
    }

    fn sv(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn d_flag() -> ComplementMap {
        let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
        let d1 = Scalar::param(&ps, 0);
        let d2 = Scalar::param(&ps, 1);
        ComplementMap::flag(vec![vec![d1, d2], sv(&[0, 1])], ps).unwrap()
    }

    fn abc_inner() -> ComplementMap {
        let ps = ParamSet::new(vec!["a".into(), "b".into(), "c".into()]);
        let a = Scalar::param(&ps, 0);
        let b = Scalar::param(&ps, 1);
        let c = Scalar::param(&ps, 2);
        ComplementMap::inner_product(
            ScalarMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, c]]),
            ps,
        )
        .unwrap()
    }

    #[test]
    fn closed_form_matches_recursion_quadrant() {
        let k0 = cone2(&[[1, 0], [0, 1]]);
        for psi in [d_flag(), abc_inner(), ComplementMap::standard(2)] {
            let closed = mu_closed_form_2d(&psi, &k0).unwrap();
            let interp = Interpolator::new(psi);
            let recursive = interp.mu(&k0).unwrap();
            assert!(closed.canonical_equal(&recursive));
        }
    }

    #[test]
    fn closed_form_matches_recursion_halfplane() {
        let hp = Cone::new(
            z2(),
            vec_from_ints(&[0, 0]),
            vec![vec_from_ints(&[0, 1])],
            vec![vec_from_ints(&[1, 0])],
        )
        .unwrap();
        for psi in [d_flag(), abc_inner()] {
            let closed = mu_closed_form_2d(&psi, &hp).unwrap();
            let interp = Interpolator::new(psi);
            let recursive = interp.mu(&hp).unwrap();
            assert!(closed.canonical_equal(&recursive));
        }
    }

    #[test]
    fn nu_closed_form_matches_recursion() {
        let k0 = cone2(&[[1, 0], [0, 1]]);
        for psi in [d_flag(), ComplementMap::standard(2)] {
            let closed = nu_closed_form_2d(&psi, &k0).unwrap();
            let interp = Interpolator::new(psi);
            let recursive = interp.nu(&k0).unwrap();
            assert!(closed.canonical_equal(&recursive));
        }
    }

    #[test]
    fn duality_on_quadrant() {
        let k0 = cone2(&[[1, 0], [0, 1]]);
        let (ok, nu0, mu0) = morelli_duality_check(&ComplementMap::standard(2), &k0).unwrap();
        assert!(ok);
        assert_eq!(nu0, Scalar::from_frac(1, 4));
        assert_eq!(mu0, Scalar::from_frac(1, 4));
    }

    #[test]
    fn duality_dimension_one() {
        let lat = LatticeContext::standard(1);
        let k = Cone::from_generators(lat, vec_from_ints(&[0]), vec![vec_from_ints(&[1])])
            .unwrap();
        let (ok, nu0, mu0) = morelli_duality_check(&ComplementMap::standard(1), &k).unwrap();
        assert!(ok);
        assert_eq!(nu0, Scalar::from_frac(1, 2));
        assert_eq!(mu0, Scalar::from_frac(1, 2));
    }
}
