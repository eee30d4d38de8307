//! The interpolator recursions.
//!
//! For a pointed cone with vertex `v`, the contribution of the
//! zero-dimensional face isolates the interpolator itself:
//!
//! `mu(K) = e^{-<xi,v>} ( S(K) - sum_{dim F > 0} mu_bar(T(K,F))(pi(xi)) I(F) )`
//!
//! where `T(K,F)` is the transverse cone in `V/lin(F)` and `pi` is the
//! complement-map projection. Non-pointed cones reduce through the quotient
//! by their lineality space. The reverse interpolators solve the inversion
//! identities `sum_F lambda(F) mu(Supp(K,F)) = 0` (`= 1` for `nu`) on
//! lattice cones, using `mu(Supp(K,K)) = 1`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{Scalar, TruncSeries};
use crate::genfun::{i_of_cone, s_of_cone, taylor_at_zero, MeroFun};
use crate::geometry::{Cone, ConeFace};
use crate::lattice::Rat;

use super::ComplementMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterpolatorKind {
    Mu,
    Lambda,
    Nu,
}

impl std::fmt::Display for InterpolatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InterpolatorKind::Mu => write!(f, "mu"),
            InterpolatorKind::Lambda => write!(f, "lambda"),
            InterpolatorKind::Nu => write!(f, "nu"),
        }
    }
}

/// Interpolator engine for one complement map, with memoization across the
/// recursion (quotient maps get their own fingerprinted entries).
pub struct Interpolator {
    psi: ComplementMap,
    cache: Mutex<HashMap<String, MeroFun>>,
}

impl Interpolator {
    pub fn new(psi: ComplementMap) -> Self {
        Interpolator {
            psi,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn psi(&self) -> &ComplementMap {
        &self.psi
    }

    pub fn mu(&self, cone: &Cone) -> Result<MeroFun> {
        self.audit_genericity(cone)?;
        self.mu_inner(&self.psi, cone)
    }

    pub fn lambda(&self, cone: &Cone) -> Result<MeroFun> {
        self.audit_genericity(cone)?;
        self.reverse_inner(&self.psi, cone, InterpolatorKind::Lambda)
    }

    pub fn nu(&self, cone: &Cone) -> Result<MeroFun> {
        self.audit_genericity(cone)?;
        self.reverse_inner(&self.psi, cone, InterpolatorKind::Nu)
    }

    pub fn compute(&self, kind: InterpolatorKind, cone: &Cone) -> Result<MeroFun> {
        match kind {
            InterpolatorKind::Mu => self.mu(cone),
            InterpolatorKind::Lambda => self.lambda(cone),
            InterpolatorKind::Nu => self.nu(cone),
        }
    }

    /// Taylor expansion of an interpolator at the origin.
    pub fn taylor(&self, kind: InterpolatorKind, cone: &Cone, order: usize) -> Result<TruncSeries> {
        let f = self.compute(kind, cone)?;
        taylor_at_zero(&f, order)
    }

    /// The constant term (degree-0 Taylor coefficient).
    pub fn constant_term(&self, kind: InterpolatorKind, cone: &Cone) -> Result<Scalar> {
        Ok(self.taylor(kind, cone, 0)?.constant_term())
    }

    /// Fail fast on numeric flags that meet some face subspace
    /// non-generically, naming the face.
    fn audit_genericity(&self, cone: &Cone) -> Result<()> {
        if !self.psi.is_flag() || !self.psi.params().is_empty() {
            return Ok(());
        }
        for face in cone.faces() {
            if face.dim == 0 || face.dim == cone.ambient_dim() {
                continue;
            }
            let span = cone.face_span(face);
            if let Err(Error::GenericityFailure(msg)) =
                self.psi.projection_to_quotient(cone.lattice(), &span)
            {
                return Err(Error::GenericityFailure(format!(
                    "face with generators {:?}: {msg}",
                    face.generator_indices
                )));
            }
        }
        Ok(())
    }

    fn lookup(&self, key: &str) -> Option<MeroFun> {
        self.cache.lock().unwrap().get(key).cloned()
    }

    fn store(&self, key: String, value: &MeroFun) {
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone());
    }

    fn mu_inner(&self, psi: &ComplementMap, cone: &Cone) -> Result<MeroFun> {
        let n = cone.ambient_dim();
        if n == 0 {
            return Ok(MeroFun::one(0));
        }
        let key = cache_key(InterpolatorKind::Mu, psi, cone);
        if let Some(hit) = self.lookup(&key) {
            return Ok(hit);
        }
        let result = if !cone.is_pointed() {
            let qp = psi.projection_to_quotient(cone.lattice(), cone.lineality())?;
            let image = project_cone(cone, &qp.quotient)?;
            let mu_bar = self.mu_inner(&qp.induced, &image)?;
            mu_bar.pullback(&qp.pi)
        } else {
            let s_k = s_of_cone(cone)?;
            let mut correction = MeroFun::zero(n);
            for face in cone.faces() {
                if face.dim == 0 {
                    continue;
                }
                let span = cone.face_span(face);
                let qp = psi.projection_to_quotient(cone.lattice(), &span)?;
                let transverse = transverse_in(cone, face, &qp)?;
                let mu_bar = self.mu_inner(&qp.induced, &transverse)?;
                let pulled = mu_bar.pullback(&qp.pi);
                let i_f = i_of_cone(&face_as_cone(cone, face)?)?;
                correction = correction.add(&pulled.mul(&i_f));
            }
            let neg_apex: Vec<Scalar> = cone
                .apex()
                .iter()
                .map(|c| Scalar::from_rational(-c.clone()))
                .collect();
            s_k.sub(&correction).shift(&neg_apex)
        };
        self.store(key, &result);
        Ok(result)
    }

    fn reverse_inner(
        &self,
        psi: &ComplementMap,
        cone: &Cone,
        kind: InterpolatorKind,
    ) -> Result<MeroFun> {
        debug_assert!(matches!(
            kind,
            InterpolatorKind::Lambda | InterpolatorKind::Nu
        ));
        let n = cone.ambient_dim();
        if !cone.is_lattice_cone() {
            return Err(Error::NonLatticeCone(format!(
                "minimal face at {:?} contains no lattice point",
                cone.apex()
            )));
        }
        if cone.dim() == 0 {
            return Ok(MeroFun::one(n));
        }
        let key = cache_key(kind, psi, cone);
        if let Some(hit) = self.lookup(&key) {
            return Ok(hit);
        }
        let result = if !cone.is_pointed() {
            let qp = psi.projection_to_quotient(cone.lattice(), cone.lineality())?;
            let image = project_cone(cone, &qp.quotient)?;
            let bar = self.reverse_inner(&qp.induced, &image, kind)?;
            bar.pullback(&qp.pi)
        } else {
            // Solve the inversion identity using mu(Supp(K,K)) = 1.
            let mut acc = MeroFun::zero(n);
            let top_gens = cone.generators().len();
            for face in cone.faces() {
                if face.generator_indices.len() == top_gens {
                    continue;
                }
                let face_val = if face.dim == 0 {
                    MeroFun::one(n)
                } else {
                    self.reverse_inner(psi, &face_as_cone(cone, face)?, kind)?
                };
                let supp = cone.supporting_cone(face)?;
                let mu_supp = self.mu_inner(psi, &supp)?;
                acc = acc.add(&face_val.mul(&mu_supp));
            }
            match kind {
                InterpolatorKind::Lambda => acc.neg(),
                InterpolatorKind::Nu => MeroFun::one(n).sub(&acc),
                InterpolatorKind::Mu => unreachable!(),
            }
        };
        self.store(key, &result);
        Ok(result)
    }
}

/// Image of a cone under a lattice quotient.
pub(crate) fn project_cone(
    cone: &Cone,
    qd: &crate::lattice::QuotientData,
) -> Result<Cone> {
    let apex = qd.project(cone.apex());
    let gens: Vec<_> = cone
        .generators()
        .iter()
        .map(|g| qd.project(g))
        .filter(|y| y.iter().any(|c| !c.is_zero()))
        .collect();
    Cone::from_generators(qd.quotient_lattice.clone(), apex, gens)
}

fn transverse_in(
    cone: &Cone,
    face: &ConeFace,
    qp: &super::QuotientProjection,
) -> Result<Cone> {
    let apex = qp.quotient.project(&cone.face_relint_point(face));
    let gens: Vec<_> = cone
        .generators()
        .iter()
        .map(|g| qp.quotient.project(g))
        .filter(|y| y.iter().any(|c| !c.is_zero()))
        .collect();
    let t = Cone::from_generators(qp.quotient.quotient_lattice.clone(), apex, gens)?;
    debug_assert!(t.is_pointed());
    Ok(t)
}

pub(crate) fn face_as_cone(cone: &Cone, face: &ConeFace) -> Result<Cone> {
    let gens: Vec<_> = face
        .generator_indices
        .iter()
        .map(|&i| cone.generators()[i].clone())
        .collect();
    let mut lineality = cone.lineality().to_vec();
    lineality.truncate(cone.lineality().len());
    Cone::new(
        cone.lattice().clone(),
        cone.apex().clone(),
        gens,
        lineality,
    )
}

fn cache_key(kind: InterpolatorKind, psi: &ComplementMap, cone: &Cone) -> String {
    let lat = cone.lattice();
    let coords = lat.to_lattice_coords(cone.apex());
    let frac: Vec<String> = coords
        .iter()
        .map(|c| {
            let f = c - Rat::from_integer(c.floor().to_integer());
            debug_assert!(!f.is_negative());
            f.to_string()
        })
        .collect();
    let rv = |v: &[Rat]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{}#{}#{}#a[{}]#g[{}]#l[{}]",
        kind,
        psi.fingerprint(),
        lat.label(),
        frac.join(","),
        cone.generators().iter().map(|g| rv(g)).collect::<Vec<_>>().join(";"),
        cone.lineality().iter().map(|l| rv(l)).collect::<Vec<_>>().join(";"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{bernoulli_coeffs, ParamSet};
    use crate::genfun::Term;
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

    fn term(coeff: i64, point: &[i64], lin: &[&[i64]], exp: &[&[i64]]) -> Term {
        Term {
            coeff: Scalar::from_int(coeff),
            point: sv(point),
            lin_dens: lin.iter().map(|v| sv(v)).collect(),
            exp_dens: exp.iter().map(|v| sv(v)).collect(),
        }
    }

    fn d_flag() -> ComplementMap {
        let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
        let d1 = Scalar::param(&ps, 0);
        let d2 = Scalar::param(&ps, 1);
        ComplementMap::flag(vec![vec![d1, d2], sv(&[0, 1])], ps).unwrap()
    }

    #[test]
    fn mu_of_ray_is_bernoulli() {
        // mu(Cone(v)) = B(<xi, v>) for any complement map.
        let lat = LatticeContext::standard(1);
        let k = Cone::from_generators(lat, vec_from_ints(&[0]), vec![vec_from_ints(&[1])])
            .unwrap();
        let interp = Interpolator::new(ComplementMap::standard(1));
        let mu = interp.mu(&k).unwrap();
        let expected = MeroFun::from_terms(
            1,
            vec![term(1, &[0], &[], &[&[1]]), term(1, &[0], &[&[1]], &[])],
        );
        assert!(mu.canonical_equal(&expected));
        // Taylor coefficients are Bernoulli.
        let series = taylor_at_zero(&mu, 5).unwrap();
        let b = bernoulli_coeffs(5);
        for k in 0..=5u16 {
            assert_eq!(series.coeff(&[k]), b[k as usize]);
        }
    }

    #[test]
    fn mu_k0_flag_constant_term() {
        // Constant term (d1^2 + d2^2 + 3 d1 d2)/(12 d1 d2); linear
        // coefficients -1/24.
        let k0 = cone2(&[[1, 0], [0, 1]]);
        let interp = Interpolator::new(d_flag());
        let series = interp.taylor(InterpolatorKind::Mu, &k0, 1).unwrap();
        let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
        let d1 = Scalar::param(&ps, 0);
        let d2 = Scalar::param(&ps, 1);
        let expected = d1
            .pow(2)
            .add(&d2.pow(2))
            .add(&d1.mul(&d2).mul(&Scalar::from_int(3)))
            .div(&d1.mul(&d2).mul(&Scalar::from_int(12)));
        assert_eq!(series.coeff(&[0, 0]), expected);
        assert_eq!(series.coeff(&[1, 0]), Scalar::from_frac(-1, 24));
        assert_eq!(series.coeff(&[0, 1]), Scalar::from_frac(-1, 24));
    }

    #[test]
    fn mu_k0_standard_inner_product() {
        let k0 = cone2(&[[1, 0], [0, 1]]);
        let interp = Interpolator::new(ComplementMap::standard(2));
        let c = interp.constant_term(InterpolatorKind::Mu, &k0).unwrap();
        assert_eq!(c, Scalar::from_frac(1, 4));
    }

    #[test]
    fn lambda_of_ray_solves_inversion() {
        // lambda(Cone(v)) = -B(<xi,v>), and I(K) = sum lambda(F) S(F).
        let lat = LatticeContext::standard(1);
        let k = Cone::from_generators(lat.clone(), vec_from_ints(&[0]), vec![vec_from_ints(&[1])])
            .unwrap();
        let interp = Interpolator::new(ComplementMap::standard(1));
        let lam = interp.lambda(&k).unwrap();
        let expected = MeroFun::from_terms(
            1,
            vec![term(-1, &[0], &[], &[&[1]]), term(-1, &[0], &[&[1]], &[])],
        );
        assert!(lam.canonical_equal(&expected));
        // Defining identity: I(K) = lambda(K) S({0}) + lambda(aff K) S(K).
        // lambda(aff K) = 1 (quotient of a lattice point).
        let aff = Cone::new(
            lat.clone(),
            vec_from_ints(&[0]),
            vec![],
            vec![vec_from_ints(&[1])],
        )
        .unwrap();
        let lam_aff = interp.lambda(&aff).unwrap();
        assert!(lam_aff.canonical_equal(&MeroFun::one(1)));
        let i_k = i_of_cone(&k).unwrap();
        let s_k = s_of_cone(&k).unwrap();
        let s_pt = MeroFun::one(1);
        let rhs = lam.mul(&s_pt).add(&lam_aff.mul(&s_k));
        assert!(i_k.canonical_equal(&rhs));
    }

    #[test]
    fn nu_of_ray_is_reflected_bernoulli() {
        // nu(Cone(v)) = B(-<xi, v>).
        let lat = LatticeContext::standard(1);
        let k = Cone::from_generators(lat, vec_from_ints(&[0]), vec![vec_from_ints(&[1])])
            .unwrap();
        let interp = Interpolator::new(ComplementMap::standard(1));
        let nu = interp.nu(&k).unwrap();
        // B(-z) = 1/(1-e^{-z}) - 1/z.
        let expected = MeroFun::from_terms(
            1,
            vec![term(1, &[0], &[], &[&[-1]]), term(-1, &[0], &[&[1]], &[])],
        );
        assert!(nu.canonical_equal(&expected));
    }

    #[test]
    fn nu_constant_terms_unit_triangle() {
        // nu(K0)(0) = 1/4 for the standard inner product.
        let k0 = cone2(&[[1, 0], [0, 1]]);
        let interp = Interpolator::new(ComplementMap::standard(2));
        let c = interp.constant_term(InterpolatorKind::Nu, &k0).unwrap();
        assert_eq!(c, Scalar::from_frac(1, 4));
    }

    #[test]
    fn non_lattice_cone_rejected() {
        let k = Cone::from_generators(
            z2(),
            vec![Rat::new(1.into(), 2.into()), Rat::new(0.into(), 1.into())],
            vec![vec_from_ints(&[1, 0])],
        )
        .unwrap();
        let interp = Interpolator::new(ComplementMap::standard(2));
        assert!(matches!(
            interp.lambda(&k),
            Err(Error::NonLatticeCone(_))
        ));
    }

    #[test]
    fn numeric_flag_genericity_audit() {
        // Flag line spanned by (0,1) meets ann(lin F) for the face along e1.
        let flag = ComplementMap::flag(
            vec![sv(&[0, 1]), sv(&[1, 0])],
            ParamSet::empty(),
        )
        .unwrap();
        let k0 = cone2(&[[1, 0], [0, 1]]);
        let interp = Interpolator::new(flag);
        assert!(matches!(
            interp.mu(&k0),
            Err(Error::GenericityFailure(_))
        ));
    }
}
