//! Identity verification suites for the `verify` subcommand.
//!
//! Each suite checks one exact identity on the given object and reports a
//! pass/fail line; failures echo the discrepancy. The process exits 0 iff
//! every requested check passes.

use serde_json::json;

use polyem_core::euler::{brute_force_oracles, em_integral, em_sum, integrate_poly_over_face};
use polyem_core::exactmath::Poly;
use polyem_core::genfun::{
    i_of_cone, i_of_polytope, s_interior_polytope, s_of_cone, s_of_polytope, s_simplicial,
    taylor_at_zero, MeroFun,
};
use polyem_core::geometry::{halfopen_decompose, polytope_lattice_points, supporting_cone};
use polyem_core::interp::morelli_duality_check;
use polyem_core::lattice::Rat;
use polyem_core::{ComplementMap, Cone, Error, Interpolator, Polytope, Result, Scalar};

use crate::job::{JobSpec, OutputFormat, Report};

struct CheckResult {
    name: String,
    passed: bool,
    detail: String,
}

pub fn run_verify(job: &JobSpec) -> Result<Report> {
    let mut checks: Vec<CheckResult> = Vec::new();
    let wanted = |name: &str| -> bool {
        job.identity
            .as_ref()
            .map(|id| id == name)
            .unwrap_or(true)
    };

    if let Some(path) = &job.polytope_path {
        let spec: polyem_core::io::PolytopeSpec = read_json(path)?;
        let p = spec.to_polytope()?;
        let cmap = load_cmap(job, p.ambient_dim())?;
        polytope_suite(job, &p, &cmap, &wanted, &mut checks)?;
    } else if let Some(path) = &job.cone_path {
        let spec: polyem_core::io::ConeSpec = read_json(path)?;
        let k = spec.to_cone()?;
        let cmap = load_cmap(job, k.ambient_dim())?;
        cone_suite(job, &k, &cmap, &wanted, &mut checks)?;
    } else {
        return Err(Error::Parse("verify needs --polytope or --cone".into()));
    }

    if checks.is_empty() {
        return Err(Error::Parse(format!(
            "unknown identity `{}`",
            job.identity.as_deref().unwrap_or("")
        )));
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let text = match job.format {
        OutputFormat::Text => {
            let mut out = String::new();
            for c in &checks {
                if c.passed {
                    out.push_str(&format!("identity {}: PASS {}\n", c.name, c.detail));
                } else {
                    out.push_str(&format!("identity {}: FAIL {}\n", c.name, c.detail));
                }
            }
            out.push_str(if all_passed {
                "all checks passed\n"
            } else {
                "some checks FAILED\n"
            });
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"identity": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({
                    "checks": rows,
                    "all_passed": all_passed,
                }))
                .unwrap()
            )
        }
    };
    Ok(Report { text, all_passed })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&data).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn load_cmap(job: &JobSpec, dim: usize) -> Result<ComplementMap> {
    match &job.cmap_path {
        Some(p) => read_json::<polyem_core::io::CmapSpec>(p)?.to_cmap(),
        None => Ok(ComplementMap::standard(dim)),
    }
}

/// Small deterministic generator for seed-dependent probe data.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
}

fn seeded_poly(nvars: usize, seed: u64) -> Poly {
    let mut rng = SplitMix(seed.wrapping_add(1));
    let mut h = Poly::constant(nvars, Scalar::from_int(rng.range(-3, 3)));
    for i in 0..nvars {
        let mut e1 = vec![0u16; nvars];
        e1[i] = 1;
        h = h.add(&Poly::monomial(
            nvars,
            &e1,
            Scalar::from_int(rng.range(-3, 3)),
        ));
        let mut e2 = vec![0u16; nvars];
        e2[i] = 2;
        h = h.add(&Poly::monomial(
            nvars,
            &e2,
            Scalar::from_int(rng.range(-2, 2)),
        ));
    }
    h
}

fn polytope_suite(
    job: &JobSpec,
    p: &Polytope,
    cmap: &ComplementMap,
    wanted: &dyn Fn(&str) -> bool,
    checks: &mut Vec<CheckResult>,
) -> Result<()> {
    let interp = Interpolator::new(cmap.clone());
    let n = p.ambient_dim();

    // The finite exponential sum, used both as the Brion oracle and as the
    // readable echo of S(P).
    let enumerated: Option<MeroFun> = match polytope_lattice_points(p, job.max_enum) {
        Ok(points) => {
            let mut direct = MeroFun::zero(n);
            for x in points {
                direct = direct.add(&MeroFun::exp_point(&x));
            }
            Some(direct)
        }
        Err(Error::SizeGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    let echo = |fallback: &MeroFun| -> String {
        enumerated
            .as_ref()
            .map(|d| d.render())
            .unwrap_or_else(|| fallback.render())
    };

    if wanted("brion") {
        let s = s_of_polytope(p)?;
        let ok = match &enumerated {
            Some(direct) => s.canonical_equal(direct),
            None => false,
        };
        checks.push(CheckResult {
            name: "brion".into(),
            passed: ok,
            detail: format!("S(P) = {}", echo(&s)),
        });
    }

    if wanted("interpolator") {
        let s = s_of_polytope(p)?;
        let mut rhs = MeroFun::zero(n);
        for face in p.faces() {
            let supp = supporting_cone(p, face)?;
            let mu = interp.mu(&supp)?;
            let sub = Polytope::new(p.lattice().clone(), p.face_vertices(face))?;
            rhs = rhs.add(&mu.mul(&i_of_polytope(&sub)?));
        }
        let ok = s.canonical_equal(&rhs);
        checks.push(CheckResult {
            name: "interpolator".into(),
            passed: ok,
            detail: format!("S(P) = {}", echo(&s)),
        });
    }

    if wanted("is-interpolator") {
        // I(P) = sum_F lambda(Supp(P,F)) S(F).
        let i = i_of_polytope(p)?;
        let mut rhs = MeroFun::zero(n);
        for face in p.faces() {
            let supp = supporting_cone(p, face)?;
            let lam = interp.lambda(&supp)?;
            let sub = Polytope::new(p.lattice().clone(), p.face_vertices(face))?;
            rhs = rhs.add(&lam.mul(&s_of_polytope(&sub)?));
        }
        let ok = i.canonical_equal(&rhs);
        checks.push(CheckResult {
            name: "is-interpolator".into(),
            passed: ok,
            detail: String::new(),
        });
    }

    if wanted("is0-interpolator") {
        // I(P) = sum_F nu(Supp(P,F)) S0(F).
        let i = i_of_polytope(p)?;
        let mut rhs = MeroFun::zero(n);
        for face in p.faces() {
            let supp = supporting_cone(p, face)?;
            let nu = interp.nu(&supp)?;
            let sub = Polytope::new(p.lattice().clone(), p.face_vertices(face))?;
            rhs = rhs.add(&nu.mul(&s_interior_polytope(&sub)?));
        }
        let ok = i.canonical_equal(&rhs);
        checks.push(CheckResult {
            name: "is0-interpolator".into(),
            passed: ok,
            detail: String::new(),
        });
    }

    if wanted("em") {
        let h = seeded_poly(n, job.seed);
        let fast = em_sum(&interp, p, &h)?;
        let oracle = brute_force_oracles(p, &h, job.max_enum)?;
        let ok = fast == oracle.sum_h;
        checks.push(CheckResult {
            name: "em".into(),
            passed: ok,
            detail: format!(
                "sum = {} (enumeration {})",
                fast.render(),
                oracle.sum_h.render()
            ),
        });
    }

    if wanted("em22") {
        let h = seeded_poly(n, job.seed.wrapping_add(7));
        let fast = em_integral(&interp, p, &h, job.max_enum)?;
        let direct = integrate_poly_over_face(&h, p, &p.top_face().clone())?;
        let ok = fast == direct;
        checks.push(CheckResult {
            name: "em22".into(),
            passed: ok,
            detail: format!(
                "integral = {} (direct {})",
                fast.render(),
                direct.render()
            ),
        });
    }

    Ok(())
}

fn cone_suite(
    job: &JobSpec,
    k: &Cone,
    cmap: &ComplementMap,
    wanted: &dyn Fn(&str) -> bool,
    checks: &mut Vec<CheckResult>,
) -> Result<()> {
    let interp = Interpolator::new(cmap.clone());
    let n = k.ambient_dim();

    if wanted("valuation") && k.is_pointed() {
        let pieces = halfopen_decompose(k)?;
        let mut total = MeroFun::zero(n);
        for piece in &pieces {
            total = total.add(&s_simplicial(piece)?);
        }
        let ok = total.canonical_equal(&s_of_cone(k)?);
        checks.push(CheckResult {
            name: "valuation".into(),
            passed: ok,
            detail: format!("{} half-open pieces", pieces.len()),
        });
    }

    if wanted("halfopen") && k.is_pointed() {
        // Indicator partition on a deterministic probe grid.
        let pieces = halfopen_decompose(k)?;
        let mut rng = SplitMix(job.seed.wrapping_add(13));
        let mut failures = 0usize;
        let mut probes = 0usize;
        for _ in 0..200 {
            let x: Vec<Rat> = (0..n)
                .map(|_| Rat::new(rng.range(-24, 24).into(), 4.into()))
                .collect();
            let inside = k.contains_point(&x);
            let count = pieces.iter().filter(|hc| hc.contains_point(&x)).count();
            probes += 1;
            if count != usize::from(inside) {
                failures += 1;
            }
        }
        checks.push(CheckResult {
            name: "halfopen".into(),
            passed: failures == 0,
            detail: format!("{probes} probes, {failures} failures"),
        });
    }

    if wanted("interpolator") {
        let s = s_of_cone(k)?;
        let mut rhs = MeroFun::zero(n);
        for face in k.faces() {
            let supp = k.supporting_cone(face)?;
            let mu = interp.mu(&supp)?;
            let face_cone = face_to_cone(k, face)?;
            rhs = rhs.add(&mu.mul(&i_of_cone(&face_cone)?));
        }
        let ok = s.canonical_equal(&rhs);
        checks.push(CheckResult {
            name: "interpolator".into(),
            passed: ok,
            detail: format!("S(K) = {}", s.render()),
        });
    }

    if wanted("mobius") && k.is_lattice_cone() {
        // sum_F lambda(F) mu(Supp(K,F)) = 0 for positive-dimensional K.
        let mut acc = MeroFun::zero(n);
        for face in k.faces() {
            let lam = interp.lambda(&face_to_cone(k, face)?)?;
            let mu = interp.mu(&k.supporting_cone(face)?)?;
            acc = acc.add(&lam.mul(&mu));
        }
        let expected = if k.dim() == 0 {
            MeroFun::one(n)
        } else {
            MeroFun::zero(n)
        };
        let ok = acc.canonical_equal(&expected);
        checks.push(CheckResult {
            name: "mobius".into(),
            passed: ok,
            detail: String::new(),
        });
    }

    if wanted("mobius-nu") && k.is_lattice_cone() {
        let mut acc = MeroFun::zero(n);
        for face in k.faces() {
            let nu = interp.nu(&face_to_cone(k, face)?)?;
            let mu = interp.mu(&k.supporting_cone(face)?)?;
            acc = acc.add(&nu.mul(&mu));
        }
        let ok = acc.canonical_equal(&MeroFun::one(n));
        checks.push(CheckResult {
            name: "mobius-nu".into(),
            passed: ok,
            detail: String::new(),
        });
    }

    if wanted("regularity") {
        let result = interp
            .mu(k)
            .and_then(|mu| taylor_at_zero(&mu, 2).map(|_| ()));
        checks.push(CheckResult {
            name: "regularity".into(),
            passed: result.is_ok(),
            detail: match &result {
                Ok(()) => "mu regular at 0".into(),
                Err(e) => format!("{e}"),
            },
        });
    }

    if wanted("residues") && k.is_pointed() && k.dim() >= 2 {
        // Res_{v}(S(K)) = -S(K quotient) along each extreme ray.
        let mut ok = true;
        let mut details = Vec::new();
        for ray in k.extreme_rays() {
            let s = s_of_cone(k)?;
            let res = s.residue_along(&ray, k.lattice())?;
            let (qd, image) = {
                let face = k
                    .faces()
                    .iter()
                    .find(|f| {
                        f.generator_indices.len() == 1
                            && k.generators()[f.generator_indices[0]] == ray
                    })
                    .expect("extreme ray is a face");
                k.transverse_cone(face)?
            };
            let _ = qd;
            let expected = s_of_cone(&image)?.neg();
            if !res.canonical_equal(&expected) {
                ok = false;
                details.push(format!("ray {:?}", ray));
            }
        }
        checks.push(CheckResult {
            name: "residues".into(),
            passed: ok,
            detail: if ok {
                format!("{} rays", k.extreme_rays().len())
            } else {
                details.join("; ")
            },
        });
    }

    if wanted("morelli") && n <= 2 && k.is_pointed() && k.apex().iter().all(num_traits::Zero::is_zero)
    {
        match morelli_duality_check(cmap, k) {
            Ok((ok, nu0, mu0)) => checks.push(CheckResult {
                name: "morelli".into(),
                passed: ok,
                detail: format!("nu0 = {}, dual mu0 = {}", nu0.render(), mu0.render()),
            }),
            Err(e) => checks.push(CheckResult {
                name: "morelli".into(),
                passed: false,
                detail: format!("{e}"),
            }),
        }
    }

    Ok(())
}

fn face_to_cone(k: &Cone, face: &polyem_core::geometry::ConeFace) -> Result<Cone> {
    let gens: Vec<_> = face
        .generator_indices
        .iter()
        .map(|&i| k.generators()[i].clone())
        .collect();
    Cone::new(
        k.lattice().clone(),
        k.apex().clone(),
        gens,
        k.lineality().to_vec(),
    )
}
