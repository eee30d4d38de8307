//! Job descriptions and execution.

use serde_json::json;

use polyem_core::euler::{em_integral, em_sum, em_sum_table, nu_volume};
use polyem_core::exactmath::Poly;
use polyem_core::genfun::{i_of_cone, i_of_polytope, s_interior_polytope, s_of_cone, s_of_polytope};
use polyem_core::io::{parse_poly_expr, CmapSpec, ConeSpec, PolytopeSpec};
use polyem_core::{
    ComplementMap, Cone, Error, Interpolator, InterpolatorKind, Polytope, Result, Scalar,
};

use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Expand,
    Mu,
    Lambda,
    Nu,
    Count,
    Volume,
    Sum,
    Integrate,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A fully described unit of work; output is deterministic given the spec
/// (including the seed).
pub struct JobSpec {
    pub command: Command,
    pub polytope_path: Option<String>,
    pub cone_path: Option<String>,
    pub cmap_path: Option<String>,
    pub order: Option<usize>,
    pub poly: Option<String>,
    pub format: OutputFormat,
    pub seed: u64,
    pub constant_term: bool,
    pub identity: Option<String>,
    pub max_enum: u128,
}

pub struct Report {
    pub text: String,
    pub all_passed: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&data).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn load_polytope(job: &JobSpec) -> Result<Option<Polytope>> {
    match &job.polytope_path {
        Some(p) => Ok(Some(read_json::<PolytopeSpec>(p)?.to_polytope()?)),
        None => Ok(None),
    }
}

fn load_cone(job: &JobSpec) -> Result<Option<Cone>> {
    match &job.cone_path {
        Some(p) => Ok(Some(read_json::<ConeSpec>(p)?.to_cone()?)),
        None => Ok(None),
    }
}

fn load_cmap(job: &JobSpec, dim: usize) -> Result<ComplementMap> {
    match &job.cmap_path {
        Some(p) => {
            let cmap = read_json::<CmapSpec>(p)?.to_cmap()?;
            if cmap.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: cmap.dim(),
                });
            }
            Ok(cmap)
        }
        None => Ok(ComplementMap::standard(dim)),
    }
}

fn require_polytope(job: &JobSpec) -> Result<Polytope> {
    load_polytope(job)?.ok_or_else(|| Error::Parse("--polytope FILE is required".into()))
}

fn require_cone(job: &JobSpec) -> Result<Cone> {
    load_cone(job)?.ok_or_else(|| Error::Parse("--cone FILE is required".into()))
}

fn require_poly(job: &JobSpec, nvars: usize) -> Result<Poly> {
    let src = job
        .poly
        .as_ref()
        .ok_or_else(|| Error::Parse("--poly EXPR is required".into()))?;
    parse_poly_expr(src, nvars)
}

pub fn run(job: &JobSpec) -> Result<Report> {
    match job.command {
        Command::Expand => expand(job),
        Command::Mu => interpolator_command(job, InterpolatorKind::Mu),
        Command::Lambda => interpolator_command(job, InterpolatorKind::Lambda),
        Command::Nu => interpolator_command(job, InterpolatorKind::Nu),
        Command::Count => count(job),
        Command::Volume => volume(job),
        Command::Sum => sum(job),
        Command::Integrate => integrate(job),
        Command::Verify => verify::run_verify(job),
    }
}

fn expand(job: &JobSpec) -> Result<Report> {
    let (s, i, s0, what) = if let Some(p) = load_polytope(job)? {
        (
            s_of_polytope(&p)?,
            i_of_polytope(&p)?,
            Some(s_interior_polytope(&p)?),
            "polytope",
        )
    } else if let Some(k) = load_cone(job)? {
        (s_of_cone(&k)?, i_of_cone(&k)?, None, "cone")
    } else {
        return Err(Error::Parse("expand needs --polytope or --cone".into()));
    };
    let text = match job.format {
        OutputFormat::Text => {
            let mut out = format!("S({what}) = {}\nI({what}) = {}\n", s.render(), i.render());
            if let Some(s0) = &s0 {
                out.push_str(&format!("S0({what}) = {}\n", s0.render()));
            }
            out
        }
        OutputFormat::Json => {
            let mut obj = json!({
                "S": s.render(),
                "I": i.render(),
            });
            if let Some(s0) = &s0 {
                obj["S0"] = json!(s0.render());
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).unwrap())
        }
    };
    Ok(Report {
        text,
        all_passed: true,
    })
}

fn interpolator_command(job: &JobSpec, kind: InterpolatorKind) -> Result<Report> {
    let cone = require_cone(job)?;
    let cmap = load_cmap(job, cone.ambient_dim())?;
    let interp = Interpolator::new(cmap);
    let name = kind.to_string();
    if job.constant_term {
        let c = interp.constant_term(kind, &cone)?;
        let text = match job.format {
            OutputFormat::Text => format!("{}\n", c.render()),
            OutputFormat::Json => format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ format!("{name}0"): c.render() })).unwrap()
            ),
        };
        return Ok(Report {
            text,
            all_passed: true,
        });
    }
    if let Some(order) = job.order {
        let series = interp.taylor(kind, &cone, order)?;
        let text = match job.format {
            OutputFormat::Text => format!("{}\n", series.render()),
            OutputFormat::Json => {
                let terms: Vec<_> = series
                    .terms()
                    .into_iter()
                    .map(|(exps, c)| json!({"monomial": exps, "coeff": c.render()}))
                    .collect();
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({ "series": terms })).unwrap()
                )
            }
        };
        return Ok(Report {
            text,
            all_passed: true,
        });
    }
    let f = interp.compute(kind, &cone)?;
    let text = match job.format {
        OutputFormat::Text => format!("{}\n", f.render()),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ name: f.render() })).unwrap()
        ),
    };
    Ok(Report {
        text,
        all_passed: true,
    })
}

fn describe_face(p: &Polytope, face: &polyem_core::geometry::Face) -> String {
    let verts: Vec<String> = p
        .face_vertices(face)
        .iter()
        .map(|v| {
            format!(
                "({})",
                v.iter()
                    .map(polyem_core::io::render_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("dim {} [{}]", face.dim, verts.join(" "))
}

fn count(job: &JobSpec) -> Result<Report> {
    let p = require_polytope(job)?;
    let cmap = load_cmap(job, p.ambient_dim())?;
    let interp = Interpolator::new(cmap);
    let table = em_sum_table(&interp, &p, &Poly::one(p.ambient_dim()))?;
    let total = table
        .iter()
        .fold(Scalar::zero(), |acc, row| acc.add(&row.contribution));
    let text = match job.format {
        OutputFormat::Text => {
            let mut out = String::new();
            for row in &table {
                out.push_str(&format!(
                    "face {}: mu0 = {}, vol = {}, term = {}\n",
                    describe_face(&p, &row.face),
                    row.weight.render(),
                    row.measure.render(),
                    row.contribution.render()
                ));
            }
            out.push_str(&format!("count = {}\n", total.render()));
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = table
                .iter()
                .map(|row| {
                    json!({
                        "dim": row.face.dim,
                        "vertices": row.face.vertex_indices,
                        "mu0": row.weight.render(),
                        "vol": row.measure.render(),
                        "term": row.contribution.render(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({
                    "count": total.render(),
                    "faces": rows,
                }))
                .unwrap()
            )
        }
    };
    Ok(Report {
        text,
        all_passed: true,
    })
}

fn volume(job: &JobSpec) -> Result<Report> {
    let p = require_polytope(job)?;
    let cmap = load_cmap(job, p.ambient_dim())?;
    let interp = Interpolator::new(cmap);
    let one = Poly::one(p.ambient_dim());
    let lambda_route = em_integral(&interp, &p, &one, job.max_enum)?;
    let nu_route = nu_volume(&interp, &p, job.max_enum)?;
    let text = match job.format {
        OutputFormat::Text => format!(
            "volume (lattice-count weighted) = {}\nvolume (interior-count weighted) = {}\n",
            lambda_route.render(),
            nu_route.render()
        ),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "volume_lambda": lambda_route.render(),
                "volume_nu": nu_route.render(),
            }))
            .unwrap()
        ),
    };
    Ok(Report {
        text,
        all_passed: true,
    })
}

fn sum(job: &JobSpec) -> Result<Report> {
    let p = require_polytope(job)?;
    let h = require_poly(job, p.ambient_dim())?;
    let cmap = load_cmap(job, p.ambient_dim())?;
    let interp = Interpolator::new(cmap);
    let value = em_sum(&interp, &p, &h)?;
    scalar_report(job, "sum", value)
}

fn integrate(job: &JobSpec) -> Result<Report> {
    let p = require_polytope(job)?;
    let h = require_poly(job, p.ambient_dim())?;
    let cmap = load_cmap(job, p.ambient_dim())?;
    let interp = Interpolator::new(cmap);
    let value = em_integral(&interp, &p, &h, job.max_enum)?;
    scalar_report(job, "integral", value)
}

fn scalar_report(job: &JobSpec, label: &str, value: Scalar) -> Result<Report> {
    let text = match job.format {
        OutputFormat::Text => format!("{label} = {}\n", value.render()),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ label: value.render() })).unwrap()
        ),
    };
    Ok(Report {
        text,
        all_passed: true,
    })
}

