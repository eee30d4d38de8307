//! Command-line interface: exact exponential sums and integrals of rational
//! polytopes, interpolators for complement maps, lattice-point counting,
//! Euler-Maclaurin summation/integration, and identity verification.

mod job;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyem_core::Error;

use job::{run, Command as JobCommand, JobSpec, OutputFormat};

#[derive(Parser)]
#[command(
    name = "polyem",
    about = "Exact lattice-point generating functions, interpolators and local Euler-Maclaurin formulas",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Polytope description file ({"vertices": [["0","0"], ...]}).
    #[arg(long)]
    polytope: Option<String>,
    /// Cone description file ({"apex": [...], "generators": [[...]]}).
    #[arg(long)]
    cone: Option<String>,
    /// Complement-map description file; defaults to the standard inner
    /// product.
    #[arg(long)]
    cmap: Option<String>,
    /// Truncation order for series output.
    #[arg(long)]
    order: Option<usize>,
    /// Polynomial in x1..xn, e.g. "x1^2 + x2".
    #[arg(long)]
    poly: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: String,
    /// Seed for randomized verification suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print only the constant term of the interpolator.
    #[arg(long, default_value_t = false)]
    constant_term: bool,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Render S and I of a polytope or cone as exact expressions.
    Expand(CommonArgs),
    /// The SI-interpolator of a cone.
    Mu(CommonArgs),
    /// The IS-interpolator of a lattice cone.
    Lambda(CommonArgs),
    /// The IS0-interpolator of a lattice cone.
    Nu(CommonArgs),
    /// Count lattice points through the local formula, with a per-face table.
    Count(CommonArgs),
    /// Volume through the reverse local formula (lattice-sum weighted).
    Volume(CommonArgs),
    /// Sum a polynomial over the lattice points of a polytope.
    Sum(CommonArgs),
    /// Integrate a polynomial over a lattice polytope from lattice sums.
    Integrate(CommonArgs),
    /// Run exact identity suites on the given object.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Identity to check (default: every applicable identity).
    #[arg(long)]
    identity: Option<String>,
}

fn build_job(kind: JobCommand, c: &CommonArgs, identity: Option<String>) -> Result<JobSpec, Error> {
    let format = match c.format.as_str() {
        "text" => OutputFormat::Text,
        "json" => OutputFormat::Json,
        other => return Err(Error::Parse(format!("unknown format `{other}`"))),
    };
    Ok(JobSpec {
        command: kind,
        polytope_path: c.polytope.clone(),
        cone_path: c.cone.clone(),
        cmap_path: c.cmap.clone(),
        order: c.order,
        poly: c.poly.clone(),
        format,
        seed: c.seed,
        constant_term: c.constant_term,
        identity,
        max_enum: polyem_core::euler::enum_guard_from_env(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match &cli.command {
        CliCommand::Expand(c) => build_job(JobCommand::Expand, c, None),
        CliCommand::Mu(c) => build_job(JobCommand::Mu, c, None),
        CliCommand::Lambda(c) => build_job(JobCommand::Lambda, c, None),
        CliCommand::Nu(c) => build_job(JobCommand::Nu, c, None),
        CliCommand::Count(c) => build_job(JobCommand::Count, c, None),
        CliCommand::Volume(c) => build_job(JobCommand::Volume, c, None),
        CliCommand::Sum(c) => build_job(JobCommand::Sum, c, None),
        CliCommand::Integrate(c) => build_job(JobCommand::Integrate, c, None),
        CliCommand::Verify(v) => build_job(JobCommand::Verify, &v.common, v.identity.clone()),
    };
    let job = match job {
        Ok(j) => j,
        Err(e) => return finish(Err(e)),
    };
    finish(run(&job))
}

fn finish(result: Result<job::Report, Error>) -> ExitCode {
    match result {
        Ok(report) => {
            print!("{}", report.text);
            if report.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) => 2u8,
                Error::GenericityFailure(_) => 3,
                Error::SizeGuard { .. } => 4,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
