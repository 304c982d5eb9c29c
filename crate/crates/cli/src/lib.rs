//! Command-line driver: every certificate and instance check as a
//! subcommand, rendered as text or JSON, with CI-friendly exit codes
//! (0 verified, 1 verification failure, 2 usage or input error).

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bihar_core::exactnum::Rational;
use bihar_core::framecalc::{
    derive_first_pol, derive_x1f2, eliminate_with_seed, thm31_certificate, verify_beta_vanishing,
    verify_degenerate_branches, verify_prelim_chain, Certificate, StepReport, StepStatus,
};
use bihar_core::geomcheck::{
    biharmonic_defect, classify_compact_s4, curvature_data, instance_suite, scalar_curvature_check,
    space_form_obstruction, BiharmonicStatus, HypersurfaceInstance,
};
use bihar_core::polyalg::{parse_with_new_vars, resultant, sturm_count, Bound};

mod config;
mod report;

pub use config::parse_instance;
pub use report::{Report, RunStatus};

#[derive(Parser, Debug)]
#[command(name = "bihar", version, about = "Exact verification of biharmonic hypersurface identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed of the randomized cross-checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Progress messages on stderr (text format only).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Report wall-clock time in `timing_ms` (otherwise 0, keeping output reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Re-derive a certificate of the non-existence argument.
    Verify {
        #[arg(value_enum)]
        target: Target,
    },
    /// Check a concrete hypersurface.
    #[command(subcommand)]
    Check(Check),
    /// Polynomial utilities.
    #[command(subcommand)]
    Poly(PolyCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Thm31,
    Prelim,
    Beta,
    X1f2,
    Firstpol,
    Eliminate,
    Branches,
    All,
}

impl Target {
    const EACH: [Target; 7] = [
        Target::Thm31,
        Target::Prelim,
        Target::Beta,
        Target::X1f2,
        Target::Firstpol,
        Target::Eliminate,
        Target::Branches,
    ];

    fn name(self) -> &'static str {
        match self {
            Target::Thm31 => "thm31",
            Target::Prelim => "prelim",
            Target::Beta => "beta",
            Target::X1f2 => "x1f2",
            Target::Firstpol => "firstpol",
            Target::Eliminate => "eliminate",
            Target::Branches => "branches",
            Target::All => "all",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Small hypersphere of squared radius a2.
    Sphere(SphereArgs),
    /// Clifford torus S^m1(r1) x S^m2(r2) in the unit sphere.
    Torus(TorusArgs),
    /// Flat and hyperbolic obstruction certificate.
    Obstruction {
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    #[arg(long, required_unless_present = "config")]
    pub m: Option<u32>,
    #[arg(long, value_parser = parse_rational, required_unless_present = "config")]
    pub a2: Option<Rational>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub c: i64,
    /// Instance file with `key = value` lines.
    #[arg(long, conflicts_with_all = ["m", "a2"])]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    #[arg(long, required_unless_present = "config")]
    pub m1: Option<u32>,
    #[arg(long, required_unless_present = "config")]
    pub m2: Option<u32>,
    #[arg(long, value_parser = parse_rational, required_unless_present = "config")]
    pub r1sq: Option<Rational>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub c: i64,
    #[arg(long, conflicts_with_all = ["m1", "m2", "r1sq"])]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Number of distinct real roots in (lo, hi].
    Sturm {
        #[arg(long)]
        var: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_parser = parse_bound, allow_hyphen_values = true, default_value = "-inf")]
        lo: Bound,
        #[arg(long, value_parser = parse_bound, allow_hyphen_values = true, default_value = "inf")]
        hi: Bound,
    },
    /// Resultant of two polynomials with respect to a variable.
    Resultant {
        #[arg(long)]
        var: String,
        /// Give exactly two.
        #[arg(long = "poly", allow_hyphen_values = true, num_args = 1, required = true)]
        polys: Vec<String>,
    },
    /// Parse and print in canonical form.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Failure before any verification could run; maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn certificate_steps(target: Target, seed: u64) -> Result<Vec<StepReport>, UsageError> {
    let cert: Certificate = match target {
        Target::Thm31 => thm31_certificate()?,
        Target::Prelim => verify_prelim_chain()?,
        Target::Beta => verify_beta_vanishing()?,
        Target::X1f2 => derive_x1f2()?.certificate,
        Target::Firstpol => derive_first_pol()?.0,
        Target::Eliminate => eliminate_with_seed(seed)?,
        Target::Branches => verify_degenerate_branches()?,
        Target::All => unreachable!("expanded by the caller"),
    };
    let mut steps = cert.steps;
    steps.push(StepReport::new(
        "conclusion",
        cert.conclusion,
        "",
        if cert.status == bihar_core::framecalc::CertStatus::Verified {
            StepStatus::Verified
        } else {
            StepStatus::Mismatch
        },
        format!("{} steps", steps.len()),
    ));
    Ok(steps)
}

fn verify(target: Target, cli: &Cli, err: &mut dyn Write) -> Result<Vec<StepReport>, UsageError> {
    let progress = cli.verbose > 0 && cli.format == Format::Text;
    if target != Target::All {
        if progress {
            let _ = writeln!(err, "running {}", target.name());
        }
        return certificate_steps(target, cli.seed);
    }
    // independent certificates run concurrently; output keeps canonical order
    let seed = cli.seed;
    let results: Vec<(&str, Result<Vec<StepReport>, UsageError>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in Target::EACH {
            handles.push((t.name(), scope.spawn(move || certificate_steps(t, seed))));
        }
        let geo = scope.spawn(|| instance_suite().map_err(UsageError::from));
        let mut out: Vec<(&str, _)> = handles
            .into_iter()
            .map(|(name, h)| (name, h.join().expect("verification thread panicked")))
            .collect();
        out.push(("geometry", geo.join().expect("geometry thread panicked")));
        out
    });
    let mut steps = Vec::new();
    for (name, r) in results {
        if progress {
            let _ = writeln!(err, "finished {name}");
        }
        for mut s in r? {
            s.name = format!("{name}/{}", s.name);
            steps.push(s);
        }
    }
    Ok(steps)
}

fn instance_steps(h: &HypersurfaceInstance) -> Result<Vec<StepReport>, UsageError> {
    let data = curvature_data(h)?;
    let (defect, status) = biharmonic_defect(&data);
    let curvatures: Vec<String> = data.curvatures.iter().map(|(k, n)| format!("{k} (x{n})")).collect();
    let mut steps = vec![
        StepReport::new(
            "curvatures",
            format!("principal curvatures of {h}"),
            "",
            StepStatus::Verified,
            format!(
                "{}; |A|^2 = {}, |H|^2 = {}, |H| = {}",
                curvatures.join(", "),
                data.a_sq,
                data.h_sq,
                data.h_abs()
            ),
        ),
        StepReport::new(
            "biharmonic",
            format!("{h} is proper biharmonic: |A|^2 = m*c and |H| != 0"),
            "eq. (caract_bih_hipersurf_spheres), \"$\\Delta^\\perp H-(mc-|A|^2)H=0$\"",
            StepStatus::from_bool(status == BiharmonicStatus::ProperBiharmonic),
            format!("{status}, defect {defect}"),
        ),
        scalar_curvature_check(&data),
    ];
    if h.dim() == 3 && h.ambient().is_one() {
        let c = classify_compact_s4(h)?;
        let mut witness = c.class.to_string();
        if let Some(r) = c.rationale {
            witness.push_str("; ");
            witness.push_str(&r);
        }
        steps.push(StepReport::new(
            "classification",
            "compact hypersurfaces of the unit 4-sphere",
            "Theorem 3.4, \"the hypersphere $\\mbox{${\\mathbb S}$}^3(\\mbox{${\\scriptstyle \\frac{1}{\\sqrt 2}}$})$ and the torus\"",
            StepStatus::Verified,
            witness,
        ));
    }
    Ok(steps)
}

fn load_instance(path: &PathBuf) -> Result<HypersurfaceInstance, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn check(cmd: &Check) -> Result<Vec<StepReport>, UsageError> {
    match cmd {
        Check::Sphere(a) => {
            let h = match &a.config {
                Some(p) => load_instance(p)?,
                None => HypersurfaceInstance::sphere(
                    a.m.expect("required by clap"),
                    a.a2.clone().expect("required by clap"),
                    Rational::from(a.c),
                )?,
            };
            instance_steps(&h)
        }
        Check::Torus(a) => {
            let h = match &a.config {
                Some(p) => load_instance(p)?,
                None if a.c != 1 => return Err(UsageError(format!("tori live in the unit sphere, got c = {}", a.c))),
                None => HypersurfaceInstance::clifford_torus(
                    a.m1.expect("required by clap"),
                    a.m2.expect("required by clap"),
                    a.r1sq.clone().expect("required by clap"),
                )?,
            };
            instance_steps(&h)
        }
        Check::Obstruction { c } => Ok(space_form_obstruction(&Rational::from(*c))?.steps),
    }
}

fn poly(cmd: &PolyCmd) -> Result<Vec<StepReport>, UsageError> {
    match cmd {
        PolyCmd::Sturm { var, poly, lo, hi } => {
            let p = parse_with_new_vars(poly, &[var.as_str()])?;
            let n = sturm_count(&p, var, lo, hi)?;
            Ok(vec![StepReport::new(
                "sturm_count",
                format!("distinct real roots of {p} in ({lo}, {hi}]"),
                "",
                StepStatus::Verified,
                n.to_string(),
            )])
        }
        PolyCmd::Resultant { var, polys } => {
            let [p, q] = polys.as_slice() else {
                return Err(UsageError(format!("resultant needs exactly two --poly, got {}", polys.len())));
            };
            // one table for both operands
            let joint = parse_with_new_vars(&format!("({p})*({q})"), &[var.as_str()])?;
            let names: Vec<&str> = joint.vars().names().iter().map(String::as_str).collect();
            let p = parse_with_new_vars(p, &names)?;
            let q = parse_with_new_vars(q, &names)?;
            let r = resultant(&p, &q, var)?;
            Ok(vec![StepReport::new(
                "resultant",
                format!("Res_{var}({p}, {q})"),
                "",
                StepStatus::Verified,
                r.to_string(),
            )])
        }
        PolyCmd::Parse { poly } => {
            let p = parse_with_new_vars(poly, &[])?;
            let names = p.vars().names().join(", ");
            Ok(vec![StepReport::new(
                "parse",
                format!("canonical form over ({names})"),
                "",
                StepStatus::Verified,
                p.to_string(),
            )])
        }
    }
}

fn command_echo(args: &[String]) -> String {
    args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ")
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_cli(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let command = command_echo(args);
    let start = Instant::now();
    let result = match &cli.command {
        Command::Verify { target } => verify(*target, &cli, err),
        Command::Check(c) => check(c),
        Command::Poly(p) => poly(p),
    };
    let mut report = match result {
        Ok(steps) => Report::from_steps(command, steps, cli.seed),
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            Report::error(command, cli.seed)
        }
    };
    if cli.timing {
        report.timing_ms = start.elapsed().as_millis() as u64;
    }
    let rendered = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(rendered.as_bytes());
    report.status.exit_code()
}
