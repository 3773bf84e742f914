//! Command-line front end for the `cr3` library.
//!
//! Four subcommands cover the main flows: `classify` reports the
//! automorphism-orbit data of a complex line, `invariants` prints the
//! structure triple and curvature of its well-adapted coframe, `realize`
//! samples an orbit model and checks it against the matching quadric, and
//! `verify` runs the library's self-verification battery.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use cr3::atlas::{
    builtin_algebra, canonical_line, canonical_triple, classify, ClassificationReport, GroupTag,
    OrbitType, RootPoint,
};
use cr3::coframe::{
    adapted_coframe, cartan_data, sphericity, well_adapt, CartanData, SphericityVerdict,
    StructureTriple,
};
use cr3::line::{classify_line, ComplexLine, Regularity, RegularityReport};
use cr3::realize::{
    adjoint_orbit_sample, heis_embedding_samples, quadric_residual, sl2_elliptic_orbit,
    su2_sphere_orbit, QuadricModel,
};
use cr3::report::{
    classify_output, invariants_output, orbit_realize_output, quadric_realize_output,
    reduced_classify_output, to_pretty_json, AlgebraFile,
};
use cr3::verify::{battery_passed, format_table, run_battery};
use cr3::{tol, C64, LieAlgebra3};

#[derive(Parser)]
#[command(
    name = "cr3",
    version,
    about = "Left-invariant CR structures on three-dimensional Lie groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complex line up to group automorphism
    Classify(ClassifyArgs),
    /// Compute the structure triple and curvature of the well-adapted coframe
    Invariants(InvariantsArgs),
    /// Sample an orbit realization and check it against its model quadric
    Realize(RealizeArgs),
    /// Run the self-verification battery
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Builtin group: sl2r, su2, heis, or e2
    #[arg(long, value_parser = parse_group, conflicts_with = "algebra_file")]
    group: Option<GroupTag>,

    /// JSON file with basis names, bracket rules, and an optional matrix
    /// representation (classification is then reduced to regularity)
    #[arg(long, requires = "line")]
    algebra_file: Option<PathBuf>,

    /// Parameter selecting the canonical line of a builtin family
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["line", "algebra_file"])]
    t: Option<f64>,

    /// Complex line as six comma-separated reals: re0,im0,re1,im1,re2,im2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    line: Option<Vec<f64>>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    source: SourceArgs,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    source: SourceArgs,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct RealizeArgs {
    /// Builtin group: sl2r, su2, heis, or e2
    #[arg(long, value_parser = parse_group)]
    group: GroupTag,

    /// Parameter selecting the canonical line of the family
    #[arg(long, allow_hyphen_values = true, conflicts_with = "line")]
    t: Option<f64>,

    /// Complex line as six comma-separated reals: re0,im0,re1,im1,re2,im2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    line: Option<Vec<f64>>,

    /// Number of orbit points to sample
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// RNG seed for the sampler
    #[arg(long, default_value_t = tol::DEFAULT_SEED)]
    seed: u64,

    /// Include the sampled chart points in the output
    #[arg(long)]
    points: bool,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// RNG seed for the randomized checks
    #[arg(long, default_value_t = tol::DEFAULT_SEED)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_group(s: &str) -> Result<GroupTag, cr3::atlas::AtlasError> {
    s.parse()
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, msg).exit()
}

enum Source {
    Builtin { tag: GroupTag, line: ComplexLine },
    Custom { alg: LieAlgebra3, line: ComplexLine },
}

fn line_from_values(values: &[f64]) -> Result<ComplexLine> {
    if values.len() != 6 {
        usage_error(&format!(
            "--line takes exactly six comma-separated reals (got {})",
            values.len()
        ));
    }
    let arr: [f64; 6] = values.try_into().expect("length checked above");
    Ok(ComplexLine::from_reals(arr)?)
}

fn builtin_line(tag: GroupTag, t: Option<f64>, line: Option<&Vec<f64>>) -> Result<ComplexLine> {
    match (t, line) {
        (Some(t), None) => Ok(canonical_line(tag, t)?),
        (None, Some(values)) => line_from_values(values),
        (None, None) => match tag {
            // the single-orbit groups have no family parameter
            GroupTag::Heis | GroupTag::E2 => Ok(canonical_line(tag, 0.0)?),
            _ => usage_error("--t or --line is required for sl2r and su2"),
        },
        (Some(_), Some(_)) => unreachable!("clap rejects --t together with --line"),
    }
}

fn resolve_source(src: &SourceArgs) -> Result<Source> {
    if let Some(path) = &src.algebra_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file = AlgebraFile::parse(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        let alg = file.to_algebra().context("validating the algebra file")?;
        let values = src.line.as_ref().expect("clap enforces --line with --algebra-file");
        let line = line_from_values(values)?;
        return Ok(Source::Custom { alg, line });
    }
    let Some(tag) = src.group else {
        usage_error("one of --group or --algebra-file is required");
    };
    let line = builtin_line(tag, src.t, src.line.as_ref())?;
    Ok(Source::Builtin { tag, line })
}

fn run_classify(args: &ClassifyArgs) -> Result<String> {
    Ok(match resolve_source(&args.source)? {
        Source::Builtin { tag, line } => {
            let report = classify(tag, &line)?;
            match args.format {
                Format::Json => to_pretty_json(&classify_output(&report)),
                Format::Text => classify_text(&report),
            }
        }
        Source::Custom { alg, line } => {
            let reg = classify_line(&alg, &line);
            match args.format {
                Format::Json => to_pretty_json(&reduced_classify_output(&reg)),
                Format::Text => reduced_text(&reg),
            }
        }
    })
}

fn triple_from_line(alg: &LieAlgebra3, line: &ComplexLine) -> Result<StructureTriple> {
    let (theta, theta1) = adapted_coframe(alg, line)?;
    Ok(well_adapt(alg, &theta, &theta1)?.triple)
}

fn run_invariants(args: &InvariantsArgs) -> Result<String> {
    let triple = match resolve_source(&args.source)? {
        Source::Builtin { tag, line } => match args.source.t {
            // the canonical coframe gives the closed-form triple directly
            Some(t) => canonical_triple(tag, t)?,
            None => triple_from_line(&builtin_algebra(tag), &line)?,
        },
        Source::Custom { alg, line } => triple_from_line(&alg, &line)?,
    };
    let data = cartan_data(&triple)?;
    let (sig, verdict) = sphericity(&triple);
    let spherical = verdict == SphericityVerdict::Spherical;
    Ok(match args.format {
        Format::Json => to_pretty_json(&invariants_output(&triple, &data, sig, spherical)),
        Format::Text => invariants_text(&triple, &data, sig, spherical),
    })
}

fn run_realize(args: &RealizeArgs) -> Result<String> {
    let tag = args.group;
    let line = builtin_line(tag, args.t, args.line.as_ref())?;
    let alg = builtin_algebra(tag);
    let report = classify(tag, &line)?;

    let mut note = None;
    let output = match tag {
        GroupTag::Sl2r if report.spherical && report.orbit_type == OrbitType::Elliptic => {
            let pts = sl2_elliptic_orbit(args.samples, args.seed);
            let worst = worst_quadric(QuadricModel::Sl2EllipticSpherical, &pts);
            quadric_realize_output("sl2-elliptic-hyperquadric".into(), &pts, worst, worst, args.points)
        }
        GroupTag::Su2 if report.spherical => {
            let pts = su2_sphere_orbit(args.samples, args.seed);
            let worst = worst_quadric(QuadricModel::Su2Sphere, &pts);
            quadric_realize_output("su2-sphere".into(), &pts, worst, worst, args.points)
        }
        GroupTag::Heis => {
            let samples = heis_embedding_samples(args.samples, args.seed);
            let pts: Vec<[C64; 2]> = samples.iter().map(|(pt, _)| [pt.law[1], pt.law[0]]).collect();
            let worst_form = samples
                .iter()
                .map(|(pt, _)| pt.form_value.abs())
                .fold(0.0, f64::max);
            let worst = worst_quadric(QuadricModel::Heis, &pts);
            quadric_realize_output("heisenberg-paraboloid".into(), &pts, worst_form, worst, args.points)
        }
        GroupTag::E2 => {
            let orbit = adjoint_orbit_sample(&alg, &line, args.samples, args.seed)?;
            let charted: Vec<[C64; 2]> = orbit.affine.iter().flatten().copied().collect();
            let worst = worst_quadric(QuadricModel::E2, &charted);
            note = Some(
                "the tube model pins only the imaginary parts; Re z1 ranges freely over the orbit",
            );
            orbit_realize_output(Some("e2-tube".into()), &orbit, Some(worst), args.points)
        }
        _ => {
            let orbit = adjoint_orbit_sample(&alg, &line, args.samples, args.seed)?;
            orbit_realize_output(Some("adjoint-orbit".into()), &orbit, None, args.points)
        }
    };

    Ok(match args.format {
        Format::Json => to_pretty_json(&output),
        Format::Text => realize_text(&output, note),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<Option<String>> {
    let checks = run_battery(args.seed);
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&checks)?,
        Format::Text => format_table(&checks),
    };
    emit(&text);
    if !battery_passed(&checks) {
        std::process::exit(1);
    }
    Ok(None)
}

/// Prints to stdout, exiting quietly when a downstream pipe has closed.
fn emit(text: &str) {
    use std::io::Write;
    match writeln!(std::io::stdout(), "{text}") {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => {
            eprintln!("error: writing to stdout: {e}");
            std::process::exit(1);
        }
    }
}

fn worst_quadric(model: QuadricModel, pts: &[[C64; 2]]) -> f64 {
    pts.iter()
        .map(|p| quadric_residual(model, p))
        .fold(0.0, f64::max)
}

fn complex(z: C64) -> String {
    let re = z.re + 0.0; // drop the sign of an exact -0.0
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re:.9} {} {:.9}i", sign, z.im.abs())
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn regularity_text(r: Regularity) -> &'static str {
    match r {
        Regularity::Real => "real",
        Regularity::Degenerate => "degenerate",
        Regularity::Regular => "regular",
    }
}

fn root_text(p: &RootPoint) -> String {
    match p.affine() {
        Some(z) => complex(z),
        None => "inf".to_string(),
    }
}

fn classify_text(report: &ClassificationReport) -> String {
    let mut lines = vec![
        format!("group               {}", report.group),
        format!("regularity          {}", regularity_text(report.regularity.verdict)),
        format!("orbit type          {}", report.orbit_type),
    ];
    if let Some(pair) = &report.root_pair {
        let double = if pair.double { "  (double)" } else { "" };
        lines.push(format!(
            "root pair           {},  {}{double}",
            root_text(&pair.first),
            root_text(&pair.second),
        ));
    }
    lines.push(format!("distance invariant  {:.12}", report.distance_invariant));
    if let Some(t) = report.canonical_t {
        lines.push(format!("canonical t         {t:.12}"));
    }
    lines.push(format!("sigma               {}", complex(report.sigma)));
    lines.push(format!("spherical           {}", yes_no(report.spherical)));
    lines.join("\n")
}

fn reduced_text(reg: &RegularityReport) -> String {
    [
        format!("regularity          {}", regularity_text(reg.verdict)),
        "orbit data          unavailable without a builtin group".to_string(),
    ]
    .join("\n")
}

fn invariants_text(
    triple: &StructureTriple,
    data: &CartanData,
    sigma: C64,
    spherical: bool,
) -> String {
    let worst = data.residual_norms.iter().fold(0.0f64, |m, &x| m.max(x));
    [
        format!("a                   {}", complex(triple.a)),
        format!("b                   {}", complex(triple.b)),
        format!("c                   {}", complex(triple.c)),
        format!("r                   {}", complex(data.r)),
        format!("s                   {}", complex(data.s)),
        format!("sigma               {}", complex(sigma)),
        format!("spherical           {}", yes_no(spherical)),
        format!("max residual        {worst:.3e}"),
        format!(
            "gauge               s = {:.6}, lambda = {}, mu = {}",
            triple.gauge.s,
            complex(triple.gauge.lambda),
            complex(triple.gauge.mu),
        ),
    ]
    .join("\n")
}

fn realize_text(output: &cr3::report::RealizeOutput, note: Option<&str>) -> String {
    let mut lines = vec![
        format!(
            "model               {}",
            output.model.as_deref().unwrap_or("adjoint-orbit")
        ),
        format!("samples             {}", output.samples),
        format!("max residual        {:.3e}", output.max_residual),
    ];
    if let Some(q) = output.quadric_residual {
        lines.push(format!("quadric residual    {q:.3e}"));
    }
    if let Some(mu) = output.mu {
        lines.push(format!(
            "mu                  {mu:.9}  (spread {:.3e})",
            output.mu_spread.unwrap_or(0.0)
        ));
    }
    if let Some(note) = note {
        lines.push(format!("note: {note}"));
    }
    lines.join("\n")
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(args) => run_classify(args).map(Some),
        Command::Invariants(args) => run_invariants(args).map(Some),
        Command::Realize(args) => run_realize(args).map(Some),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(Some(text)) => emit(&text),
        Ok(None) => {}
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
