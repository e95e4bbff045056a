//! Command-line front end for the value-set library: compute degrees over
//! subfields, verify the missed-value bound, sweep map spaces, build the
//! extremal examples, expand the certifying power series, and run the
//! built-in verification suite.
//!
//! Exit codes: 0 when every check is satisfied or inapplicable, 2 when a
//! bound is violated (which would falsify a theorem and is flagged
//! loudly), 1 for usage and runtime errors.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use valueset::bounds::{
    best_subfield_bound, elementary_symmetric_series, exhaustive_bound_sweep, verify_bound,
    BoundReport, SweepMode, SweepOptions, SweepReport,
};
use valueset::degrees::deg_l_via_digits;
use valueset::extremal::{norm_example, one_missing_example, ExampleArtifact, Verification};
use valueset::field::FieldSpec;
use valueset::poly::{Degree, MultiPoly};
use valueset::polymap::PolyMap;
use valueset::selftest;
use valueset::DEFAULT_ENUMERATION_CAP;

#[derive(Parser)]
#[command(
    name = "valueset",
    version,
    about = "Value sets of polynomial maps over finite fields: degrees over subfields, \
             missed-value bounds, exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degrees of polynomials: as given, reduced, and over a subfield.
    Degree(DegreeArgs),
    /// Check the missed-value lower bound for one polynomial map.
    Verify(VerifyArgs),
    /// Check the bound across a whole space of maps.
    Sweep(SweepArgs),
    /// Construct an extremal example map and re-verify its claims.
    Example(ExampleArgs),
    /// Expand the certifying power series for a univariate map.
    Series(SeriesArgs),
    /// Run the built-in verification suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct DegreeArgs {
    /// Field as p^m, or p^m/c0,c1,...,cm for an explicit modulus.
    #[arg(long)]
    field: String,
    /// Subfield cardinality for deg_l; defaults to the field itself.
    #[arg(long)]
    subfield: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Polynomials in the x1, x2, ... grammar.
    #[arg(required = true)]
    polynomials: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    field: String,
    /// Check one subfield; without it, every subfield is checked and the
    /// strongest bound reported.
    #[arg(long)]
    subfield: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Enumeration cap on domain and codomain sizes.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Worker threads for image enumeration (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Map components; the i-th argument is the i-th coordinate, and the
    /// variable count equals the component count.
    #[arg(required = true)]
    components: Vec<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    field: String,
    /// Dimension: maps k^n -> k^n.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Max maps an all-functions sweep may enumerate.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Number of maps drawn in random-polys mode.
    #[arg(long, default_value_t = 200)]
    count: u64,
    #[arg(long)]
    subfield: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    AllFunctions,
    RandomPolys,
}

#[derive(Args)]
struct ExampleArgs {
    /// Which family to construct.
    #[arg(value_enum)]
    kind: ExampleKind,
    /// Ground field cardinality (any prime power).
    #[arg(long)]
    q: u64,
    /// Dimension.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleKind {
    /// Misses q-1 points with degree n: bound met with equality.
    Norm,
    /// Misses one point with the maximal degree n(q-1).
    OneMissing,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    field: String,
    /// Subfield cardinality; defaults to the field itself.
    #[arg(long)]
    subfield: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Univariate polynomial in x1.
    polynomial: String,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// What a successful command concluded.
enum Outcome {
    /// Everything satisfied or inapplicable.
    Clean,
    /// At least one applicable bound check failed.
    Violation,
}

fn exit_for(outcome: &Outcome) -> u8 {
    match outcome {
        Outcome::Clean => 0,
        Outcome::Violation => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(exit_for(&outcome)),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Degree(args) => cmd_degree(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Example(args) => cmd_example(args),
        Command::Series(args) => cmd_series(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(jobs) = jobs {
        // Ignore failure: the global pool can only be set once, and the
        // result does not depend on the thread count.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

/// Smallest variable count that covers every x<i> reference. Element
/// literals never contain 'x': single-character digits stop at 'u'
/// (for p = 31) and larger primes use comma-separated decimals.
fn infer_nvars(texts: &[String]) -> usize {
    let mut max = 1;
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'x' {
                let mut j = i + 1;
                let mut index = 0usize;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    index = index * 10 + (bytes[j] - b'0') as usize;
                    j += 1;
                }
                if j > i + 1 {
                    max = max.max(index);
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    max
}

fn parse_map(spec: &FieldSpec, components: &[String]) -> Result<PolyMap, valueset::Error> {
    let nvars = components.len();
    let parsed = components
        .iter()
        .map(|text| MultiPoly::parse(text, spec, nvars))
        .collect::<Result<Vec<_>, _>>()?;
    PolyMap::new(parsed)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct DegreeReport {
    deg: Degree,
    deg_k_reduced: Degree,
    deg_l: Degree,
    subfield: u64,
}

fn cmd_degree(args: DegreeArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    let spec = FieldSpec::parse_text(&args.field)?;
    let q = args.subfield.unwrap_or_else(|| spec.order());
    spec.subfield_params(q)?;
    let nvars = infer_nvars(&args.polynomials);
    let mut deg = Degree::NegInfinity;
    let mut deg_k_reduced = Degree::NegInfinity;
    let mut deg_l = Degree::NegInfinity;
    for text in &args.polynomials {
        let f = MultiPoly::parse(text, &spec, nvars)?;
        deg = deg.max(f.total_degree());
        let reduced = f.reduce(spec.order())?;
        deg_k_reduced = deg_k_reduced.max(reduced.total_degree());
        if !reduced.is_zero() {
            deg_l = deg_l.max(deg_l_via_digits(&reduced, q)?);
        }
    }
    let report = DegreeReport {
        deg,
        deg_k_reduced,
        deg_l,
        subfield: q,
    };
    match args.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("deg: {deg}");
            println!("deg_k_reduced: {deg_k_reduced}");
            println!("deg_l: {deg_l}");
            println!("subfield: {q}");
        }
    }
    Ok(Outcome::Clean)
}

fn bound_text(report: &BoundReport) -> String {
    match &report.bound {
        Some(b) => b.to_string(),
        None => "n/a".to_string(),
    }
}

fn print_report_line(report: &BoundReport) {
    println!(
        "subfield {}: deg {}, deg_l {}, missed {}, bound {}, applicable {}, satisfied {}",
        report.subfield,
        report.deg,
        report.deg_l,
        report.missed,
        bound_text(report),
        report.applicable,
        report.satisfied
    );
}

fn violation_outcome(reports: &[BoundReport]) -> Outcome {
    if reports.iter().any(|r| r.applicable && !r.satisfied) {
        Outcome::Violation
    } else {
        Outcome::Clean
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    configure_jobs(args.jobs);
    let spec = FieldSpec::parse_text(&args.field)?;
    let map = parse_map(&spec, &args.components)?;
    match args.subfield {
        Some(q) => {
            let report = verify_bound(&map, q, args.cap)?;
            match args.format {
                Format::Json => print_json(&report)?,
                Format::Text => {
                    println!("field: {}", report.field);
                    print_report_line(&report);
                }
            }
            let outcome = violation_outcome(std::slice::from_ref(&report));
            if matches!(outcome, Outcome::Violation) {
                eprintln!("BOUND VIOLATION: missed < bound; this contradicts a proved theorem");
            }
            Ok(outcome)
        }
        None => {
            let scan = best_subfield_bound(&map, args.cap)?;
            match args.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct ScanReport<'a> {
                        reports: &'a [BoundReport],
                        best_subfield: u64,
                    }
                    print_json(&ScanReport {
                        reports: scan.reports(),
                        best_subfield: scan.best().subfield,
                    })?;
                }
                Format::Text => {
                    println!("field: {}", scan.best().field);
                    for report in scan.reports() {
                        print_report_line(report);
                    }
                    println!(
                        "best subfield: {} (bound {})",
                        scan.best().subfield,
                        bound_text(scan.best())
                    );
                }
            }
            let outcome = violation_outcome(scan.reports());
            if matches!(outcome, Outcome::Violation) {
                eprintln!("BOUND VIOLATION: missed < bound; this contradicts a proved theorem");
            }
            Ok(outcome)
        }
    }
}

fn print_sweep_text(report: &SweepReport) {
    println!("{} maps, {} violations", report.maps_checked, report.violations.len());
    for &((q, slack), count) in &report.slack {
        println!("subfield {q}: slack {slack} on {count} maps");
    }
    for violation in &report.violations {
        println!(
            "VIOLATION at index {}: {}",
            violation.index,
            violation.components.join(", ")
        );
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    configure_jobs(args.jobs);
    let spec = FieldSpec::parse_text(&args.field)?;
    let mode = match args.mode {
        ModeArg::AllFunctions => SweepMode::AllFunctions,
        ModeArg::RandomPolys => SweepMode::RandomPolys { count: args.count },
    };
    let report = exhaustive_bound_sweep(
        &spec,
        &SweepOptions {
            n: args.n,
            mode,
            budget: args.budget,
            seed: args.seed,
            subfield: args.subfield,
            cap: args.cap,
        },
    )?;
    match args.format {
        Format::Json => print_json(&report)?,
        Format::Text => print_sweep_text(&report),
    }
    if report.violations.is_empty() {
        Ok(Outcome::Clean)
    } else {
        eprintln!("BOUND VIOLATION: a swept map misses fewer points than the proved bound");
        Ok(Outcome::Violation)
    }
}

fn print_example_text(artifact: &ExampleArtifact) {
    println!("field: {}", artifact.map.spec().to_text());
    for (i, component) in artifact.map.components().iter().enumerate() {
        println!("f{} = {}", i + 1, component.to_text());
    }
    println!("claimed missed: {}", artifact.claimed_missed);
    println!("claimed degree: {}", artifact.claimed_degree);
    match &artifact.verification {
        Verification::Checked(report) => print_report_line(report),
        Verification::Skipped { points, cap } => {
            println!("verification skipped: domain {points} exceeds cap {cap}");
        }
    }
}

fn cmd_example(args: ExampleArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    let artifact = match args.kind {
        ExampleKind::Norm => norm_example(args.q, args.n, args.cap)?,
        ExampleKind::OneMissing => one_missing_example(args.q, args.n, args.cap)?,
    };
    match args.format {
        Format::Json => print_json(&artifact)?,
        Format::Text => print_example_text(&artifact),
    }
    match &artifact.verification {
        Verification::Checked(report) if report.applicable && !report.satisfied => {
            eprintln!("BOUND VIOLATION: constructed example contradicts its own bound");
            Ok(Outcome::Violation)
        }
        _ => Ok(Outcome::Clean),
    }
}

fn cmd_series(args: SeriesArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    let spec = FieldSpec::parse_text(&args.field)?;
    let q = args.subfield.unwrap_or_else(|| spec.order());
    let f = MultiPoly::parse(&args.polynomial, &spec, 1)?;
    let check = elementary_symmetric_series(&f, q, args.cap)?;
    match args.format {
        Format::Json => print_json(&check)?,
        Format::Text => {
            println!("field: {}", spec.to_text());
            println!("subfield: {q}");
            println!("deg_l: {}", check.deg_l);
            println!("truncation: {}", check.truncation);
            for (i, a) in check.coefficients.iter().enumerate() {
                println!("a_{} = {}", i + 1, a.to_text());
            }
            println!("all_zero: {}", check.all_zero);
        }
    }
    if check.all_zero {
        Ok(Outcome::Clean)
    } else {
        eprintln!("SERIES VIOLATION: a nonzero coefficient below the truncation order");
        Ok(Outcome::Violation)
    }
}

fn cmd_selftest(args: SelftestArgs) -> Result<Outcome, Box<dyn std::error::Error>> {
    configure_jobs(args.jobs);
    let results = selftest::run_all(args.cap)?;
    let failed = results.iter().filter(|r| !r.passed).count();
    match args.format {
        Format::Json => print_json(&results)?,
        Format::Text => {
            for check in &results {
                let status = if check.passed { "ok" } else { "FAIL" };
                println!("{status} {}: {}", check.name, check.detail);
            }
            println!("{} passed, {} failed", results.len() - failed, failed);
        }
    }
    if failed == 0 {
        Ok(Outcome::Clean)
    } else {
        Ok(Outcome::Violation)
    }
}
