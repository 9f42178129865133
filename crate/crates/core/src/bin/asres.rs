//! Command-line front end: build, verify, export, and Betti-number
//! queries for monomial-curve resolutions, with grid drivers.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 verification or
//! internal failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use asres::checker::{
    betti_all, betti_alternating_sum, run_verification, RankPolicy, VerificationReport,
    VerifyOptions,
};
use asres::error::Error;
use asres::export::{
    cone_to_json, from_json_str, m2_script, minimal_to_json, to_json_string,
};
use asres::generators::build_generators;
use asres::grid::{grid_cases, GridSpec, M0Spec};
use asres::minimalizer::minimalize;
use asres::polyring::{is_prime, FieldChoice, DEFAULT_PRIME};
use asres::rescomplex::build_cone_complex;
use asres::ASParams;

const PRIME_ENV: &str = "ASRES_PRIME";

#[derive(Parser)]
#[command(
    name = "asres",
    about = "Exact free resolutions of arithmetic-sequence monomial curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cone and minimal resolutions and write their artifacts.
    Build(CaseArgs),
    /// Run the full verification suite (single case, grid, or a saved
    /// complex via --load).
    Verify(VerifyArgs),
    /// Write canonical JSON and/or a CAS script for one parameter set.
    Export(ExportArgs),
    /// Betti numbers from the closed form, no construction.
    Betti(BettiArgs),
}

#[derive(Args)]
struct ParamsArgs {
    /// Smallest generator m0.
    #[arg(long)]
    m0: Option<i64>,
    /// Common difference of the arithmetic sequence.
    #[arg(long)]
    d: Option<i64>,
    /// Index of the largest generator (the ring has n + 1 variables).
    #[arg(long)]
    n: Option<usize>,
}

impl ParamsArgs {
    fn resolve(&self) -> Result<ASParams, Error> {
        match (self.m0, self.d, self.n) {
            (Some(m0), Some(d), Some(n)) => ASParams::new(m0, d, n),
            _ => Err(Error::Domain("--m0, --d and --n are all required".into())),
        }
    }
}

#[derive(Args)]
struct FieldArgs {
    /// Coefficient field for the rank oracle; default is a size-based
    /// hybrid of both routes.
    #[arg(long, value_enum)]
    field: Option<FieldKind>,
    /// Prime for the prime-field route (env ASRES_PRIME supplies the
    /// default; this flag wins).
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Rational,
    Prime,
}

impl FieldArgs {
    fn policy(&self) -> Result<RankPolicy, Error> {
        let prime = match self.prime {
            Some(p) => p,
            None => match std::env::var(PRIME_ENV) {
                Ok(v) => v
                    .parse::<u64>()
                    .map_err(|_| Error::Domain(format!("bad {PRIME_ENV} value '{v}'")))?,
                Err(_) => DEFAULT_PRIME,
            },
        };
        if !is_prime(prime) || prime <= 2 {
            return Err(Error::InvalidPrime(prime));
        }
        Ok(match self.field {
            None => RankPolicy::Hybrid { prime, threshold: 200 },
            Some(FieldKind::Rational) => RankPolicy::Force(FieldChoice::Rational),
            Some(FieldKind::Prime) => RankPolicy::Force(FieldChoice::Prime(prime)),
        })
    }
}

#[derive(Args)]
struct CaseArgs {
    #[command(flatten)]
    params: ParamsArgs,
    /// Output directory for artifact files.
    #[arg(long, default_value = "asres-out")]
    out: PathBuf,
    /// Print per-position detail.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamsArgs,
    #[command(flatten)]
    field: FieldArgs,
    /// Largest weight checked by the graded-exactness oracle
    /// (default: delta_0 + 3 m_n).
    #[arg(long)]
    wmax: Option<i64>,
    /// Verify a previously exported complex instead of building.
    #[arg(long, conflicts_with_all = ["m0", "d", "n"])]
    load: Option<PathBuf>,
    /// Grid over n, formatted lo:hi.
    #[arg(long, value_name = "LO:HI")]
    grid_n: Option<String>,
    /// Grid over d, formatted lo:hi.
    #[arg(long, value_name = "LO:HI")]
    grid_d: Option<String>,
    /// Grid over m0: 'auto' for [n+1, 4n+1], or lo:hi.
    #[arg(long, value_name = "auto|LO:HI")]
    grid_m0: Option<String>,
    /// Write per-case reports under this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    params: ParamsArgs,
    #[arg(long, default_value = "asres-out")]
    out: PathBuf,
    /// Restrict output to one format (default: both).
    #[arg(long, value_enum)]
    format: Option<ExportFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Cas,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    params: ParamsArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args),
        Command::Betti(args) => cmd_betti(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidSemigroup { .. }
        | Error::OutOfHypothesis(_)
        | Error::Domain(_)
        | Error::InvalidPrime(_)
        | Error::Parse { .. }
        | Error::Io(_) => 2,
        Error::Json(_)
        | Error::ZeroPolynomialDegree
        | Error::NonHomogeneous(..)
        | Error::ConstructionBug { .. }
        | Error::Internal(_)
        | Error::VerificationFailed(_) => 3,
    }
}

fn case_dir(root: &Path, p: &ASParams) -> PathBuf {
    root.join(format!("m0_{}_d_{}_n_{}", p.m0, p.d, p.n))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn cmd_build(args: CaseArgs) -> Result<ExitCode, Error> {
    let params = args.params.resolve()?;
    let cone = build_cone_complex(&params)?;
    let minimal = minimalize(&cone)?;
    let dir = case_dir(&args.out, &params);

    write(&dir.join("cone.json"), &to_json_string(&cone_to_json(&cone))?)?;
    write(&dir.join("minimal.json"), &to_json_string(&minimal_to_json(&minimal))?)?;
    let mut provenance = serde_json::to_string_pretty(&minimal.provenance)?;
    provenance.push('\n');
    write(&dir.join("provenance.json"), &provenance)?;

    let gens = build_generators(&params);
    let summary = serde_json::json!({
        "schema": 1,
        "params": params,
        "cone_dims": cone.dims(),
        "minimal_dims": minimal.dims(),
        "betti": betti_all(&params),
        "generator_weights": gens.all().map(|g| (g.label.clone(), g.weight)).collect::<Vec<_>>(),
        "cancellations": minimal.provenance.len(),
        "sign_flips": minimal.sign_flips,
    });
    let mut summary_text = serde_json::to_string_pretty(&summary)?;
    summary_text.push('\n');
    write(&dir.join("summary.json"), &summary_text)?;

    println!("semigroup <{}>", join(&params.m));
    println!(
        "  a = {}, b = {}, mu = {}, delta = ({})",
        params.a,
        params.b,
        params.mu,
        join(&params.delta)
    );
    println!("  generators: {}", gens.count());
    if args.verbose {
        for g in gens.all() {
            println!("    {}  weight {}  {}", g.label, g.weight, g.poly);
        }
    }
    println!("  cone dims:    {:?}", &cone.dims()[1..]);
    println!("  minimal dims: {:?}", &minimal.dims()[1..]);
    println!("  betti:        {:?}", betti_all(&params));
    println!("  cancellations: {}", minimal.provenance.len());
    println!("  artifacts in {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn parse_range(text: &str, what: &str) -> Result<(i64, i64), Error> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::Domain(format!("{what} range must be LO:HI, got '{text}'")))?;
    let lo = a.parse().map_err(|_| Error::Domain(format!("bad {what} bound '{a}'")))?;
    let hi = b.parse().map_err(|_| Error::Domain(format!("bad {what} bound '{b}'")))?;
    if lo > hi {
        return Err(Error::Domain(format!("{what} range is empty")));
    }
    Ok((lo, hi))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if let Some(path) = &args.load {
        return verify_loaded(path);
    }
    let policy = args.field.policy()?;
    let opts = VerifyOptions { w_max: args.wmax, rank_policy: policy, ..Default::default() };

    let grid_mode = args.grid_n.is_some() || args.grid_d.is_some() || args.grid_m0.is_some();
    if !grid_mode {
        let params = args.params.resolve()?;
        let report = run_verification(&params, opts)?;
        print_report_line(&report, args.verbose);
        if let Some(out) = &args.out {
            write_report(&case_dir(out, &params), &report)?;
        }
        return Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(3) });
    }

    let (n_lo, n_hi) = match &args.grid_n {
        Some(t) => {
            let (a, b) = parse_range(t, "n")?;
            (a as usize, b as usize)
        }
        None => (2, 3),
    };
    let (d_lo, d_hi) = match &args.grid_d {
        Some(t) => parse_range(t, "d")?,
        None => (1, 1),
    };
    let m0 = match args.grid_m0.as_deref() {
        None | Some("auto") => M0Spec::Auto,
        Some(t) => {
            let (a, b) = parse_range(t, "m0")?;
            M0Spec::Range(a, b)
        }
    };
    let (cases, skipped) = grid_cases(&GridSpec { n_lo, n_hi, d_lo, d_hi, m0 });
    for s in &skipped {
        eprintln!("skipped m0={} d={} n={}: {}", s.m0, s.d, s.n, s.reason);
    }
    let reports: Vec<Result<VerificationReport, Error>> = cases
        .par_iter()
        .map(|p| run_verification(p, opts))
        .collect();
    let mut all_pass = true;
    for report in &reports {
        match report {
            Ok(r) => {
                print_report_line(r, args.verbose);
                if let Some(out) = &args.out {
                    write_report(&case_dir(out, &r.params), r)?;
                }
                all_pass &= r.pass;
            }
            Err(e) => {
                eprintln!("error: {e}");
                all_pass = false;
            }
        }
    }
    let passed = reports.iter().filter(|r| r.as_ref().is_ok_and(|r| r.pass)).count();
    println!("grid: {passed}/{} cases pass ({} skipped)", reports.len(), skipped.len());
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn verify_loaded(path: &Path) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(path)?;
    let imported = from_json_str(&text)?;
    let view = imported.view();
    let named_fail = if let Err(e) = view.check_composition() {
        Some(format!("composition: {e}"))
    } else if let Err(e) = view.check_homogeneity() {
        Some(format!("homogeneity: {e}"))
    } else if imported.kind == "minimal" {
        view.check_minimality().err().map(|e| format!("minimality: {e}"))
    } else {
        None
    };
    match named_fail {
        Some(msg) => {
            eprintln!("loaded complex FAILED {msg}");
            Ok(ExitCode::from(3))
        }
        None => {
            println!(
                "loaded {} complex for <{}>: composition, homogeneity{} pass",
                imported.kind,
                join(&imported.params.m),
                if imported.kind == "minimal" { ", minimality" } else { "" }
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_report_line(r: &VerificationReport, verbose: bool) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    println!(
        "<{}> b={} betti={:?} cancellations={} {}{}",
        join(&r.params.m),
        r.params.b,
        r.betti_actual,
        r.cancellations.iter().map(|c| c.removed).sum::<i64>() / 2,
        verdict,
        match r.first_failure() {
            Some(name) => format!(" ({name})"),
            None => String::new(),
        }
    );
    if verbose {
        for e in &r.exactness {
            println!(
                "  exactness[{}]: w <= {}, {}",
                e.complex,
                e.table.w_max,
                if e.table.all_pass {
                    "all pass".to_string()
                } else {
                    format!("{} failures", e.table.failures.len())
                }
            );
        }
        println!("  hilbert: {}", r.hilbert_ok);
        println!(
            "  field agreement: {} samples, ok = {}",
            r.field_agreement.samples, r.field_agreement.ok
        );
        if !r.sign_flips.is_empty() {
            println!("  sign flips: {:?}", r.sign_flips);
        }
    }
}

fn write_report(dir: &Path, r: &VerificationReport) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(r)?;
    text.push('\n');
    write(&dir.join("report.json"), &text)
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode, Error> {
    let params = args.params.resolve()?;
    let cone = build_cone_complex(&params)?;
    let minimal = minimalize(&cone)?;
    let dir = case_dir(&args.out, &params);
    let json = !matches!(args.format, Some(ExportFormat::Cas));
    let cas = !matches!(args.format, Some(ExportFormat::Json));
    if json {
        write(&dir.join("cone.json"), &to_json_string(&cone_to_json(&cone))?)?;
        write(&dir.join("minimal.json"), &to_json_string(&minimal_to_json(&minimal))?)?;
        println!("wrote {}", dir.join("cone.json").display());
        println!("wrote {}", dir.join("minimal.json").display());
    }
    if cas {
        write(&dir.join("minimal.m2"), &m2_script(minimal.view(), "minimal"))?;
        println!("wrote {}", dir.join("minimal.m2").display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_betti(args: BettiArgs) -> Result<ExitCode, Error> {
    let params = args.params.resolve()?;
    let betti = betti_all(&params);
    println!("semigroup <{}>: betti = {:?}", join(&params.m), betti);
    println!(
        "  alternating sum 1 - b1 + b2 - ... = {}",
        betti_alternating_sum(&params)
    );
    Ok(ExitCode::SUCCESS)
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
