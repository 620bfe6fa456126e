//! `lkm`: command-line front end for root data, coefficient tables and
//! truncated identity verification.
//!
//! Exit codes: 0 verified, 1 verification mismatch, 2 usage or input error.
//! Reports go to stdout as JSON; timings go to stderr.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lkm_core::data::{all_cases, cartan_verify, case_by_name, read_series_file, SeriesCache};
use lkm_core::registry::{coefficient_objects, identity_cases, split_selector, Bounds, IdentityRequest};
use lkm_core::series::{extract_exponents, ExponentVector, Grading, TruncationProfile};
use lkm_core::verify::{IndexConvention, Perturbation};

#[derive(Parser)]
#[command(name = "lkm", version, about = "Lorentzian Kac-Moody root data and denominator identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify embedded Cartan matrix cases: lattice, Weyl vector, wall angles.
    CartanVerify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Tabulate a coefficient object.
    Coeffs {
        /// delta, p24, phi03, delta1-sum or delta1-product
        object: String,
        /// Largest q-power (one-variable objects) or scaled N.
        #[arg(long, visible_alias = "nmax")]
        n: i64,
        /// Largest scaled M (defaults to N).
        #[arg(long)]
        mmax: Option<i64>,
        /// Bound on |L| (defaults to the support cone plus a margin).
        #[arg(long)]
        lwindow: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the table here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Compare both sides of an identity term by term.
    VerifyIdentity {
        /// delta1 or finite:<type>
        #[arg(long)]
        case: String,
        /// Largest scaled N.
        #[arg(long, default_value_t = 13)]
        nmax: i64,
        /// Largest scaled M.
        #[arg(long, default_value_t = 13)]
        mmax: i64,
        #[arg(long)]
        lwindow: Option<i64>,
        /// l-negative, l-positive or both-signs
        #[arg(long, default_value = "l-negative")]
        convention: String,
        /// Test hook: change one exponent, e.g. f3:0,1:+1.
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
    /// Weyl denominator identity of a finite type.
    VerifyFinite {
        #[arg(long)]
        cartan: String,
        /// Test hook: leave one positive root out of the product.
        #[arg(long, hide = true)]
        delete_factor: Option<usize>,
    },
    /// Factor-peel a series file into product exponents.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "cone")]
        grading: String,
        /// Leading exponent N,L,M (defaults to the unique lowest term).
        #[arg(long, allow_hyphen_values = true)]
        prefix: Option<String>,
    },
    /// List registered coefficient objects, identity cases and data cases.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Mismatch,
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn verdict(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn non_negative(name: &str, v: i64) -> Result<i64, Failure> {
    if v < 0 {
        return Err(Failure::Input(format!("--{name} must be non-negative, got {v}")));
    }
    Ok(v)
}

fn parse_prefix(s: &str) -> Result<ExponentVector, Failure> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("--prefix expects N,L,M, got {s:?}")))?;
    match parts[..] {
        [n, l, m] => Ok(ExponentVector::new(n, l, m)),
        _ => Err(Failure::Input(format!("--prefix expects N,L,M, got {s:?}"))),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::CartanVerify { case, all } => {
            let cases = match case {
                Some(name) if !all => vec![case_by_name(&name).map_err(input)?],
                _ => all_cases(),
            };
            let reports: Vec<_> = cases.iter().map(cartan_verify).collect();
            let ok = reports.iter().all(|r| r.passed());
            if reports.len() == 1 {
                print_json(&reports[0]);
            } else {
                print_json(&reports);
            }
            verdict(ok)
        }
        Command::Coeffs { object, n, mmax, lwindow, format, output, cache_dir } => {
            let n = non_negative("n", n)?;
            let m = non_negative("mmax", mmax.unwrap_or(n))?;
            if let Some(w) = lwindow {
                non_negative("lwindow", w)?;
            }
            let objects = coefficient_objects();
            let obj = objects.get(&object).map_err(input)?;
            let bounds = Bounds::new(n, m, lwindow);
            let series = match &cache_dir {
                Some(dir) => {
                    let cache = SeriesCache::new(dir);
                    let profile = obj.profile(&bounds);
                    match cache.load(obj.name(), &profile).map_err(input)? {
                        Some(s) => s,
                        None => {
                            let s = obj.compute(&bounds).map_err(input)?;
                            cache.store(obj.name(), &s).map_err(input)?;
                            s
                        }
                    }
                }
                None => obj.compute(&bounds).map_err(input)?,
            };
            let table = obj.table(&series, &bounds);
            let text = match format {
                Format::Json => serde_json::to_string(&table).expect("tables serialize") + "\n",
                Format::Csv => table.to_csv(),
            };
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(input)?,
            }
            Ok(())
        }
        Command::VerifyIdentity { case, nmax, mmax, lwindow, convention, perturb } => {
            let nmax = non_negative("nmax", nmax)?;
            let mmax = non_negative("mmax", mmax)?;
            let profile = match lwindow {
                Some(w) => TruncationProfile::new(nmax, mmax, Some(non_negative("lwindow", w)?)),
                None => TruncationProfile::with_default_window(nmax, mmax),
            };
            let convention = IndexConvention::by_name(&convention)
                .ok_or_else(|| Failure::Input(format!("unknown convention {convention:?}")))?;
            let perturbation = perturb.map(|p| p.parse::<Perturbation>()).transpose().map_err(Failure::Input)?;
            let (name, arg) = split_selector(&case);
            let req = IdentityRequest {
                argument: arg.map(str::to_string),
                convention,
                perturbation,
                ..IdentityRequest::new(profile)
            };
            let cases = identity_cases();
            let report = cases.get(name).map_err(input)?.verify(&req).map_err(input)?;
            eprintln!("{}: {:.3} s", report.case, report.elapsed.as_secs_f64());
            print_json(&report);
            verdict(report.passed())
        }
        Command::VerifyFinite { cartan, delete_factor } => {
            let req = IdentityRequest {
                argument: Some(cartan),
                delete_factor,
                ..IdentityRequest::new(TruncationProfile::new(0, 0, Some(0)))
            };
            let cases = identity_cases();
            let report = cases.get("finite").map_err(input)?.verify(&req).map_err(input)?;
            eprintln!("{}: {:.3} s", report.case, report.elapsed.as_secs_f64());
            print_json(&report);
            verdict(report.passed())
        }
        Command::Extract { input: path, grading, prefix } => {
            let g = Grading::by_name(&grading).ok_or_else(|| Failure::Input(format!("unknown grading {grading:?}")))?;
            let prefix = prefix.as_deref().map(parse_prefix).transpose()?;
            let entry = read_series_file(&path).map_err(input)?;
            let series = entry.series().map_err(input)?;
            let factors = extract_exponents(&series, prefix, &g).map_err(input)?;
            let out = serde_json::json!({
                "object": entry.object,
                "grading": g.name,
                "profile": entry.profile,
                "factors": factors.term_array(),
            });
            print_json(&out);
            Ok(())
        }
        Command::List => {
            for o in coefficient_objects().entries() {
                println!("coeffs  {:<15} {}", o.name(), o.description());
            }
            for c in identity_cases().entries() {
                println!("verify  {:<15} {}", c.name(), c.description());
            }
            for c in all_cases() {
                println!("case    {:<15} {}", c.name, c.label);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
