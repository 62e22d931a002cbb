use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde_json::json;

use quaddyn::curves::{identity_names, lift_x, verify_identity};
use quaddyn::dynatomic::{dynatomic, gen_dynatomic};
use quaddyn::modp::{density_report, named_polynomial};
use quaddyn::orbit::{portrait_of_in, DEFAULT_DEPTH_MAX};
use quaddyn::portrait::enumerate_generic;
use quaddyn::scan::{scan_curve, scan_rational, ScanReport};
use quaddyn::verify::{verify_all, CheckRow};
use quaddyn::{parse_rational, Catalog, CycleStructure, Error, QuadElem, QuadField};

#[derive(Parser)]
#[command(
    name = "quaddyn",
    version,
    about = "Preperiodic portraits of z^2 + c over Q and quadratic fields"
)]
struct Cli {
    /// Machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the dynatomic polynomial Φ_n, or Φ_{m,n} when m ≥ 1.
    Dynatomic {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Specialize at this rational c.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Preperiodic portrait of f_c over Q(√d).
    Portrait {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
    /// Generic quadratic portraits up to a vertex bound.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        /// Allowed cycle structures, e.g. "(2),(1,1)".
        #[arg(long)]
        cycles: String,
    },
    /// Lift a rational x-coordinate to a point on a curve model.
    Lift {
        #[arg(long)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Run every named curve identity.
    VerifyIdentities,
    /// Proportion of primes below the limit where the polynomial has no root.
    Density {
        /// Portrait label naming the polynomial: 10(3,1,1), 10(3,2), 8(4) or 8(3).
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
    /// Run the finite-field checks only.
    VerifyModp,
    /// Classify G(f_c, Q) for all rational c up to a height.
    ScanRational {
        #[arg(long, default_value_t = 100)]
        height: u64,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Classify portraits at points of a curve model.
    ScanCurve {
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 30)]
        height: u64,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the full check matrix.
    VerifyAll {
        /// Restrict to one check id or group.
        #[arg(long)]
        only: Option<String>,
    },
}

// Writes to stdout; a closed pipe (`| head`) is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! print_json {
    ($v:expr) => {{
        out!("{}", serde_json::to_string_pretty(&$v)?);
        Ok::<(), anyhow::Error>(())
    }};
}

fn print_rows(rows: &[CheckRow], json: bool) -> Result<bool> {
    let ok = rows.iter().all(|r| r.passed);
    if json {
        print_json!(json!({ "passed": ok, "rows": rows }))?;
        return Ok(ok);
    }
    let w = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in rows {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out!(
            "{status}  {:<w$}  {:>8} ms  {}",
            r.id,
            r.elapsed_ms,
            r.detail
        );
    }
    out!(
        "{} of {} checks passed",
        rows.iter().filter(|r| r.passed).count(),
        rows.len()
    );
    Ok(ok)
}

fn print_scan(r: &ScanReport, json: bool) -> Result<()> {
    if json {
        return print_json!(r);
    }
    out!(
        "source {}  height {}  n_max {}",
        r.source,
        r.height,
        r.n_max
    );
    out!(
        "scanned {}  skipped {}  elapsed {} ms",
        r.scanned,
        r.skipped,
        r.elapsed_ms
    );
    for (label, n) in &r.tally {
        out!("  {label:<12} {n:>8}");
    }
    for form in &r.unclassified {
        out!("  unclassified {form}");
    }
    if !r.records.is_empty() {
        let irrational = r.records.iter().filter(|x| !x.c_rational).count();
        let containing = r
            .records
            .iter()
            .filter(|x| x.contains_model_portrait)
            .count();
        out!(
            "records {}  irrational c {irrational}  containing {} {containing}",
            r.records.len(),
            r.source
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Dynatomic { n, m, c } => {
            let phi = if m == 0 {
                dynatomic(n)?
            } else {
                gen_dynatomic(m, n)?
            };
            let text = match c {
                Some(c) => phi
                    .specialize_c(&parse_rational(&c)?)
                    .to_string()
                    .replace('x', "z"),
                None => phi.to_string(),
            };
            if json {
                print_json!(json!({ "n": n, "m": m, "polynomial": text }))?;
            } else {
                out!("{text}");
            }
        }
        Cmd::Portrait { c, d, nmax } => {
            let catalog = Catalog::load()?;
            let c = QuadElem::rational(parse_rational(&c)?);
            let res = portrait_of_in(&c, QuadField::new(d)?, nmax, DEFAULT_DEPTH_MAX)?;
            let label = catalog.classify(&res.portrait);
            print_json!(json!({ "label": label, "result": res }))?;
        }
        Cmd::Enumerate {
            max_vertices,
            cycles,
        } => {
            let allowed = CycleStructure::parse_list(&cycles)?;
            print_json!(enumerate_generic(max_vertices, &allowed)?)?;
        }
        Cmd::Lift { label, x } => print_json!(lift_x(&label, &parse_rational(&x)?)?)?,
        Cmd::VerifyIdentities => {
            let mut rows = Vec::new();
            for name in identity_names() {
                let passed = verify_identity(&name)?;
                if !json {
                    out!("{}  {name}", if passed { "PASS" } else { "FAIL" });
                }
                rows.push(json!({ "name": name, "passed": passed }));
            }
            let ok = rows.iter().all(|r| r["passed"] == true);
            if json {
                print_json!(json!({ "passed": ok, "identities": rows }))?;
            }
            return Ok(ok);
        }
        Cmd::Density { poly, limit } => {
            let f = named_polynomial(&poly)?;
            let r = density_report(&f, limit)?;
            if json {
                print_json!(json!({ "poly": poly, "report": r }))?;
            } else {
                out!(
                    "{poly}: {} of {} primes below {} have no root",
                    r.without_root,
                    r.primes,
                    r.limit
                );
                out!(
                    "density {} ({})",
                    quaddyn::arith::fmt_rational(&r.density),
                    r.kind
                );
            }
        }
        Cmd::VerifyModp => return print_rows(&verify_all(Some("modp"), &Catalog::load()?), json),
        Cmd::ScanRational { height, nmax, jobs } => {
            print_scan(&scan_rational(height, nmax, jobs, &Catalog::load()?)?, json)?;
        }
        Cmd::ScanCurve {
            label,
            height,
            nmax,
            jobs,
        } => {
            print_scan(
                &scan_curve(&label, height, nmax, jobs, &Catalog::load()?)?,
                json,
            )?;
        }
        Cmd::VerifyAll { only } => {
            if let Some(o) = &only {
                let known = quaddyn::verify::check_ids().contains(&o.as_str())
                    || quaddyn::verify::check_groups().contains(&o.as_str());
                if !known {
                    return Err(
                        Error::Domain(format!("--only: no check or group named {o:?}")).into(),
                    );
                }
            }
            let catalog = match Catalog::load() {
                Ok(c) => c,
                Err(e) => {
                    out!("FAIL  catalog-valid  {e}");
                    return Ok(false);
                }
            };
            return print_rows(&verify_all(only.as_deref(), &catalog), json);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::Domain(_) | Error::Parse(_))
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
