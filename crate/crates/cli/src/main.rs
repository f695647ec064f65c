//! `rqf`: invariants of real quadratic fields from the command line.
//!
//! Exit codes: 0 on success, 2 on usage or input errors, 3 on an internal
//! consistency violation (two exact routes disagreed; never expected).

mod cache;
mod row;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rqf::cf::{cf_expand, QuadSurd};
use rqf::forms::wide_class_number;
use rqf::pell::solve_norm_form;
use rqf::rd::classify_rd;
use rqf::theorem::{verify_theorem, FamilyParams};
use rqf::unit::fundamental_unit;

use cache::Cache;
use row::ScanRow;
use scan::{Family, ScanBounds};

#[derive(Debug)]
pub struct CliError {
    message: String,
    /// Process exit code: 2 for input problems, 3 for internal ones.
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 3,
        }
    }
}

impl From<rqf::Error> for CliError {
    fn from(e: rqf::Error) -> Self {
        match &e {
            rqf::Error::Internal(_) => CliError::internal(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "rqf",
    about = "Exact invariants of real quadratic fields: continued fractions, units, Pell equations, class numbers, and family scans",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Narrow and wide class numbers of Q(sqrt(d)).
    Classnum {
        d: u64,
        #[command(flatten)]
        output: OutputArgs,
        /// Class-number cache file (JSON, versioned).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Fundamental unit of the order of discriminant delta(d).
    Unit {
        d: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continued fraction of (p + sqrt(d))/q (default: sqrt(d)).
    Cf {
        d: i64,
        #[arg(long, default_value_t = 0)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        q: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve x^2 - d y^2 = n with minimal y.
    #[command(allow_negative_numbers = true)]
    Pell {
        d: u64,
        n: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verdict report for one (a, m, p) instance.
    Verify {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a parametrized family and emit one row per field.
    Scan {
        /// Family to sweep: paper (a,m,p grid), bl (a,m), yokoi (m), rd.
        family: String,
        #[arg(long)]
        max_a: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
        #[arg(long)]
        max_p: Option<u64>,
        #[arg(long)]
        max_d: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
        /// Class-number cache file (JSON, versioned).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Worker threads (default: all cores). Output bytes never depend
        /// on this.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Extended Richaud-Degert classification of d.
    ClassifyRd {
        d: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn single_row_output(row: &ScanRow, format: Format) -> Result<String, CliError> {
    scan::render(std::slice::from_ref(row), format)
}

fn cmd_classnum(d: u64, format: Format, cache_path: Option<&std::path::Path>) -> Result<(), CliError> {
    let mut cache = match cache_path {
        Some(p) => Cache::load(p),
        None => Cache::default(),
    };
    let delta = rqf::unit::discriminant_of(d)?;
    let summary = match cache.get(delta) {
        Some(hit) => hit,
        None => {
            let s = wide_class_number(d)?;
            cache.insert(&s);
            if let Some(p) = cache_path {
                if let Err(e) = cache.save(p) {
                    eprintln!("warning: could not save cache {}: {e}", p.display());
                }
            }
            s
        }
    };
    let row = ScanRow::from_summary("field", &summary);
    print!("{}", single_row_output(&row, format)?);
    Ok(())
}

fn cmd_unit(d: u64, format: Format) -> Result<(), CliError> {
    let unit = fundamental_unit(d)?;
    match format {
        Format::Json => {
            let doc = json!({
                "d": d,
                "delta": unit.delta,
                "t": unit.t.to_string(),
                "u": unit.u.to_string(),
                "norm": unit.norm,
                "e_lo": unit.e_lo.to_string(),
                "e_hi": unit.e_hi.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("delta = {}", unit.delta);
            println!("eps   = ({} + {} sqrt({})) / 2", unit.t, unit.u, unit.delta);
            println!("norm  = {:+}", unit.norm);
            println!("value in [{}, {}]", unit.e_lo, unit.e_hi);
        }
    }
    Ok(())
}

fn cmd_cf(p: i64, q: i64, d: i64, format: Format) -> Result<(), CliError> {
    let surd = QuadSurd::new(p, q, d)?;
    let cf = cf_expand(&surd);
    match format {
        Format::Json => {
            let doc = json!({
                "p": surd.p(),
                "q": surd.q(),
                "d": surd.d(),
                "a0": cf.a0,
                "preperiod": cf.preperiod,
                "period": cf.period,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("({} + sqrt({})) / {}", surd.p(), surd.d(), surd.q());
            println!("a0        = {}", cf.a0);
            println!("preperiod = {:?}", cf.preperiod);
            println!("period    = {:?}", cf.period);
        }
    }
    Ok(())
}

fn cmd_pell(d: u64, n: i64, format: Format) -> Result<(), CliError> {
    let witness = solve_norm_form(d, n)?;
    match format {
        Format::Json => {
            let doc = match &witness {
                Some(w) => json!({
                    "d": d, "n": n, "solvable": true,
                    "x": w.x.to_string(), "y": w.y.to_string(),
                }),
                None => json!({ "d": d, "n": n, "solvable": false }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => match &witness {
            Some(w) => println!("x = {}, y = {} solves x^2 - {d} y^2 = {n}", w.x, w.y),
            None => println!("x^2 - {d} y^2 = {n} has no integer solution"),
        },
    }
    Ok(())
}

fn cmd_verify(a: u64, m: u64, p: u64, format: Format) -> Result<(), CliError> {
    let report = verify_theorem(&FamilyParams::new(a, m, p))?;
    match format {
        Format::Json => {
            let rep = report.representation.as_ref();
            let pair = |w: Option<&rqf::pell::PellWitness>| match w {
                Some(w) => json!({"x": w.x.to_string(), "y": w.y.to_string()}),
                None => serde_json::Value::Null,
            };
            let doc = json!({
                "a": a, "m": m, "p": p, "d": report.d,
                "hypothesis_ok": report.hypothesis_ok,
                "hypothesis_reason": report.hypothesis_reason,
                "rep_plus": pair(rep.and_then(|r| r.plus.as_ref())),
                "rep_minus": pair(rep.and_then(|r| r.minus.as_ref())),
                "h_plus": report.summary.as_ref().map(|s| s.h_plus),
                "h": report.summary.as_ref().map(|s| s.h),
                "unit_norm": report.summary.as_ref().map(|s| s.unit_norm),
                "genus_rank": report.summary.as_ref().map(|s| s.genus_rank),
                "splitting": report.splitting.map(|s| s.to_string()),
                "gcd_mp": report.gcd_mp,
                "verdict": report.verdict.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("(a, m, p) = ({a}, {m}, {p}), d = {}", report.d);
            if let Some(reason) = &report.hypothesis_reason {
                println!("hypothesis: not met ({reason})");
            } else {
                println!("hypothesis: ok");
                let s = report.summary.as_ref().unwrap();
                let rep = report.representation.as_ref().unwrap();
                println!("h+ = {}, h = {}, unit norm {:+}", s.h_plus, s.h, s.unit_norm);
                match rep.plus.as_ref() {
                    Some(w) => println!("x^2 - d y^2 = +4p: (x, y) = ({}, {})", w.x, w.y),
                    None => println!("x^2 - d y^2 = +4p: no solution"),
                }
                match rep.minus.as_ref() {
                    Some(w) => println!("x^2 - d y^2 = -4p: (x, y) = ({}, {})", w.x, w.y),
                    None => println!("x^2 - d y^2 = -4p: no solution"),
                }
                println!("p is {}", report.splitting.unwrap());
            }
            println!("verdict: {}", report.verdict);
        }
    }
    Ok(())
}

fn cmd_classify_rd(d: u64, format: Format) -> Result<(), CliError> {
    let c = classify_rd(d)?;
    match format {
        Format::Json => {
            let doc = json!({
                "d": d,
                "is_rd": c.is_rd,
                "m": if c.is_rd { Some(c.m) } else { None },
                "r": if c.is_rd { Some(c.r) } else { None },
                "branch": c.branch.map(|b| b.to_string()),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            if c.is_rd {
                println!(
                    "{d} = {}^2 {} {} (extended Richaud-Degert, {} branch)",
                    c.m,
                    if c.r >= 0 { "+" } else { "-" },
                    c.r.abs(),
                    c.branch.unwrap()
                );
            } else {
                println!("{d} is not of extended Richaud-Degert type");
            }
        }
    }
    Ok(())
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classnum { d, output, cache } => cmd_classnum(d, output.format, cache.as_deref()),
        Command::Unit { d, output } => cmd_unit(d, output.format),
        Command::Cf { d, p, q, output } => cmd_cf(p, q, d, output.format),
        Command::Pell { d, n, output } => cmd_pell(d, n, output.format),
        Command::Verify { a, m, p, output } => cmd_verify(a, m, p, output.format),
        Command::Scan {
            family,
            max_a,
            max_m,
            max_p,
            max_d,
            output,
            cache,
            jobs,
        } => {
            let family = match family.as_str() {
                "paper" => Family::Paper,
                "bl" => Family::Bl,
                "yokoi" => Family::Yokoi,
                "rd" => Family::Rd,
                other => return Err(CliError::usage(format!("unknown family {other:?}"))),
            };
            let bounds = ScanBounds {
                max_a,
                max_m,
                max_p,
                max_d,
            };
            let run = || scan::scan_command(family, &bounds, output.format, cache.as_deref());
            match jobs {
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build()
                        .map_err(|e| CliError::usage(format!("--jobs: {e}")))?;
                    pool.install(run)
                }
                None => run(),
            }
        }
        Command::ClassifyRd { d, output } => cmd_classify_rd(d, output.format),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
