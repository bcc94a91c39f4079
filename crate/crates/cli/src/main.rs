//! `pmint`: compute the d-matrix, evaluate P_m, run the audit suites and
//! certify factorial ratios with the method of floors.
//!
//! Exit codes: 0 pass, 1 verified mathematical failure, 2 usage or parse error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pmint::audit::{run_suite, Bounds, CheckReport, Suite};
use pmint::floorcert::certificate::fmt_assignment;
use pmint::floorcert::{
    builtin, certify, oracle_membership, parse_spec, uniform_ranges, Certificate,
    FactorialRatioSpec, OracleReport, Verdict, DEFAULT_SMALL_Q_MAX,
};
use pmint::{d_matrix, eval_p, format_rational, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pmint", version, about = "Exact verification of the integer-valued family P_m")]
struct Cli {
    /// Worker threads for parallel sweeps (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient matrix d(m,k) for 0 <= m,k <= max-m.
    Dmatrix {
        #[arg(long, allow_negative_numbers = true)]
        max_m: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate P_m(x) exactly.
    Eval {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(allow_negative_numbers = true)]
        x: i64,
    },
    /// Run a verification suite: relations, integrality, basis or all.
    Check {
        suite: String,
        /// Overrides the m-bound of every sweep in the suite.
        #[arg(long, allow_negative_numbers = true)]
        max_m: Option<i64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Certify a factorial ratio at every odd modulus with the method of floors.
    Certify {
        /// Built-in instance: frac1-diag, frac1-general or frac2.
        instance: Option<String>,
        #[arg(long, conflicts_with = "instance")]
        spec: Option<PathBuf>,
        /// Elimination order, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_SMALL_Q_MAX)]
        small_q_max: i64,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check Z[1/2] membership of a ratio by exact evaluation.
    Oracle {
        instance: Option<String>,
        #[arg(long, conflicts_with = "instance")]
        spec: Option<PathBuf>,
        /// Every variable ranges over 0..=max-m.
        #[arg(long, default_value_t = 60, allow_negative_numbers = true)]
        max_m: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Verified,
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Dmatrix { max_m, format } => dmatrix(max_m, format),
        Command::Eval { m, x } => eval(m, x),
        Command::Check { suite, max_m, format } => check(&suite, max_m, format),
        Command::Certify { instance, spec, order, small_q_max, emit_certificate, format } => {
            cmd_certify(instance, spec, order, small_q_max, emit_certificate, format)
        }
        Command::Oracle { instance, spec, max_m, format } => oracle(instance, spec, max_m, format),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verified) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dmatrix(max_m: i64, format: Format) -> Outcome {
    if max_m < 0 {
        return Err(usage(format!("--max-m must be nonnegative, got {max_m}")));
    }
    let mat = d_matrix(max_m as usize);
    let rows: Vec<Vec<String>> =
        mat.rows().map(|r| r.iter().map(format_rational).collect()).collect();
    match format {
        Format::Csv => {
            for r in &rows {
                println!("{}", r.join(","));
            }
        }
        Format::Json => {
            println!("{}", json!({ "max_m": max_m, "rows": rows }));
        }
        Format::Table => {
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut header = format!("{:>4} ", "m\\k");
            for k in 0..rows.len() {
                write!(header, " {k:>width$}").unwrap();
            }
            println!("{header}");
            for (m, r) in rows.iter().enumerate() {
                let mut line = format!("{m:>4} ");
                for v in r {
                    write!(line, " {v:>width$}").unwrap();
                }
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn eval(m: i64, x: i64) -> Outcome {
    if m < 0 {
        return Err(usage(format!("m must be nonnegative, got {m}")));
    }
    println!("{}", format_rational(&eval_p(m, x)));
    Ok(())
}

fn check(suite: &str, max_m: Option<i64>, format: Format) -> Outcome {
    let suite: Suite = suite.parse().map_err(usage)?;
    if let Some(m) = max_m {
        if m < 0 {
            return Err(usage(format!("--max-m must be nonnegative, got {m}")));
        }
    }
    let reports = run_suite(suite, Bounds { max_m }).map_err(usage)?;
    print_checks(&reports, format);
    if reports.iter().all(CheckReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

const SHOWN_WITNESSES: usize = 10;

fn fmt_point(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn print_checks(reports: &[CheckReport], format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(reports).expect("serializable")),
        Format::Csv => {
            println!("check,range,points,failures,status");
            for r in reports {
                println!(
                    "{},\"{}\",{},{},{}",
                    r.name,
                    r.range,
                    r.points,
                    r.failures.len(),
                    if r.passed() { "PASS" } else { "FAIL" }
                );
            }
        }
        Format::Table => {
            let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!("{status}  {:<width$}  {:>7} points  {}", r.name, r.points, r.range);
                for p in r.failures.iter().take(SHOWN_WITNESSES) {
                    println!("      witness {}", fmt_point(p));
                }
                if r.failures.len() > SHOWN_WITNESSES {
                    println!("      ... {} more", r.failures.len() - SHOWN_WITNESSES);
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            println!("{} checks, {failed} failed", reports.len());
        }
    }
}

/// Resolves a built-in name or a spec file into a named spec and default order.
fn load(
    instance: Option<String>,
    spec: Option<PathBuf>,
) -> Result<(String, FactorialRatioSpec, Vec<String>), Failure> {
    match (instance, spec) {
        (Some(name), None) => {
            let inst = builtin(&name).map_err(usage)?;
            Ok((inst.name.to_string(), inst.spec, inst.order))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let spec = parse_spec(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let name = path.file_stem().map_or("spec".into(), |s| s.to_string_lossy().into_owned());
            let order = spec.variables.clone();
            Ok((name, spec, order))
        }
        (None, None) => Err(usage("give a built-in instance name or --spec FILE")),
        (Some(_), Some(_)) => Err(usage("give either an instance name or --spec, not both")),
    }
}

fn cmd_certify(
    instance: Option<String>,
    spec: Option<PathBuf>,
    order: Option<Vec<String>>,
    small_q_max: i64,
    emit: Option<PathBuf>,
    format: Format,
) -> Outcome {
    let (name, spec, default_order) = load(instance, spec)?;
    let order = order.unwrap_or(default_order);
    let cert = certify(&name, &spec, &order, small_q_max).map_err(usage)?;
    if let Some(path) = emit {
        std::fs::write(&path, cert.to_text())
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    print_certificate(&cert, format);
    if cert.passed() {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

fn print_certificate(cert: &Certificate, format: Format) {
    let small_min = cert.small_q.min();
    let witness = match &cert.verdict {
        Verdict::Pass => None,
        Verdict::Fail(w) => Some(w),
    };
    match format {
        Format::Json => {
            let doc = json!({
                "instance": cert.instance,
                "order": cert.order,
                "floor_sum": cert.floor_sum.to_string(),
                "floors": cert.floor_count(),
                "small_q_max": cert.small_q.q_max,
                "small_q_min": small_min,
                "cases": cert.steps.iter().map(|s| json!({ "var": s.var, "cases": s.cases })).collect::<Vec<_>>(),
                "leaves": cert.leaves.len(),
                "max_bound": cert.max_bound,
                "verdict": if cert.passed() { "PASS" } else { "FAIL" },
                "witness": witness.map(|w| json!({ "q": w.q, "point": w.assignment, "value": w.value })),
            });
            println!("{doc}");
        }
        Format::Csv => {
            println!("instance,floors,leaves,max_bound,small_q_min,verdict");
            println!(
                "{},{},{},{},{},{}",
                cert.instance,
                cert.floor_count(),
                cert.leaves.len(),
                cert.max_bound,
                small_min.map_or(String::new(), |v| v.to_string()),
                if cert.passed() { "PASS" } else { "FAIL" }
            );
        }
        Format::Table => {
            println!("instance   {}", cert.instance);
            println!("order      {}", cert.order.join(","));
            println!("floor sum  {}", cert.floor_sum);
            match small_min {
                Some(v) => println!("small q    3 <= q < {}: min {v}", cert.small_q.q_max),
                None => println!("small q    none below {}", cert.small_q.q_max),
            }
            for s in &cert.steps {
                println!("eliminate  {}: {} -> {} cases", s.var, s.parents, s.cases);
            }
            println!("leaves     {}", cert.leaves.len());
            println!("bound      {}", cert.max_bound);
            match witness {
                None => println!("verdict    PASS"),
                Some(w) => println!(
                    "verdict    FAIL at q={} {} value {}",
                    w.q,
                    fmt_assignment(&w.assignment),
                    w.value
                ),
            }
        }
    }
}

fn oracle(
    instance: Option<String>,
    spec: Option<PathBuf>,
    max_m: i64,
    format: Format,
) -> Outcome {
    if max_m < 0 {
        return Err(usage(format!("--max-m must be nonnegative, got {max_m}")));
    }
    let (name, spec, _) = load(instance, spec)?;
    let report = match oracle_membership(&spec, &uniform_ranges(&spec, max_m)) {
        Ok(r) => r,
        Err(e @ Error::RegionInconsistent { .. }) => {
            println!("{name}: {e}");
            return Err(Failure::Verified);
        }
        Err(e) => return Err(usage(e)),
    };
    print_oracle(&name, max_m, &report, format);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

fn print_oracle(name: &str, max_m: i64, report: &OracleReport, format: Format) {
    match format {
        Format::Json => {
            let doc = json!({
                "instance": name,
                "max_m": max_m,
                "points": report.points_in_region,
                "violations": report.violations,
            });
            println!("{doc}");
        }
        Format::Csv => {
            println!("point,value");
            for v in &report.violations {
                println!("\"{}\",{}", fmt_assignment(&v.assignment), v.value);
            }
        }
        Format::Table => {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "{status}  {name}  {} points, {} outside Z[1/2]",
                report.points_in_region,
                report.violations.len()
            );
            for v in report.violations.iter().take(SHOWN_WITNESSES) {
                println!("      witness {} = {}", fmt_assignment(&v.assignment), v.value);
            }
        }
    }
}
