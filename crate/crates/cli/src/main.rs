use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use spinh::checks::{self, CheckOutcome, Grid};
use spinh::golden::compare_appendix_b;
use spinh::hurwitz::{connected_double, spin_double_disconnected};
use spinh::routes::{self, Route};
use spinh::{Error, Partition, Q};

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_SCOPE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "spinh",
    version,
    about = "Exact spin Hurwitz numbers with completed cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connected single numbers along one or all routes.
    Single {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g: u32,
        /// Parts separated by commas, e.g. 5,3,1.
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "characters")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Double numbers through the character formula.
    Double {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Take the connected part by logarithm extraction.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Regenerates a published table and diffs it against the embedded copy.
    Table {
        #[arg(long, value_enum)]
        preset: Preset,
        /// Restrict to one value of r.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Runs the invariant and route-equivalence sweeps.
    Crosscheck {
        #[arg(long, value_enum, default_value = "quick")]
        grid: GridArg,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Characters,
    Fock,
    Closed,
    Tr,
    Elsv,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    #[value(name = "appendixB")]
    AppendixB,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    StructuralZero,
    MethodUnavailable,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::StructuralZero => "structural-zero",
            Status::MethodUnavailable => "method-unavailable",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct ResultRecord {
    r: u32,
    g: u32,
    mu: Vec<u32>,
    nu: Option<Vec<u32>>,
    method: String,
    value: Option<String>,
    status: Status,
}

fn rational_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parts_string(p: &[u32], sep: &str) -> String {
    p.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn write_records(records: &[ResultRecord], format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "r,g,mu,nu,method,value,status")?;
            for rec in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    rec.r,
                    rec.g,
                    parts_string(&rec.mu, " "),
                    rec.nu
                        .as_deref()
                        .map(|n| parts_string(n, " "))
                        .unwrap_or_default(),
                    rec.method,
                    rec.value.as_deref().unwrap_or(""),
                    rec.status.as_str()
                )?;
            }
        }
        Format::Human => {
            for rec in records {
                let nu = rec
                    .nu
                    .as_deref()
                    .map(|n| format!(" nu=({})", parts_string(n, ",")))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "r={} g={} mu=({}){} {:<10} {:>24} {}",
                    rec.r,
                    rec.g,
                    parts_string(&rec.mu, ","),
                    nu,
                    rec.method,
                    rec.value.as_deref().unwrap_or("-"),
                    rec.status.as_str()
                )?;
            }
        }
    }
    Ok(())
}

fn parse_partition(s: &str) -> Result<Partition, ExitCode> {
    match Partition::parse(s) {
        Ok(p) if !p.is_empty() => Ok(p),
        Ok(_) => Err(usage("the partition must be nonempty")),
        Err(e) => Err(usage(e)),
    }
}

fn check_r(r: u32) -> Result<(), ExitCode> {
    if r == 0 || r % 2 == 1 {
        return Err(usage(format!("r = {r} must be positive and even")));
    }
    Ok(())
}

fn cmd_single(r: u32, g: u32, mu: &str, method: MethodArg, format: Format) -> ExitCode {
    if let Err(code) = check_r(r) {
        return code;
    }
    let mu = match parse_partition(mu) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let routes: Vec<Route> = match method {
        MethodArg::Characters => vec![Route::Characters],
        MethodArg::Fock => vec![Route::Fock],
        MethodArg::Closed => vec![Route::Closed],
        MethodArg::Tr => vec![Route::Tr],
        MethodArg::Elsv => vec![Route::Elsv],
        MethodArg::All => Route::ALL.to_vec(),
    };
    let zero = routes::structural_zero(g, &mu, r);
    let outcomes: Vec<(Route, Result<Q, Error>)> = routes
        .par_iter()
        .map(|&route| {
            let v = if zero {
                Ok(Q::default())
            } else {
                routes::single(route, g, &mu, r)
            };
            (route, v)
        })
        .collect();
    let mut records = Vec::new();
    let mut unavailable = 0;
    let mut failed = false;
    for (route, v) in &outcomes {
        let (value, status) = match v {
            Ok(x) if zero => (Some(rational_string(x)), Status::StructuralZero),
            Ok(x) => (Some(rational_string(x)), Status::Ok),
            Err(e) => {
                eprintln!("{route}: {e}");
                match e {
                    Error::Scope(_) => unavailable += 1,
                    _ => failed = true,
                }
                (None, Status::MethodUnavailable)
            }
        };
        records.push(ResultRecord {
            r,
            g,
            mu: mu.parts().to_vec(),
            nu: None,
            method: route.name().to_string(),
            value,
            status,
        });
    }
    if write_records(&records, format).is_err() {
        return ExitCode::FAILURE;
    }
    let values: Vec<&String> = records.iter().filter_map(|r| r.value.as_ref()).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if method == MethodArg::All {
        let line = match (agree, values.first()) {
            (true, Some(v)) => format!(
                "consensus: agree {v} ({} of {} methods)",
                values.len(),
                records.len()
            ),
            (true, None) => "consensus: no method available".to_string(),
            (false, _) => "consensus: disagree".to_string(),
        };
        if format == Format::Human {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    if !agree {
        ExitCode::from(EXIT_MISMATCH)
    } else if failed || values.is_empty() || (method != MethodArg::All && unavailable > 0) {
        ExitCode::from(EXIT_SCOPE)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_double(r: u32, g: u32, mu: &str, nu: &str, connected: bool, format: Format) -> ExitCode {
    if let Err(code) = check_r(r) {
        return code;
    }
    let (mu, nu) = match (parse_partition(mu), parse_partition(nu)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let result = if connected {
        connected_double(g, &mu, &nu, r)
    } else {
        spin_double_disconnected(g, &mu, &nu, r)
    };
    let (value, status, code) = match result {
        Ok(v) => (Some(rational_string(&v)), Status::Ok, ExitCode::SUCCESS),
        Err(Error::NoCovers(_) | Error::WrongClass { .. } | Error::SizeMismatch(..)) => (
            Some("0/1".to_string()),
            Status::StructuralZero,
            ExitCode::SUCCESS,
        ),
        Err(e) => {
            eprintln!("error: {e}");
            (None, Status::MethodUnavailable, ExitCode::from(EXIT_SCOPE))
        }
    };
    let method = if connected {
        "characters-connected"
    } else {
        "characters"
    };
    let record = ResultRecord {
        r,
        g,
        mu: mu.parts().to_vec(),
        nu: Some(nu.parts().to_vec()),
        method: method.to_string(),
        value,
        status,
    };
    if write_records(&[record], format).is_err() {
        return ExitCode::FAILURE;
    }
    code
}

fn cmd_table(r: Option<u32>, format: Format) -> ExitCode {
    let comparisons = match compare_appendix_b() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut rows: Vec<_> = comparisons
        .into_iter()
        .filter(|c| r.is_none_or(|r| c.cell.r == r))
        .collect();
    if rows.is_empty() {
        return usage("no table cells for the requested r");
    }
    rows.sort_by(|a, b| {
        (a.cell.r, a.cell.g, a.cell.mu.len(), a.cell.mu.parts()).cmp(&(
            b.cell.r,
            b.cell.g,
            b.cell.mu.len(),
            b.cell.mu.parts(),
        ))
    });
    let records: Vec<ResultRecord> = rows
        .iter()
        .map(|c| ResultRecord {
            r: c.cell.r,
            g: c.cell.g,
            mu: c.cell.mu.parts().to_vec(),
            nu: None,
            method: "characters".to_string(),
            value: c.computed.as_ref().ok().map(rational_string),
            status: if c.computed.is_ok() {
                Status::Ok
            } else {
                Status::MethodUnavailable
            },
        })
        .collect();
    if write_records(&records, format).is_err() {
        return ExitCode::FAILURE;
    }
    let mismatches: Vec<_> = rows.iter().filter(|c| !c.matches()).collect();
    for c in &mismatches {
        let computed = match &c.computed {
            Ok(v) => rational_string(v),
            Err(e) => e.to_string(),
        };
        eprintln!(
            "diff: r={} g={} mu={} table {} computed {}",
            c.cell.r,
            c.cell.g,
            c.cell.mu,
            rational_string(&c.cell.value),
            computed
        );
    }
    eprintln!("{} cells, {} diffs", rows.len(), mismatches.len());
    if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

#[derive(Serialize)]
struct CheckLine<'a> {
    name: &'a str,
    passed: bool,
    cases: usize,
    failures: &'a [String],
}

fn cmd_crosscheck(grid: GridArg, format: Format) -> ExitCode {
    let grid = match grid {
        GridArg::Quick => Grid::Quick,
        GridArg::Full => Grid::Full,
    };
    let outcomes: Vec<CheckOutcome> = match checks::crosscheck(grid) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let lines: Vec<CheckLine> = outcomes
        .iter()
        .map(|o| CheckLine {
            name: &o.name,
            passed: o.passed(),
            cases: o.cases,
            failures: &o.failures,
        })
        .collect();
    let written = match format {
        Format::Json => serde_json::to_string_pretty(&lines)
            .map(|s| println!("{s}"))
            .map_err(io::Error::other),
        Format::Csv => {
            println!("name,passed,cases,failures");
            for l in &lines {
                println!(
                    "{},{},{},{}",
                    l.name.replace(',', ";"),
                    l.passed,
                    l.cases,
                    l.failures.len()
                );
            }
            Ok(())
        }
        Format::Human => {
            for l in &lines {
                println!(
                    "{} {} ({} cases)",
                    if l.passed { "PASS" } else { "FAIL" },
                    l.name,
                    l.cases
                );
                for f in l.failures {
                    println!("    {f}");
                }
            }
            Ok(())
        }
    };
    if written.is_err() {
        return ExitCode::FAILURE;
    }
    if lines.iter().all(|l| l.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Single {
            r,
            g,
            mu,
            method,
            format,
        } => cmd_single(r, g, &mu, method, format),
        Command::Double {
            r,
            g,
            mu,
            nu,
            connected,
            format,
        } => cmd_double(r, g, &mu, &nu, connected, format),
        Command::Table {
            preset: Preset::AppendixB,
            r,
            format,
        } => cmd_table(r, format),
        Command::Crosscheck { grid, format } => cmd_crosscheck(grid, format),
    }
}
