//! Command-line surface tying the library together: compute, compare,
//! fuzz, census.
//!
//! Exit codes: 0 ok (and INCONCLUSIVE compare), 1 DISTINCT compare,
//! 2 parse error, 3 resource cap exceeded, 4 fuzz failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::census::{self, CensusSummary, Predicate};
use crate::gauss;
use crate::invariants;
use crate::moves;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_FUZZ: i32 = 4;

/// Environment variable overriding the census chord cap.
pub const CENSUS_CAP_ENV: &str = "GAUSSINDEX_CENSUS_CAP";

#[derive(Parser)]
#[command(name = "gaussindex", version, about = "Index-type invariants of virtual knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full invariant report of a signed Gauss code
    Compute {
        /// Gauss code such as O1+O2+U1+U2+; read from stdin when omitted
        code: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare all computed invariants of two codes
    Compare {
        code_a: String,
        code_b: String,
    },
    /// Random-walk invariance fuzzing over seeded diagrams
    Fuzz {
        /// Number of start diagrams
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Moves per walk
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// Chord cap during walks (insertions suppressed above it)
        #[arg(long, default_value_t = 30)]
        max_chords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate all diagrams with a given chord count up to rotation
    Census {
        #[arg(long)]
        chords: usize,
        /// Record filter, e.g. "F!=0" or "W_t=0 && Z=0"
        #[arg(long = "where")]
        predicate: Option<String>,
        /// Write records to <out> and the summary to <out>.summary.json
        /// (stdout/stderr when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write scalar columns to <out>.csv
        #[arg(long)]
        csv: bool,
    },
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Compute { code, format } => cmd_compute(code, format),
        Command::Compare { code_a, code_b } => cmd_compare(&code_a, &code_b),
        Command::Fuzz { count, steps, max_chords, seed } => {
            cmd_fuzz(count, steps, max_chords, seed)
        }
        Command::Census { chords, predicate, out, csv } => {
            cmd_census(chords, predicate.as_deref(), out.as_deref(), csv)
        }
    }
}

fn parse_or_report(code: &str) -> Result<gauss::GaussDiagram, i32> {
    gauss::parse(code).map_err(|e| {
        eprintln!("parse error: {e}");
        EXIT_PARSE
    })
}

fn cmd_compute(code: Option<String>, format: Format) -> i32 {
    let text = match code {
        Some(code) => code,
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("failed to read stdin: {e}");
                return EXIT_PARSE;
            }
            buf.trim().to_string()
        }
    };
    let d = match parse_or_report(&text) {
        Ok(d) => d,
        Err(code) => return code,
    };
    match format {
        Format::Text => print!("{}", invariants::report_text(&d)),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&invariants::report_json(&d)).unwrap())
        }
    }
    EXIT_OK
}

fn cmd_compare(code_a: &str, code_b: &str) -> i32 {
    let a = match parse_or_report(code_a) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let b = match parse_or_report(code_b) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let diffs = invariants::invariant_differences(&a, &b);
    if diffs.is_empty() {
        println!("INCONCLUSIVE");
        EXIT_OK
    } else {
        println!("DISTINCT");
        for name in diffs {
            println!("differs: {name}");
        }
        EXIT_DISTINCT
    }
}

/// Maximum chord count of fuzzing start diagrams.
const FUZZ_START_CHORDS: usize = 8;

fn cmd_fuzz(count: usize, steps: usize, max_chords: usize, seed: u64) -> i32 {
    let report = moves::fuzz_invariance(
        count,
        steps,
        FUZZ_START_CHORDS,
        max_chords,
        seed,
        invariants::invariant_differences,
    );
    println!("{}/{} preserved", report.passes, count);
    if report.failures.is_empty() {
        return EXIT_OK;
    }
    for failure in &report.failures {
        eprintln!("FAIL start: {}", failure.start_code);
        eprintln!("  broken: {}", failure.broken.join(", "));
        eprintln!(
            "  first bad step {}: {} -> {}",
            failure.first_bad_step, failure.before_code, failure.after_code
        );
        eprintln!("  trace:");
        for step in &failure.trace {
            eprintln!("    {step}");
        }
    }
    EXIT_FUZZ
}

fn census_cap() -> usize {
    std::env::var(CENSUS_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(census::DEFAULT_CENSUS_CAP)
}

fn cmd_census(chords: usize, predicate: Option<&str>, out: Option<&Path>, csv: bool) -> i32 {
    let cap = census_cap();
    if chords > cap {
        eprintln!("{}", census::CensusError::CapExceeded { requested: chords, cap });
        return EXIT_CAP;
    }
    let predicate = match predicate.map(Predicate::parse).transpose() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("predicate error: {e}");
            return EXIT_PARSE;
        }
    };

    let mut summary = CensusSummary::new(chords);
    let records = census::census_stream(chords)
        .filter(|rec| predicate.as_ref().is_none_or(|p| p.matches(rec)));

    let result = match out {
        Some(path) => write_census_files(records, &mut summary, path, csv),
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            let r = write_records(records, &mut summary, &mut w, None);
            if r.is_ok() {
                eprintln!("{}", summary.to_json());
            }
            r
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("write error: {e}");
            1
        }
    }
}

fn write_records<I, W>(
    records: I,
    summary: &mut CensusSummary,
    jsonl: &mut W,
    mut csv: Option<&mut dyn Write>,
) -> std::io::Result<()>
where
    I: Iterator<Item = census::CensusRecord>,
    W: Write,
{
    if let Some(csv) = csv.as_deref_mut() {
        writeln!(csv, "{}", census::CSV_HEADER)?;
    }
    for rec in records {
        summary.add(&rec);
        writeln!(jsonl, "{}", rec.to_json())?;
        if let Some(csv) = csv.as_deref_mut() {
            writeln!(csv, "{}", rec.to_csv_row())?;
        }
    }
    Ok(())
}

fn write_census_files<I>(
    records: I,
    summary: &mut CensusSummary,
    path: &Path,
    csv: bool,
) -> std::io::Result<()>
where
    I: Iterator<Item = census::CensusRecord>,
{
    let mut jsonl = BufWriter::new(File::create(path)?);
    let mut csv_file = if csv {
        Some(BufWriter::new(File::create(sibling(path, "csv"))?))
    } else {
        None
    };
    write_records(
        records,
        summary,
        &mut jsonl,
        csv_file.as_mut().map(|f| f as &mut dyn Write),
    )?;
    jsonl.flush()?;
    if let Some(mut f) = csv_file {
        f.flush()?;
    }
    let summary_path = sibling(path, "summary.json");
    let mut f = BufWriter::new(File::create(summary_path)?);
    writeln!(f, "{}", serde_json::to_string_pretty(&summary.to_json()).unwrap())?;
    f.flush()
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}
