//! Command-line frontend for the exact q-binomial toolkit.
//!
//! Subcommands:
//!
//! - `compute`: coefficient list of the Gaussian binomial.
//! - `koh`: partition-indexed decomposition, as a term table or an exact
//!   identity check (`OK` / `MISMATCH`).
//! - `strict`: strict-unimodality verdict for one pair.
//! - `scan`: verdicts for every pair in a rectangle, in canonical order.
//! - `certify`: generate a strictness certificate and verify it.
//! - `growth`: coefficient-gap growth check for column count `2d + 4`.
//! - `diff`: consecutive coefficient differences up to the middle degree.
//!
//! Exit codes: 0 for an affirmative result, 1 for a negative mathematical
//! result (non-strict, mismatch, failed verification), 2 for usage or
//! regime errors. Output defaults to plain text on a terminal and JSON when
//! redirected; `--jobs` caps worker threads without changing output bytes.

use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qkoh::{
    certify, difference_profile, is_strictly_unimodal_qbinom, koh_sum, koh_term, partitions_of,
    qbinom, scan_exceptions, verify_certificate, verify_growth, CertNode, Certificate,
    CertifyOutcome, GrowthReport, KohTerm, StrictnessReport, VerifyMode,
};

#[derive(Parser)]
#[command(name = "qkoh", version, about = "Exact q-binomial coefficients and unimodality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; defaults to plain on a terminal, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker thread count; defaults to the available cores.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Numeric,
    Both,
}

impl From<ModeArg> for VerifyMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Symbolic => VerifyMode::Symbolic,
            ModeArg::Numeric => VerifyMode::Numeric,
            ModeArg::Both => VerifyMode::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of the Gaussian binomial for an a x b box.
    Compute { a: u32, b: u32 },
    /// Expand the decomposition into partition-indexed terms (a >= b >= 2).
    Koh {
        a: u32,
        b: u32,
        /// Check the term sum against the direct computation.
        #[arg(long)]
        verify: bool,
        /// Print the term table (the default when --verify is absent).
        #[arg(long)]
        list_terms: bool,
    },
    /// Decide strict unimodality of the coefficient sequence.
    Strict { a: u32, b: u32 },
    /// Classify every pair 2 <= b <= min(a, max-b), b <= a <= max-a.
    Scan {
        #[arg(long)]
        max_a: u32,
        #[arg(long)]
        max_b: u32,
    },
    /// Generate a strictness certificate and verify it.
    Certify {
        a: u32,
        b: u32,
        /// Verification mode for the produced certificate.
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
    },
    /// Check the gap growth guarantee for the pair (a, 2d + 4).
    Growth {
        #[arg(long)]
        d: u32,
        /// Row count; defaults to the family threshold (d+2)(d+3) + 6.
        #[arg(long)]
        a: Option<u32>,
    },
    /// Print consecutive coefficient differences through the middle degree.
    Diff { a: u32, b: u32 },
}

enum CliError {
    /// Bad arguments or out-of-regime parameters; maps to exit code 2.
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(message: impl Display) -> CliError {
    CliError::Usage(message.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let threads = jobs.max(1);
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.format.unwrap_or_else(|| {
        if cli.out.is_none() && io::stdout().is_terminal() {
            OutputFormat::Plain
        } else {
            OutputFormat::Json
        }
    });
    let mut writer: BufWriter<Box<dyn Write>> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(file) => BufWriter::new(Box::new(file)),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => BufWriter::new(Box::new(io::stdout().lock())),
    };
    let outcome = run(cli.command, format, &mut writer);
    if let Err(e) = writer.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, format: OutputFormat, w: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Compute { a, b } => cmd_compute(a, b, format, w),
        Command::Koh {
            a,
            b,
            verify,
            list_terms,
        } => cmd_koh(a, b, verify, list_terms, format, w),
        Command::Strict { a, b } => cmd_strict(a, b, format, w),
        Command::Scan { max_a, max_b } => cmd_scan(max_a, max_b, format, w),
        Command::Certify { a, b, mode } => cmd_certify(a, b, mode.into(), format, w),
        Command::Growth { d, a } => cmd_growth(d, a, format, w),
        Command::Diff { a, b } => cmd_diff(a, b, format, w),
    }
}

fn cmd_compute(a: u32, b: u32, format: OutputFormat, w: &mut impl Write) -> Result<u8, CliError> {
    let poly = qbinom(a, b);
    match format {
        OutputFormat::Plain => {
            for (i, c) in poly.coeffs().iter().enumerate() {
                if i > 0 {
                    write!(w, " ")?;
                }
                write!(w, "{c}")?;
            }
            writeln!(w)?;
        }
        OutputFormat::Json => {
            // Streamed by hand: coefficient lists can be very large, and
            // decimal strings keep arbitrary precision valid in JSON.
            let degree = poly.degree().expect("q-binomials are nonzero");
            write!(w, "{{\"a\":{a},\"b\":{b},\"degree\":{degree},\"coefficients\":[")?;
            for (i, c) in poly.coeffs().iter().enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                write!(w, "\"{c}\"")?;
            }
            writeln!(w, "]}}")?;
        }
        OutputFormat::Csv => {
            writeln!(w, "degree,coefficient")?;
            for (i, c) in poly.coeffs().iter().enumerate() {
                writeln!(w, "{i},{c}")?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct TermListing<'a> {
    a: u32,
    b: u32,
    terms: &'a [KohTerm],
}

fn cmd_koh(
    a: u32,
    b: u32,
    verify: bool,
    _list_terms: bool,
    format: OutputFormat,
    w: &mut impl Write,
) -> Result<u8, CliError> {
    if b < 2 || a < b {
        return Err(usage(format!("koh requires a >= b >= 2, got a = {a}, b = {b}")));
    }
    if verify {
        let sum = koh_sum(a, b).map_err(usage)?;
        return if sum == qbinom(a, b) {
            writeln!(w, "OK")?;
            Ok(0)
        } else {
            writeln!(w, "MISMATCH")?;
            Ok(1)
        };
    }
    let terms: Vec<KohTerm> = partitions_of(b)
        .map(|lambda| koh_term(a, &lambda))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    match format {
        OutputFormat::Plain => {
            for term in &terms {
                write!(w, "{} shift={} factors=", term.lambda(), term.shift())?;
                for (i, f) in term.factors().iter().enumerate() {
                    if i > 0 {
                        write!(w, ";")?;
                    }
                    write!(w, "({},{})", f.top, f.bottom)?;
                }
                if term.vanishes() {
                    write!(w, " vanishes")?;
                }
                writeln!(w)?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &TermListing { a, b, terms: &terms })
                .map_err(io::Error::from)?;
            writeln!(w)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "lambda,shift,factors")?;
            for term in &terms {
                let parts: Vec<String> =
                    term.lambda().parts().iter().map(u32::to_string).collect();
                let factors: Vec<String> = term
                    .factors()
                    .iter()
                    .map(|f| format!("{}:{}", f.top, f.bottom))
                    .collect();
                writeln!(w, "{},{},{}", parts.join(" "), term.shift(), factors.join(" "))?;
            }
        }
    }
    Ok(0)
}

fn verdict_label(report: &StrictnessReport) -> &'static str {
    if report.is_strict() {
        "strict"
    } else {
        "non-strict"
    }
}

fn write_report_plain(w: &mut impl Write, report: &StrictnessReport) -> io::Result<()> {
    match report.witness {
        None => writeln!(w, "({},{}): strict", report.a, report.b),
        Some(witness) => writeln!(
            w,
            "({},{}): non-strict at degree {witness}",
            report.a, report.b
        ),
    }
}

fn write_report_csv_row(w: &mut impl Write, report: &StrictnessReport) -> io::Result<()> {
    let witness = report.witness.map(|v| v.to_string()).unwrap_or_default();
    writeln!(
        w,
        "{},{},{},{witness}",
        report.a,
        report.b,
        verdict_label(report)
    )
}

fn cmd_strict(a: u32, b: u32, format: OutputFormat, w: &mut impl Write) -> Result<u8, CliError> {
    let report = is_strictly_unimodal_qbinom(a, b);
    match format {
        OutputFormat::Plain => write_report_plain(w, &report)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "a,b,verdict,witness")?;
            write_report_csv_row(w, &report)?;
        }
    }
    Ok(if report.is_strict() { 0 } else { 1 })
}

fn cmd_scan(max_a: u32, max_b: u32, format: OutputFormat, w: &mut impl Write) -> Result<u8, CliError> {
    let reports = scan_exceptions(max_a, max_b);
    match format {
        OutputFormat::Plain => {
            for report in &reports {
                write_report_plain(w, report)?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &reports).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "a,b,verdict,witness")?;
            for report in &reports {
                write_report_csv_row(w, report)?;
            }
        }
    }
    Ok(0)
}

fn write_certificate_plain(w: &mut impl Write, cert: &Certificate, depth: usize) -> io::Result<()> {
    let indent = "  ".repeat(depth);
    match &cert.root {
        CertNode::DirectCheck => {
            writeln!(w, "{indent}({},{}) direct-check", cert.a, cert.b)
        }
        CertNode::Inductive { base, step } => {
            writeln!(
                w,
                "{indent}({},{}) inductive family={} shift={} combined={} claimed={}",
                cert.a, cert.b, step.family, step.shift, base.combined_interval,
                step.claimed_interval
            )?;
            write_certificate_plain(w, &step.child, depth + 1)
        }
    }
}

fn write_certificate_csv(w: &mut impl Write, cert: &Certificate) -> io::Result<()> {
    writeln!(w, "a,b,kind,family,shift,claimedLo,claimedHi")?;
    let mut node = cert;
    loop {
        match &node.root {
            CertNode::DirectCheck => {
                writeln!(w, "{},{},direct-check,,,,", node.a, node.b)?;
                return Ok(());
            }
            CertNode::Inductive { step, .. } => {
                writeln!(
                    w,
                    "{},{},inductive,{},{},{},{}",
                    node.a,
                    node.b,
                    step.family,
                    step.shift,
                    step.claimed_interval.lo,
                    step.claimed_interval.hi
                )?;
                node = &step.child;
            }
        }
    }
}

fn cmd_certify(
    a: u32,
    b: u32,
    mode: VerifyMode,
    format: OutputFormat,
    w: &mut impl Write,
) -> Result<u8, CliError> {
    let outcome = certify(a, b).map_err(usage)?;
    if let CertifyOutcome::Certified(cert) = &outcome {
        if let Err(e) = verify_certificate(cert, mode) {
            match format {
                OutputFormat::Json => {
                    let report = serde_json::json!({
                        "outcome": "verification-failed",
                        "error": e.to_string(),
                    });
                    serde_json::to_writer(&mut *w, &report).map_err(io::Error::from)?;
                    writeln!(w)?;
                }
                _ => writeln!(w, "({a},{b}): verification failed: {e}")?,
            }
            return Ok(1);
        }
    }
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &outcome).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        OutputFormat::Plain => match &outcome {
            CertifyOutcome::Certified(cert) => {
                writeln!(w, "({a},{b}): certified, verified")?;
                write_certificate_plain(w, cert, 1)?;
            }
            CertifyOutcome::NotStrict(report) => write_report_plain(w, report)?,
        },
        OutputFormat::Csv => match &outcome {
            CertifyOutcome::Certified(cert) => write_certificate_csv(w, cert)?,
            CertifyOutcome::NotStrict(report) => {
                writeln!(w, "a,b,verdict,witness")?;
                write_report_csv_row(w, report)?;
            }
        },
    }
    Ok(if outcome.is_certified() { 0 } else { 1 })
}

fn write_growth_plain(w: &mut impl Write, report: &GrowthReport) -> io::Result<()> {
    if report.verified {
        writeln!(
            w,
            "growth d={} (b={}, a={}, from degree {}): verified",
            report.d, report.b, report.a, report.l
        )
    } else {
        let degrees: Vec<String> = report.failures.iter().map(u64::to_string).collect();
        writeln!(
            w,
            "growth d={} (b={}, a={}, from degree {}): gap shortfalls at {}",
            report.d,
            report.b,
            report.a,
            report.l,
            degrees.join(" ")
        )
    }
}

fn cmd_growth(
    d: u32,
    a: Option<u32>,
    format: OutputFormat,
    w: &mut impl Write,
) -> Result<u8, CliError> {
    let a = match a {
        Some(a) => a,
        None => {
            let threshold = (u64::from(d) + 2) * (u64::from(d) + 3) + 6;
            u32::try_from(threshold)
                .map_err(|_| usage(format!("default row count for d = {d} overflows")))?
        }
    };
    let report = verify_growth(d, a).map_err(usage)?;
    match format {
        OutputFormat::Plain => write_growth_plain(w, &report)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        OutputFormat::Csv => {
            writeln!(w, "d,b,a0,L,a,verified,failures")?;
            let degrees: Vec<String> = report.failures.iter().map(u64::to_string).collect();
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                report.d,
                report.b,
                report.a0,
                report.l,
                report.a,
                report.verified,
                degrees.join(" ")
            )?;
        }
    }
    Ok(if report.verified { 0 } else { 1 })
}

fn cmd_diff(a: u32, b: u32, format: OutputFormat, w: &mut impl Write) -> Result<u8, CliError> {
    let profile = difference_profile(&qbinom(a, b)).map_err(usage)?;
    match format {
        OutputFormat::Plain => {
            for (i, d) in profile.diffs.iter().enumerate() {
                if i > 0 {
                    write!(w, " ")?;
                }
                write!(w, "{d}")?;
            }
            writeln!(w)?;
        }
        OutputFormat::Json => {
            write!(w, "{{\"a\":{a},\"b\":{b},\"differences\":[")?;
            for (i, d) in profile.diffs.iter().enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                write!(w, "\"{d}\"")?;
            }
            writeln!(w, "]}}")?;
        }
        OutputFormat::Csv => {
            writeln!(w, "degree,difference")?;
            for (i, d) in profile.diffs.iter().enumerate() {
                writeln!(w, "{},{d}", i + 1)?;
            }
        }
    }
    Ok(0)
}
