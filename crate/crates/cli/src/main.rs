//! `seshadri`: certified Seshadri constant bounds from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 the surface fails
//! validation (the report is still printed), 3 arithmetic diagnostic.

use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use seshadri_core::report::{audit_report, bound_report, example_report, render, wps_report, DEFAULT_DIGITS};
use seshadri_core::wps::WeightedHypersurface;
use seshadri_core::{AuditGrid, Format, PolarizedSurface, ReportStatus, Weights, DEFAULT_P_MAX};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ARITHMETIC: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    #[value(name = "md", alias = "markdown")]
    Markdown,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Markdown => Format::Markdown,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, clap::Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "md")]
    format: FormatArg,
    /// Digits after the decimal point in decimal renderings.
    #[arg(long, default_value_t = DEFAULT_DIGITS, value_parser = clap::value_parser!(u16).map(usize::from))]
    digits: usize,
}

#[derive(Debug, Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Certified lower bounds for Seshadri constants on surfaces with Picard number one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare every applicable lower bound for one polarized surface.
    ///
    /// The surface is given as key=value fields, e.g. `class=gt l2=1 r=1 pg=2`.
    /// Classes: gt, p2, abelian, k3. Fields: l2 (L^2), r (K_S = rL), pg, q.
    Bound {
        #[arg(required = true, num_args = 1.., value_name = "FIELD")]
        spec: Vec<String>,
        /// Largest multiple p of L searched by the curve-class oracle.
        #[arg(long, env = "SESHADRI_PMAX", default_value_t = DEFAULT_P_MAX, value_parser = clap::value_parser!(u64).range(1..))]
        p_max: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact audit of the comparison inequalities over a parameter grid.
    Audit {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        k2_max: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        r_max: i64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        l2_max: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Invariants of a degree-d surface in weighted projective space.
    Wps {
        /// Four weights, comma separated.
        #[arg(value_name = "W0,W1,W2,W3")]
        weights: Weights,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        degree: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The degree-10 surface in P(1,1,2,5) where the bound 1/2 is attained.
    Example {
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let (doc, output) = match cli.command {
        Command::Bound { spec, p_max, output } => {
            let surface: PolarizedSurface = match spec.join(" ").parse() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            (bound_report(&surface, p_max, output.digits), output)
        }
        Command::Audit {
            k2_max,
            r_max,
            l2_max,
            output,
        } => {
            let grid = AuditGrid {
                k2: 1..=k2_max,
                r: 1..=r_max,
                l2: 1..=l2_max,
            };
            (audit_report(&grid, output.digits), output)
        }
        Command::Wps {
            weights,
            degree,
            output,
        } => {
            let h = match WeightedHypersurface::new(weights, degree) {
                Ok(h) => h,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            (Ok(wps_report(&h, output.digits)), output)
        }
        Command::Example { output } => (example_report(output.digits), output),
    };

    let doc = match doc {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("arithmetic diagnostic: {e}");
            return ExitCode::from(EXIT_ARITHMETIC);
        }
    };
    match render(&doc, output.format.into()) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("arithmetic diagnostic: {e}");
            return ExitCode::from(EXIT_ARITHMETIC);
        }
    }
    match doc.status {
        ReportStatus::Ok => ExitCode::SUCCESS,
        ReportStatus::ValidationFailed => ExitCode::from(EXIT_INVALID),
    }
}
