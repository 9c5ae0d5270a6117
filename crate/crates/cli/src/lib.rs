//! Command-line front end: `klv compute`, `klv verify` and `klv stats`.
//!
//! Exit codes: 0 success, 1 a property or computation failed, 2 usage or
//! I/O error, 3 the element cap was exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klv_core::coxeter::TwistSpec;
use klv_core::twisted::restrict_kl;
use klv_core::verify::{self, PropertyReport, StatsRow, DEFAULT_ORACLE_LIMIT};
use serde::Serialize;

pub mod cache;
pub mod session;
pub mod tablefile;

use cache::Cache;
use session::{parse_twist, Session};
use tablefile::TableKind;

/// Default upper bound on the number of group elements. The dense KL table
/// alone takes `4 n^2` bytes.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    ResourceCap(String),
    #[error("computation failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::ResourceCap(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    PropertyFailure,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::PropertyFailure => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "klv",
    version,
    about = "Kazhdan-Lusztig polynomials and structure constants of twisted involutions"
)]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Refuse groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Cache directory; overrides KLV_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a table and write it out.
    Compute(ComputeArgs),
    /// Run property checks and oracles; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Maximum nonzero coefficients, one row per type.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Type label such as A3, 2A3, BC2, I2(7) or A1xA2.
    #[arg(long = "type")]
    pub type_label: String,
    /// identity, diagram, swap, or a comma-separated permutation such as 1,0.
    /// Without it the label decides.
    #[arg(long, value_parser = parse_twist)]
    pub twist: Option<TwistSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Binary,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum)]
    pub table: TableKind,
    /// Output path, or - for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    #[value(name = "Ap")]
    APrime,
    #[value(name = "Bp")]
    BPrime,
    #[value(name = "Cp")]
    CPrime,
    #[value(name = "Dp")]
    DPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    /// Bar-invariance of independently solved c_w and A_w.
    Bar,
    /// The (W x W, swap) identities, taking the given type as W.
    Product,
    /// Factorization over the first irreducible block.
    Factorization,
    /// Defining identities of h and h^sigma, and star symmetry.
    Definitions,
    /// Parity and balance of h, h~, h^sigma, h^+ and h^-.
    Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Comma-separated subset of A,B,C,D,Ap,Bp,Cp,Dp.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub properties: Vec<Property>,
    /// Comma-separated subset of bar,product,factorization,definitions,parity.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub oracle: Vec<Oracle>,
    /// Oracles that solve in the Hecke algebra are skipped above this size.
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatSet {
    Polys,
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// One or more comma-separated type labels.
    #[arg(long = "type", value_delimiter = ',', required = true)]
    pub types: Vec<String>,
    #[arg(long, value_parser = parse_twist)]
    pub twist: Option<TwistSpec>,
    #[arg(long, value_enum, default_value_t = StatSet::Polys)]
    pub set: StatSet,
    #[arg(long, value_enum, default_value_t = StatsFormat::Csv)]
    pub format: StatsFormat,
    /// Print a header line first (csv and text).
    #[arg(long)]
    pub header: bool,
}

/// Runs a parsed command, writing reports and tables to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if let Some(n) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let cache = cli.cache_dir.map(Cache::new).or_else(Cache::from_env);
    let open = |s: &SystemArgs| {
        Session::open(
            &s.type_label,
            s.twist.clone().unwrap_or(TwistSpec::FromLabel),
            cli.cap,
            cache.clone(),
        )
    };
    match cli.command {
        Command::Compute(args) => {
            let mut session = open(&args.system)?;
            compute(&mut session, &args, out)
        }
        Command::Verify(args) => {
            let mut session = open(&args.system)?;
            verify_command(&mut session, &args, out)
        }
        Command::Stats(args) => stats(&args, cli.cap, cache, out),
    }
}

fn compute(
    session: &mut Session,
    args: &ComputeArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    // Open the destination first so an unwritable path fails before any work.
    let mut sink: Box<dyn Write + '_> = if args.out == "-" {
        Box::new(&mut *out)
    } else {
        let f = File::create(&args.out)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", args.out)))?;
        Box::new(BufWriter::new(f))
    };
    let file = session.table_file(args.table)?;
    match args.format {
        TableFormat::Json => file.write_json(&mut sink).map_err(table_io)?,
        TableFormat::Binary => sink.write_all(&file.to_binary())?,
    }
    sink.flush()?;
    Ok(Outcome::Success)
}

fn table_io(e: tablefile::TableFileError) -> CliError {
    match e {
        tablefile::TableFileError::Io(e) => CliError::Io(e),
        other => CliError::Failed(other.to_string()),
    }
}

fn oracle_error(e: verify::OracleError) -> CliError {
    match e {
        verify::OracleError::Irreducible(_) | verify::OracleError::NotBlockCompatible(_) => {
            CliError::Usage(e.to_string())
        }
        verify::OracleError::Coxeter(c) => session::coxeter_error(c),
        other => CliError::Failed(other.to_string()),
    }
}

/// Runs the requested checks in a fixed order. With neither `--properties`
/// nor `--oracle`, all eight properties run.
pub fn collect_reports(
    session: &mut Session,
    properties: &[Property],
    oracles: &[Oracle],
    oracle_limit: usize,
) -> Result<Vec<PropertyReport>, CliError> {
    let all = [
        Property::A,
        Property::B,
        Property::C,
        Property::D,
        Property::APrime,
        Property::BPrime,
        Property::CPrime,
        Property::DPrime,
    ];
    let properties: Vec<Property> = if properties.is_empty() && oracles.is_empty() {
        all.to_vec()
    } else {
        all.into_iter().filter(|p| properties.contains(p)).collect()
    };
    let mut reports = Vec::new();
    for p in properties {
        match p {
            Property::A => {
                session.ensure_kl()?;
                reports.push(verify::check_a(session.kl()));
            }
            Property::B => {
                session.ensure_kl()?;
                reports.push(verify::check_b(&session.g, session.kl()));
            }
            Property::C => {
                session.ensure_h()?;
                reports.push(verify::check_c(session.h()));
            }
            Property::D => {
                session.ensure_h()?;
                reports.push(verify::check_d(session.h()));
            }
            Property::APrime => {
                session.ensure_split_polys()?;
                reports.push(verify::check_a_prime(session.split_polys()));
            }
            Property::BPrime => {
                session.ensure_split_polys()?;
                reports.extend(verify::check_b_prime(&session.g, session.split_polys()));
            }
            Property::CPrime => {
                session.ensure_split_constants()?;
                reports.push(verify::check_c_prime(session.split_constants()));
            }
            Property::DPrime => {
                session.ensure_split_constants()?;
                reports.push(verify::check_d_prime(session.split_constants()));
            }
        }
    }
    let order = [
        Oracle::Bar,
        Oracle::Product,
        Oracle::Factorization,
        Oracle::Definitions,
        Oracle::Parity,
    ];
    for o in order.into_iter().filter(|o| oracles.contains(o)) {
        match o {
            Oracle::Bar => {
                session.ensure_kl()?;
                session.ensure_sigma()?;
                reports.extend(verify::check_bar_oracles(
                    &session.g,
                    session.kl(),
                    session.sigma(),
                    oracle_limit,
                ));
            }
            Oracle::Product => {
                let r = verify::product_case_oracle(&session.system).map_err(oracle_error)?;
                reports.extend(r.reports);
                let order = if r.hsigma_order.is_empty() {
                    "none".to_string()
                } else {
                    r.hsigma_order.join(" and ")
                };
                reports.push(
                    r.transposed
                        .with_note(format!("informational; matching f index orders: {order}")),
                );
            }
            Oracle::Factorization => {
                reports
                    .extend(verify::factorization_oracle(&session.system).map_err(oracle_error)?);
            }
            Oracle::Definitions => {
                session.ensure_h()?;
                session.ensure_hsigma()?;
                let g = &session.g;
                reports.push(verify::check_h_definition(
                    g,
                    session.kl(),
                    session.h(),
                    oracle_limit,
                ));
                reports.push(verify::check_hsigma_definition(
                    g,
                    session.kl(),
                    session.sigma(),
                    session.hsigma(),
                    oracle_limit,
                ));
                reports.push(verify::check_star_symmetry(g, session.hsigma()));
            }
            Oracle::Parity => {
                session.ensure_split_constants()?;
                let g = &session.g;
                reports.push(verify::check_parity(g, session.h()));
                reports.push(verify::check_parity(g, session.htilde()));
                reports.push(verify::check_parity(g, session.hsigma()));
                reports.push(verify::check_parity(g, &session.split_constants().plus));
                reports.push(verify::check_parity(g, &session.split_constants().minus));
            }
        }
    }
    Ok(reports)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(rename = "type")]
    type_label: &'a str,
    twist: &'a [usize],
    holds: bool,
    reports: &'a [PropertyReport],
}

fn verify_command(
    session: &mut Session,
    args: &VerifyArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let reports = collect_reports(session, &args.properties, &args.oracle, args.oracle_limit)?;
    // The transposed product-case comparison is informational only.
    let failed = reports.iter().any(|r| {
        r.fails()
            && !r
                .note
                .as_deref()
                .is_some_and(|n| n.starts_with("informational"))
    });
    match args.format {
        ReportFormat::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
        ReportFormat::Json => {
            let doc = VerifyOutput {
                type_label: &args.system.type_label,
                twist: session.system.twist(),
                holds: !failed,
                reports: &reports,
            };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(if failed {
        Outcome::PropertyFailure
    } else {
        Outcome::Success
    })
}

/// Statistics rows for one system, in table column order.
pub fn stats_rows(session: &mut Session, set: StatSet) -> Result<Vec<StatsRow>, CliError> {
    Ok(match set {
        StatSet::Polys => {
            session.ensure_split_polys()?;
            let restricted = restrict_kl(&session.g, session.kl());
            verify::polynomial_stats(&restricted, session.sigma(), session.split_polys())
        }
        StatSet::Constants => {
            session.ensure_split_constants()?;
            verify::constant_stats(
                session.htilde(),
                session.hsigma(),
                session.split_constants(),
            )
        }
    })
}

#[derive(Serialize)]
struct StatsOutput {
    #[serde(rename = "type")]
    type_label: String,
    rows: Vec<StatsRow>,
}

fn stats(
    args: &StatsArgs,
    cap: usize,
    cache: Option<Cache>,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut all = Vec::new();
    for label in &args.types {
        let twist = args.twist.clone().unwrap_or(TwistSpec::FromLabel);
        let mut session = Session::open(label, twist, cap, cache.clone())?;
        all.push(StatsOutput {
            type_label: label.clone(),
            rows: stats_rows(&mut session, args.set)?,
        });
    }
    let columns: &[&str] = match args.set {
        StatSet::Polys => &["type", "P", "P^sigma", "-P^sigma", "P^+", "P^-"],
        StatSet::Constants => &["type", "h~", "h^sigma", "-h^sigma", "h^+", "h^-"],
    };
    let cells = |s: &StatsOutput| -> Vec<String> {
        std::iter::once(s.type_label.clone())
            .chain(s.rows.iter().flat_map(|r| r.cells()).map(|c| c.to_string()))
            .collect()
    };
    match args.format {
        StatsFormat::Csv => {
            if args.header {
                writeln!(out, "{}", columns.join(","))?;
            }
            for s in &all {
                writeln!(out, "{}", cells(s).join(","))?;
            }
        }
        StatsFormat::Text => {
            let mut lines: Vec<Vec<String>> = Vec::new();
            if args.header {
                lines.push(columns.iter().map(|c| c.to_string()).collect());
            }
            lines.extend(all.iter().map(cells));
            let widths: Vec<usize> = (0..columns.len())
                .map(|i| lines.iter().map(|l| l[i].len()).max().unwrap_or(0))
                .collect();
            for l in &lines {
                let padded: Vec<String> = l
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                writeln!(out, "{}", padded.join("  ").trim_end())?;
            }
        }
        StatsFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &all).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(Outcome::Success)
}
