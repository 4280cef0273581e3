use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wpdeg::document::parse_document;
use wpdeg::exit;
use wpdeg::report::Report;
use wpdeg::run::{
    run_catalog_list, run_catalog_run, run_classify, run_nodal, run_orbit, run_spectral,
    run_weight_filtration, RunOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "wpdeg",
    about = "Decides whether a semistable Calabi-Yau degeneration sits at finite \
             Weil-Petersson distance, by exact monodromy and central-fibre criteria.",
    after_help = "Exit codes: 0 finite distance, 3 infinite distance, 1 input error, \
                  2 internal/consistency failure."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Run the float-bearing quadrature cross-check (off by default; every
    /// verdict is exact without it).
    #[arg(long, global = true)]
    quadrature: bool,
    /// Treat failed validity checks as input errors.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a problem file as finite or infinite distance.
    Classify { file: PathBuf },
    /// Print the monodromy weight filtration of a monodromy-mode file.
    Wf { file: PathBuf },
    /// Print the orbit polynomial and validity report of a monodromy-mode file.
    Orbit { file: PathBuf },
    /// Print the Mayer-Vietoris spectral sequence of a central_fibre-mode file.
    Spectral { file: PathBuf },
    /// Print the adjunction transcript and verdict of a nodal-mode file.
    Nodal { file: PathBuf },
    /// The built-in catalog of worked degenerations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Run every entry and compare against its expected verdict.
    Run,
    /// List the entries.
    List,
}

fn load(path: &PathBuf) -> Result<wpdeg::document::ProblemDocument, Box<Report>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        let mut r = Report::new("load");
        r.error = Some(format!("{}: {e}", path.display()));
        r.exit_code = exit::INPUT_ERROR;
        Box::new(r)
    })?;
    parse_document(&text).map_err(|e| {
        let mut r = Report::new("load");
        r.error = Some(format!("{}: {e}", path.display()));
        r.exit_code = exit::INPUT_ERROR;
        Box::new(r)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        quadrature: cli.quadrature,
        strict: cli.strict,
    };
    let report = match &cli.command {
        Command::Classify { file } => match load(file) {
            Ok(doc) => run_classify(&doc, &opts),
            Err(r) => *r,
        },
        Command::Wf { file } => match load(file) {
            Ok(doc) => run_weight_filtration(&doc),
            Err(r) => *r,
        },
        Command::Orbit { file } => match load(file) {
            Ok(doc) => run_orbit(&doc, &opts),
            Err(r) => *r,
        },
        Command::Spectral { file } => match load(file) {
            Ok(doc) => run_spectral(&doc),
            Err(r) => *r,
        },
        Command::Nodal { file } => match load(file) {
            Ok(doc) => run_nodal(&doc),
            Err(r) => *r,
        },
        Command::Catalog { action } => match action {
            CatalogAction::Run => run_catalog_run(&opts),
            CatalogAction::List => run_catalog_list(),
        },
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(u8::try_from(report.exit_code).unwrap_or(1))
}
