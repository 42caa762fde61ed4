use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathgeom::commands;
use pathgeom::criteria;
use pathgeom::document::{GeometryDocument, InputError};
use pathgeom::report::Report;
use pathgeom::Settings;

#[derive(Parser)]
#[command(name = "pathgeom", version, about = "Path geometries, twistor curves and Finsler structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Sample points per zero-test.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Absolute tolerance of a zero-test.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Order of the twistor series.
    #[arg(long, global = true)]
    series_order: Option<usize>,
    /// Also write the result as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Wilczynski and Fels invariants of a system.
    Invariants { file: PathBuf },
    /// Point symmetries of a system.
    Symmetry { file: PathBuf },
    /// Curvature of a metric.
    Curvature { file: PathBuf },
    /// Heavenly potential: equation, metric, Weyl spinor and Lax pair.
    Heavenly { file: PathBuf },
    /// Twistor series, null cones and extraction.
    Twistor { file: PathBuf },
    /// System of a heavenly potential.
    FromTheta { file: PathBuf },
    /// Finsler, Randers and Lagrangian analyses.
    Finsler { file: PathBuf },
    /// Symmetry dimension of Y'' = 0, Z'' = sum xi_k (Y')^k.
    BetaDim {
        /// Coefficient k=c, repeatable.
        #[arg(long = "xi", value_name = "K=C")]
        xi: Vec<String>,
        /// Constant value of every coefficient beyond the largest given k.
        #[arg(long)]
        tail: Option<String>,
    },
    /// Runs the built-in fixture corpus.
    Fixtures {
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn settings(o: &Options) -> Settings {
    let d = Settings::default();
    Settings {
        trials: o.trials.unwrap_or(d.trials),
        tol: o.tol.unwrap_or(d.tol),
        seed: o.seed.unwrap_or(d.seed),
        series_order: o.series_order.unwrap_or(d.series_order),
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), InputError> {
    let Some(p) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).map_err(|e| InputError(e.to_string()))?;
    std::fs::write(p, text + "\n").map_err(|e| InputError(format!("{}: {e}", p.display())))
}

fn document_command(file: &PathBuf, base: Settings, f: fn(&GeometryDocument, &Settings) -> Result<Report, InputError>) -> Result<Report, InputError> {
    let doc = GeometryDocument::load(file)?;
    let s = doc.settings(base);
    println!("seed: {}", s.seed);
    f(&doc, &s)
}

fn run(cli: &Cli) -> Result<bool, InputError> {
    let base = settings(&cli.opts);
    let report = match &cli.command {
        Command::Invariants { file } => document_command(file, base, commands::invariants)?,
        Command::Symmetry { file } => document_command(file, base, commands::symmetry)?,
        Command::Curvature { file } => document_command(file, base, commands::curvature_cmd)?,
        Command::Heavenly { file } => document_command(file, base, commands::heavenly)?,
        Command::Twistor { file } => document_command(file, base, commands::twistor_cmd)?,
        Command::FromTheta { file } => document_command(file, base, commands::from_theta)?,
        Command::Finsler { file } => document_command(file, base, commands::finsler_cmd)?,
        Command::BetaDim { xi, tail } => {
            let xi = xi.iter().map(|s| commands::parse_xi(s)).collect::<Result<Vec<_>, _>>()?;
            let tail = tail.as_deref().map(commands::parse_rational).transpose()?;
            commands::beta_dim(&xi, tail)
        }
        Command::Fixtures { only } => {
            let ids = if only.is_empty() { criteria::all_ids() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i as usize > criteria::TITLES.len()) {
                return Err(InputError(format!("--only: no criterion {bad}")));
            }
            println!("seed: {}", base.seed);
            let results = criteria::run_all(&ids, &base);
            for c in &results {
                print!("{}", c.render());
            }
            write_json(&cli.opts.json, &results)?;
            return Ok(results.iter().all(|c| c.passed));
        }
    };
    print!("{}", report.render());
    write_json(&cli.opts.json, &report)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("input error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
