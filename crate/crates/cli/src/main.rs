use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use specprob::export::format_number;
use specprob::spectral::{eigendecompose_default, HermitianOperator};
use specprob_cli::config::Config;
use specprob_cli::error::CliError;
use specprob_cli::figures::{self, FigureName, Overrides};
use specprob_cli::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "specprob", version, about = "Spectral probability toolkit")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the data behind one of the figures as CSV.
    Figure {
        #[arg(long, value_enum)]
        name: FigureName,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        sigma1: Option<f64>,
        #[arg(long)]
        sigma2: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
    },
    /// Run the identity checks and print one line per check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Decompose a Hermitian matrix read from JSON.
    Spectral {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io { action: "create", path: path.to_path_buf(), source })
}

fn write_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { action: "write", path: path.to_path_buf(), source }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Figure { name, out, sigma1, sigma2, rho } => {
            let table = figures::build(name, &config, &Overrides { sigma1, sigma2, rho })?;
            let mut w = create(&out)?;
            table.write(&mut w).and_then(|_| w.flush()).map_err(write_err(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed } => {
            let report = verify::run(suite, seed, &config);
            print!("{report}");
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Spectral { input, out } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|source| CliError::Io { action: "read", path: input.clone(), source })?;
            let a = HermitianOperator::from_json(&text).map_err(|e| CliError::from_input(&input, e))?;
            let d = eigendecompose_default(&a)?;
            let json = serde_json::to_string_pretty(&d.to_json()).expect("plain data serializes");
            let mut w = create(&out)?;
            writeln!(w, "{json}").and_then(|_| w.flush()).map_err(write_err(&out))?;
            let ev: Vec<String> = d.eigenvalues().iter().map(|&x| format_number(x)).collect();
            println!("eigenvalues: [{}]", ev.join(", "));
            println!("reconstruction_residual: {}", format_number(d.reconstruction_residual(&a)));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
