use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwave_cli::config::{preset_config, RunConfig};
use pwave_cli::{cmd_point, cmd_sweep, cmd_validate, validation_options, CliError};

/// Transmittance, reflectance and absorptance of a P-wave on a thin metal
/// film between two dielectrics.
#[derive(Parser, Debug)]
#[command(name = "pwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one parameter point.
    Point {
        #[command(flatten)]
        common: Common,
    },
    /// Scan one parameter and write a CSV table.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Named configuration instead of --config.
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        /// Output CSV; `<out>.meta.json` is written beside it.
        #[arg(long)]
        out: PathBuf,
        /// Also write a matplotlib script next to the CSV.
        #[arg(long)]
        plot_script: bool,
    },
    /// Run the built-in checks against the reference implementations.
    Validate {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Series tolerance of the production sums under test.
        #[arg(long)]
        rel_tol: Option<f64>,
        /// Points in the brute-force comparison.
        #[arg(long, default_value_t = 50)]
        oracle_points: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

fn load(path: Option<&PathBuf>, preset: Option<&str>) -> Result<RunConfig, CliError> {
    match (path, preset) {
        (Some(p), _) => RunConfig::from_path(p),
        (None, Some(name)) => preset_config(name),
        (None, None) => Err(CliError::Usage("--config <file> is required".into())),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Point { common } => {
            let run = load(common.config.as_ref(), None)?.resolve()?;
            cmd_point(&run, common.json)
        }
        Command::Sweep {
            common,
            preset,
            out,
            plot_script,
        } => {
            let run = load(common.config.as_ref(), preset.as_deref())?.resolve()?;
            let output = cmd_sweep(&run, &out, plot_script, common.threads, common.json)?;
            let failed = output.result.rows.iter().filter(|r| !r.is_ok()).count();
            if failed > 0 {
                eprintln!(
                    "warning: {failed} points failed; see the flag column of {}",
                    out.display()
                );
            }
            Ok(output.summary)
        }
        Command::Validate {
            json,
            threads,
            rel_tol,
            oracle_points,
        } => {
            let mut opts = validation_options(rel_tol, threads)?;
            opts.oracle_points = oracle_points;
            let (text, outcome) = cmd_validate(&opts, json);
            print!("{text}");
            outcome.map(|()| String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(pwave_cli::EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
