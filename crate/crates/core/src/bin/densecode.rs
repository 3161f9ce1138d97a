use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use densecode::cli::{
    cmd_batch, cmd_capacity, cmd_classify, cmd_simulate_ghz4, cmd_threshold, load_layout,
    load_manifest, load_state, render_table, CliError,
};
use densecode::linalg::DEFAULT_TOL;

#[derive(Parser)]
#[command(
    name = "densecode",
    version,
    about = "Dense-coding capacities, bounds and shell classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit JSON (default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit an aligned table with six decimals.
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity report for a state and layout.
    Capacity {
        state: PathBuf,
        layout: PathBuf,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Shell classification with evidence.
    Classify {
        state: PathBuf,
        layout: PathBuf,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Add PPT and reduction results for every bipartition.
        #[arg(long)]
        all_cuts: bool,
    },
    /// Run the four-qubit LOCC decoding protocol.
    SimulateGhz4 {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        message: Option<usize>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Bisect a dense-coding threshold.
    Threshold {
        #[arg(long)]
        family: String,
        /// JSON object of family parameters, e.g. '{"n": 4}'.
        #[arg(long)]
        params: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a manifest of capacity/classify jobs.
    Batch {
        manifest: PathBuf,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn emit<T: Serialize>(value: &T, output: Output) -> Result<String, CliError> {
    let err = |e: serde_json::Error| CliError::Numerical(e.to_string());
    if output.table {
        Ok(render_table(&serde_json::to_value(value).map_err(err)?))
    } else {
        serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(err)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Capacity {
            state,
            layout,
            output,
            tol,
        } => {
            let s = load_state(&state, tol)?;
            emit(&cmd_capacity(&s, &load_layout(&layout)?)?, output)
        }
        Command::Classify {
            state,
            layout,
            output,
            tol,
            all_cuts,
        } => {
            let s = load_state(&state, tol)?;
            emit(
                &cmd_classify(&s, &load_layout(&layout)?, all_cuts, tol)?,
                output,
            )
        }
        Command::SimulateGhz4 {
            message,
            all,
            output,
        } => emit(
            &cmd_simulate_ghz4(if all { None } else { message })?,
            output,
        ),
        Command::Threshold {
            family,
            params,
            output,
        } => {
            let params = params
                .map(|p| serde_json::from_str(&p))
                .transpose()
                .map_err(|e| CliError::Input(format!("--params: {e}")))?;
            let r = cmd_threshold(&family, params.as_ref())?;
            if output.table {
                Ok(r.render_table())
            } else {
                emit(&r, output)
            }
        }
        Command::Batch { manifest, jobs } => {
            let m = load_manifest(&manifest)?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let jobs = if jobs == 0 {
                rayon::current_num_threads()
            } else {
                jobs
            };
            let report = cmd_batch(&m, base, jobs)?;
            emit(
                &report,
                Output {
                    json: true,
                    table: false,
                },
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("densecode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
