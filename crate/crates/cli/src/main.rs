//! surgery-calc: construction-script runner for symplectic surgery
//! invariant calculations.
//!
//! Exit codes: 0 all assertions passed, 1 assertion failure, 2 script
//! error (parse or execution).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use surgery_core::script::{
    emit_report, parse_script, run_script, ReportFormat, RunOptions, DEFAULT_MAX_COSETS,
};

const MAX_COSETS_ENV: &str = "SURGERY_CALC_MAX_COSETS";

#[derive(Parser)]
#[command(
    name = "surgery-calc",
    version,
    about = "Exact invariant calculator for symplectic fiber sums and Luttinger surgery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and execute a construction script, emitting its report.
    Run {
        /// Script file (.scn line syntax, or a JSON document)
        script: PathBuf,
        /// Report format
        #[arg(long, default_value = "text")]
        format: ReportFormat,
        /// Coset enumeration budget (overrides SURGERY_CALC_MAX_COSETS)
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a script parameter, e.g. --param p=2 (repeatable)
        #[arg(long = "param", value_name = "NAME=INT")]
        params: Vec<String>,
    },
    /// Parse and validate a script without running it.
    Check {
        /// Script file
        script: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("surgery-calc: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { script } => {
            let text = read_script(&script)?;
            parse_script(&text).map_err(|e| e.to_string())?;
            println!("ok: {}", script.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            script,
            format,
            max_cosets,
            out,
            params,
        } => {
            let text = read_script(&script)?;
            let parsed = parse_script(&text).map_err(|e| e.to_string())?;

            let max_cosets = match max_cosets {
                Some(n) => n,
                None => match std::env::var(MAX_COSETS_ENV) {
                    Ok(v) => v
                        .parse::<usize>()
                        .map_err(|_| format!("{MAX_COSETS_ENV} must be an integer, got `{v}`"))?,
                    Err(_) => DEFAULT_MAX_COSETS,
                },
            };

            let mut overrides = BTreeMap::new();
            for p in &params {
                let (name, value) = p
                    .split_once('=')
                    .ok_or_else(|| format!("--param takes NAME=INT, got `{p}`"))?;
                let value: i64 = value
                    .parse()
                    .map_err(|_| format!("--param {name} needs an integer, got `{value}`"))?;
                overrides.insert(name.to_string(), value);
            }

            let scenario = script
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "script".to_string());
            let opts = RunOptions {
                scenario,
                max_cosets,
                params: overrides,
            };
            let report = run_script(&parsed, &opts).map_err(|e| e.to_string())?;
            let rendered = emit_report(&report, format);

            match out {
                Some(path) => fs::write(&path, rendered)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{rendered}"),
            }

            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn read_script(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}
