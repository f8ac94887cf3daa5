//! Batch front end: every library operation as a subcommand writing a CSV,
//! JSON or plain-text table.
//!
//! Exit codes: 0 on success, 1 on invalid input (including unknown flags), 2
//! when the numerics themselves fail.

pub mod commands;
pub mod parse;
pub mod svg;
pub mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, ValueEnum};

pub use table::{Cell, Table};

pub const THREADS_ENV: &str = "ERGODIC_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomised harnesses.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (falls back to ERGODIC_LAB_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// File of `key=value` lines supplying default flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Read input from a CSV this tool emitted. `variation` and `unorm` take
    /// their sequence from it; other subcommands replay the table.
    #[arg(long = "from-csv", global = true)]
    pub from_csv: Option<PathBuf>,
    /// Column of `--from-csv` holding the sequence (default: `re`/`im`).
    #[arg(long, global = true)]
    pub column: Option<String>,
    /// Also render the last numeric column as an SVG polyline.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "ergodic-lab", version, about = "Weighted polynomial averages, exponential sums and norms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: commands::Command,
}

/// A fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: String,
    /// Flags as given (after merging the config file), `--name` → value.
    pub flags: BTreeMap<String, String>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub cli: Cli,
}

/// Outcome of parsing the command line.
pub enum Parsed {
    Run(Box<RunConfig>),
    /// Help or version text, printed with exit code 0.
    Info(String),
    Error(String),
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given_flags(args: &[String]) -> BTreeSet<String> {
    args.iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect()
}

/// Inserts `--key value` pairs from the config file after the subcommand
/// name, skipping keys already present on the command line.
fn merge_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let present = given_flags(&args);
    let mut extra = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
        let (k, v) = (k.trim().trim_start_matches("--"), v.trim());
        if present.contains(k) {
            continue;
        }
        extra.push(format!("--{k}"));
        if v != "true" {
            extra.push(v.to_string());
        }
    }
    let pos = args
        .iter()
        .skip(1)
        .position(|a| commands::NAMES.contains(&a.as_str()))
        .map_or(args.len(), |p| p + 2);
    let mut out = args;
    let tail = out.split_off(pos.min(out.len()));
    out.extend(extra);
    out.extend(tail);
    Ok(out)
}

fn flag_map(args: &[String]) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut i = 1;
    while i < args.len() {
        if let Some(name) = args[i].strip_prefix("--") {
            if let Some((k, v)) = name.split_once('=') {
                map.insert(k.to_string(), v.to_string());
            } else if i + 1 < args.len() && !args[i + 1].starts_with("--") {
                map.insert(name.to_string(), args[i + 1].clone());
                i += 1;
            } else {
                map.insert(name.to_string(), "true".to_string());
            }
        }
        i += 1;
    }
    map
}

impl RunConfig {
    pub fn parse<I, T>(args: I) -> Parsed
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString>,
    {
        let args: Vec<String> = args
            .into_iter()
            .map(|a| a.into().to_string_lossy().into_owned())
            .collect();
        let args = match merge_config(args) {
            Ok(a) => a,
            Err(e) => return Parsed::Error(e),
        };
        match Cli::try_parse_from(&args) {
            Ok(cli) => {
                let threads = cli.global.threads.or_else(|| {
                    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok())
                });
                Parsed::Run(Box::new(RunConfig {
                    subcommand: cli.command.name().to_string(),
                    flags: flag_map(&args),
                    seed: cli.global.seed,
                    output: cli.global.output.clone(),
                    format: cli.global.format,
                    threads,
                    cli,
                }))
            }
            Err(e) => {
                use clap::error::ErrorKind;
                let text = e.render().to_string();
                match e.kind() {
                    ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Parsed::Info(text),
                    _ => Parsed::Error(text),
                }
            }
        }
    }
}

/// Failure of a subcommand.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Numeric(String),
}

impl From<ergodic_lab::Error> for CliError {
    fn from(e: ergodic_lab::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Invalid(s)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Numeric(m) => m,
        }
    }
}

/// Renders the report of a parsed invocation.
pub fn render(config: &RunConfig) -> Result<String, CliError> {
    let table = commands::execute(&config.cli)?;
    if let Some(path) = &config.cli.global.svg {
        let svg = svg::polyline(&table).ok_or_else(|| CliError::Invalid("no numeric column to plot".into()))?;
        std::fs::write(path, svg).map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match config.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(&config.subcommand),
        Format::Plain => table.to_plain(),
    })
}

/// Runs the subcommand on a pool of `config.threads` workers and writes the
/// report. Returns the process exit code.
pub fn dispatch(config: &RunConfig) -> i32 {
    let result = match config.threads {
        Some(0) => Err(CliError::Invalid("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| render(config)),
            Err(e) => Err(CliError::Numeric(format!("cannot start thread pool: {e}"))),
        },
        None => render(config),
    };
    match result {
        Ok(text) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
                None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    match RunConfig::parse(args) {
        Parsed::Run(cfg) => dispatch(&cfg),
        Parsed::Info(text) => {
            print!("{text}");
            0
        }
        Parsed::Error(text) => {
            eprint!("{text}");
            if !text.ends_with('\n') {
                eprintln!();
            }
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(args: &[&str]) -> Vec<String> {
        args.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn numeric_failures_exit_with_two() {
        let e: CliError = ergodic_lab::Error::NonConvergence { doublings: 12, residual: 1.0 }.into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = ergodic_lab::Error::InvalidArgument("bad".into()).into();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn config_lines_land_after_the_subcommand() {
        let dir = std::env::temp_dir().join(format!("ergodic-lab-unit-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = dir.join("c.cfg");
        std::fs::write(&cfg, "level=3\nformat = json\n").unwrap();
        let path = cfg.to_str().unwrap();
        let merged = merge_config(strings(&["bin", "--config", path, "farey", "--format", "plain"])).unwrap();
        assert_eq!(merged, strings(&["bin", "--config", path, "farey", "--level", "3", "--format", "plain"]));
        std::fs::write(&cfg, "no equals sign\n").unwrap();
        assert!(merge_config(strings(&["bin", "--config", path, "farey"])).is_err());
    }

    #[test]
    fn flag_map_records_values_and_switches() {
        let m = flag_map(&strings(&["bin", "project", "--k-scale", "-4", "--untruncated", "--Q=16"]));
        assert_eq!(m["k-scale"], "-4");
        assert_eq!(m["untruncated"], "true");
        assert_eq!(m["Q"], "16");
    }

    #[test]
    fn parse_resolves_threads_and_format() {
        match RunConfig::parse(["bin", "farey", "--level", "1", "--threads", "3", "--format", "json"]) {
            Parsed::Run(cfg) => {
                assert_eq!(cfg.threads, Some(3));
                assert_eq!(cfg.format, Format::Json);
                assert_eq!(cfg.subcommand, "farey");
            }
            _ => panic!("expected a run"),
        }
        assert!(matches!(RunConfig::parse(["bin", "--version"]), Parsed::Info(_)));
        assert!(matches!(RunConfig::parse(["bin", "farey"]), Parsed::Error(_)));
    }
}
