//! Command-line front end for the `lvcert` checks: argument parsing, a
//! worker pool, canonical JSON/CSV output and replayable run manifests.
//!
//! Exit codes: 0 success, 1 usage, 2 bad input, 3 size or search budget
//! exceeded, 4 a mathematical check failed.

mod commands;
mod input;
pub mod manifest;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lvcert::Error;

pub use commands::{Command, Context, ModuliDim};
pub use manifest::{ReplayReport, RunManifest};
pub use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(name = "lvcert", version, about = "Exact checks for Hodge, root-system, symplectic and Frobenius combinatorics")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: TopCommand,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; a `.manifest.json` is written beside it. Stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to LV_JOBS, then to the number of CPUs.
    #[arg(long, global = true, env = "LV_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum TopCommand {
    #[command(flatten)]
    Run(Command),
    /// Re-run a recorded command and compare output digests.
    Replay {
        manifest: PathBuf,
    },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_SIZE: u8 = 3;
pub const EXIT_CHECK_FAILED: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) | Error::NotFound(_) => EXIT_INPUT,
        Error::SizeLimit(_) | Error::Budget(_) => EXIT_SIZE,
        Error::LemmaViolation(_) | Error::Internal(_) => EXIT_CHECK_FAILED,
    }
}

/// Rendered output of one run, independent of the worker count.
pub struct Rendered {
    pub text: String,
    pub failure: Option<String>,
}

pub fn render(cmd: &Command, format: Format, seed: u64, base: &Path, jobs: Option<usize>) -> Result<Rendered, Error> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
    let ctx = Context { seed, base: base.to_path_buf() };
    let out = pool.install(|| commands::run(cmd, &ctx))?;
    Ok(Rendered { text: out.render(format, cmd.name())?, failure: out.failure })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn absolute(p: &Path) -> PathBuf {
    std::path::absolute(p).unwrap_or_else(|_| p.to_path_buf())
}

fn run_command(cmd: &Command, opts: &GlobalOpts) -> Result<u8, Error> {
    let seed = opts.seed.unwrap_or(0);
    let cwd = absolute(Path::new("."));
    let started = manifest::now_ms();
    let rendered = render(cmd, opts.format, seed, &cwd, opts.jobs)?;
    match &opts.out {
        Some(path) => {
            write_file(path, &rendered.text)?;
            let m = RunManifest {
                command: cmd.name().into(),
                flags: cmd.clone(),
                format: opts.format,
                seed,
                version: manifest::VERSION.into(),
                cwd,
                started_unix_ms: started,
                finished_unix_ms: manifest::now_ms(),
                output: absolute(path),
                output_sha256: manifest::sha256_hex(rendered.text.as_bytes()),
            };
            m.write(&manifest::manifest_path(path))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.text.as_bytes());
        }
    }
    Ok(match rendered.failure {
        Some(msg) => {
            eprintln!("check failed: {msg}");
            EXIT_CHECK_FAILED
        }
        None => EXIT_OK,
    })
}

/// Re-runs the manifest's command with its own seed and format; only the
/// worker count may differ.
pub fn replay(path: &Path, opts: &GlobalOpts) -> Result<(ReplayReport, u8), Error> {
    let m = RunManifest::load(path)?;
    let version_mismatch = m.version != manifest::VERSION;
    if version_mismatch {
        eprintln!("warning: manifest written by version {}, replaying with {}", m.version, manifest::VERSION);
    }
    if let Some(s) = opts.seed.filter(|&s| s != m.seed) {
        eprintln!("warning: ignoring --seed {s}; the manifest seed {} is used", m.seed);
    }
    let rendered = render(&m.flags, m.format, m.seed, &m.cwd, opts.jobs)?;
    let replayed = manifest::sha256_hex(rendered.text.as_bytes());
    let on_disk = std::fs::read_to_string(&m.output).ok();
    let on_disk_sha256 = on_disk.as_ref().map(|t| manifest::sha256_hex(t.as_bytes()));
    let matches = replayed == m.output_sha256 && on_disk_sha256.as_deref() == Some(m.output_sha256.as_str());
    let diff = on_disk.as_deref().and_then(|t| manifest::diff_summary(&rendered.text, t));
    let report = ReplayReport {
        manifest: path.to_path_buf(),
        command: m.command,
        recorded_sha256: m.output_sha256,
        replayed_sha256: replayed,
        on_disk_sha256,
        version_mismatch,
        matches,
        diff,
    };
    Ok((report, if matches { EXIT_OK } else { EXIT_CHECK_FAILED }))
}

pub fn execute(cli: Cli) -> u8 {
    let result = match &cli.command {
        TopCommand::Run(cmd) => run_command(cmd, &cli.opts),
        TopCommand::Replay { manifest } => replay(manifest, &cli.opts).map(|(report, code)| {
            let value = serde_json::to_value(&report).expect("report serializes");
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            if !report.matches {
                eprintln!("replay mismatch for {}", manifest.display());
            }
            code
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    })
}

/// Parses `argv` (including the program name) and runs it.
pub fn main_with_args<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
