//! `slc`: check, run and survey LinLang programs under a chosen structural mode.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use slc_core::corpus::{corpus_dir, evaluate_matrix, load_manifest, ManifestError, MatrixRow};
use slc_core::runtime::RuntimeError;
use slc_core::{check_program, eval, parse_source, Diagnostic, Mode, NonceSource, Term};

use render::{colour_enabled, json_line, Renderer};

const EXIT_REJECTED: u8 = 1;
const EXIT_SYNTAX: u8 = 2;
const EXIT_RUNTIME: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "slc", version, about = "Substructural type checker and interpreter for LinLang")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type-check a program and print its type.
    Check {
        #[arg(long, default_value = "linear", value_parser = parse_mode)]
        mode: Mode,
        /// Emit one JSON object per diagnostic on stdout.
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Check a program, then evaluate it and print its value.
    Run {
        #[arg(long, default_value = "linear", value_parser = parse_mode)]
        mode: Mode,
        /// Seed for the deterministic nonce generator.
        #[arg(long, conflicts_with = "entropy")]
        seed: Option<u64>,
        /// Draw nonces from operating-system entropy.
        #[arg(long)]
        entropy: bool,
        file: PathBuf,
    },
    /// Check every corpus program in every mode against its manifest.
    Corpus {
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Emit one JSON object per corpus entry on stdout.
        #[arg(long)]
        json: bool,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: slc_core::checker::UnknownMode| e.to_string())
}

/// Failure of a subcommand, carrying its exit status.
struct Exit(u8);

fn usage(message: impl std::fmt::Display) -> Exit {
    eprintln!("slc: {message}");
    Exit(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check { mode, json, file } => cmd_check(&file, mode, json),
        Command::Run {
            mode,
            seed,
            entropy,
            file,
        } => {
            let source = if entropy {
                NonceSource::system()
            } else {
                NonceSource::seeded(seed.unwrap_or(0))
            };
            cmd_run(&file, mode, source)
        }
        Command::Corpus { manifest, json } => cmd_corpus(manifest, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}

fn read_program(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| usage(format_args!("cannot read {}: {e}", path.display())))
}

/// Parses and checks `source`, reporting diagnostics either as text on
/// stderr or as JSON lines on stdout.
fn check_source(path: &Path, source: &str, mode: Mode, json: bool) -> Result<(Term, slc_core::Type), Exit> {
    let report = |diags: &[Diagnostic]| {
        if json {
            for d in diags {
                println!("{}", json_line(d));
            }
        } else {
            let renderer = Renderer {
                path: &path.display().to_string(),
                source,
                colour: colour_enabled(),
            };
            for d in diags {
                eprint!("{}", renderer.diagnostic(d));
            }
        }
    };
    let term = parse_source(source).map_err(|err| {
        report(&[Diagnostic::from_syntax(&err, mode)]);
        Exit(EXIT_SYNTAX)
    })?;
    match check_program(&term, mode) {
        Ok(ty) => Ok((term, ty)),
        Err(diags) => {
            report(&diags);
            Err(Exit(EXIT_REJECTED))
        }
    }
}

fn cmd_check(path: &Path, mode: Mode, json: bool) -> Result<(), Exit> {
    let source = read_program(path)?;
    let (_, ty) = check_source(path, &source, mode, json)?;
    if !json {
        println!("{ty}");
    }
    Ok(())
}

fn cmd_run(path: &Path, mode: Mode, nonces: NonceSource) -> Result<(), Exit> {
    let source = read_program(path)?;
    let (term, _) = check_source(path, &source, mode, false)?;
    match eval(&term, nonces) {
        Ok(value) => {
            println!("{value}");
            Ok(())
        }
        Err(err) => {
            let prefix = match err {
                RuntimeError::EntropyUnavailable(_) => "",
                _ => "runtime error at ",
            };
            eprintln!("slc: {prefix}{err}");
            Err(Exit(EXIT_RUNTIME))
        }
    }
}

fn default_manifest() -> PathBuf {
    let local = Path::new("corpus").join("corpus.tsv");
    if local.is_file() {
        local
    } else {
        corpus_dir().join("corpus.tsv")
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    name: &'a str,
    /// Mode name to verdict, or `null` when the program could not be read.
    actual: Option<std::collections::BTreeMap<&'static str, String>>,
    error: Option<&'a str>,
    mismatches: Vec<JsonMismatch>,
}

#[derive(Serialize)]
struct JsonMismatch {
    mode: &'static str,
    expected: String,
    actual: Option<String>,
}

fn cmd_corpus(manifest: Option<PathBuf>, json: bool) -> Result<(), Exit> {
    let path = manifest.unwrap_or_else(default_manifest);
    let entries = load_manifest(&path).map_err(|err| match err {
        ManifestError::Io { .. } => usage(err),
        ManifestError::Syntax { .. } => {
            eprintln!("slc: {}: {err}", path.display());
            Exit(EXIT_SYNTAX)
        }
    })?;
    let rows = evaluate_matrix(&entries);
    if json {
        for row in &rows {
            println!("{}", serde_json::to_string(&json_row(row)).expect("rows serialise"));
        }
    } else {
        print!("{}", matrix_table(&rows));
    }
    let mut mismatched = 0;
    for row in &rows {
        if let Err(reason) = &row.actual {
            eprintln!("slc: {}: {reason}", row.name);
        }
        for (mode, expected, actual) in row.mismatches() {
            mismatched += 1;
            let actual = actual.map_or_else(|| "unreadable".to_string(), |v| v.to_string());
            eprintln!("mismatch: {} [{mode}] expected {expected}, got {actual}", row.name);
        }
    }
    if mismatched == 0 {
        Ok(())
    } else {
        eprintln!("slc: {mismatched} verdict(s) differ from the manifest");
        Err(Exit(EXIT_REJECTED))
    }
}

fn json_row(row: &MatrixRow) -> JsonRow<'_> {
    JsonRow {
        name: &row.name,
        actual: row.actual.as_ref().ok().map(|verdicts| {
            Mode::ALL
                .iter()
                .zip(verdicts)
                .map(|(mode, v)| (mode.name(), v.to_string()))
                .collect()
        }),
        error: row.actual.as_ref().err().map(String::as_str),
        mismatches: row
            .mismatches()
            .into_iter()
            .map(|(mode, expected, actual)| JsonMismatch {
                mode: mode.name(),
                expected: expected.to_string(),
                actual: actual.map(|v| v.to_string()),
            })
            .collect(),
    }
}

/// A fixed-width table with one row per entry and one column per mode. Cells
/// that disagree with the manifest are marked with `!`.
fn matrix_table(rows: &[MatrixRow]) -> String {
    let cell = |row: &MatrixRow, i: usize| match &row.actual {
        Ok(actual) if actual[i] == row.expected[i] => actual[i].to_string(),
        Ok(actual) => format!("!{}", actual[i]),
        Err(_) => "!unreadable".to_string(),
    };
    let name_width = rows.iter().map(|r| r.name.len()).chain([4]).max().unwrap_or(4);
    let widths: Vec<usize> = Mode::ALL
        .iter()
        .enumerate()
        .map(|(i, mode)| {
            rows.iter()
                .map(|r| cell(r, i).len())
                .chain([mode.name().len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = format!("{:name_width$}", "name");
    for (mode, w) in Mode::ALL.iter().zip(&widths) {
        out.push_str(&format!("  {:w$}", mode.name()));
    }
    out = out.trim_end().to_string() + "\n";
    for row in rows {
        let mut line = format!("{:name_width$}", row.name);
        for (i, w) in widths.iter().enumerate() {
            line.push_str(&format!("  {:w$}", cell(row, i)));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
