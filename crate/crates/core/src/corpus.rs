//! The shipped program corpus and its expected acceptance matrix.
//!
//! The manifest is a tab-separated file: `name`, `path`, one verdict column
//! per mode (unrestricted, affine, relevant, linear, ordered) and an optional
//! `ledger` column. Lines starting with `#` and the header row are ignored.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::checker::{check_program, DiagnosticCode, Mode};
use crate::syntax::parse_source;

/// The manifest shipped in the repository's `corpus/` directory.
pub const BUILTIN_MANIFEST: &str = include_str!("../../../corpus/corpus.tsv");

/// Directory holding the shipped corpus.
pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    /// Rejected; the code is that of the first diagnostic.
    Reject(DiagnosticCode),
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject(code) => write!(f, "reject:{code}"),
        }
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "accept" {
            return Ok(Verdict::Accept);
        }
        let code = s
            .strip_prefix("reject:")
            .ok_or_else(|| format!("bad verdict `{s}`, expected `accept` or `reject:CODE`"))?;
        DiagnosticCode::from_name(code)
            .map(Verdict::Reject)
            .ok_or_else(|| format!("unknown diagnostic code `{code}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// Resolved against the manifest's directory when loaded from disk.
    pub path: PathBuf,
    /// Indexed like [`Mode::ALL`].
    pub verdicts: [Verdict; 5],
    /// Expected consumption count per nonce, in creation order.
    pub ledger: Option<Vec<u32>>,
}

impl CorpusEntry {
    pub fn expected(&self, mode: Mode) -> Verdict {
        self.verdicts[mode_index(mode)]
    }

    /// Whether the expected verdicts respect the lattice order.
    pub fn is_monotone(&self) -> bool {
        Mode::LATTICE_EDGES
            .iter()
            .all(|&(lower, upper)| !self.expected(lower).is_accept() || self.expected(upper).is_accept())
    }

    pub fn source(&self) -> std::io::Result<String> {
        std::fs::read_to_string(&self.path)
    }
}

pub(crate) fn mode_index(mode: Mode) -> usize {
    Mode::ALL.iter().position(|&m| m == mode).expect("every mode is listed")
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot read manifest {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Parses manifest text; entry paths are left relative.
pub fn parse_manifest(text: &str) -> Result<Vec<CorpusEntry>, ManifestError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ManifestError::Syntax { line, message };
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') || trimmed.starts_with("name\t") {
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 7 && cols.len() != 8 {
            return Err(err(format!("expected 7 or 8 tab-separated columns, found {}", cols.len())));
        }
        let name = cols[0].trim();
        if name.is_empty() {
            return Err(err("empty entry name".into()));
        }
        if entries.iter().any(|e| e.name == name) {
            return Err(err(format!("duplicate entry `{name}`")));
        }
        let mut verdicts = [Verdict::Accept; 5];
        for (slot, col) in verdicts.iter_mut().zip(&cols[2..7]) {
            *slot = col.trim().parse().map_err(err)?;
        }
        let ledger = match cols.get(7).map(|c| c.trim()) {
            None | Some("") => None,
            Some("-") => Some(Vec::new()),
            Some(list) => Some(
                list.split(',')
                    .map(|n| n.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(format!("bad ledger `{list}`: {e}")))?,
            ),
        };
        entries.push(CorpusEntry {
            name: name.to_string(),
            path: PathBuf::from(cols[1].trim()),
            verdicts,
            ledger,
        });
    }
    Ok(entries)
}

/// Reads a manifest from disk and resolves entry paths against its directory.
pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut entries = parse_manifest(&text)?;
    for entry in &mut entries {
        entry.path = base.join(&entry.path);
    }
    Ok(entries)
}

/// The shipped corpus with paths pointing into [`corpus_dir`].
pub fn corpus_entries() -> Vec<CorpusEntry> {
    let dir = corpus_dir();
    let mut entries = parse_manifest(BUILTIN_MANIFEST).expect("shipped manifest parses");
    for entry in &mut entries {
        entry.path = dir.join(&entry.path);
    }
    entries
}

/// Parses and checks `source` under `mode`.
pub fn verdict_of(source: &str, mode: Mode) -> Verdict {
    let term = match parse_source(source) {
        Ok(term) => term,
        Err(crate::syntax::SyntaxError::Lex { .. }) => return Verdict::Reject(DiagnosticCode::LexError),
        Err(crate::syntax::SyntaxError::Parse { .. }) => return Verdict::Reject(DiagnosticCode::ParseError),
    };
    match check_program(&term, mode) {
        Ok(_) => Verdict::Accept,
        Err(diags) => Verdict::Reject(diags[0].code),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub name: String,
    pub expected: [Verdict; 5],
    /// `Err` holds the reason the program could not be read.
    pub actual: Result<[Verdict; 5], String>,
}

impl MatrixRow {
    /// Modes whose actual verdict differs from the expected one.
    pub fn mismatches(&self) -> Vec<(Mode, Verdict, Option<Verdict>)> {
        Mode::ALL
            .iter()
            .enumerate()
            .filter_map(|(i, &mode)| match &self.actual {
                Ok(actual) if actual[i] == self.expected[i] => None,
                Ok(actual) => Some((mode, self.expected[i], Some(actual[i]))),
                Err(_) => Some((mode, self.expected[i], None)),
            })
            .collect()
    }
}

/// Checks every entry in every mode. Entries run on separate threads; rows
/// come back in manifest order.
pub fn evaluate_matrix(entries: &[CorpusEntry]) -> Vec<MatrixRow> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|entry| {
                scope.spawn(move || {
                    let actual = entry
                        .source()
                        .map(|src| Mode::ALL.map(|mode| verdict_of(&src, mode)))
                        .map_err(|e| format!("{}: {e}", entry.path.display()));
                    MatrixRow {
                        name: entry.name.clone(),
                        expected: entry.verdicts,
                        actual,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    })
}
