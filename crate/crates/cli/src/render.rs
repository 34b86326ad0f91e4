//! Human and JSON rendering of diagnostics.

use std::io::IsTerminal;

use serde::Serialize;
use slc_core::checker::Note;
use slc_core::{Diagnostic, Span};

/// Whether stderr output should carry ANSI colour.
pub fn colour_enabled() -> bool {
    std::env::var("SLC_COLOR").map_or(true, |v| v != "0") && std::io::stderr().is_terminal()
}

#[derive(Debug, Serialize)]
pub struct JsonDiagnostic<'a> {
    pub code: &'a str,
    pub message: &'a str,
    pub line: u32,
    pub col: u32,
    pub len: u32,
    pub mode: &'a str,
}

impl<'a> From<&'a Diagnostic> for JsonDiagnostic<'a> {
    fn from(d: &'a Diagnostic) -> Self {
        JsonDiagnostic {
            code: d.code.as_str(),
            message: &d.message,
            line: d.span.line,
            col: d.span.column,
            len: d.span.length,
            mode: d.mode.name(),
        }
    }
}

pub fn json_line(d: &Diagnostic) -> String {
    serde_json::to_string(&JsonDiagnostic::from(d)).expect("diagnostics serialise")
}

pub struct Renderer<'a> {
    pub path: &'a str,
    pub source: &'a str,
    pub colour: bool,
}

impl Renderer<'_> {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.colour {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    /// `error[Code]: message`, the location, then the source line with carets.
    pub fn diagnostic(&self, d: &Diagnostic) -> String {
        let mut out = format!(
            "{}: {} ({} mode)\n",
            self.paint("1;31", &format!("error[{}]", d.code)),
            d.message,
            d.mode
        );
        out.push_str(&self.snippet(d.span));
        for Note { span, message } in &d.notes {
            out.push_str(&format!("{}: {message}\n", self.paint("1;36", "note")));
            out.push_str(&self.snippet(*span));
        }
        out
    }

    fn snippet(&self, span: Span) -> String {
        if span.is_synthetic() {
            return format!("  --> {}\n", self.path);
        }
        let mut out = format!("  --> {}:{}:{}\n", self.path, span.line, span.column);
        let Some(text) = self.source.lines().nth(span.line as usize - 1) else {
            return out;
        };
        let gutter = span.line.to_string();
        let pad = " ".repeat(gutter.len());
        // keep tabs so the carets line up with the source text
        let lead: String = text
            .chars()
            .take(span.column as usize - 1)
            .map(|c| if c == '\t' { '\t' } else { ' ' })
            .collect();
        let available = text.chars().count().saturating_sub(span.column as usize - 1).max(1);
        let carets = "^".repeat((span.length as usize).clamp(1, available));
        out.push_str(&format!("{pad} |\n{gutter} | {text}\n{pad} | {lead}{}\n", self.paint("1;31", &carets)));
        out
    }
}
