use std::fmt;

use super::Mode;
use crate::syntax::{Span, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    UseAfterConsume,
    UnusedLinear,
    UnusedRelevant,
    OutOfOrderUse,
    UnboundVariable,
    TypeMismatch,
    BranchUseMismatch,
    ArityError,
    ParseError,
    LexError,
}

impl DiagnosticCode {
    pub const ALL: [DiagnosticCode; 10] = [
        DiagnosticCode::UseAfterConsume,
        DiagnosticCode::UnusedLinear,
        DiagnosticCode::UnusedRelevant,
        DiagnosticCode::OutOfOrderUse,
        DiagnosticCode::UnboundVariable,
        DiagnosticCode::TypeMismatch,
        DiagnosticCode::BranchUseMismatch,
        DiagnosticCode::ArityError,
        DiagnosticCode::ParseError,
        DiagnosticCode::LexError,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::UseAfterConsume => "UseAfterConsume",
            DiagnosticCode::UnusedLinear => "UnusedLinear",
            DiagnosticCode::UnusedRelevant => "UnusedRelevant",
            DiagnosticCode::OutOfOrderUse => "OutOfOrderUse",
            DiagnosticCode::UnboundVariable => "UnboundVariable",
            DiagnosticCode::TypeMismatch => "TypeMismatch",
            DiagnosticCode::BranchUseMismatch => "BranchUseMismatch",
            DiagnosticCode::ArityError => "ArityError",
            DiagnosticCode::ParseError => "ParseError",
            DiagnosticCode::LexError => "LexError",
        }
    }

    pub fn from_name(name: &str) -> Option<DiagnosticCode> {
        DiagnosticCode::ALL.into_iter().find(|c| c.as_str() == name)
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Secondary location attached to a diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub span: Span,
    pub message: String,
    pub mode: Mode,
    pub notes: Vec<Note>,
}

impl Diagnostic {
    pub fn new(code: DiagnosticCode, span: Span, mode: Mode, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            span,
            message: message.into(),
            mode,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, span: Span, message: impl Into<String>) -> Self {
        self.notes.push(Note {
            span,
            message: message.into(),
        });
        self
    }

    pub fn from_syntax(err: &SyntaxError, mode: Mode) -> Self {
        let code = match err {
            SyntaxError::Lex { .. } => DiagnosticCode::LexError,
            SyntaxError::Parse { .. } => DiagnosticCode::ParseError,
        };
        Diagnostic::new(code, err.span(), mode, err.message())
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [{}] {}", self.span, self.code, self.message)
    }
}
