//! Lexing, parsing and printing of LinLang source text.

mod ast;
mod lexer;
mod parser;
mod pretty;

use thiserror::Error;

pub use ast::{PrimOp, Span, Term, TermKind, Type};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, MAX_NESTING};
pub use pretty::pretty;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{span}: {message}")]
    Lex { span: Span, message: String },
    #[error("{span}: {message}")]
    Parse {
        span: Span,
        message: String,
        expected: Vec<String>,
    },
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex { span, .. } | SyntaxError::Parse { span, .. } => *span,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            SyntaxError::Lex { message, .. } | SyntaxError::Parse { message, .. } => message,
        }
    }
}

/// Tokenizes and parses a whole program.
pub fn parse_source(source: &str) -> Result<Term, SyntaxError> {
    parse(&tokenize(source)?)
}
