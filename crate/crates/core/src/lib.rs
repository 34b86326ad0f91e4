//! Type checker and interpreter for LinLang, a small call-by-value language
//! whose structural rules (exchange, weakening, contraction) are selected per
//! run. Under the linear discipline a `Nonce` can be consumed at most once and
//! must be consumed before it goes out of scope, so nonce reuse becomes a
//! compile-time error.

pub mod checker;
pub mod corpus;
pub mod generate;
pub mod runtime;
pub mod syntax;

pub use checker::{check_program, rules_for, Diagnostic, DiagnosticCode, Mode, StructuralRuleSet};
pub use runtime::{eval, eval_instrumented, NonceSource, UseLedger, Value};
pub use syntax::{parse_source, pretty, PrimOp, Span, SyntaxError, Term, TermKind, Type};
