#![allow(dead_code)]

pub mod oracle;

use slc_core::checker::Mode;
use slc_core::generate::generate_program;
use slc_core::{check_program, parse_source, pretty, Term};

/// A generated program, printed and parsed back so it carries real spans.
pub fn fuzz_program(seed: u64) -> Term {
    let term = generate_program(seed, 6);
    let text = pretty(&term);
    parse_source(&text).unwrap_or_else(|e| panic!("generated program does not parse: {e}\n{text}"))
}

pub fn accepts(term: &Term, mode: Mode) -> bool {
    check_program(term, mode).is_ok()
}
