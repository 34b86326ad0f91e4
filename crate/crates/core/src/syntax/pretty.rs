use std::fmt::Write;

use super::ast::{PrimOp, Term, TermKind};

// Precedence levels, loosest first.
const EXPR: u8 = 0;
const SEQ: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

/// Renders a term as LinLang source that parses back to the same tree.
pub fn pretty(term: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, term, EXPR);
    out
}

fn level(term: &Term) -> u8 {
    match &term.kind {
        TermKind::Let { .. } | TermKind::LetPair { .. } | TermKind::Lambda { .. } | TermKind::If { .. } => {
            EXPR
        }
        TermKind::Seq(..) => SEQ,
        TermKind::App(..) => APP,
        _ => ATOM,
    }
}

fn write_term(out: &mut String, term: &Term, min: u8) {
    let parens = level(term) < min;
    if parens {
        out.push('(');
    }
    match &term.kind {
        TermKind::Var(name) => out.push_str(name),
        TermKind::UnitLit => out.push_str("()"),
        TermKind::BoolLit(b) => write!(out, "{b}").unwrap(),
        TermKind::IntLit(n) => write!(out, "{n}").unwrap(),
        TermKind::Lambda { param, annot, body } => {
            write!(out, "fun {param}: {} -> ", annot.annotation()).unwrap();
            write_term(out, body, EXPR);
        }
        TermKind::App(f, a) => {
            write_term(out, f, APP);
            out.push(' ');
            write_term(out, a, ATOM);
        }
        TermKind::Pair(a, b) => {
            out.push('(');
            write_term(out, a, EXPR);
            out.push_str(", ");
            write_term(out, b, EXPR);
            out.push(')');
        }
        TermKind::LetPair {
            first,
            second,
            bound,
            body,
        } => {
            write!(out, "let ({first}, {second}) = ").unwrap();
            write_term(out, bound, EXPR);
            out.push_str(" in ");
            write_term(out, body, EXPR);
        }
        TermKind::Let { name, bound, body } => {
            write!(out, "let {name} = ").unwrap();
            write_term(out, bound, EXPR);
            out.push_str(" in ");
            write_term(out, body, EXPR);
        }
        TermKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            out.push_str("if ");
            write_term(out, cond, EXPR);
            out.push_str(" then ");
            write_term(out, then_branch, EXPR);
            out.push_str(" else ");
            write_term(out, else_branch, EXPR);
        }
        TermKind::Seq(a, b) => {
            write_term(out, a, SEQ);
            out.push_str("; ");
            write_term(out, b, APP);
        }
        TermKind::Prim(op, args) => {
            out.push_str(op.name());
            out.push('(');
            match (op, args.as_slice()) {
                (PrimOp::NewNonce, [Term { kind: TermKind::UnitLit, .. }]) => {}
                _ => {
                    for (i, arg) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        write_term(out, arg, EXPR);
                    }
                }
            }
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}
