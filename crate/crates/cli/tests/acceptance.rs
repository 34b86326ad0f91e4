//! Acceptance suite: one PASS/FAIL line per criterion, each under a time bound.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use slc_core::checker::check_program_traced;
use slc_core::corpus::{corpus_entries, evaluate_matrix};
use slc_core::generate::{generate_exchange_pair, generate_program};
use slc_core::{
    check_program, eval_instrumented, parse_source, pretty, rules_for, DiagnosticCode, Mode, NonceSource, PrimOp,
    StructuralRuleSet, Term, TermKind,
};

const FUZZ_PROGRAMS: u64 = 1000;
const EXCHANGE_PAIRS: u64 = 250;
const MAX_DEPTH: usize = 6;
const SEEDS: [u64; 3] = [0, 7, 42];

type Outcome = Result<String, String>;

/// Name, time bound and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn accepts(term: &Term, mode: Mode) -> bool {
    check_program(term, mode).is_ok()
}

fn fuzz_programs() -> Vec<Term> {
    (0..FUZZ_PROGRAMS)
        .map(|seed| {
            let text = pretty(&generate_program(seed, MAX_DEPTH));
            parse_source(&text).expect("generated programs parse")
        })
        .collect()
}

fn corpus_programs() -> Vec<(String, Term)> {
    corpus_entries()
        .into_iter()
        .map(|e| {
            let src = e.source().expect("corpus file readable");
            (e.name, parse_source(&src).expect("corpus parses"))
        })
        .collect()
}

fn corpus_program(name: &str) -> Term {
    corpus_programs().into_iter().find(|(n, _)| n == name).expect("corpus entry").1
}

/// Parses a rule label such as "E,W" into a rule set.
fn rule_label(label: &str) -> StructuralRuleSet {
    let letters: Vec<&str> = label.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "none").collect();
    StructuralRuleSet {
        exchange: letters.contains(&"E"),
        weakening: letters.contains(&"W"),
        contraction: letters.contains(&"C"),
    }
}

fn rule_table() -> Outcome {
    let table = [
        (Mode::Unrestricted, "E,W,C"),
        (Mode::Affine, "E,W"),
        (Mode::Relevant, "E,C"),
        (Mode::Linear, "E"),
        (Mode::Ordered, "none"),
    ];
    for (mode, label) in table {
        ensure(rules_for(mode) == rule_label(label), || format!("{mode}: {:?} != ({label})", rules_for(mode)))?;
    }
    Ok(format!("{} modes", table.len()))
}

fn reproduction() -> Outcome {
    let reuse = corpus_program("nonce_reuse");
    let diags = check_program(&reuse, Mode::Linear).err().ok_or("nonce_reuse accepted in linear mode")?;
    ensure(diags[0].code == DiagnosticCode::UseAfterConsume, || format!("first code {}", diags[0].code))?;
    ensure(diags[0].message.contains("value used here after move"), || diags[0].message.clone())?;
    ensure(accepts(&corpus_program("nonce_fresh"), Mode::Linear), || "nonce_fresh rejected".into())?;
    ensure(accepts(&reuse, Mode::Unrestricted), || "nonce_reuse rejected in unrestricted".into())?;
    Ok("reuse rejected, fresh accepted".into())
}

fn golden_matrix() -> Outcome {
    let rows = evaluate_matrix(&corpus_entries());
    ensure(rows.len() == 10, || format!("{} entries", rows.len()))?;
    let mut verdicts = 0;
    for row in &rows {
        let mismatches = row.mismatches();
        ensure(mismatches.is_empty(), || format!("{}: {mismatches:?}", row.name))?;
        verdicts += row.expected.len();
    }
    Ok(format!("{verdicts} verdicts"))
}

fn monotonicity() -> Outcome {
    let programs = fuzz_programs();
    for (i, term) in programs.iter().enumerate() {
        ensure(term.depth() <= MAX_DEPTH, || format!("program {i} has depth {}", term.depth()))?;
        for (lower, upper) in Mode::LATTICE_EDGES {
            ensure(!accepts(term, lower) || accepts(term, upper), || {
                format!("{lower} accepts but {upper} rejects: {}", pretty(term))
            })?;
        }
    }
    Ok(format!("{} programs, 0 counterexamples", programs.len()))
}

fn soundness() -> Outcome {
    let mut programs: Vec<Term> = corpus_programs().into_iter().map(|(_, t)| t).collect();
    programs.extend(fuzz_programs());
    let mut runs = 0;
    for term in &programs {
        if ![Mode::Linear, Mode::Affine, Mode::Ordered].iter().any(|&m| accepts(term, m)) {
            continue;
        }
        for seed in SEEDS {
            let (_, ledger) = eval_instrumented(term, NonceSource::seeded(seed))
                .map_err(|e| format!("accepted program failed: {e}: {}", pretty(term)))?;
            ensure(ledger.max_count() <= 1, || format!("ledger {:?}: {}", ledger.counts(), pretty(term)))?;
            runs += 1;
        }
        for mode in [Mode::Linear, Mode::Affine, Mode::Ordered] {
            let report = check_program_traced(term, mode);
            ensure(report.bindings.iter().all(|b| b.use_count <= 1), || {
                format!("{mode} counted a repeated use: {}", pretty(term))
            })?;
        }
    }
    Ok(format!("{runs} instrumented runs, 0 violations"))
}

fn oracle_equivalence() -> Outcome {
    let mut programs: Vec<Term> = corpus_programs().into_iter().map(|(_, t)| t).collect();
    programs.extend(fuzz_programs());
    for term in &programs {
        let ours = check_program(term, Mode::Unrestricted).ok();
        let theirs = oracle::simply_typed(term);
        ensure(ours == theirs, || format!("checker {ours:?} vs oracle {theirs:?}: {}", pretty(term)))?;
    }
    Ok(format!("{} programs, 0 disagreements", programs.len()))
}

/// Swaps the operands of the `add` at the end of a chain of lets.
fn swap_final_operands(term: &Term) -> Term {
    let mut out = term.clone();
    match &mut out.kind {
        TermKind::Let { body, .. } => **body = swap_final_operands(body),
        TermKind::Prim(PrimOp::IntAdd, args) => args.swap(0, 1),
        _ => {}
    }
    out
}

fn exchange_invariance() -> Outcome {
    for seed in 0..EXCHANGE_PAIRS {
        let (original, swapped) = generate_exchange_pair(seed, MAX_DEPTH);
        for mode in [Mode::Unrestricted, Mode::Affine, Mode::Relevant, Mode::Linear] {
            ensure(accepts(&original, mode) == accepts(&swapped, mode), || {
                format!("{mode} verdict changed:\n{}\n{}", pretty(&original), pretty(&swapped))
            })?;
        }
    }
    let swap = corpus_program("ordered_swap");
    let reordered = swap_final_operands(&swap);
    ensure(swap != reordered, || "ordered_swap has no operands to reorder".into())?;
    let before = check_program(&swap, Mode::Ordered).map_err(|d| d[0].code);
    ensure(before == Err(DiagnosticCode::OutOfOrderUse), || format!("ordered_swap gave {before:?}"))?;
    ensure(accepts(&reordered, Mode::Ordered), || format!("reordered program rejected: {}", pretty(&reordered)))?;
    Ok(format!("{EXCHANGE_PAIRS} pairs, ordered_swap flips after FIFO reorder"))
}

fn determinism() -> Outcome {
    let file = slc_core::corpus::corpus_dir().join("nonce_fresh.lin");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_slc"))
            .args(["run", "--mode", "linear", "--seed", "42"])
            .arg(&file)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || format!("exit {:?} / {:?}", a.status, b.status))?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("output {}", String::from_utf8_lossy(&a.stdout).trim()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("rule table", Duration::from_secs(1), rule_table),
        ("reuse reproduction", Duration::from_secs(1), reproduction),
        ("golden matrix", Duration::from_secs(5), golden_matrix),
        ("lattice monotonicity", Duration::from_secs(60), monotonicity),
        ("static-dynamic soundness", Duration::from_secs(60), soundness),
        ("oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("exchange invariance", Duration::from_secs(30), exchange_invariance),
        ("run determinism", Duration::from_secs(1), determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, bound, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= bound {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, bound {bound:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {elapsed:.2?} < {bound:?})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}: {name}: {reason}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
