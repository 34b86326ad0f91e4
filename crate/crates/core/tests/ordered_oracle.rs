//! Ordered mode checked against a brute-force reading of the FIFO rule.

use std::collections::VecDeque;

use slc_core::checker::Mode;
use slc_core::{check_program, parse_source};

const NAMES: [&str; 3] = ["a", "b", "c"];

/// A use sequence is legal when each use takes the oldest binding still
/// waiting and every binding is used by the end.
fn fifo_accepts(bindings: usize, uses: &[usize]) -> bool {
    let mut queue: VecDeque<usize> = (0..bindings).collect();
    for &u in uses {
        if queue.pop_front() != Some(u) {
            return false;
        }
    }
    queue.is_empty()
}

fn program(bindings: usize, uses: &[usize]) -> String {
    let mut body = NAMES[uses[0]].to_string();
    for &u in &uses[1..] {
        body = format!("add({body}, {})", NAMES[u]);
    }
    let mut src = String::new();
    for (i, name) in NAMES.iter().take(bindings).enumerate() {
        src.push_str(&format!("let {name} = {} in ", i + 1));
    }
    src + &body
}

fn sequences(bindings: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|seq| {
                (0..bindings).map(move |b| {
                    let mut next = seq.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }
    out
}

#[test]
fn ordered_acceptance_matches_fifo_enumeration() {
    let mut accepted = 0;
    let mut total = 0;
    for bindings in 2..=3 {
        for len in 1..=4 {
            for uses in sequences(bindings, len) {
                let src = program(bindings, &uses);
                let term = parse_source(&src).unwrap();
                let ours = check_program(&term, Mode::Ordered).is_ok();
                assert_eq!(ours, fifo_accepts(bindings, &uses), "{src}");
                accepted += usize::from(ours);
                total += 1;
            }
        }
    }
    // only the in-order sequence is legal for each binding count
    assert_eq!(accepted, 2);
    assert_eq!(total, 2 + 4 + 8 + 16 + 3 + 9 + 27 + 81);
}

#[test]
fn linear_accepts_every_permutation() {
    for uses in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let term = parse_source(&program(3, &uses)).unwrap();
        assert!(check_program(&term, Mode::Linear).is_ok());
        assert_eq!(check_program(&term, Mode::Ordered).is_ok(), uses == [0, 1, 2]);
    }
}
