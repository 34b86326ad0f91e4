use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use slc_core::corpus::corpus_entries;
use slc_core::generate::generate_program;
use slc_core::{check_program, eval, parse_source, pretty, Mode, NonceSource};

fn corpus_sources() -> Vec<(String, String)> {
    corpus_entries()
        .into_iter()
        .map(|e| {
            let src = e.source().expect("corpus file readable");
            (e.name, src)
        })
        .collect()
}

fn parse(c: &mut Criterion) {
    let sources = corpus_sources();
    c.bench_function("parse/corpus", |b| {
        b.iter(|| {
            for (_, src) in &sources {
                black_box(parse_source(black_box(src)).unwrap());
            }
        })
    });
}

fn check(c: &mut Criterion) {
    let terms: Vec<_> = corpus_sources().iter().map(|(_, s)| parse_source(s).unwrap()).collect();
    let fuzz: Vec<_> = (0..200).map(|seed| generate_program(seed, 6)).collect();
    let mut group = c.benchmark_group("check");
    for mode in Mode::ALL {
        group.bench_with_input(BenchmarkId::new("corpus", mode), &mode, |b, &mode| {
            b.iter(|| {
                for term in &terms {
                    let _ = black_box(check_program(term, mode));
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("fuzz200", mode), &mode, |b, &mode| {
            b.iter(|| {
                for term in &fuzz {
                    let _ = black_box(check_program(term, mode));
                }
            })
        });
    }
    group.finish();
}

fn run(c: &mut Criterion) {
    let fresh = corpus_sources()
        .into_iter()
        .find(|(name, _)| name == "nonce_fresh")
        .map(|(_, src)| parse_source(&src).unwrap())
        .expect("nonce_fresh is in the corpus");
    c.bench_function("eval/nonce_fresh", |b| {
        b.iter(|| black_box(eval(&fresh, NonceSource::seeded(42)).unwrap()))
    });
    let text = pretty(&generate_program(3, 6));
    c.bench_function("pipeline/generated", |b| {
        b.iter(|| {
            let term = parse_source(black_box(&text)).unwrap();
            if check_program(&term, Mode::Unrestricted).is_ok() {
                black_box(eval(&term, NonceSource::seeded(0)).unwrap());
            }
        })
    });
}

criterion_group!(benches, parse, check, run);
criterion_main!(benches);
