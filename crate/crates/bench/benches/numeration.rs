use alternabase::bintegers::{enumerate, gap_word};
use alternabase::sturmian::classify;
use alternabase::substitution::fixed_point_word;
use alternabase::{AlternateBase, ParryProfile, QuadNum};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bases() -> Vec<(&'static str, AlternateBase)> {
    let q = QuadNum::surd;
    vec![
        ("running", AlternateBase::new(vec![q(1, 1, 13, 2), q(5, 1, 13, 6)]).unwrap()),
        ("unbalanced", AlternateBase::new(vec![q(16, 4, 61, 15), q(11, 1, 61, 4)]).unwrap()),
        ("golden", AlternateBase::single(q(1, 1, 5, 2)).unwrap()),
    ]
}

fn quasi_greedy(c: &mut Criterion) {
    let mut g = c.benchmark_group("quasi_greedy");
    for (name, b) in bases() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &b, |bch, b| {
            bch.iter(|| ParryProfile::new(black_box(b), 4096).unwrap())
        });
    }
    g.finish();
}

fn integers(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_1000");
    g.sample_size(20);
    for (name, b) in bases() {
        let prof = ParryProfile::new(&b, 4096).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &prof, |bch, p| {
            bch.iter(|| enumerate(black_box(p), 1000))
        });
    }
    g.finish();
}

fn gap_words(c: &mut Criterion) {
    let prof = ParryProfile::new(&bases()[0].1, 4096).unwrap();
    let mut g = c.benchmark_group("gap_word_running");
    g.sample_size(20);
    g.bench_function("successor_2000", |bch| bch.iter(|| gap_word(black_box(&prof), 2000)));
    g.bench_function("fixed_point_100000", |bch| bch.iter(|| fixed_point_word(black_box(&prof), 100_000)));
    g.finish();
}

fn sturmian(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify_2048");
    g.sample_size(10);
    for (name, b) in bases() {
        let prof = ParryProfile::new(&b, 4096).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &prof, |bch, p| {
            bch.iter(|| classify(black_box(p), 2048))
        });
    }
    g.finish();
}

criterion_group!(benches, quasi_greedy, integers, gap_words, sturmian);
criterion_main!(benches);
