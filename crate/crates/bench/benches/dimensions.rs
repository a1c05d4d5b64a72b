use agq_core::check::check_against_formulas;
use agq_core::fixtures;
use agq_core::generate::{random_ag_pair, GeneratorParams};
use agq_core::oracle::Oracle;
use agq_core::{load_agq, AlmostGentlePair, HomDim, ModuleSpec};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn corpus(n: u64) -> Vec<AlmostGentlePair> {
    (0..n).map(|s| random_ag_pair(&GeneratorParams::with_seed(s)).0).collect()
}

fn closed_forms(c: &mut Criterion) {
    let fig1 = fixtures::fig1();
    c.bench_function("fig1 gldim", |b| b.iter(|| HomDim::new(black_box(&fig1)).global_dimension()));
    c.bench_function("fig1 injdim", |b| b.iter(|| HomDim::new(black_box(&fig1)).self_injective_dimension()));
    let pairs = corpus(50);
    c.bench_function("corpus50 gorenstein report", |b| {
        b.iter(|| pairs.iter().map(|p| HomDim::new(p).gorenstein_report().gorenstein).filter(|&g| g).count())
    });
}

fn oracle(c: &mut Criterion) {
    let fig1 = fixtures::fig1();
    c.bench_function("fig1 oracle pdim of every injective", |b| {
        b.iter(|| {
            let mut o = Oracle::new(&fig1);
            fig1.vertices().map(|v| o.pdim(&o.rep(&ModuleSpec::Injective(v)).unwrap(), 20)).count()
        })
    });
    let pairs = corpus(20);
    let mut group = c.benchmark_group("check");
    group.sample_size(10);
    group.bench_function("corpus20 cutoff 40", |b| {
        b.iter(|| pairs.iter().filter(|p| check_against_formulas(p, 40).agrees()).count())
    });
    group.finish();
}

fn parsing(c: &mut Criterion) {
    c.bench_function("fig1 load", |b| b.iter(|| load_agq(black_box(fixtures::FIG1)).unwrap()));
}

criterion_group!(benches, closed_forms, oracle, parsing);
criterion_main!(benches);
