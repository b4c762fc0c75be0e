use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pmscheme::matchings::all_matchings;
use pmscheme::quotient::quotient_matrix;
use pmscheme::scheme::ClassTable;
use pmscheme::{Execution, IntegerPartition};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_matchings_k7");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| all_matchings(7, exec).unwrap()));
    }
    g.finish();
}

fn class_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_table_k5");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| ClassTable::build(5, exec).unwrap()));
    }
    g.finish();
}

fn quotient(c: &mut Criterion) {
    let class = IntegerPartition::new(vec![12, 2]).unwrap();
    let lam = IntegerPartition::new(vec![10, 2, 2]).unwrap();
    let mut g = c.benchmark_group("quotient_k7_12_2_over_10_2_2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| quotient_matrix(7, &class, &lam, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, class_table, quotient);
criterion_main!(benches);
