//! Sequential against parallel sweeps on the same tuples.
//!
//! Both paths return identical reports; only wall time may differ. Without
//! the `parallel` feature both arms run the sequential path.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mspace::finite_quantale::{verify_quantale, FiniteInvolutiveQuantale};
use mspace::groupoid::FiniteGroupoid;
use mspace::observer::{build_canonical_observer, verify_observer, Suite, SweepConfig};
use mspace::Exec;

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn quantale_laws(c: &mut Criterion) {
    let q = FiniteInvolutiveQuantale::relations(2).expect("16 relations");
    let mut group = c.benchmark_group("verify_quantale relations(2)");
    for (name, exec) in EXECS {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(verify_quantale(&q, exec))));
    }
    group.finish();
}

fn observer_suites(c: &mut Criterion) {
    let g = Arc::new(FiniteGroupoid::pair(2).expect("pair(2)"));
    let o = build_canonical_observer(g);
    let mut group = c.benchmark_group("observer pair(2)");
    group.sample_size(10);
    for (name, exec) in EXECS {
        let cfg = SweepConfig { samples: 128, exec, ..SweepConfig::default() };
        group.bench_function(BenchmarkId::new("axioms+etale", name), |b| {
            b.iter(|| {
                black_box(verify_observer(&o, &[Suite::Axioms, Suite::Etale], &cfg).expect("nonempty population"))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, quantale_laws, observer_suites);
criterion_main!(benches);
