use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dualpolar::fields::Field;

fn field_ops(c: &mut Criterion) {
    for (p, k) in [(3u32, 4u32), (2, 6)] {
        let f = Field::new(p, k).unwrap();
        let els: Vec<_> = f.elements().collect();
        let pairs: Vec<_> = els
            .iter()
            .flat_map(|&a| els.iter().map(move |&b| (a, b)))
            .collect();
        let nonzero: Vec<_> = els.iter().copied().filter(|&a| a != f.zero()).collect();

        let mut group = c.benchmark_group(format!("gf{}", p.pow(k)));
        group.bench_function("mul_all_pairs", |b| {
            b.iter(|| {
                let mut acc = f.zero();
                for &(x, y) in &pairs {
                    acc = f.add(acc, f.mul(x, y));
                }
                black_box(acc)
            })
        });
        group.bench_function("add_all_pairs", |b| {
            b.iter(|| {
                let mut acc = f.one();
                for &(x, y) in &pairs {
                    acc = f.mul(acc, f.add(f.add(x, y), f.one()));
                }
                black_box(acc)
            })
        });
        group.bench_function("inv_nonzero", |b| {
            b.iter(|| {
                let mut acc = f.zero();
                for &x in &nonzero {
                    acc = f.add(acc, f.inv(x));
                }
                black_box(acc)
            })
        });
        group.finish();
    }
}

criterion_group!(benches, field_ops);
criterion_main!(benches);
