use criterion::{criterion_group, criterion_main, Criterion};
use vpf_core::counting::{count_points_with, Enumerate, Options};
use vpf_core::exec::Exec;
use vpf_core::root_systems::{Family, RootSystemType};

fn fanout(c: &mut Criterion) {
    let cases = [
        ("B5", RootSystemType::new(Family::B, 5).unwrap(), vec![1047, 974, 20, 44, -35]),
        ("A7", RootSystemType::new(Family::A, 7).unwrap(), vec![82275, 33212, 91868, -57457, 47254, -64616, 94854, -227390]),
    ];
    let mut group = c.benchmark_group("count_points");
    group.sample_size(10);
    for (name, t, h) in &cases {
        for (label, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            let opts = Options { exec, source: &Enumerate };
            group.bench_function(format!("{name}/{label}"), |b| b.iter(|| count_points_with(*t, h, &opts).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, fanout);
criterion_main!(benches);
