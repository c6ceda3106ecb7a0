use cagekit::cage::random_cage;
use cagekit::demos::run_demo;
use cagekit::inscribe::{inscribe_with_tangent, TangentSubspace};
use cagekit::verify::{fubini_slice_check, verify_cage, verify_supra_interpolation};
use cagekit::{Cage, Field};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cage(d: usize, n: usize) -> Cage {
    random_cage(1, d, n, &Field::rationals()).unwrap().cage
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for (n, d) in [(2, 4), (3, 3), (4, 2)] {
        let unvalidated = Cage::new(&Field::rationals(), cage(d, n).groups().to_vec()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_d{d}")), &unvalidated, |b, c| {
            b.iter(|| c.clone().validate())
        });
    }
    group.finish();
}

fn interpolation(c: &mut Criterion) {
    let mut group = c.benchmark_group("supra_interpolation");
    for (n, d) in [(2, 4), (3, 3), (4, 2)] {
        let cg = cage(d, n);
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_d{d}")), &cg, |b, c| {
            b.iter(|| verify_supra_interpolation(c).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    let cubic = cage(3, 3);
    group.bench_function("verify_cage_n3_d3", |b| b.iter(|| verify_cage(&cubic).unwrap()));
    group.bench_function("fubini_n3_d3", |b| b.iter(|| fubini_slice_check(&cubic).unwrap()));
    group.bench_function("demo_fermat_cubic_surface", |b| b.iter(|| run_demo("fermat-cubic-surface").unwrap()));
    group.bench_function("demo_k3_quartic", |b| b.iter(|| run_demo("k3-quartic").unwrap()));
    group.finish();
}

fn inscription(c: &mut Criterion) {
    let cg = cage(3, 3);
    let f = cg.field().clone();
    let p = cg.nodes().unwrap()[0].clone();
    let tau = TangentSubspace::new(&p, vec![vec![f.from_int(1), f.from_int(2), f.from_int(-1)]]).unwrap();
    c.bench_function("inscribe_n3_d3_s2", |b| b.iter(|| inscribe_with_tangent(&cg, &p, &tau).unwrap()));
}

criterion_group!(benches, validation, interpolation, suites, inscription);
criterion_main!(benches);
