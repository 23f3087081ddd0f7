use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use singconv::bases::fermat_class;
use singconv::convolve::{convolve, thom_sebastiani};
use singconv::fans::{exponent_of, suspend_germ};
use singconv::fforacle::{count_fibers, fermat_pair_oracle, verify_convolution, VerifyOptions};
use singconv::newton::Convenience;
use singconv::{ConvolutionJob, GermClassBundle, GermPoly, ScaledLattice};

fn germ(n: usize, exps: &[&[u32]]) -> GermPoly {
    GermPoly::from_exponents(n, exps).unwrap()
}

fn combinatorics(c: &mut Criterion) {
    let g = germ(3, &[&[5, 0, 0], &[0, 7, 0], &[0, 0, 4], &[2, 2, 1], &[1, 3, 0]]);
    let lattice = ScaledLattice::new(vec![2, 3, 2]).unwrap();
    c.bench_function("exponent/3 vars", |b| {
        b.iter(|| exponent_of(black_box(&g), &lattice, Convenience::Require).unwrap())
    });
    let g2 = germ(2, &[&[6, 0], &[0, 9], &[2, 3], &[4, 1]]);
    let lattice2 = ScaledLattice::new(vec![2, 3]).unwrap();
    c.bench_function("suspension/2 vars", |b| {
        b.iter(|| suspend_germ(black_box(&g2), &lattice2, None, Convenience::Require).unwrap())
    });
}

fn class_ring(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolve");
    for ds in [vec![2u32, 3], vec![3, 4], vec![2, 3, 4], vec![3, 4, 5]] {
        let bundles: Vec<_> = ds.iter().map(|&d| GermClassBundle::monomial(d).unwrap()).collect();
        let job = ConvolutionJob::for_sum(bundles, None).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{ds:?}")), &job, |b, job| {
            b.iter(|| convolve(job).unwrap())
        });
    }
    group.finish();
    let cusp = GermClassBundle::cusp();
    let cube = GermClassBundle::monomial(5).unwrap();
    c.bench_function("pair formula/cusp + y^5", |b| b.iter(|| thom_sebastiani(&cusp, &cube).unwrap()));
    c.bench_function("fermat/(5,7)", |b| b.iter(|| fermat_class(black_box(&[5, 7]), 35).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let cusp_sum = germ(2, &[&[1, 0], &[0, 1]]);
    let inner = [germ(1, &[&[2]]), germ(1, &[&[3]])];
    let mut group = c.benchmark_group("verify/y^2 + z^3");
    group.sample_size(20);
    for p in [7u64, 13, 31] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| verify_convolution(&cusp_sum, &inner, &[2, 3], p, 6, &VerifyOptions::default()).unwrap())
        });
    }
    group.finish();
    let g = germ(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]);
    c.bench_function("fiber counts/3 vars over F_61", |b| b.iter(|| count_fibers(black_box(&g), 61).unwrap()));
    c.bench_function("pair oracle/(3,4) over F_61", |b| b.iter(|| fermat_pair_oracle(3, 4, 61, 12).unwrap()));
}

criterion_group!(benches, combinatorics, class_ring, oracle);
criterion_main!(benches);
