use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubemob_core::aut::enumerate_aut;
use cubemob_core::census::{brute_counts, derangements_inversion, sample_subalgebras, DEFAULT_SEED};
use cubemob_core::mobius::mr_poset;
use cubemob_core::subalgebra::enumerate_subalgebras;
use cubemob_core::Face;

fn face_ops(c: &mut Criterion) {
    let faces: Vec<Face> = Face::all(6).collect();
    c.bench_function("join/caret over L_6 pairs", |b| {
        b.iter(|| {
            let mut corank = 0;
            for x in faces.iter().step_by(7) {
                for y in &faces {
                    let z = x.join(y).unwrap();
                    corank += z.caret(y).unwrap().corank();
                }
            }
            black_box(corank)
        })
    });
}

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_aut");
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_aut(n).unwrap().count())
        });
    }
    group.finish();
}

fn subalgebras(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_subalgebras");
    for n in [3, 4, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_subalgebras(n).unwrap().len())
        });
    }
    group.finish();
}

fn mobius(c: &mut Criterion) {
    c.bench_function("mu row of the bottom of the MR poset, n=4", |b| {
        b.iter(|| {
            let poset = mr_poset(4).unwrap();
            let bottom = poset.bottom().unwrap();
            black_box(poset.mu_row(bottom).len())
        })
    });
    c.bench_function("derangements by inversion, n=3", |b| b.iter(|| derangements_inversion(3).unwrap()));
}

fn census(c: &mut Criterion) {
    let sample = sample_subalgebras(4, 5, DEFAULT_SEED).unwrap();
    c.bench_function("brute orbit/stab counts, 5 subalgebras at n=4", |b| {
        b.iter(|| sample.iter().map(|a| brute_counts(a).unwrap().orbit).sum::<u64>())
    });
}

criterion_group!(benches, face_ops, automorphisms, subalgebras, mobius, census);
criterion_main!(benches);
