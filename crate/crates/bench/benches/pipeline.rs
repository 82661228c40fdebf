use criterion::{black_box, criterion_group, criterion_main, Criterion};

use torusknot::census::build_census;
use torusknot::decode_diagram;
use torusknot::enumerate::{enum_shadows, prime_projections};
use torusknot::invariant::kauffman_x;
use torusknot::moves::{explore, find_r2up};

const FOUR: &str = "tkc:v1;n=4;pair=0-7,1-5,2-4,3-13,6-8,9-14,10-12,11-15;\
                    wind=0:(0,0),1:(1,0),2:(1,0),3:(0,0),6:(0,0),9:(-1,1),10:(0,1),11:(0,1);over=0110";

fn invariant(c: &mut Criterion) {
    let d = decode_diagram(FOUR).unwrap();
    c.bench_function("kauffman_x/4 crossings", |b| b.iter(|| kauffman_x(black_box(&d))));
    c.bench_function("find_r2up/4 crossings", |b| b.iter(|| find_r2up(black_box(&d))));
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enum_shadows/4", |b| b.iter(|| enum_shadows(black_box(4))));
    c.bench_function("prime_projections/4", |b| b.iter(|| prime_projections(black_box(4))));
}

fn search(c: &mut Criterion) {
    let d = decode_diagram(FOUR).unwrap();
    c.bench_function("explore/cap 6", |b| b.iter(|| explore(&d, 6, usize::MAX, |_, _| false)));
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("build_census/3", |b| b.iter(|| build_census(black_box(3))));
    g.bench_function("build_census/4", |b| b.iter(|| build_census(black_box(4))));
    g.finish();
}

criterion_group!(benches, invariant, enumeration, search, census);
criterion_main!(benches);
