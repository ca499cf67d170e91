use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use arborlink::{
    bridge_upper_bound, build_coxeter_graph, compile, flattening_number, m_bruteforce,
    verify_labeling, wirtinger_exact, PlaneTree, RandomTreeConfig,
};

fn many_twigs(max_vertices: usize, seed: u64) -> PlaneTree {
    let cfg = RandomTreeConfig::new(max_vertices, -5, 5).excluding(&[-1, 0, 1]).many_twigs();
    PlaneTree::random(&cfg, seed).expect("generator accepts config")
}

fn flatten(c: &mut Criterion) {
    let mut g = c.benchmark_group("flattening_number");
    for n in [10, 40, 160] {
        let t = many_twigs(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| flattening_number(black_box(t)))
        });
    }
    g.finish();
}

fn components(c: &mut Criterion) {
    let t = many_twigs(10, 2);
    c.bench_function("m_bruteforce/10", |b| b.iter(|| m_bruteforce(black_box(&t))));
}

fn compile_diagram(c: &mut Criterion) {
    let t = many_twigs(40, 3);
    c.bench_function("compile/40", |b| b.iter(|| compile(black_box(&t))));
}

fn wirtinger(c: &mut Criterion) {
    let mut g = c.benchmark_group("wirtinger");
    g.sample_size(20);
    let t = many_twigs(20, 4);
    g.bench_function("bridge_upper_bound/20", |b| b.iter(|| bridge_upper_bound(black_box(&t))));
    let small = arborlink::parse_tree("(0 (2) (3) (2) (-3))").unwrap();
    let d = compile(&small);
    g.bench_function("exact/star4", |b| b.iter(|| wirtinger_exact(black_box(&d), 4)));
    g.finish();
}

fn coxeter(c: &mut Criterion) {
    let t = many_twigs(30, 5);
    let (graph, seeding) = build_coxeter_graph(&t).expect("many twigs");
    let d = compile(&seeding.tree);
    c.bench_function("verify_labeling/30", |b| {
        b.iter(|| verify_labeling(black_box(&d), &graph, &seeding))
    });
}

criterion_group!(benches, flatten, components, compile_diagram, wirtinger, coxeter);
criterion_main!(benches);
