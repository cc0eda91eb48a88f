use criterion::{black_box, criterion_group, criterion_main, Criterion};

use distlap::{double_broom, jacobi_spectrum, path, rho_l, rho_q, DoubleBroomParams, Graph};

fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

fn bench_eigensolve(c: &mut Criterion) {
    let broom = double_broom(&DoubleBroomParams::new(14, 3, 1, 2).unwrap());
    let p14 = path(14).unwrap();
    let k7 = complete_graph(7);

    c.bench_function("rho_l/T(14,3;1,2)", |b| {
        b.iter(|| rho_l(black_box(&broom)).unwrap().rho)
    });
    c.bench_function("rho_q/T(14,3;1,2)", |b| {
        b.iter(|| rho_q(black_box(&broom)).unwrap().rho)
    });
    c.bench_function("rho_l/P_14", |b| {
        b.iter(|| rho_l(black_box(&p14)).unwrap().rho)
    });
    c.bench_function("jacobi/L_D(K_7)", |b| {
        let m = k7.distance_laplacian();
        b.iter(|| jacobi_spectrum(black_box(&m)).unwrap().max_eigenvalue())
    });
}

criterion_group!(benches, bench_eigensolve);
criterion_main!(benches);
