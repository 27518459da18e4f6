use tropical_apsp::generators::{
    gen_potential_shifted_graph, gen_screened_graph_in, gen_sparse_graph, gen_uniform_graph,
};
use tropical_apsp::{
    apsp_oracle, apsp_squaring, floyd_warshall, funny_product_fast, funny_product_naive, DistanceMatrix,
    Error, Graph, Kernel,
};

const TOL: f64 = 1e-9;

/// Graph with negative edges and no negative cycle: screened uniform
/// [-0.1, 1) draws where those exist, potential-shifted weights beyond.
fn negative_edge_graph(v: usize, seed: u64) -> Graph<f64> {
    if v <= 8 {
        gen_screened_graph_in(v, -0.1, 1.0, seed, 1000).unwrap()
    } else {
        gen_potential_shifted_graph(v, 0.1, seed).unwrap()
    }
}

fn check_agreement(g: &Graph<f64>) {
    let fw = floyd_warshall(g).unwrap();
    let (fast, fast_stats) = apsp_squaring(g, Kernel::Fast).unwrap();
    let (naive, naive_stats) = apsp_squaring(g, Kernel::Naive).unwrap();
    assert!(fast.entries.bitwise_eq(&naive.entries));
    assert!(fast.entries.max_abs_diff(&fw.entries) <= TOL);
    assert_eq!(fast_stats.len(), naive_stats.len());
    let n = g.v_count() as u64;
    for (f, s) in fast_stats.iter().zip(&naive_stats) {
        assert_eq!(f.entries_computed, n * n);
        assert_eq!(s.total_iterations, n * n * n);
        assert!(f.total_iterations >= f.entries_computed);
        assert!(f.total_iterations <= s.total_iterations);
    }
    if g.v_count() <= 8 {
        let oracle = apsp_oracle(g).unwrap();
        assert!(oracle.entries.max_abs_diff(&fw.entries) <= TOL);
        assert!(oracle.entries.max_abs_diff(&fast.entries) <= TOL);
    }
}

#[test]
fn uniform_graphs_agree() {
    for v in [1, 2, 3, 4, 5, 8, 16, 33, 64] {
        for seed in 0..10 {
            check_agreement(&gen_uniform_graph(v, seed).unwrap());
        }
    }
}

#[test]
fn negative_edge_graphs_agree() {
    for v in [2, 4, 7, 8, 16, 40] {
        for seed in 0..10 {
            check_agreement(&negative_edge_graph(v, seed));
        }
    }
}

#[test]
fn sparse_graphs_agree_and_report_unreachable() {
    for (v, density) in [(8, 0.1), (30, 0.05), (64, 0.02), (64, 0.3)] {
        for seed in 0..5 {
            let g = gen_sparse_graph(v, density, seed).unwrap();
            check_agreement(&g);
        }
    }
    // no edges at all: every engine reports inf off the diagonal
    let g = Graph::<f64>::empty(6).unwrap();
    let oracle = apsp_oracle(&g).unwrap();
    let (fast, _) = apsp_squaring(&g, Kernel::Fast).unwrap();
    assert_eq!(oracle.entries, fast.entries);
}

#[test]
fn random_products_are_bitwise_equal() {
    for seed in 0..5 {
        let a = DistanceMatrix::from_graph(&gen_uniform_graph::<f64>(64, seed).unwrap());
        let (x, _) = funny_product_fast(&a, &a).unwrap();
        let (y, _) = funny_product_naive(&a, &a).unwrap();
        assert!(x.entries.bitwise_eq(&y.entries));
    }
}

#[test]
fn output_is_a_metric_closure() {
    let g = negative_edge_graph(48, 3);
    let (d, _) = apsp_squaring(&g, Kernel::Fast).unwrap();
    let n = g.v_count();
    for u in 0..n {
        for x in 0..n {
            for v in 0..n {
                assert!(d.get(u, v) <= d.get(u, x) + d.get(x, v) + TOL);
            }
        }
        for v in 0..n {
            assert!(d.get(u, v) <= g.weight(u, v));
        }
    }
}

#[test]
fn levels_never_increase() {
    let g = gen_uniform_graph::<f64>(70, 5).unwrap();
    let mut d = DistanceMatrix::from_graph(&g);
    for _ in 0..8 {
        let (next, _) = funny_product_fast(&d, &d).unwrap();
        for (new, old) in next.entries.as_slice().iter().zip(d.entries.as_slice()) {
            assert!(new <= old);
        }
        d = next;
    }
}

#[test]
fn negative_cycles_detected_by_every_engine() {
    let two = Graph::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
    // a longer cycle 0 -> 1 -> ... -> 6 -> 0 of total weight -0.1
    let n = 7;
    let mut long = Graph::<f64>::empty(n).unwrap();
    for u in 0..n {
        long.set_edge(u, (u + 1) % n, if u == 0 { -0.7 } else { 0.1 }).unwrap();
    }
    for g in [&two, &long] {
        assert!(matches!(floyd_warshall(g), Err(Error::NegativeCycle { .. })));
        assert!(matches!(apsp_squaring(g, Kernel::Naive), Err(Error::NegativeCycle { .. })));
        assert!(matches!(apsp_squaring(g, Kernel::Fast), Err(Error::NegativeCycle { .. })));
    }
}

#[test]
fn f32_engines_agree() {
    let g = gen_uniform_graph::<f32>(32, 1).unwrap();
    let (fast, _) = apsp_squaring(&g, Kernel::Fast).unwrap();
    let (naive, _) = apsp_squaring(&g, Kernel::Naive).unwrap();
    assert!(fast.entries.bitwise_eq(&naive.entries));
    assert!(fast.entries.max_abs_diff(&floyd_warshall(&g).unwrap().entries) <= 1e-5);
}
