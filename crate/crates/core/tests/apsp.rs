use proptest::prelude::*;
use tropical_approx::apsp::*;
use tropical_approx::generate::{generate_instance, GenKind, GenParams};
use tropical_approx::io::Instance;
use tropical_approx::numeric::SLACK;
use tropical_approx::{Eps, ExpFloat};

fn graph(kind: GenKind, n: usize, hi: i64, density: f64, seed: u64) -> Graph {
    let p = GenParams { density, connected: true, ..GenParams::new(kind, n, 0, hi) };
    match generate_instance(&p, seed).unwrap().remove(0) {
        Instance::Graph(g) => g,
        _ => unreachable!(),
    }
}

fn max_ratio(approx: &DistanceMatrix, exact: &DistanceMatrix) -> f64 {
    let mut worst: f64 = 1.0;
    for (x, y) in approx.entries().iter().zip(exact.entries()) {
        if y.is_infinite() {
            assert!(x.is_infinite(), "{x} for an unreachable pair");
            continue;
        }
        let r = x.ratio(*y);
        assert!(r >= 1.0 - SLACK, "estimate {x} below distance {y}");
        worst = worst.max(r);
    }
    worst
}

#[test]
fn directed_n128_span300() {
    let g = graph(GenKind::DirectedGraph, 128, 300, 0.05, 1);
    let d = approx_apsp_directed(&g, Eps::new(0.1).unwrap()).unwrap();
    assert!(max_ratio(&d, &exact_apsp(&g)) <= 1.1 * (1.0 + SLACK));
}

#[test]
fn undirected_n128_span60() {
    let g = graph(GenKind::UndirectedGraph, 128, 60, 0.05, 2);
    let d = approx_apsp_undirected(&g, Eps::new(0.1).unwrap()).unwrap();
    assert!(max_ratio(&d, &exact_apsp(&g)) <= 1.1 * (1.0 + SLACK));
}

#[test]
fn zwick_apsp_sandwich() {
    let g = graph(GenKind::DirectedGraph, 40, 20, 0.1, 3);
    let d = zwick_apsp(&g.adjacency_matrix(), Eps::new(0.1).unwrap()).unwrap();
    assert!(max_ratio(&d, &exact_apsp(&g)) <= 1.1 * (1.0 + SLACK));
}

#[test]
fn contraction_preserves_distances() {
    // Zero-weight edges merge vertices without changing any distance.
    let g = graph(GenKind::UndirectedGraph, 12, 10, 0.3, 4);
    let zeroed = g.map_weights(|w| if w.exponent() < 2 { ExpFloat::ZERO } else { w });
    let exact = exact_apsp(&zeroed);
    let d = approx_apsp_undirected(&zeroed, Eps::new(0.1).unwrap()).unwrap();
    assert!(max_ratio(&d, &exact) <= 1.1 * (1.0 + SLACK));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn directed_sandwich(seed in any::<u64>(), n in 1usize..20, hi in 0i64..200, density in 0.0f64..0.5) {
        let p = GenParams { density, ..GenParams::new(GenKind::DirectedGraph, n, 0, hi) };
        let Instance::Graph(g) = generate_instance(&p, seed).unwrap().remove(0) else { unreachable!() };
        let d = approx_apsp_directed(&g, Eps::new(0.1).unwrap()).unwrap();
        prop_assert!(max_ratio(&d, &exact_apsp(&g)) <= 1.1 * (1.0 + SLACK));
    }

    #[test]
    fn undirected_sandwich(seed in any::<u64>(), n in 1usize..20, hi in 0i64..80, density in 0.0f64..0.5, e in 0.02f64..0.5) {
        let p = GenParams { density, ..GenParams::new(GenKind::UndirectedGraph, n, 0, hi) };
        let Instance::Graph(g) = generate_instance(&p, seed).unwrap().remove(0) else { unreachable!() };
        let d = approx_apsp_undirected(&g, Eps::new(e).unwrap()).unwrap();
        prop_assert!(max_ratio(&d, &exact_apsp(&g)) <= (1.0 + e) * (1.0 + SLACK));
    }

    #[test]
    fn squaring_rounds_bound_hop_limited_paths(seed in any::<u64>(), n in 2usize..16) {
        // After all rounds every estimate lies between the distance and
        // (1 + eps) times it; with one round only, between the distance and
        // (1 + eps') times the best path of at most two hops.
        let p = GenParams { density: 0.3, ..GenParams::new(GenKind::DirectedGraph, n, 0, 50) };
        let Instance::Graph(g) = generate_instance(&p, seed).unwrap().remove(0) else { unreachable!() };
        let a = g.adjacency_matrix();
        let two_hop = tropical_approx::product::minplus_product_naive(&a, &a).unwrap();
        let e = Eps::new(0.05).unwrap();
        let one = tropical_approx::product::approx_minplus_product(&a, &a, e).unwrap();
        let exact = exact_apsp(&g);
        for ((x, y), z) in one.entries().iter().zip(two_hop.entries()).zip(exact.entries()) {
            prop_assert!(x.ratio(*z) >= 1.0 - SLACK);
            prop_assert!(x.ratio(*y) <= 1.05 * (1.0 + SLACK));
        }
    }
}
