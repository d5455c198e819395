//! End-to-end acceptance checks. Each test prints one PASS/FAIL line; run
//! with `--nocapture --test-threads=1` to see them in order.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropical_approx::apsp::{approx_apsp_directed, approx_apsp_directed_with, approx_apsp_undirected, exact_apsp, Graph};
use tropical_approx::characteristics::{approx_characteristic, exact_characteristic, CharacteristicKind};
use tropical_approx::conv::*;
use tropical_approx::covering::{layer_budget, s_close, s_distant, sum_to_max_covering, CoveringMode};
use tropical_approx::generate::{generate_instance, GenKind, GenParams};
use tropical_approx::io::Instance;
use tropical_approx::kernels::{
    minmax_convolution, minmax_product, ConvBackend, MinMaxBackend, RankMatrix, RankSequence,
};
use tropical_approx::numeric::SLACK;
use tropical_approx::product::*;
use tropical_approx::{Eps, Error, ExpFloat, OpCounter, WeightMatrix, WeightSequence};

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!("[{id:02}] {} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "[{id:02}] {name}: {detail}");
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn random_weight(rng: &mut ChaCha8Rng, span: i64) -> ExpFloat {
    ExpFloat::new(rng.gen_range(1.0..2.0), rng.gen_range(0..=span))
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, span: i64, inf_prob: f64) -> Vec<ExpFloat> {
    (0..n).map(|_| if rng.gen_bool(inf_prob) { ExpFloat::INFINITY } else { random_weight(rng, span) }).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, span: i64, inf_prob: f64) -> WeightMatrix {
    WeightMatrix::new(n, random_vec(rng, n * n, span, inf_prob)).unwrap()
}

fn generated(p: &GenParams, seed: u64) -> Vec<Instance> {
    generate_instance(p, seed).unwrap()
}

fn graph(directed: bool, n: usize, lo: i64, hi: i64, density: f64, seed: u64) -> Graph {
    let kind = if directed { GenKind::DirectedGraph } else { GenKind::UndirectedGraph };
    let p = GenParams { density, connected: true, ..GenParams::new(kind, n, lo, hi) };
    match generated(&p, seed).remove(0) {
        Instance::Graph(g) => g,
        _ => unreachable!(),
    }
}

/// Tracks the extreme ratios of approximations against exact values.
#[derive(Default)]
struct Ratios {
    min: f64,
    max: f64,
    bad: usize,
    seen: usize,
}

impl Ratios {
    fn new() -> Ratios {
        Ratios { min: f64::INFINITY, max: 0.0, bad: 0, seen: 0 }
    }

    fn add(&mut self, approx: ExpFloat, exact: ExpFloat, eps: f64) {
        self.seen += 1;
        if exact.is_infinite() || exact.is_zero() {
            if approx != exact {
                self.bad += 1;
            }
            return;
        }
        let r = approx.ratio(exact);
        self.min = self.min.min(r);
        self.max = self.max.max(r);
        if r < 1.0 - SLACK || r > (1.0 + eps) * (1.0 + SLACK) {
            self.bad += 1;
        }
    }

    fn add_all(&mut self, approx: &[ExpFloat], exact: &[ExpFloat], eps: f64) {
        assert_eq!(approx.len(), exact.len());
        for (&x, &y) in approx.iter().zip(exact) {
            self.add(x, y, eps);
        }
    }

    fn summary(&self) -> String {
        format!("{} entries, ratios in [{:.6}, {:.6}], {} violations", self.seen, self.min, self.max, self.bad)
    }
}

#[test]
fn acceptance_01_covering_sandwich() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut r = Ratios::new();
    for n in [16, 64, 256] {
        for span in [8, 200] {
            for e in [0.5, 0.1, 0.02] {
                let eps = Eps::new(e).unwrap();
                for _ in 0..50 {
                    let a = random_vec(&mut rng, n, span, 0.02);
                    let b = random_vec(&mut rng, n, span, 0.02);
                    let fam = sum_to_max_covering(&a, &b, eps, CoveringMode::Strong).unwrap();
                    let table = fam.pairwise_min_max();
                    for i in 0..n {
                        for j in 0..n {
                            r.add(table[i * n + j], a[i].add(b[j]), e);
                        }
                    }
                }
            }
        }
    }
    let el = t.elapsed();
    verdict(1, "covering sandwich", r.bad == 0 && el < Duration::from_secs(120), format!("{} in {}", r.summary(), secs(el)));
}

#[test]
fn acceptance_02_layer_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut mismatches = 0;
    let mut configs = 0;
    for n in [1, 2, 16, 64, 256, 1024] {
        for span in [8, 200] {
            for e in [0.5, 0.25, 0.1, 0.05, 0.02] {
                let eps = Eps::new(e).unwrap();
                let a = random_vec(&mut rng, n, span, 0.0);
                let b = random_vec(&mut rng, n, span, 0.0);
                let fam = sum_to_max_covering(&a, &b, eps, CoveringMode::Strong).unwrap();
                let z = 2 * n;
                let closed = s_close(e / 5.0) + s_distant(z, e / 5.0);
                if fam.len() != closed || fam.len() != layer_budget(z, eps, CoveringMode::Strong) {
                    mismatches += 1;
                }
                let bound = 64.0 * (1.0 / e + (n as f64).log2()) * (1.0 / e).log2();
                worst = worst.max(fam.len() as f64 / bound);
                configs += 1;
            }
        }
    }
    verdict(
        2,
        "layer count",
        mismatches == 0 && worst <= 1.0,
        format!("{configs} configurations, {mismatches} closed-form mismatches, max s / bound = {worst:.3}"),
    );
}

#[test]
fn acceptance_03_approx_product() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut r = Ratios::new();
    let sizes = [8, 16, 32, 64, 100, 128];
    let spans = [4, 60, 400];
    let mut count = 0;
    for k in 0..30 {
        let n = sizes[k % sizes.len()];
        let span = spans[k % spans.len()];
        let e = if k % 2 == 0 { 0.5 } else { 0.1 };
        let a = random_matrix(&mut rng, n, span, 0.1);
        let b = random_matrix(&mut rng, n, span, 0.1);
        let c = approx_minplus_product(&a, &b, Eps::new(e).unwrap()).unwrap();
        r.add_all(c.entries(), minplus_product_naive(&a, &b).unwrap().entries(), e);
        count += 1;
    }
    let el = t.elapsed();
    let ok = r.bad == 0 && el < Duration::from_secs(180);
    verdict(3, "approximate min-plus product", ok, format!("{count} instances, {} in {}", r.summary(), secs(el)));
}

#[test]
fn acceptance_04_directed_apsp() {
    let t = Instant::now();
    let mut r = Ratios::new();
    let cases = [(128, 300, 0.06, 0.1), (64, 300, 0.1, 0.5), (48, 40, 0.2, 0.1), (32, 300, 0.5, 0.1), (16, 8, 0.3, 0.02)];
    for (k, &(n, hi, density, e)) in cases.iter().enumerate() {
        let g = graph(true, n, 0, hi, density, 40 + k as u64);
        let d = approx_apsp_directed(&g, Eps::new(e).unwrap()).unwrap();
        r.add_all(d.entries(), exact_apsp(&g).entries(), e);
    }
    let el = t.elapsed();
    let ok = r.bad == 0 && el < Duration::from_secs(180);
    verdict(4, "directed APSP", ok, format!("{} graphs, {} in {}", cases.len(), r.summary(), secs(el)));
}

#[test]
fn acceptance_05_undirected_apsp() {
    let t = Instant::now();
    let mut r = Ratios::new();
    let cases = [(128, 60, 0.05, 0.1), (128, 20, 0.03, 0.5), (64, 60, 0.1, 0.1), (40, 60, 0.2, 0.02), (10, 60, 0.3, 0.1)];
    for (k, &(n, hi, density, e)) in cases.iter().enumerate() {
        let g = graph(false, n, 0, hi, density, 50 + k as u64);
        let d = approx_apsp_undirected(&g, Eps::new(e).unwrap()).unwrap();
        r.add_all(d.entries(), exact_apsp(&g).entries(), e);
    }
    let el = t.elapsed();
    let ok = r.bad == 0 && el < Duration::from_secs(180);
    verdict(5, "undirected APSP", ok, format!("{} graphs, {} in {}", cases.len(), r.summary(), secs(el)));
}

#[test]
fn acceptance_06_strongly_polynomial() {
    let n = 64;
    let eps = Eps::new(0.1).unwrap();
    let seed = 6;
    let spans = [8, 512];
    let mut totals: [Vec<u64>; 4] = Default::default();
    for hi in spans {
        let mats = generated(&GenParams::new(GenKind::Matrix, n, 0, hi), seed);
        let (Instance::Matrix(a), Instance::Matrix(b)) = (&mats[0], &mats[1]) else { unreachable!() };
        let naive = ProductOptions { backend: MinMaxBackend::Naive };
        totals[0].push(OpCounter::measure(|| approx_minplus_product_with(a, b, eps, naive).unwrap()).1.total());
        totals[3].push(OpCounter::measure(|| zwick_minplus_product(a, b, eps).unwrap()).1.total());

        let g = graph(true, n, 0, hi, 0.3, seed);
        totals[1].push(OpCounter::measure(|| approx_apsp_directed_with(&g, eps, naive).unwrap()).1.total());

        let seqs = generated(&GenParams::new(GenKind::Sequence, n, 0, hi), seed);
        let (Instance::Sequence(x), Instance::Sequence(y)) = (&seqs[0], &seqs[1]) else { unreachable!() };
        let opts = ConvOptions { backend: ConvBackend::Naive };
        totals[2].push(OpCounter::measure(|| approx_minconv_with(x, y, eps, opts).unwrap()).1.total());
    }
    let diff = |v: &[u64]| (v[0] as f64 - v[1] as f64).abs() / (v[0].min(v[1]) as f64);
    let names = ["product", "apsp", "minconv"];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, t) in names.iter().zip(&totals) {
        ok &= diff(t) < 0.05;
        parts.push(format!("{name} {} vs {} ({:.2}%)", t[0], t[1], 100.0 * diff(t)));
    }
    let growth = totals[3][1] as f64 / totals[3][0] as f64;
    ok &= growth >= 20.0;
    parts.push(format!("scaling baseline grows {growth:.1}x"));
    verdict(6, "weight-independent operation counts", ok, parts.join("; "));
}

#[test]
fn acceptance_07_equivalence_reductions() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut product_mismatch = 0;
    let mut conv_mismatch = 0;
    for k in 0..20 {
        let n = [1, 5, 16, 33, 64][k % 5];
        let top = rng.gen_range(1..=3 * n as u32);
        let mut gen = || RankMatrix::new(n, top, (0..n * n).map(|_| rng.gen_range(0..=top)).collect()).unwrap();
        let (a, b) = (gen(), gen());
        let e = [1.0, 0.5, 0.1][k % 3];
        if minmax_product_via_approx(&a, &b, Eps::new(e).unwrap()).unwrap()
            != minmax_product(&a, &b, MinMaxBackend::Naive).unwrap()
        {
            product_mismatch += 1;
        }
    }
    for k in 0..20 {
        let n = [1, 17, 256, 1000, 1024][k % 5];
        let top = rng.gen_range(1..=n as u32 + 1);
        let mut gen = || RankSequence::new(top, (0..n).map(|_| rng.gen_range(0..=top)).collect()).unwrap();
        let (a, b) = (gen(), gen());
        let e = [1.0, 0.5, 0.1][k % 3];
        if minmax_conv_via_approx(&a, &b, Eps::new(e).unwrap()).unwrap()
            != minmax_convolution(&a, &b, ConvBackend::Naive).unwrap()
        {
            conv_mismatch += 1;
        }
    }
    let el = t.elapsed();
    let ok = product_mismatch == 0 && conv_mismatch == 0 && el < Duration::from_secs(120);
    verdict(
        7,
        "exact min-max recovery",
        ok,
        format!("{product_mismatch}/20 product and {conv_mismatch}/20 convolution mismatches in {}", secs(el)),
    );
}

/// Minimum simple cycle by enumerating every cycle from its smallest vertex.
fn exhaustive_min_cycle(g: &Graph) -> ExpFloat {
    fn dfs(w: &WeightMatrix, start: usize, u: usize, len: usize, cost: ExpFloat, on: &mut [bool], min_len: usize, best: &mut ExpFloat) {
        for v in start..w.n() {
            let x = w[(u, v)];
            if v == u || x.is_infinite() {
                continue;
            }
            if v == start {
                if len >= min_len {
                    *best = (*best).min(cost.add(x));
                }
            } else if !on[v] {
                on[v] = true;
                dfs(w, start, v, len + 1, cost.add(x), on, min_len, best);
                on[v] = false;
            }
        }
    }
    let w = g.adjacency_matrix();
    let min_len = if g.is_directed() { 2 } else { 3 };
    let mut best = ExpFloat::INFINITY;
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        dfs(&w, s, s, 1, ExpFloat::ZERO, &mut on, min_len, &mut best);
    }
    best
}

fn value(r: tropical_approx::Result<ExpFloat>) -> ExpFloat {
    match r {
        Err(Error::Infinite) => ExpFloat::INFINITY,
        other => other.unwrap(),
    }
}

#[test]
fn acceptance_08_characteristics() {
    let t = Instant::now();
    let mut r = Ratios::new();
    let e = 0.1;
    let eps = Eps::new(e).unwrap();
    for directed in [false, true] {
        for (k, &(n, density, hi)) in [(64, 0.08, 40), (40, 0.15, 200), (20, 0.3, 8)].iter().enumerate() {
            let g = graph(directed, n, 0, hi, density, 80 + k as u64);
            for kind in CharacteristicKind::ALL {
                r.add(value(approx_characteristic(&g, kind, eps)), value(exact_characteristic(&g, kind)), e);
            }
        }
    }
    let mut oracle_mismatch = 0;
    for seed in 0..40u64 {
        let directed = seed % 2 == 0;
        let kind = if directed { GenKind::DirectedGraph } else { GenKind::UndirectedGraph };
        let n = 3 + (seed as usize % 8);
        let p = GenParams { density: 0.35, ..GenParams::new(kind, n, 0, 30) };
        let Instance::Graph(g) = generated(&p, seed).remove(0) else { unreachable!() };
        let brute = exhaustive_min_cycle(&g);
        let exact = value(exact_characteristic(&g, CharacteristicKind::MinCycle));
        let agree = if brute.is_infinite() { exact.is_infinite() } else { (exact.ratio(brute) - 1.0).abs() < 1e-12 };
        if !agree {
            oracle_mismatch += 1;
        }
        r.add(value(approx_characteristic(&g, CharacteristicKind::MinCycle, eps)), brute, e);
    }
    let el = t.elapsed();
    let ok = r.bad == 0 && oracle_mismatch == 0 && el < Duration::from_secs(120);
    verdict(
        8,
        "graph characteristics",
        ok,
        format!("{}, {oracle_mismatch} cycle-oracle disagreements, {}", r.summary(), secs(el)),
    );
}

fn seq(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, inf_prob: f64) -> WeightSequence {
    (0..n)
        .map(|_| if rng.gen_bool(inf_prob) { ExpFloat::INFINITY } else { ExpFloat::new(rng.gen_range(1.0..2.0), rng.gen_range(lo..=hi)) })
        .collect::<Vec<_>>()
        .into()
}

#[test]
fn acceptance_09_convolution_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let e = 0.1;
    let eps = Eps::new(e).unwrap();
    let fast = ConvOptions { backend: ConvBackend::Subquadratic };
    let mut full = Ratios::new();
    for (n, hi) in [(4096, 300), (1024, 30), (100, 0)] {
        let a = seq(&mut rng, n, 0, hi, 0.05);
        let b = seq(&mut rng, n, 0, hi, 0.05);
        let exact = minconv_naive(&a, &b).unwrap();
        full.add_all(&approx_minconv_simple_with(&a, &b, eps, fast).unwrap(), &exact, e);
        full.add_all(&approx_minconv_with(&a, &b, eps, fast).unwrap(), &exact, e);
    }

    // Far-only: every ratio is at least 2^20. Close-only: every ratio is within [1/4, 4].
    let mut clauses = Ratios::new();
    let mut lower_bad = 0;
    let mut lower = |approx: &WeightSequence, exact: &WeightSequence| {
        lower_bad += approx.iter().zip(exact.iter()).filter(|(x, y)| x.is_finite() && x.ratio(**y) < 1.0 - SLACK).count();
    };
    let a = seq(&mut rng, 1024, 0, 3, 0.1);
    let b = seq(&mut rng, 1024, 24, 200, 0.1);
    let exact = minconv_naive(&a, &b).unwrap();
    clauses.add_all(&distant_minconv(&a, &b, eps).unwrap(), &exact, e);
    lower(&close_minconv(&a, &b, eps).unwrap(), &exact);
    let a = seq(&mut rng, 1024, 10, 11, 0.1);
    let b = seq(&mut rng, 1024, 10, 11, 0.1);
    let exact = minconv_naive(&a, &b).unwrap();
    clauses.add_all(&close_minconv(&a, &b, eps).unwrap(), &exact, e);
    lower(&distant_minconv(&a, &b, eps).unwrap(), &exact);

    let mut rounding_bad = 0;
    for _ in 0..100_000 {
        let q = 2f64.powi(rng.gen_range(-60..60));
        let ee: f64 = rng.gen_range(0.001..=1.0);
        let x = rng.gen_range(0.0..=1.0) * q;
        let y = rng.gen_range((0.5 * q - x).max(0.0)..=q);
        let rounded = ((4.0 * x / (q * ee)).ceil() + (4.0 * y / (q * ee)).ceil()) * q * ee / 4.0;
        let tol = 1e-12 * (x + y);
        if !(x + y <= rounded + tol && rounded <= (1.0 + ee) * (x + y) + tol) {
            rounding_bad += 1;
        }
    }
    let el = t.elapsed();
    let ok = full.bad == 0 && clauses.bad == 0 && lower_bad == 0 && rounding_bad == 0 && el < Duration::from_secs(180);
    verdict(
        9,
        "convolution suite",
        ok,
        format!(
            "full: {}; clauses: {}; {lower_bad} lower-bound failures; {rounding_bad}/100000 rounding failures; {}",
            full.summary(),
            clauses.summary(),
            secs(el)
        ),
    );
}

#[test]
fn acceptance_10_kernel_backends() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut mismatches = 0;
    for n in [1, 7, 64, 200, 256] {
        let top = rng.gen_range(1..=(n * n) as u32 + 1);
        let mut gen = || {
            RankMatrix::new(n, top, (0..n * n).map(|_| if rng.gen_bool(0.1) { top } else { rng.gen_range(0..=top) }).collect())
                .unwrap()
        };
        let (a, b) = (gen(), gen());
        let naive = minmax_product(&a, &b, MinMaxBackend::Naive).unwrap();
        for backend in [MinMaxBackend::SkipInfinite, MinMaxBackend::Threshold] {
            mismatches += (minmax_product(&a, &b, backend).unwrap() != naive) as usize;
        }
    }
    for n in [1, 10, 333, 1024, 4096] {
        let top = rng.gen_range(1..=n as u32 + 1);
        let mut gen = || {
            RankSequence::new(top, (0..n).map(|_| if rng.gen_bool(0.1) { top } else { rng.gen_range(0..=top) }).collect()).unwrap()
        };
        let (a, b) = (gen(), gen());
        let naive = minmax_convolution(&a, &b, ConvBackend::Naive).unwrap();
        for backend in [ConvBackend::SkipInfinite, ConvBackend::Subquadratic] {
            mismatches += (minmax_convolution(&a, &b, backend).unwrap() != naive) as usize;
        }
    }
    let n = 1 << 16;
    let top = n as u32;
    let mut gen = || RankSequence::new(top, (0..n).map(|_| rng.gen_range(0..=top)).collect()).unwrap();
    let (a, b) = (gen(), gen());
    let t = Instant::now();
    minmax_convolution(&a, &b, ConvBackend::Naive).unwrap();
    let naive = t.elapsed();
    let t = Instant::now();
    minmax_convolution(&a, &b, ConvBackend::Subquadratic).unwrap();
    let sub = t.elapsed();
    verdict(
        10,
        "kernel backends",
        mismatches == 0,
        format!(
            "{mismatches} mismatches; convolution at n = 2^16: naive {}, subquadratic {} (trend only)",
            secs(naive),
            secs(sub)
        ),
    );
}

fn tropx(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropx")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn without_wall_time(report: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(report).unwrap();
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn acceptance_11_cli_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut round_trip_bad = 0;
    for k in 0..1000 {
        let x = match k {
            0 => ExpFloat::INFINITY,
            1 => ExpFloat::ZERO,
            _ => ExpFloat::new(rng.gen_range(1.0..2.0), rng.gen_range(-(1i64 << 62)..(1i64 << 62)) >> rng.gen_range(0..62)),
        };
        round_trip_bad += (x.to_string().parse::<ExpFloat>() != Ok(x)) as usize;
    }

    let dir = std::env::temp_dir().join(format!("tropx-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let graph_file = path("g.txt");
    let gen_args = ["gen", "--kind", "directed", "--n", "24", "--exp-hi", "40", "--density", "0.2", "--connected", "--seed", "5"];
    let (c1, g1) = tropx(&gen_args);
    let (_, g2) = tropx(&gen_args);
    std::fs::write(&graph_file, &g1).unwrap();
    let gen_same = c1 == 0 && g1 == g2 && !g1.is_empty();

    let run = ["apsp", "--eps", "0.1", "--algo", "covering", "--check", "--count-ops", "--seed", "5", graph_file.as_str()];
    let (clean, r1) = tropx(&run);
    let (_, r2) = tropx(&run);
    let run_same = without_wall_time(&r1) == without_wall_time(&r2);
    // The same output judged against a tolerance it cannot meet.
    let strict = ["apsp", "--eps", "0.5", "--algo", "covering", "--check", "--check-eps", "1e-9", graph_file.as_str()];
    let (violated, _) = tropx(&strict);
    let bad_file = path("bad.txt");
    std::fs::write(&bad_file, "matrix 1\nnope\n").unwrap();
    let (parse_err, err_json) = tropx(&["product", bad_file.as_str()]);
    let err_ok = serde_json::from_str::<serde_json::Value>(&err_json).map(|v| v["error"]["line"] == 2).unwrap_or(false);
    std::fs::remove_dir_all(&dir).ok();

    let ok = round_trip_bad == 0 && gen_same && run_same && clean == 0 && violated == 1 && parse_err == 2 && err_ok;
    verdict(
        11,
        "command-line contract",
        ok,
        format!(
            "{round_trip_bad}/1000 round-trip failures; gen deterministic {gen_same}; run deterministic {run_same}; \
             exit codes clean {clean}, violation {violated}, parse error {parse_err}"
        ),
    );
}
