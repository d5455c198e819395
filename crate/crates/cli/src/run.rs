use std::io::Read;
use std::path::Path;
use std::time::{Duration, Instant};

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tropical_approx::apsp::{
    approx_apsp_directed_with, approx_apsp_undirected, exact_apsp, zwick_apsp, DistanceMatrix, Graph,
};
use tropical_approx::characteristics::{approx_characteristic, exact_characteristic, CharacteristicKind};
use tropical_approx::conv::{approx_minconv_simple_with, approx_minconv_with, minconv_naive, ConvOptions};
use tropical_approx::generate::{generate_instance, GenKind, GenParams};
use tropical_approx::io::{parse_instances, print_instance, print_instances, Instance, ParsedFile};
use tropical_approx::kernels::{
    minmax_convolution, minmax_product, ConvBackend, MinMaxBackend, RankMatrix, RankSequence,
};
use tropical_approx::product::{
    approx_minplus_product_with, minplus_product_naive, zwick_minplus_product, ProductOptions,
};
use tropical_approx::{Eps, Error, ExpFloat, OpCounter, WeightMatrix, WeightSequence};

use crate::report::{matrix_json, ops_json, sandwich, scalar_json, sequence_json, Check, Report};
use crate::{Algo, Backend, BenchArgs, CharArgs, Failure, GenArgs, GenKindArg, Problem, RunArgs};

type Outcome = Result<Option<Report>, Failure>;

fn load(path: &Path) -> Result<ParsedFile, Failure> {
    let mut src = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src)?;
    } else {
        src = std::fs::read_to_string(path)?;
    }
    let parsed = parse_instances(&src)?;
    for w in &parsed.warnings {
        warn!("{w}");
    }
    Ok(parsed)
}

impl RunArgs {
    fn tolerance(&self) -> f64 {
        self.check_eps.unwrap_or(self.eps)
    }
}

fn eps_of(e: f64) -> Result<Eps, Failure> {
    Ok(Eps::new(e)?)
}

fn pick_algo(given: Option<Algo>, default: Algo, allowed: &[Algo], command: &str) -> Result<Algo, Failure> {
    let algo = given.unwrap_or(default);
    if allowed.contains(&algo) {
        Ok(algo)
    } else {
        Err(Failure::usage(format!("algorithm {algo:?} is not available for `{command}`")))
    }
}

fn algo_name(a: Algo) -> String {
    format!("{a:?}").to_lowercase()
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, OpCounter, Duration) {
    let t = Instant::now();
    let (r, ops) = OpCounter::measure(f);
    (r, ops, t.elapsed())
}

fn write_out(path: Option<&Path>, inst: Instance) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, print_instance(&inst))?;
    }
    Ok(())
}

struct Outputs {
    result: Value,
    ops: OpCounter,
    wall: Duration,
    check: Option<(Check, f64)>,
    warnings: Vec<String>,
}

fn report(args: &RunArgs, argv: Vec<String>, algo: Algo, o: Outputs) -> Report {
    Report {
        schema: 1,
        command: argv,
        eps: Some(args.eps),
        algo: Some(algo_name(algo)),
        result: o.result,
        op_count: args.count_ops.then(|| ops_json(&o.ops)),
        max_rel_error: o.check.as_ref().map(|c| c.1),
        check: o.check.map(|c| c.0),
        warnings: o.warnings,
        wall_time_ms: o.wall.as_secs_f64() * 1e3,
    }
}

fn product_backend(b: Option<Backend>) -> Result<MinMaxBackend, Failure> {
    match b {
        None => Ok(MinMaxBackend::default()),
        Some(Backend::Naive) => Ok(MinMaxBackend::Naive),
        Some(Backend::SkipInfinite) => Ok(MinMaxBackend::SkipInfinite),
        Some(Backend::Threshold) => Ok(MinMaxBackend::Threshold),
        Some(other) => Err(Failure::usage(format!("backend {other:?} is not a product kernel"))),
    }
}

fn conv_backend(b: Option<Backend>) -> Result<ConvBackend, Failure> {
    match b {
        None => Ok(ConvBackend::default()),
        Some(Backend::Naive) => Ok(ConvBackend::Naive),
        Some(Backend::SkipInfinite) => Ok(ConvBackend::SkipInfinite),
        Some(Backend::Subquadratic) => Ok(ConvBackend::Subquadratic),
        Some(other) => Err(Failure::usage(format!("backend {other:?} is not a convolution kernel"))),
    }
}

pub fn product(args: &RunArgs, argv: Vec<String>) -> Outcome {
    let algo = pick_algo(args.algo, Algo::Covering, &[Algo::Covering, Algo::Zwick, Algo::Exact], "product")?;
    let eps = eps_of(args.eps)?;
    let opts = ProductOptions { backend: product_backend(args.backend)? };
    let parsed = load(&args.input)?;
    let mats: Vec<&WeightMatrix> = parsed
        .instances
        .iter()
        .filter_map(|i| if let Instance::Matrix(m) = i { Some(m) } else { None })
        .collect();
    let [a, b] = mats[..] else {
        return Err(Failure::usage(format!("expected two matrices, found {}", mats.len())));
    };
    let (c, ops, wall) = timed(|| match algo {
        Algo::Covering => approx_minplus_product_with(a, b, eps, opts),
        Algo::Zwick => zwick_minplus_product(a, b, eps.div(4.0)),
        _ => minplus_product_naive(a, b),
    });
    let c = c?;
    let check = if args.check {
        let exact = minplus_product_naive(a, b)?;
        Some(sandwich(c.entries(), exact.entries(), args.tolerance()))
    } else {
        None
    };
    let result = matrix_json(&c);
    write_out(args.out.as_deref(), Instance::Matrix(c))?;
    Ok(Some(report(args, argv, algo, Outputs { result, ops, wall, check, warnings: parsed.warnings })))
}

pub fn conv(args: &RunArgs, argv: Vec<String>) -> Outcome {
    let algo = pick_algo(args.algo, Algo::Combined, &[Algo::Simple, Algo::Combined, Algo::Exact], "conv")?;
    let eps = eps_of(args.eps)?;
    let opts = ConvOptions { backend: conv_backend(args.backend)? };
    let parsed = load(&args.input)?;
    let seqs: Vec<&WeightSequence> = parsed
        .instances
        .iter()
        .filter_map(|i| if let Instance::Sequence(s) = i { Some(s) } else { None })
        .collect();
    let [a, b] = seqs[..] else {
        return Err(Failure::usage(format!("expected two sequences, found {}", seqs.len())));
    };
    let (c, ops, wall) = timed(|| match algo {
        Algo::Simple => approx_minconv_simple_with(a, b, eps, opts),
        Algo::Combined => approx_minconv_with(a, b, eps, opts),
        _ => minconv_naive(a, b),
    });
    let c = c?;
    let check = if args.check {
        let exact = minconv_naive(a, b)?;
        Some(sandwich(&c, &exact, args.tolerance()))
    } else {
        None
    };
    let result = sequence_json(&c);
    write_out(args.out.as_deref(), Instance::Sequence(c))?;
    Ok(Some(report(args, argv, algo, Outputs { result, ops, wall, check, warnings: parsed.warnings })))
}

fn first_graph(parsed: &ParsedFile) -> Result<&Graph, Failure> {
    parsed
        .instances
        .iter()
        .find_map(|i| if let Instance::Graph(g) = i { Some(g) } else { None })
        .ok_or_else(|| Failure::usage("expected a graph"))
}

pub fn apsp(args: &RunArgs, argv: Vec<String>) -> Outcome {
    let parsed = load(&args.input)?;
    let g = first_graph(&parsed)?;
    let default = if g.is_directed() { Algo::Covering } else { Algo::Combined };
    let allowed = [Algo::Covering, Algo::Zwick, Algo::Combined, Algo::Exact];
    let algo = pick_algo(args.algo, default, &allowed, "apsp")?;
    let eps = eps_of(args.eps)?;
    let opts = ProductOptions { backend: product_backend(args.backend)? };
    let (d, ops, wall) = timed(|| -> tropical_approx::Result<DistanceMatrix> {
        match algo {
            Algo::Covering => approx_apsp_directed_with(g, eps, opts),
            Algo::Zwick => zwick_apsp(&g.adjacency_matrix(), eps),
            Algo::Combined => approx_apsp_undirected(g, eps),
            _ => Ok(exact_apsp(g)),
        }
    });
    let d = d?;
    let check = args.check.then(|| sandwich(d.entries(), exact_apsp(g).entries(), args.tolerance()));
    let result = matrix_json(&d);
    write_out(args.out.as_deref(), Instance::Matrix(d))?;
    Ok(Some(report(args, argv, algo, Outputs { result, ops, wall, check, warnings: parsed.warnings })))
}

/// Maps an infinite characteristic to `inf`.
fn finite_or_inf(r: tropical_approx::Result<ExpFloat>) -> tropical_approx::Result<ExpFloat> {
    match r {
        Err(Error::Infinite) => Ok(ExpFloat::INFINITY),
        other => other,
    }
}

pub fn characteristic(args: &CharArgs, argv: Vec<String>) -> Outcome {
    let run = &args.run;
    let kind: CharacteristicKind = args.kind.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let algo = pick_algo(run.algo, Algo::Covering, &[Algo::Covering, Algo::Exact], "char")?;
    let eps = eps_of(run.eps)?;
    let parsed = load(&run.input)?;
    let g = first_graph(&parsed)?;
    let (v, ops, wall) = timed(|| match algo {
        Algo::Covering => finite_or_inf(approx_characteristic(g, kind, eps)),
        _ => finite_or_inf(exact_characteristic(g, kind)),
    });
    let v = v?;
    let check = if run.check {
        let exact = finite_or_inf(exact_characteristic(g, kind))?;
        Some(sandwich(&[v], &[exact], run.tolerance()))
    } else {
        None
    };
    let mut result = scalar_json(v);
    result["characteristic"] = json!(kind.name());
    Ok(Some(report(run, argv, algo, Outputs { result, ops, wall, check, warnings: parsed.warnings })))
}

pub fn gen(args: &GenArgs, argv: Vec<String>) -> Outcome {
    let kind = match args.kind {
        GenKindArg::Directed => GenKind::DirectedGraph,
        GenKindArg::Undirected => GenKind::UndirectedGraph,
        GenKindArg::Matrix => GenKind::Matrix,
        GenKindArg::Seq => GenKind::Sequence,
    };
    let p = GenParams {
        density: args.density,
        connected: args.connected,
        blocks: args.blocks,
        ..GenParams::new(kind, args.n, args.exp_lo, args.exp_hi)
    };
    let t = Instant::now();
    let text = print_instances(&generate_instance(&p, args.seed)?);
    let wall = t.elapsed();
    let Some(path) = &args.out else {
        print!("{text}");
        return Ok(None);
    };
    std::fs::write(path, &text)?;
    let sha: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok(Some(Report {
        schema: 1,
        command: argv,
        eps: None,
        algo: None,
        result: json!({ "kind": "instance_file", "path": path, "bytes": text.len(), "sha256": sha }),
        op_count: None,
        max_rel_error: None,
        check: None,
        warnings: Vec::new(),
        wall_time_ms: wall.as_secs_f64() * 1e3,
    }))
}

fn bench_run(span: Option<i64>, algo: &str, ops: Option<&OpCounter>, wall: Duration) -> Value {
    json!({
        "span": span,
        "algo": algo,
        "ops": ops.map(ops_json),
        "wall_ms": wall.as_secs_f64() * 1e3,
    })
}

/// `max / min - 1` of the totals of `algo` across spans.
fn spread(runs: &[Value], algo: &str) -> Option<f64> {
    let totals: Vec<f64> = runs
        .iter()
        .filter(|r| r["algo"] == algo)
        .filter_map(|r| r["ops"]["total"].as_u64())
        .map(|t| t as f64)
        .collect();
    let max = totals.iter().copied().reduce(f64::max)?;
    let min = totals.iter().copied().reduce(f64::min)?;
    Some(max / min - 1.0)
}

pub fn bench(args: &BenchArgs, argv: Vec<String>) -> Outcome {
    let eps = eps_of(args.eps)?;
    let n = args.n;
    let t0 = Instant::now();
    let mut runs = Vec::new();
    let mut record = |span: Option<i64>, algo: &str, f: &mut dyn FnMut() -> tropical_approx::Result<()>| {
        let (r, ops, wall) = timed(f);
        r.map(|_| runs.push(bench_run(span, algo, span.map(|_| &ops), wall)))
    };
    let algos: &[&str] = match args.problem {
        Problem::Product | Problem::Apsp => &["covering", "zwick"],
        Problem::Conv => &["simple", "combined"],
        Problem::MinmaxProduct => &["naive", "threshold"],
        Problem::MinmaxConv => &["naive", "subquadratic"],
    };
    match args.problem {
        Problem::Product | Problem::Conv | Problem::Apsp => {
            for &span in &args.spans {
                let kind = match args.problem {
                    Problem::Product => GenKind::Matrix,
                    Problem::Conv => GenKind::Sequence,
                    _ => GenKind::DirectedGraph,
                };
                let mut p = GenParams::new(kind, n, 0, span);
                if args.problem == Problem::Apsp {
                    p.density = 0.3;
                    p.connected = true;
                }
                let inst = generate_instance(&p, args.seed)?;
                match (args.problem, &inst[..]) {
                    (Problem::Product, [Instance::Matrix(a), Instance::Matrix(b)]) => {
                        let opts = ProductOptions { backend: MinMaxBackend::Naive };
                        record(Some(span), "covering", &mut || approx_minplus_product_with(a, b, eps, opts).map(drop))?;
                        record(Some(span), "zwick", &mut || zwick_minplus_product(a, b, eps).map(drop))?;
                    }
                    (Problem::Conv, [Instance::Sequence(a), Instance::Sequence(b)]) => {
                        let opts = ConvOptions { backend: ConvBackend::Naive };
                        record(Some(span), "simple", &mut || approx_minconv_simple_with(a, b, eps, opts).map(drop))?;
                        record(Some(span), "combined", &mut || approx_minconv_with(a, b, eps, opts).map(drop))?;
                    }
                    (_, [Instance::Graph(g)]) => {
                        let opts = ProductOptions { backend: MinMaxBackend::Naive };
                        let w = g.adjacency_matrix();
                        record(Some(span), "covering", &mut || approx_apsp_directed_with(g, eps, opts).map(drop))?;
                        record(Some(span), "zwick", &mut || zwick_apsp(&w, eps).map(drop))?;
                    }
                    _ => unreachable!("generator returns the requested kind"),
                }
            }
        }
        Problem::MinmaxProduct => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let top = (n * n) as u32;
            let mut gen = || RankMatrix::new(n, top, (0..n * n).map(|_| rng.gen_range(0..=top)).collect());
            let (a, b) = (gen()?, gen()?);
            record(None, "naive", &mut || minmax_product(&a, &b, MinMaxBackend::Naive).map(drop))?;
            record(None, "threshold", &mut || minmax_product(&a, &b, MinMaxBackend::Threshold).map(drop))?;
        }
        Problem::MinmaxConv => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let top = n as u32;
            let mut gen = || RankSequence::new(top, (0..n).map(|_| rng.gen_range(0..=top)).collect());
            let (a, b) = (gen()?, gen()?);
            record(None, "naive", &mut || minmax_convolution(&a, &b, ConvBackend::Naive).map(drop))?;
            record(None, "subquadratic", &mut || minmax_convolution(&a, &b, ConvBackend::Subquadratic).map(drop))?;
        }
    }
    let spreads: serde_json::Map<String, Value> =
        algos.iter().filter_map(|a| spread(&runs, a).map(|s| (a.to_string(), json!(s)))).collect();
    Ok(Some(Report {
        schema: 1,
        command: argv,
        eps: Some(args.eps),
        algo: None,
        result: json!({ "kind": "bench", "n": n, "runs": runs, "op_spread": spreads }),
        op_count: None,
        max_rel_error: None,
        check: None,
        warnings: Vec::new(),
        wall_time_ms: t0.elapsed().as_secs_f64() * 1e3,
    }))
}
