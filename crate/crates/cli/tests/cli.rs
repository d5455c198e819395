use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;
use tropical_approx::io::{parse_instances, Instance};

fn tropx(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap_or(Value::String(text)))
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn apsp_on_triangle_within_eps() {
    let src = "graph undirected 3 3\n0 1 1\n1 2 2\n0 2 3\n";
    for algo in ["covering", "zwick", "combined", "exact"] {
        let (code, r) = tropx(&["apsp", "--eps", "0.1", "--algo", algo, "--check", "-"], Some(src));
        assert_eq!(code, 0, "{algo}: {r}");
        assert_eq!(r["schema"], 1);
        assert!(r["max_rel_error"].as_f64().unwrap() <= 0.1);
        assert_eq!(r["result"]["n"], 3);
    }
}

#[test]
fn diameter_of_path() {
    let src = "graph undirected 3 2\n0 1 1\n1 2 2\n";
    let (code, r) = tropx(&["char", "--kind", "diameter", "--eps", "0.1", "--check", "-"], Some(src));
    assert_eq!(code, 0);
    let v = r["result"]["approx_f64"].as_f64().unwrap();
    assert!((3.0..=3.3).contains(&v), "{v}");
    let (code, r) = tropx(&["char", "--kind", "min_cycle", "--check", "-"], Some(src));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["value"], "inf");
}

#[test]
fn exact_product_of_ones() {
    let (code, r) = tropx(&["product", "--algo", "exact", "-"], Some("matrix 1\n1\nmatrix 1\n1\n"));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["entries"][0][0], "1p1");
    assert!(r.get("max_rel_error").is_none());
}

#[test]
fn conv_algorithms_and_op_counts() {
    let src = "seq 3\n1 2 inf\nseq 3\n3 5 0\n";
    for algo in ["simple", "combined", "exact"] {
        let (code, r) = tropx(&["conv", "--algo", algo, "--check", "--count-ops", "-"], Some(src));
        assert_eq!(code, 0, "{algo}: {r}");
        assert!(r["op_count"]["total"].as_u64().is_some());
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let (code, r) = tropx(&["product", "--algo", "combined", "-"], Some("matrix 1\n1\nmatrix 1\n1\n"));
    assert_eq!((code, r["error"]["kind"].as_str()), (2, Some("usage")));
    let (code, r) = tropx(&["conv", "-"], Some("seq 2\n1 1p\n"));
    assert_eq!((code, r["error"]["kind"].as_str()), (2, Some("parse")));
    assert_eq!((r["error"]["line"].as_u64(), r["error"]["column"].as_u64()), (Some(2), Some(3)));
    let (code, _) = tropx(&["apsp", "--eps", "0", "-"], Some("graph directed 1 0\n"));
    assert_eq!(code, 2);
    let (code, _) = tropx(&["frobnicate"], None);
    assert_eq!(code, 2);
}

#[test]
fn large_results_are_digested_and_dumped() {
    let (_, text) = tropx(&["gen", "--kind", "matrix", "--n", "40", "--seed", "2"], None);
    let out = temp("product.txt");
    let out_s = out.to_str().unwrap();
    let (code, r) = tropx(&["product", "--out", out_s, "-"], Some(text.as_str().unwrap()));
    assert_eq!(code, 0);
    assert_eq!(r["result"]["kind"], "matrix_digest");
    assert_eq!(r["result"]["sha256"].as_str().unwrap().len(), 64);
    let dumped = parse_instances(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(matches!(&dumped.instances[..], [Instance::Matrix(m)] if m.n() == 40));
}

#[test]
fn gen_writes_file_with_report() {
    let out = temp("g.txt");
    let out_s = out.to_str().unwrap();
    let (code, r) = tropx(&["gen", "--kind", "undirected", "--n", "4", "--seed", "1", "--out", out_s], None);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["kind"], "instance_file");
    let parsed = parse_instances(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(matches!(&parsed.instances[..], [Instance::Graph(g)] if g.edges().len() == 6));
}

#[test]
fn self_loops_warn() {
    let (code, r) = tropx(&["apsp", "--algo", "exact", "-"], Some("graph directed 2 2\n0 0 1\n0 1 2\n"));
    assert_eq!(code, 0);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn bench_reports_spreads() {
    let (code, r) = tropx(&["bench", "--problem", "product", "--n", "12", "--spans", "8,64"], None);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["runs"].as_array().unwrap().len(), 4);
    assert!(r["result"]["op_spread"]["covering"].as_f64().unwrap() < 0.05);
    assert!(r["result"]["op_spread"]["zwick"].as_f64().unwrap() > 1.0);
}
