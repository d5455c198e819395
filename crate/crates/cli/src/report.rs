use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tropical_approx::numeric::SLACK;
use tropical_approx::{ExpFloat, OpCounter, WeightMatrix, WeightSequence};

/// Matrices above this dimension are reported as a digest.
pub const MATRIX_DUMP_LIMIT: usize = 32;
/// Sequences above this length are reported as a digest.
pub const SEQUENCE_DUMP_LIMIT: usize = 1024;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op_count: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rel_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
}

pub fn ops_json(ops: &OpCounter) -> Value {
    json!({
        "additions": ops.additions,
        "comparisons": ops.comparisons,
        "multiplications": ops.multiplications,
        "total": ops.total(),
    })
}

fn digest(values: &[ExpFloat]) -> (String, Option<ExpFloat>, Option<ExpFloat>) {
    let mut h = Sha256::new();
    for v in values {
        h.update(v.to_string().as_bytes());
        h.update(b" ");
    }
    let hex = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let min = values.iter().copied().reduce(|a, b| if b.cmp_uncounted(&a).is_lt() { b } else { a });
    let max = values.iter().copied().reduce(|a, b| if b.cmp_uncounted(&a).is_gt() { b } else { a });
    (hex, min, max)
}

fn tokens(values: &[ExpFloat]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

pub fn scalar_json(v: ExpFloat) -> Value {
    json!({ "kind": "scalar", "value": v.to_string(), "approx_f64": v.to_f64() })
}

pub fn matrix_json(m: &WeightMatrix) -> Value {
    let n = m.n();
    if n <= MATRIX_DUMP_LIMIT {
        let rows: Vec<Vec<String>> = m.rows().map(tokens).collect();
        return json!({ "kind": "matrix", "n": n, "entries": rows });
    }
    let (sha, min, max) = digest(m.entries());
    json!({
        "kind": "matrix_digest",
        "n": n,
        "min": min.map(|x| x.to_string()),
        "max": max.map(|x| x.to_string()),
        "sha256": sha,
    })
}

pub fn sequence_json(s: &WeightSequence) -> Value {
    if s.len() <= SEQUENCE_DUMP_LIMIT {
        return json!({ "kind": "sequence", "n": s.len(), "entries": tokens(s) });
    }
    let (sha, min, max) = digest(s);
    json!({
        "kind": "sequence_digest",
        "n": s.len(),
        "min": min.map(|x| x.to_string()),
        "max": max.map(|x| x.to_string()),
        "sha256": sha,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Check {
    pub ok: bool,
    pub entries: usize,
    pub violations: usize,
    /// Smallest `approx / exact` over finite nonzero entries.
    pub min_ratio: Option<f64>,
}

/// Compares `approx` against `exact` entry-wise. An entry violates the
/// sandwich when its ratio leaves `[1, 1 + eps]` by more than `SLACK`, or
/// when exactly one of the two values is infinite or zero.
pub fn sandwich(approx: &[ExpFloat], exact: &[ExpFloat], eps: f64) -> (Check, f64) {
    let mut c = Check { entries: exact.len(), ..Check::default() };
    let mut max_err: f64 = 0.0;
    for (x, y) in approx.iter().zip(exact) {
        if y.is_infinite() || y.is_zero() || x.is_infinite() || x.is_zero() {
            if x.is_infinite() != y.is_infinite() || x.is_zero() != y.is_zero() {
                c.violations += 1;
                max_err = f64::INFINITY;
            }
            continue;
        }
        let r = x.ratio(*y);
        max_err = max_err.max(r - 1.0);
        c.min_ratio = Some(c.min_ratio.map_or(r, |m: f64| m.min(r)));
        if r < 1.0 - SLACK || r > (1.0 + eps) * (1.0 + SLACK) {
            c.violations += 1;
        }
    }
    c.violations += approx.len().abs_diff(exact.len());
    c.ok = c.violations == 0;
    (c, max_err)
}
