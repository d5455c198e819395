//! Number-theoretic transform over `Z/998244353`.

use crate::numeric::count_mul;

pub const MOD: u64 = 998_244_353;
const ROOT: u64 = 3;
/// Largest supported transform length.
pub const MAX_LEN: usize = 1 << 23;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % MOD;
        }
        b = b * b % MOD;
        e >>= 1;
    }
    r
}

fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (MOD - 1) / len as u64);
        if invert {
            w = pow_mod(w, MOD - 2);
        }
        let half = len / 2;
        let mut ws = Vec::with_capacity(half);
        let mut cur = 1u64;
        for _ in 0..half {
            ws.push(cur);
            cur = cur * w % MOD;
        }
        for block in a.chunks_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &wk) in lo.iter_mut().zip(hi.iter_mut()).zip(&ws) {
                let x = *u;
                let y = *v * wk % MOD;
                *u = if x + y >= MOD { x + y - MOD } else { x + y };
                *v = if x >= y { x - y } else { x + MOD - y };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, MOD - 2);
        for x in a.iter_mut() {
            *x = *x * inv % MOD;
        }
    }
    count_mul((n as u64) * (n.trailing_zeros() as u64 + 1) / 2);
}

/// Cyclic-free product of two integer polynomials with coefficients below `MOD`.
///
/// Exact as long as every output coefficient is below `MOD`.
pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    assert!(n <= MAX_LEN, "transform length {n} exceeds the supported maximum");
    let mut fa = a.to_vec();
    fa.resize(n, 0);
    let mut fb = b.to_vec();
    fb.resize(n, 0);
    transform(&mut fa, false);
    transform(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MOD;
    }
    transform(&mut fa, true);
    fa.truncate(out_len);
    fa
}
