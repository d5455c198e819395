use super::expfloat::ExpFloat;
use super::ops;
use crate::error::{Error, Result};

/// Approximation parameter, validated to lie in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Eps(f64);

impl Eps {
    pub fn new(eps: f64) -> Result<Eps> {
        if eps.is_finite() && eps > 0.0 && eps <= 1.0 {
            Ok(Eps(eps))
        } else {
            Err(Error::InvalidEpsilon(eps))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `eps / k` for `k >= 1`.
    pub fn div(self, k: f64) -> Eps {
        debug_assert!(k >= 1.0);
        Eps(self.0 / k)
    }
}

/// Powers of `1 + eps` and the bucket index they induce.
///
/// `pow(d)` is accurate to a few ulps and strictly increasing in `d`, and
/// `bucket_index` is defined by comparisons against exactly these powers,
/// so the two always agree.
#[derive(Clone, Debug)]
pub struct Geometric {
    base: f64,
    log2_base: f64,
}

impl Geometric {
    pub fn new(eps: Eps) -> Geometric {
        let base = 1.0 + eps.get();
        Geometric { base, log2_base: eps.get().ln_1p() / std::f64::consts::LN_2 }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// `(1 + eps)^d`, counted as one multiplication.
    pub fn pow(&self, d: i64) -> ExpFloat {
        ops::count_mul(1);
        self.pow_uncounted(d)
    }

    pub(crate) fn pow_uncounted(&self, d: i64) -> ExpFloat {
        if d.unsigned_abs() <= 64 {
            let mut acc = ExpFloat::ONE;
            let mut b = ExpFloat::from_f64(self.base);
            let mut k = d.unsigned_abs();
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_raw(acc, b);
                }
                b = mul_raw(b, b);
                k >>= 1;
            }
            if d < 0 {
                recip_raw(acc)
            } else {
                acc
            }
        } else {
            let df = d as f64;
            let hi = df * self.log2_base;
            let lo = df.mul_add(self.log2_base, -hi);
            let mut k = hi.floor();
            let mut frac = (hi - k) + lo;
            if frac < 0.0 {
                frac += 1.0;
                k -= 1.0;
            } else if frac >= 1.0 {
                frac -= 1.0;
                k += 1.0;
            }
            ExpFloat::new(frac.exp2(), k as i64)
        }
    }

    /// The unique `d` with `(1+eps)^(d-1) <= x < (1+eps)^d`.
    pub fn bucket_index(&self, x: ExpFloat) -> Result<i64> {
        if x.is_infinite() || x.is_zero() {
            return Err(Error::InvalidValue(format!("bucket index of {x}")));
        }
        let est = (x.log2() / self.log2_base).floor();
        let mut d = if est.is_finite() { est as i64 + 1 } else { 1 };
        while self.pow(d - 1) > x {
            d -= 1;
        }
        while self.pow(d) <= x {
            d += 1;
        }
        Ok(d)
    }
}

fn mul_raw(a: ExpFloat, b: ExpFloat) -> ExpFloat {
    let m = a.mantissa() * b.mantissa();
    let (m, e) = if m >= 2.0 { (m * 0.5, 1) } else { (m, 0) };
    ExpFloat::new(m, a.exponent() + b.exponent() + e)
}

fn recip_raw(a: ExpFloat) -> ExpFloat {
    ExpFloat::new(1.0 / a.mantissa(), -a.exponent())
}

/// The unique `d` with `(1+eps)^(d-1) <= x < (1+eps)^d`.
pub fn bucket_index(x: ExpFloat, eps: Eps) -> Result<i64> {
    Geometric::new(eps).bucket_index(x)
}

/// `ceil(log2(1/eps))`, with exact powers of two mapping to their exponent.
pub fn ceil_log2_recip(eps: f64) -> u32 {
    let r = 1.0 / eps;
    let mut t = 0u32;
    while (2f64).powi(t as i32) < r * (1.0 - 1e-12) {
        t += 1;
    }
    t
}
