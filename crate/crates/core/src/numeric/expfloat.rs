use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use super::ops;
use crate::error::Error;

const INF_EXP: i64 = i64::MAX;
const ZERO_EXP: i64 = i64::MIN;

/// Positive floating-point value with a 64-bit binary exponent and a 53-bit
/// mantissa in `[1, 2)`, extended by `+inf`.
///
/// A zero value exists for distance diagonals and contracted edges; parsed
/// weights are always at least 1.
#[derive(Clone, Copy, Debug)]
pub struct ExpFloat {
    exp: i64,
    mant: f64,
}

impl ExpFloat {
    pub const INFINITY: ExpFloat = ExpFloat { exp: INF_EXP, mant: 1.0 };
    pub const ZERO: ExpFloat = ExpFloat { exp: ZERO_EXP, mant: 1.0 };
    pub const ONE: ExpFloat = ExpFloat { exp: 0, mant: 1.0 };

    /// Builds `mant * 2^exp`, normalizing the mantissa into `[1, 2)`.
    ///
    /// Panics if `mant` is negative, zero, NaN or infinite.
    pub fn new(mant: f64, exp: i64) -> ExpFloat {
        assert!(mant.is_finite() && mant > 0.0, "mantissa must be positive and finite");
        let (m, e) = frexp(mant);
        ExpFloat::from_parts(m, exp as i128 + e as i128)
    }

    fn from_parts(mant: f64, exp: i128) -> ExpFloat {
        if exp >= INF_EXP as i128 {
            ExpFloat::INFINITY
        } else if exp <= ZERO_EXP as i128 {
            ExpFloat::ZERO
        } else {
            ExpFloat { exp: exp as i64, mant }
        }
    }

    /// Checked variant of [`ExpFloat::new`] that reports exponent overflow.
    pub fn try_new(mant: f64, exp: i64) -> Result<ExpFloat, Error> {
        if !(mant.is_finite() && mant > 0.0) {
            return Err(Error::InvalidValue(format!("mantissa {mant} is not positive")));
        }
        let (m, e) = frexp(mant);
        let full = exp as i128 + e as i128;
        if full >= INF_EXP as i128 || full <= ZERO_EXP as i128 {
            return Err(Error::ExponentOverflow);
        }
        Ok(ExpFloat { exp: full as i64, mant: m })
    }

    pub fn from_f64(x: f64) -> ExpFloat {
        if x == f64::INFINITY {
            ExpFloat::INFINITY
        } else if x == 0.0 {
            ExpFloat::ZERO
        } else {
            ExpFloat::new(x, 0)
        }
    }

    pub fn from_u64(x: u64) -> ExpFloat {
        if x == 0 {
            ExpFloat::ZERO
        } else {
            ExpFloat::new(x as f64, 0)
        }
    }

    pub fn pow2(e: i64) -> ExpFloat {
        ExpFloat::from_parts(1.0, e as i128)
    }

    pub fn exponent(self) -> i64 {
        self.exp
    }

    pub fn mantissa(self) -> f64 {
        self.mant
    }

    pub fn is_infinite(self) -> bool {
        self.exp == INF_EXP
    }

    pub fn is_zero(self) -> bool {
        self.exp == ZERO_EXP
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// Nearest `f64`; saturates to `inf` or `0` outside the `f64` range.
    pub fn to_f64(self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else if self.is_zero() {
            0.0
        } else if self.exp > 1023 {
            f64::INFINITY
        } else if self.exp < -1074 {
            0.0
        } else {
            ldexp(self.mant, self.exp as i32)
        }
    }

    /// Approximate base-2 logarithm (not counted as an arithmetic operation).
    pub fn log2(self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.exp as f64 + self.mant.log2()
        }
    }

    /// Smallest `e` with `2^e >= self`.
    pub fn ceil_log2(self) -> i64 {
        if self.mant == 1.0 {
            self.exp
        } else {
            self.exp + 1
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn shift(self, k: i64) -> ExpFloat {
        if self.is_infinite() || self.is_zero() {
            return self;
        }
        ExpFloat::from_parts(self.mant, self.exp as i128 + k as i128)
    }

    /// Correctly rounded sum; `+inf` absorbs.
    pub fn add(self, other: ExpFloat) -> ExpFloat {
        ops::count_add(1);
        add_uncounted(self, other)
    }

    /// Correctly rounded product; `inf` times a nonzero value is `inf`.
    pub fn mul(self, other: ExpFloat) -> ExpFloat {
        ops::count_mul(1);
        if self.is_zero() || other.is_zero() {
            return ExpFloat::ZERO;
        }
        if self.is_infinite() || other.is_infinite() {
            return ExpFloat::INFINITY;
        }
        let m = self.mant * other.mant;
        let (m, e) = if m >= 2.0 { (m * 0.5, 1) } else { (m, 0) };
        ExpFloat::from_parts(m, self.exp as i128 + other.exp as i128 + e)
    }

    /// Multiplies by a positive finite scalar.
    pub fn mul_f64(self, s: f64) -> ExpFloat {
        ops::count_mul(1);
        self.mul_f64_uncounted(s)
    }

    pub(crate) fn mul_f64_uncounted(self, s: f64) -> ExpFloat {
        debug_assert!(s.is_finite() && s > 0.0);
        if self.is_infinite() || self.is_zero() {
            return self;
        }
        let (sm, se) = frexp(s);
        let m = self.mant * sm;
        let (m, e) = if m >= 2.0 { (m * 0.5, 1) } else { (m, 0) };
        ExpFloat::from_parts(m, self.exp as i128 + se as i128 + e)
    }

    /// Divides by a positive finite scalar.
    pub fn div_f64(self, s: f64) -> ExpFloat {
        ops::count_mul(1);
        debug_assert!(s.is_finite() && s > 0.0);
        if self.is_infinite() || self.is_zero() {
            return self;
        }
        let (sm, se) = frexp(s);
        let m = self.mant / sm;
        let (m, e) = if m < 1.0 { (m * 2.0, -1) } else { (m, 0) };
        ExpFloat::from_parts(m, self.exp as i128 - se as i128 + e)
    }

    /// Divides by a positive finite `ExpFloat`.
    pub fn div(self, other: ExpFloat) -> ExpFloat {
        ops::count_mul(1);
        assert!(other.is_finite() && !other.is_zero(), "division by zero or infinity");
        if self.is_infinite() || self.is_zero() {
            return self;
        }
        let m = self.mant / other.mant;
        let (m, e) = if m < 1.0 { (m * 2.0, -1) } else { (m, 0) };
        ExpFloat::from_parts(m, self.exp as i128 - other.exp as i128 + e)
    }

    /// `self / other` as an `f64`, for error reporting.
    pub fn ratio(self, other: ExpFloat) -> f64 {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => 1.0,
            (true, false) => f64::INFINITY,
            (false, true) => 0.0,
            _ => {
                if self.is_zero() && other.is_zero() {
                    return 1.0;
                }
                if other.is_zero() {
                    return f64::INFINITY;
                }
                if self.is_zero() {
                    return 0.0;
                }
                let d = self.exp as i128 - other.exp as i128;
                let d = d.clamp(-2000, 2000) as i32;
                ldexp(self.mant / other.mant, d)
            }
        }
    }

    pub fn min(self, other: ExpFloat) -> ExpFloat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: ExpFloat) -> ExpFloat {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Sort key whose integer order equals the value order.
    pub fn key(self) -> (i64, u64) {
        (self.exp, self.mant.to_bits())
    }

    fn raw_cmp(&self, other: &ExpFloat) -> Ordering {
        self.exp
            .cmp(&other.exp)
            .then_with(|| self.mant.partial_cmp(&other.mant).unwrap_or(Ordering::Equal))
    }

    /// Comparison that bypasses the operation counter.
    pub fn cmp_uncounted(&self, other: &ExpFloat) -> Ordering {
        self.raw_cmp(other)
    }
}

pub(crate) fn add_uncounted(a: ExpFloat, b: ExpFloat) -> ExpFloat {
    if a.is_infinite() || b.is_infinite() {
        return ExpFloat::INFINITY;
    }
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let (hi, lo) = if a.exp >= b.exp { (a, b) } else { (b, a) };
    let gap = hi.exp as i128 - lo.exp as i128;
    if gap > 60 {
        return hi;
    }
    let m = hi.mant + ldexp(lo.mant, -(gap as i32));
    let (m, e) = if m >= 2.0 { (m * 0.5, 1) } else { (m, 0) };
    ExpFloat::from_parts(m, hi.exp as i128 + e)
}

impl PartialEq for ExpFloat {
    fn eq(&self, other: &ExpFloat) -> bool {
        self.exp == other.exp && self.mant == other.mant
    }
}

impl Eq for ExpFloat {}

impl PartialOrd for ExpFloat {
    fn partial_cmp(&self, other: &ExpFloat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpFloat {
    fn cmp(&self, other: &ExpFloat) -> Ordering {
        ops::count_cmp(1);
        self.raw_cmp(other)
    }
}

impl Hash for ExpFloat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exp.hash(state);
        self.mant.to_bits().hash(state);
    }
}

impl Default for ExpFloat {
    fn default() -> ExpFloat {
        ExpFloat::ONE
    }
}

impl fmt::Display for ExpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}p{}", self.mant, self.exp)
        }
    }
}

impl FromStr for ExpFloat {
    type Err = Error;

    /// Token grammar: `<decimal>p<int>`, a plain decimal, `inf`, or `0`.
    fn from_str(s: &str) -> Result<ExpFloat, Error> {
        let bad = || Error::InvalidValue(format!("malformed weight token `{s}`"));
        if s == "inf" {
            return Ok(ExpFloat::INFINITY);
        }
        let (mant_str, exp) = match s.split_once('p') {
            Some((m, e)) => {
                let e: i64 = e.parse().map_err(|_| {
                    if e.trim_start_matches(['+', '-']).chars().all(|c| c.is_ascii_digit())
                        && !e.is_empty()
                    {
                        Error::ExponentOverflow
                    } else {
                        bad()
                    }
                })?;
                (m, e)
            }
            None => (s, 0),
        };
        if mant_str.is_empty()
            || !mant_str.chars().all(|c| c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-')
            || mant_str.starts_with(['-', '+'])
        {
            return Err(bad());
        }
        let m: f64 = mant_str.parse().map_err(|_| bad())?;
        if !m.is_finite() {
            return Err(Error::ExponentOverflow);
        }
        if m == 0.0 {
            return Ok(ExpFloat::ZERO);
        }
        ExpFloat::try_new(m, exp)
    }
}

/// Splits a positive normal or subnormal `x` into `m * 2^e` with `m` in `[1, 2)`.
pub(crate) fn frexp(x: f64) -> (f64, i32) {
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i32;
    if raw == 0 {
        let (m, e) = frexp(x * (1u64 << 54) as f64);
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, raw - 1023)
}

/// `2^e` for `e` in the normal exponent range.
fn pow2i(e: i32) -> f64 {
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `m * 2^e` for `e` in a range where the result is a normal or subnormal double.
pub(crate) fn ldexp(m: f64, e: i32) -> f64 {
    let mut m = m;
    let mut e = e;
    while e > 1000 {
        m *= pow2i(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= pow2i(-1000);
        e += 1000;
    }
    m * pow2i(e)
}
