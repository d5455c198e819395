use super::bounded::{bounded_from_lists, BOUNDED_INF};
use super::check_lengths;
use crate::error::Result;
use crate::numeric::{count_cmp, count_mul, Eps, ExpFloat, SLACK};
use crate::weights::WeightSequence;

/// Finite positive entries with the exponents `e` for which `q = 2^e`
/// keeps them: `eps q / 16 <= x <= q`, widened by a relative `SLACK` at the
/// top so that rounding never drops an entry.
fn alive_ranges(v: &[ExpFloat], eps: f64) -> Vec<(i64, i64, usize, ExpFloat)> {
    let mut out: Vec<_> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_finite() && !x.is_zero())
        .map(|(i, &x)| {
            let last = x.mul_f64(16.0 / eps * (1.0 + SLACK)).exponent();
            (x.ceil_log2(), last, i, x)
        })
        .collect();
    out.sort_by_key(|t| (t.0, t.2));
    out
}

/// Upper bound on `C` that is within `1 + eps` wherever an optimal pair has
/// ratio inside `[eps/4, 4/eps]`.
///
/// For each power of two `q` at which both sides have entries in
/// `[eps q / 16, q]`, those entries are scaled to `ceil(4x / (eps q))` and
/// convolved exactly. Exponents where one side is empty are skipped.
pub fn close_minconv(a: &WeightSequence, b: &WeightSequence, eps: Eps) -> Result<WeightSequence> {
    check_lengths(a, b)?;
    let n = a.len();
    let e = eps.get();
    let m = (4.0 / e).ceil() as u64;
    let items = [alive_ranges(a, e), alive_ranges(b, e)];
    let mut next = [0usize; 2];
    let mut alive: [Vec<(i64, usize, ExpFloat)>; 2] = [Vec::new(), Vec::new()];
    let mut out = vec![ExpFloat::INFINITY; n];

    let Some(mut q) = items.iter().filter_map(|v| v.first().map(|t| t.0)).min() else {
        return Ok(WeightSequence::new(out));
    };
    loop {
        for s in 0..2 {
            while next[s] < items[s].len() && items[s][next[s]].0 <= q {
                let (_, last, i, x) = items[s][next[s]];
                alive[s].push((last, i, x));
                next[s] += 1;
            }
            alive[s].retain(|t| t.0 >= q);
        }
        if alive.iter().any(|v| v.is_empty()) {
            // Jump to the first exponent where every empty side gains an entry.
            let mut target = q;
            for s in 0..2 {
                if alive[s].is_empty() {
                    match items[s].get(next[s]) {
                        Some(t) => target = target.max(t.0),
                        None => return Ok(WeightSequence::new(out)),
                    }
                }
            }
            q = target;
            continue;
        }

        let scaled = |v: &[(i64, usize, ExpFloat)]| {
            let mut f: Vec<(usize, u64)> = v
                .iter()
                .map(|&(_, i, x)| {
                    let s = (x.shift(-q).to_f64() * 4.0 / e).ceil().max(1.0) as u64;
                    (i, s.min(m))
                })
                .collect();
            f.sort_unstable();
            f
        };
        let (fa, fb) = (scaled(&alive[0]), scaled(&alive[1]));
        count_mul((fa.len() + fb.len()) as u64);
        let v = bounded_from_lists(&fa, &fb, n, m);
        let mut updates = 0;
        for (o, &c) in out.iter_mut().zip(&v) {
            if c != BOUNDED_INF {
                updates += 1;
                let cand = ExpFloat::from_u64(c).mul_f64(e / 4.0).shift(q);
                if cand.cmp_uncounted(o).is_lt() {
                    *o = cand;
                }
            }
        }
        count_cmp(updates);
        q += 1;
    }
}
