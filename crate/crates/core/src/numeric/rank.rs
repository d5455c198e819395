use super::expfloat::ExpFloat;

/// Order-preserving bijection between distinct finite values and `1..=k`,
/// with `k + 1` reserved for `+inf`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RankMap {
    values: Vec<ExpFloat>,
}

impl RankMap {
    /// Builds a map from values already sorted ascending and deduplicated.
    pub fn from_sorted(values: Vec<ExpFloat>) -> RankMap {
        debug_assert!(values.windows(2).all(|w| w[0].cmp_uncounted(&w[1]).is_lt()));
        debug_assert!(values.iter().all(|v| v.is_finite()));
        RankMap { values }
    }

    pub fn top(&self) -> u32 {
        self.values.len() as u32 + 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ExpFloat] {
        &self.values
    }

    pub fn rank(&self, x: ExpFloat) -> Option<u32> {
        if x.is_infinite() {
            return Some(self.top());
        }
        self.values.binary_search(&x).ok().map(|i| i as u32 + 1)
    }

    pub fn decode(&self, r: u32) -> ExpFloat {
        if r >= self.top() {
            ExpFloat::INFINITY
        } else {
            self.values[r as usize - 1]
        }
    }
}

/// Replaces values by their ranks among the distinct finite values.
pub fn rank_compress(values: &[ExpFloat]) -> (Vec<u32>, RankMap) {
    let mut order: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_finite()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut ranks = vec![0u32; values.len()];
    let mut distinct: Vec<ExpFloat> = Vec::new();
    for &i in &order {
        if distinct.last() != Some(&values[i]) {
            distinct.push(values[i]);
        }
        ranks[i] = distinct.len() as u32;
    }
    let top = distinct.len() as u32 + 1;
    for (r, v) in ranks.iter_mut().zip(values) {
        if v.is_infinite() {
            *r = top;
        }
    }
    (ranks, RankMap::from_sorted(distinct))
}
