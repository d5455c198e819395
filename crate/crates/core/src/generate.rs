//! Seeded random instances.
//!
//! Topology and weights come from two separate ChaCha streams of the same
//! seed, so changing the exponent range rescales the weights of an otherwise
//! identical instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apsp::Graph;
use crate::error::{Error, Result};
use crate::io::Instance;
use crate::numeric::ExpFloat;
use crate::weights::{WeightMatrix, WeightSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    DirectedGraph,
    UndirectedGraph,
    Matrix,
    Sequence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    /// Weights are `2^x` with `x` uniform in `[exp_lo, exp_hi]`.
    pub exp_lo: i64,
    pub exp_hi: i64,
    /// Edge probability for graphs, probability of a finite entry otherwise.
    pub density: f64,
    /// Adds a random spanning cycle to graphs.
    pub connected: bool,
    /// Number of blocks for matrices and sequences.
    pub blocks: usize,
}

impl GenParams {
    pub fn new(kind: GenKind, n: usize, exp_lo: i64, exp_hi: i64) -> GenParams {
        GenParams { kind, n, exp_lo, exp_hi, density: 1.0, connected: false, blocks: 2 }
    }
}

/// Weight `2^(lo + u (hi - lo))` for `u` uniform in `[0, 1)`.
pub fn random_weight(rng: &mut impl Rng, lo: i64, hi: i64) -> ExpFloat {
    let span = (hi - lo) as f64;
    let x = rng.gen::<f64>() * span;
    let e = x.floor();
    ExpFloat::new((x - e).exp2(), lo + e as i64)
}

pub fn generate_instance(p: &GenParams, seed: u64) -> Result<Vec<Instance>> {
    if p.exp_lo > p.exp_hi {
        return Err(Error::InvalidValue(format!("empty exponent range [{}, {}]", p.exp_lo, p.exp_hi)));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::InvalidValue(format!("density {} outside [0, 1]", p.density)));
    }
    let mut topo = ChaCha8Rng::seed_from_u64(seed);
    topo.set_stream(0);
    let mut wts = ChaCha8Rng::seed_from_u64(seed);
    wts.set_stream(1);
    let n = p.n;
    let mut weight = || random_weight(&mut wts, p.exp_lo, p.exp_hi);

    let out = match p.kind {
        GenKind::DirectedGraph | GenKind::UndirectedGraph => {
            let directed = p.kind == GenKind::DirectedGraph;
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && (directed || u < v) && topo.gen_bool(p.density) {
                        pairs.push((u, v));
                    }
                }
            }
            if p.connected && n >= 2 {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, topo.gen_range(0..=i));
                }
                for i in 0..n {
                    pairs.push((perm[i], perm[(i + 1) % n]));
                }
            }
            let edges: Vec<_> = pairs.into_iter().map(|(u, v)| (u, v, weight())).collect();
            vec![Instance::Graph(Graph::new(n, directed, edges)?)]
        }
        GenKind::Matrix | GenKind::Sequence => {
            let len = if p.kind == GenKind::Matrix { n * n } else { n };
            let mut blocks = Vec::with_capacity(p.blocks);
            for _ in 0..p.blocks {
                let finite: Vec<bool> = (0..len).map(|_| topo.gen_bool(p.density)).collect();
                let entries: Vec<ExpFloat> =
                    finite.into_iter().map(|f| if f { weight() } else { ExpFloat::INFINITY }).collect();
                blocks.push(if p.kind == GenKind::Matrix {
                    Instance::Matrix(WeightMatrix::new(n, entries)?)
                } else {
                    Instance::Sequence(WeightSequence::new(entries))
                });
            }
            blocks
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::print_instances;

    #[test]
    fn deterministic() {
        let p = GenParams { density: 0.4, connected: true, ..GenParams::new(GenKind::DirectedGraph, 12, 0, 30) };
        assert_eq!(print_instances(&generate_instance(&p, 9).unwrap()), print_instances(&generate_instance(&p, 9).unwrap()));
    }

    #[test]
    fn ranges_share_topology() {
        let lo = GenParams { density: 0.3, ..GenParams::new(GenKind::UndirectedGraph, 20, 0, 8) };
        let hi = GenParams { exp_hi: 512, ..lo.clone() };
        let (Instance::Graph(a), Instance::Graph(b)) =
            (&generate_instance(&lo, 4).unwrap()[0], &generate_instance(&hi, 4).unwrap()[0])
        else {
            panic!()
        };
        let ends = |g: &Graph| g.edges().iter().map(|&(u, v, _)| (u, v)).collect::<Vec<_>>();
        assert_eq!(ends(a), ends(b));
        assert!(b.edges().iter().any(|e| e.2.exponent() > 8));
    }

    #[test]
    fn complete_graph() {
        let p = GenParams::new(GenKind::UndirectedGraph, 4, 0, 0);
        let Instance::Graph(g) = &generate_instance(&p, 1).unwrap()[0] else { panic!() };
        assert_eq!(g.edges().len(), 6);
        assert!(generate_instance(&GenParams::new(GenKind::Matrix, 2, 3, 1), 0).is_err());
    }
}
