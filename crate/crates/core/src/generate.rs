//! Seeded random almost gentle pairs.
//!
//! At each vertex a random partial matching of incoming to outgoing arrows
//! is drawn; matched pairs are the nonzero compositions and every other
//! composable pair becomes a relation. Cycles of nonzero successors are then
//! broken by demoting one matched pair per cycle to a relation.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::emit_agq;
use crate::quiver::{AlmostGentlePair, BoundQuiverSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub loop_allowed: bool,
    /// Probability that an in/out pair offered to the matching is left as a
    /// relation instead.
    pub relation_density: Ratio<u32>,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 1,
            max_vertices: 8,
            max_arrows: 14,
            loop_allowed: true,
            relation_density: Ratio::new(1, 2),
        }
    }
}

impl GeneratorParams {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorParams { seed, ..Self::default() }
    }
}

/// A random almost gentle pair and its canonical `.agq` text.
pub fn random_ag_pair(params: &GeneratorParams) -> (AlmostGentlePair, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = rng.gen_range(1..=params.max_vertices.max(1));
    let m = if n == 1 && !params.loop_allowed { 0 } else { rng.gen_range(0..=params.max_arrows) };
    let mut arrows: Vec<(usize, usize)> = Vec::with_capacity(m);
    for _ in 0..m {
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n);
        while !params.loop_allowed && t == s {
            t = rng.gen_range(0..n);
        }
        arrows.push((s, t));
    }
    let (num, den) = (*params.relation_density.numer(), (*params.relation_density.denom()).max(1));
    let mut succ: Vec<Option<usize>> = vec![None; m];
    for v in 0..n {
        let ins: Vec<usize> = (0..m).filter(|&a| arrows[a].1 == v).collect();
        let mut outs: Vec<usize> = (0..m).filter(|&a| arrows[a].0 == v).collect();
        outs.shuffle(&mut rng);
        for a in ins {
            if outs.is_empty() {
                break;
            }
            if rng.gen_range(0..den) >= num {
                succ[a] = outs.pop();
            }
        }
    }
    break_cycles(&mut succ);
    let names: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
    let mut spec = BoundQuiverSpec::new(&format!("R{}", params.seed));
    for v in 0..n {
        spec = spec.vertex(&(v + 1).to_string());
    }
    for (i, &(s, t)) in arrows.iter().enumerate() {
        spec = spec.arrow(&names[i], &(s + 1).to_string(), &(t + 1).to_string());
    }
    for a in 0..m {
        for b in 0..m {
            if arrows[a].1 == arrows[b].0 && succ[a] != Some(b) {
                spec = spec.rel(&names[a], &names[b]);
            }
        }
    }
    let pair = spec.build().expect("generated pairs are almost gentle");
    let text = emit_agq(&pair);
    (pair, text)
}

/// Cuts the successor map wherever following it returns to a visited arrow.
fn break_cycles(succ: &mut [Option<usize>]) {
    let mut state = vec![0u8; succ.len()];
    for start in 0..succ.len() {
        let mut path = Vec::new();
        let mut a = start;
        while state[a] == 0 {
            state[a] = 1;
            path.push(a);
            match succ[a] {
                Some(b) if state[b] == 1 => {
                    succ[a] = None;
                    break;
                }
                Some(b) => a = b,
                None => break,
            }
        }
        for p in path {
            state[p] = 2;
        }
    }
}
