use rayon::prelude::*;

use crate::chain::spec::ChainSpec;
use crate::error::{Error, Result};

/// Largest number of edges enumerated by default (2^24 outcomes).
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

// The outcome space is split on the first few edges into a fixed number of
// subtrees, independent of the worker count, and the partial pmfs are added
// back in subtree order.
const SPLIT_EDGES: usize = 10;

pub(crate) fn check_cap(chain: &ChainSpec, cap_edges: usize) -> Result<()> {
    let m = chain.num_edges();
    if m > cap_edges {
        return Err(Error::CapExceeded {
            what: "outcome enumeration",
            size: 1u128 << m,
            cap: 1u128 << cap_edges,
        });
    }
    Ok(())
}

/// `pmf[w - 1]` accumulated over every outcome of the chain.
pub(crate) fn enumerate_pmf(chain: &ChainSpec, cap_edges: usize) -> Result<Vec<f64>> {
    check_cap(chain, cap_edges)?;
    let m = chain.num_edges();
    let succ = chain.effective_probs();
    let fail: Vec<f64> = (0..m).map(|i| chain.failure_prob(i)).collect();
    let split = m.min(SPLIT_EDGES);

    let partials: Vec<Vec<f64>> = (0..1u64 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut pmf = vec![0.0; chain.n()];
            let mut walk = Walk::default();
            for i in 0..split {
                walk = walk.step(prefix >> i & 1 == 1, succ[i], fail[i]);
            }
            descend(split, walk, &succ, &fail, &mut pmf);
            pmf
        })
        .collect();

    let mut pmf = vec![0.0; chain.n()];
    for part in &partials {
        for (acc, v) in pmf.iter_mut().zip(part) {
            *acc += v;
        }
    }
    Ok(pmf)
}

#[derive(Clone, Copy)]
struct Walk {
    prob: f64,
    run: usize,
    longest: usize,
}

impl Default for Walk {
    fn default() -> Self {
        Self {
            prob: 1.0,
            run: 0,
            longest: 0,
        }
    }
}

impl Walk {
    fn step(self, success: bool, q: f64, fail: f64) -> Self {
        if success {
            let run = self.run + 1;
            Self {
                prob: self.prob * q,
                run,
                longest: self.longest.max(run),
            }
        } else {
            Self {
                prob: self.prob * fail,
                run: 0,
                longest: self.longest,
            }
        }
    }
}

fn descend(edge: usize, walk: Walk, succ: &[f64], fail: &[f64], pmf: &mut [f64]) {
    if walk.prob == 0.0 {
        return;
    }
    if edge == succ.len() {
        pmf[walk.longest] += walk.prob;
        return;
    }
    descend(edge + 1, walk.step(false, succ[edge], fail[edge]), succ, fail, pmf);
    descend(edge + 1, walk.step(true, succ[edge], fail[edge]), succ, fail, pmf);
}
