//! Closed-form union-of-families estimate of `P(W >= l)`.
//!
//! For a run length `k = l - 1`, family `i` (one-based, `i = 1..=n-k`) forces
//! edges `i..i+k-1` to succeed and edge `i-1` to fail. The first
//! `min(k+1, n-k)` families are mutually exclusive and summed directly; each
//! later family `i` is weighted by `1 - Σ_{j<=i-k-1} P(family j)`. The sum in
//! that weight treats the earlier families as disjoint, so the result is only
//! exact while `n - k <= 2k + 2`. The run-length DP is the reference engine;
//! this one is kept for comparison.

use crate::chain::dp::check_clique_level;
use crate::chain::spec::{family_probability_unchecked, ChainSpec};
use crate::error::Result;

pub fn prob_clique_at_least_closed_form(chain: &ChainSpec, l: usize) -> Result<f64> {
    check_clique_level(chain, l)?;
    let k = l - 1;
    if k == 0 {
        return Ok(1.0);
    }
    let families = chain.num_edges() + 1 - k;
    let probs: Vec<f64> = (1..=families)
        .map(|i| {
            let connected: Vec<usize> = (i - 1..i - 1 + k).collect();
            let disconnected: Vec<usize> = if i > 1 { vec![i - 2] } else { vec![] };
            family_probability_unchecked(chain, &connected, &disconnected)
        })
        .collect();

    let leading = (k + 1).min(families);
    let mut total: f64 = probs[..leading].iter().sum();
    for i in k + 2..=families {
        let earlier: f64 = probs[..i - k - 1].iter().sum();
        total += probs[i - 1] * (1.0 - earlier);
    }
    Ok(total)
}
