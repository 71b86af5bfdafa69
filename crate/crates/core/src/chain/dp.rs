use crate::chain::spec::ChainSpec;
use crate::error::{Error, Result};

pub(crate) fn check_clique_level(chain: &ChainSpec, l: usize) -> Result<()> {
    if l < 1 || l > chain.n() {
        return Err(Error::domain(format!("clique level {l} outside 1..={}", chain.n())));
    }
    Ok(())
}

/// `P(W >= l)` by a run-length dynamic program over the edges.
///
/// State after each edge: probability mass of every trailing success-run
/// length below `l - 1`, plus the absorbed mass of outcomes that already
/// contain a run of `l - 1`. O(n·l) time.
pub fn prob_clique_at_least_dp(chain: &ChainSpec, l: usize) -> Result<f64> {
    check_clique_level(chain, l)?;
    Ok(prob_run_at_least(chain, l - 1))
}

/// Probability that the chain has at least `k` consecutive successes.
pub(crate) fn prob_run_at_least(chain: &ChainSpec, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > chain.num_edges() {
        return 0.0;
    }
    let mut trailing = vec![0.0f64; k];
    trailing[0] = 1.0;
    let mut reached = 0.0;
    let mut next = vec![0.0f64; k];
    for edge in 0..chain.num_edges() {
        let q = chain.effective_prob(edge);
        let fail = chain.failure_prob(edge);
        next[0] = trailing.iter().sum::<f64>() * fail;
        next[1..].copy_from_slice(&trailing[..k - 1]);
        for v in &mut next[1..] {
            *v *= q;
        }
        reached += trailing[k - 1] * q;
        std::mem::swap(&mut trailing, &mut next);
    }
    reached
}
