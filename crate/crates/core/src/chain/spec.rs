use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1 - (1 - p0)^trials`: probability that at least one of `trials`
/// independent attempts succeeds.
pub fn effective_edge_prob(p0: f64, trials: u32) -> Result<f64> {
    check_prob(p0)?;
    if trials < 1 {
        return Err(Error::domain("trial count must be at least 1"));
    }
    Ok(at_least_one(p0, trials))
}

fn at_least_one(p0: f64, trials: u32) -> f64 {
    // a single trial keeps p0 bit-exact instead of 1 - (1 - p0)
    if trials == 1 {
        p0
    } else {
        1.0 - (1.0 - p0).powi(trials as i32)
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("probability {p} outside [0, 1]")))
    }
}

/// A directed chain of `n` agents. Edge `i` (zero-based) carries messages from
/// position `i` to position `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    n: usize,
    base_probs: Vec<f64>,
    trials: Vec<u32>,
}

impl ChainSpec {
    pub fn new(n: usize, base_probs: Vec<f64>, trials: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a chain needs at least one agent"));
        }
        if base_probs.len() != n - 1 || trials.len() != n - 1 {
            return Err(Error::structure(format!(
                "chain of {n} agents needs {} edge probabilities and trial counts, got {} and {}",
                n - 1,
                base_probs.len(),
                trials.len()
            )));
        }
        for &p in &base_probs {
            check_prob(p)?;
        }
        if trials.iter().any(|&t| t < 1) {
            return Err(Error::domain("every edge needs at least one trial"));
        }
        Ok(Self { n, base_probs, trials })
    }

    /// One trial per edge.
    pub fn single_trial(base_probs: Vec<f64>) -> Result<Self> {
        let m = base_probs.len();
        Self::new(m + 1, base_probs, vec![1; m])
    }

    /// Same probability `p` on every edge of an `n`-agent chain.
    pub fn homogeneous(n: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a chain needs at least one agent"));
        }
        Self::single_trial(vec![p; n - 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.n - 1
    }

    pub fn base_probs(&self) -> &[f64] {
        &self.base_probs
    }

    pub fn trials(&self) -> &[u32] {
        &self.trials
    }

    pub fn effective_prob(&self, edge: usize) -> f64 {
        at_least_one(self.base_probs[edge], self.trials[edge])
    }

    /// Probability that every trial on `edge` fails, `(1 - p0)^T`.
    pub fn failure_prob(&self, edge: usize) -> f64 {
        (1.0 - self.base_probs[edge]).powi(self.trials[edge] as i32)
    }

    pub fn effective_probs(&self) -> Vec<f64> {
        (0..self.num_edges()).map(|i| self.effective_prob(i)).collect()
    }

    /// Copy of this chain with `extra` more trials on `edge`.
    pub fn with_extra_trials(&self, edge: usize, extra: u32) -> Result<Self> {
        self.check_edge(edge)?;
        let mut out = self.clone();
        out.trials[edge] += extra;
        Ok(out)
    }

    pub(crate) fn check_edge(&self, edge: usize) -> Result<()> {
        if edge < self.num_edges() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "edge {edge} out of range for {} edges",
                self.num_edges()
            )))
        }
    }
}

/// A partial edge assignment: `connected` edges forced to succeed and
/// `disconnected` edges forced to fail. It stands for the event of all
/// outcomes consistent with it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenerativeSequence {
    connected: BTreeSet<usize>,
    disconnected: BTreeSet<usize>,
}

impl GenerativeSequence {
    pub fn new(
        connected: impl IntoIterator<Item = usize>,
        disconnected: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let connected: BTreeSet<usize> = connected.into_iter().collect();
        let disconnected: BTreeSet<usize> = disconnected.into_iter().collect();
        if let Some(e) = connected.intersection(&disconnected).next() {
            return Err(Error::domain(format!("edge {e} is both connected and disconnected")));
        }
        Ok(Self {
            connected,
            disconnected,
        })
    }

    pub fn connected(&self) -> &BTreeSet<usize> {
        &self.connected
    }

    pub fn disconnected(&self) -> &BTreeSet<usize> {
        &self.disconnected
    }
}

/// Probability of the family generated by `g`: `Π_C q_i · Π_D (1 - q_j)`
/// with `q` the effective edge probabilities.
pub fn family_probability(chain: &ChainSpec, g: &GenerativeSequence) -> Result<f64> {
    for &e in g.connected.iter().chain(&g.disconnected) {
        chain.check_edge(e)?;
    }
    Ok(family_probability_unchecked(chain, &g.connected, &g.disconnected))
}

pub(crate) fn family_probability_unchecked<'a>(
    chain: &ChainSpec,
    connected: impl IntoIterator<Item = &'a usize>,
    disconnected: impl IntoIterator<Item = &'a usize>,
) -> f64 {
    let succ: f64 = connected.into_iter().map(|&i| chain.effective_prob(i)).product();
    let fail: f64 = disconnected.into_iter().map(|&j| chain.failure_prob(j)).product();
    succ * fail
}
