use std::fmt;
use std::str::FromStr;

use crate::chain::spec::ChainSpec;
use crate::error::{Error, Result};

/// One realized success (`true`) or failure flag per chain edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeMask {
    bits: Vec<bool>,
}

impl OutcomeMask {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn all(len: usize, success: bool) -> Self {
        Self {
            bits: vec![success; len],
        }
    }

    /// Bit `i` of `index` becomes the flag of edge `i`.
    pub fn from_index(len: usize, index: u64) -> Self {
        Self {
            bits: (0..len).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, edge: usize) -> bool {
        self.bits[edge]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `Π_succ q_i · Π_fail (1 - q_i)` under the chain's effective probabilities.
    pub fn probability(&self, chain: &ChainSpec) -> Result<f64> {
        if self.len() != chain.num_edges() {
            return Err(Error::structure(format!(
                "mask has {} bits for {} edges",
                self.len(),
                chain.num_edges()
            )));
        }
        Ok(self
            .bits
            .iter()
            .enumerate()
            .map(|(i, &ok)| {
                if ok {
                    chain.effective_prob(i)
                } else {
                    chain.failure_prob(i)
                }
            })
            .product())
    }

    /// Clique number of the induced information graph.
    pub fn clique_number(&self) -> usize {
        clique_number(self)
    }
}

impl fmt::Display for OutcomeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for OutcomeMask {
    type Err = Error;

    /// Accepts `0`/`1` characters, optionally separated by commas or spaces.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' ' | '[' | ']'))
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("invalid mask character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Longest run of consecutive successes, plus one.
pub fn clique_number(mask: &OutcomeMask) -> usize {
    let mut longest = 0;
    let mut run = 0;
    for &b in &mask.bits {
        run = if b { run + 1 } else { 0 };
        longest = longest.max(run);
    }
    longest + 1
}

/// Worst-case greedy ratio `1 / (2 + n - w)` for a realized clique number `w`.
pub fn deterministic_gap_bound(n: usize, w: usize) -> Result<f64> {
    if w < 1 || w > n {
        return Err(Error::domain(format!("clique number {w} outside 1..={n}")));
    }
    Ok(1.0 / (2 + n - w) as f64)
}
