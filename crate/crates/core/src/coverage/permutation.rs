use std::fmt;

use crate::chain::ChainSpec;
use crate::coverage::instance::CoverageInstance;
use crate::error::{Error, Result};
use crate::submodular::{GroundSet, PartitionMatroid};

/// The agent at each chain position (zero-based agents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AgentOrder(Vec<usize>);

impl AgentOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &a in &order {
            if a >= n || std::mem::replace(&mut seen[a], true) {
                return Err(Error::domain(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Parses letters (`"DBHGFCAE"`, `A` is agent 0) or a comma-separated list
    /// of one-based agent numbers (`"4,2,8,..."`).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let order: Vec<usize> = if s.chars().all(|c| c.is_ascii_alphabetic()) {
            s.chars()
                .map(|c| (c.to_ascii_uppercase() as u8 - b'A') as usize)
                .collect()
        } else {
            s.split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::domain(format!("bad agent number {t:?} in {s:?}"))),
                })
                .collect::<Result<_>>()?
        };
        if order.len() != n {
            return Err(Error::domain(format!(
                "order {s:?} names {} agents, expected {n}",
                order.len()
            )));
        }
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn agent_at(&self, position: usize) -> usize {
        self.0[position]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (pos, &a) in self.0.iter().enumerate() {
            inv[a] = pos;
        }
        Self(inv)
    }

    /// Letter label for up to 26 agents, one-based numbers otherwise.
    pub fn label(&self) -> String {
        if self.len() <= 26 {
            self.0.iter().map(|&a| (b'A' + a as u8) as char).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| (a + 1).to_string()).collect();
            parts.join(",")
        }
    }
}

impl fmt::Display for AgentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Reorders blocks so that position `k` holds block `order[k]`. Elements
/// keep their tags, so the utility is unchanged.
pub fn permute_blocks(
    ground: &GroundSet,
    matroid: &PartitionMatroid,
    order: &AgentOrder,
) -> Result<(GroundSet, PartitionMatroid)> {
    matroid.check_ground(ground)?;
    if order.len() != ground.num_blocks() {
        return Err(Error::structure(format!(
            "order over {} agents for {} blocks",
            order.len(),
            ground.num_blocks()
        )));
    }
    let blocks = order.as_slice().iter().map(|&a| ground.block(a).to_vec()).collect();
    let caps = order.as_slice().iter().map(|&a| matroid.capacities()[a]).collect();
    let ground = GroundSet::new(blocks)?;
    let matroid = PartitionMatroid::for_ground(caps, &ground)?;
    Ok((ground, matroid))
}

/// Ground set and matroid of `instance` with agents arranged along `order`.
pub fn apply_permutation(instance: &CoverageInstance, order: &AgentOrder) -> Result<(GroundSet, PartitionMatroid)> {
    permute_blocks(&instance.ground(), &instance.matroid()?, order)
}

/// Chain whose edge `k` uses the broadcast probability and trial count of
/// the agent at position `k`. The last agent's values go unused.
pub fn chain_for_order(agent_probs: &[f64], agent_trials: &[u32], order: &AgentOrder) -> Result<ChainSpec> {
    let n = order.len();
    if agent_probs.len() != n || agent_trials.len() != n {
        return Err(Error::structure(format!(
            "{} probabilities and {} trial counts for {n} agents",
            agent_probs.len(),
            agent_trials.len()
        )));
    }
    let senders = &order.as_slice()[..n.saturating_sub(1)];
    ChainSpec::new(
        n,
        senders.iter().map(|&a| agent_probs[a]).collect(),
        senders.iter().map(|&a| agent_trials[a]).collect(),
    )
}
