use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strategy owned by one agent.
///
/// Two agents that can reach the same physical option still get distinct
/// elements, because the owning agent is part of the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundElement {
    /// Zero-based agent index.
    pub agent: usize,
    /// Index into that agent's local strategy set.
    pub local_id: usize,
}

impl GroundElement {
    pub fn new(agent: usize, local_id: usize) -> Self {
        Self { agent, local_id }
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.agent, self.local_id)
    }
}

/// The ground set split into per-agent blocks, in chain order.
///
/// Block `k` holds the strategies of the agent at chain position `k`. For an
/// unpermuted chain the agent tag equals the position; after a permutation the
/// tags keep naming the original agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    blocks: Vec<Vec<GroundElement>>,
}

impl GroundSet {
    /// Validates that every block belongs to a single agent, no agent owns two
    /// blocks, and no element appears twice. Each block is sorted by `local_id`.
    pub fn new(mut blocks: Vec<Vec<GroundElement>>) -> Result<Self> {
        let mut agents = HashSet::new();
        let mut seen = HashSet::new();
        for (pos, block) in blocks.iter_mut().enumerate() {
            block.sort();
            if let Some(first) = block.first() {
                if block.iter().any(|e| e.agent != first.agent) {
                    return Err(Error::structure(format!(
                        "block {pos} mixes elements of several agents"
                    )));
                }
                if !agents.insert(first.agent) {
                    return Err(Error::structure(format!(
                        "agent {} owns more than one block",
                        first.agent
                    )));
                }
            }
            for e in block.iter() {
                if !seen.insert(*e) {
                    return Err(Error::structure(format!("duplicate ground element {e}")));
                }
            }
        }
        Ok(Self { blocks })
    }

    /// Block `i` is `{(i, 0), .., (i, sizes[i] - 1)}`.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let blocks = sizes
            .iter()
            .enumerate()
            .map(|(agent, &size)| (0..size).map(|j| GroundElement::new(agent, j)).collect())
            .collect();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<GroundElement>] {
        &self.blocks
    }

    pub fn block(&self, position: usize) -> &[GroundElement] {
        &self.blocks[position]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundElement> {
        self.blocks.iter().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_sizes_tags_by_position() {
        let g = GroundSet::from_sizes(&[2, 0, 3]);
        assert_eq!(g.len(), 5);
        assert_eq!(g.block(2)[1], GroundElement::new(2, 1));
        assert!(g.block(1).is_empty());
    }

    #[test]
    fn rejects_duplicates_and_mixed_blocks() {
        let dup = GroundSet::new(vec![vec![GroundElement::new(0, 1), GroundElement::new(0, 1)]]);
        assert!(matches!(dup, Err(Error::Structure(_))));

        let mixed = GroundSet::new(vec![vec![GroundElement::new(0, 0), GroundElement::new(1, 0)]]);
        assert!(matches!(mixed, Err(Error::Structure(_))));

        let shared = GroundSet::new(vec![vec![GroundElement::new(0, 0)], vec![GroundElement::new(0, 1)]]);
        assert!(matches!(shared, Err(Error::Structure(_))));
    }

    #[test]
    fn blocks_are_sorted() {
        let g = GroundSet::new(vec![vec![GroundElement::new(3, 2), GroundElement::new(3, 0)]]).unwrap();
        assert_eq!(g.block(0)[0].local_id, 0);
    }
}
