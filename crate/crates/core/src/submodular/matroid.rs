use crate::error::{Error, Result};
use crate::submodular::element::{GroundElement, GroundSet};

/// Per-block cardinality caps over an agent-partitioned ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    capacities: Vec<usize>,
    partition_sizes: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(capacities: Vec<usize>, partition_sizes: Vec<usize>) -> Result<Self> {
        if capacities.len() != partition_sizes.len() {
            return Err(Error::structure(format!(
                "{} capacities for {} partitions",
                capacities.len(),
                partition_sizes.len()
            )));
        }
        for (i, (&k, &size)) in capacities.iter().zip(&partition_sizes).enumerate() {
            if k > size {
                return Err(Error::domain(format!(
                    "capacity {k} of block {i} exceeds its size {size}"
                )));
            }
        }
        Ok(Self {
            capacities,
            partition_sizes,
        })
    }

    /// Matroid whose partition sizes are read off `ground`.
    pub fn for_ground(capacities: Vec<usize>, ground: &GroundSet) -> Result<Self> {
        Self::new(capacities, ground.sizes())
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn partition_sizes(&self) -> &[usize] {
        &self.partition_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.capacities.len()
    }

    /// Checks that `ground` has the block structure this matroid was built for.
    pub fn check_ground(&self, ground: &GroundSet) -> Result<()> {
        if ground.sizes() != self.partition_sizes {
            return Err(Error::structure(format!(
                "ground block sizes {:?} do not match matroid partition sizes {:?}",
                ground.sizes(),
                self.partition_sizes
            )));
        }
        Ok(())
    }

    /// True iff no block of `ground` contributes more than its capacity to
    /// `selection`. Elements outside `ground` make the selection dependent.
    pub fn is_independent(&self, ground: &GroundSet, selection: &[GroundElement]) -> bool {
        let mut counts = vec![0usize; self.num_blocks()];
        for e in selection {
            match ground.blocks().iter().position(|b| b.contains(e)) {
                Some(pos) => counts[pos] += 1,
                None => return false,
            }
        }
        counts.iter().zip(&self.capacities).all(|(c, k)| c <= k)
    }
}
