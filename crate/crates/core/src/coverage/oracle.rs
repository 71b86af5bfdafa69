use crate::coverage::instance::CoverageInstance;
use crate::error::{Error, Result};
use crate::submodular::{GroundElement, UtilityOracle};

fn within(c: &[f64; 2], p: &[f64; 2], radius: f64) -> bool {
    let dx = c[0] - p[0];
    let dy = c[1] - p[1];
    (dx * dx + dy * dy).sqrt() <= radius
}

fn location_of(instance: &CoverageInstance, e: &GroundElement) -> Result<usize> {
    instance
        .agent_locations
        .get(e.agent)
        .and_then(|locs| locs.get(e.local_id))
        .copied()
        .ok_or_else(|| Error::domain(format!("element {e} is not part of the instance")))
}

/// Number of points within the closed coverage disk of at least one sensor
/// in `set`, computed straight from the geometry.
pub fn coverage_value(instance: &CoverageInstance, set: &[GroundElement]) -> Result<u64> {
    let sensors = set
        .iter()
        .map(|e| Ok((instance.locations[location_of(instance, e)?], instance.radius(e.agent))))
        .collect::<Result<Vec<_>>>()?;
    Ok(instance
        .points
        .iter()
        .filter(|p| sensors.iter().any(|(c, r)| within(c, p, *r)))
        .count() as u64)
}

/// Coverage utility backed by precomputed per-sensor footprints.
#[derive(Debug, Clone)]
pub struct CoverageOracle {
    /// `footprints[agent][local_id]` is a bitset over points.
    footprints: Vec<Vec<Vec<u64>>>,
    words: usize,
}

impl CoverageOracle {
    pub fn new(instance: &CoverageInstance) -> Self {
        let words = instance.points.len().div_ceil(64);
        let footprints = instance
            .agent_locations
            .iter()
            .enumerate()
            .map(|(agent, locs)| {
                let radius = instance.radius(agent);
                locs.iter()
                    .map(|&b| {
                        let c = instance.locations[b];
                        let mut bits = vec![0u64; words];
                        for (k, p) in instance.points.iter().enumerate() {
                            if within(&c, p, radius) {
                                bits[k / 64] |= 1 << (k % 64);
                            }
                        }
                        bits
                    })
                    .collect()
            })
            .collect();
        Self { footprints, words }
    }

    fn footprint(&self, e: &GroundElement) -> Result<&[u64]> {
        self.footprints
            .get(e.agent)
            .and_then(|f| f.get(e.local_id))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::domain(format!("element {e} is not part of the instance")))
    }

    pub fn covered_count(&self, set: &[GroundElement]) -> Result<u64> {
        let mut acc = vec![0u64; self.words];
        for e in set {
            for (a, b) in acc.iter_mut().zip(self.footprint(e)?) {
                *a |= b;
            }
        }
        Ok(acc.iter().map(|w| u64::from(w.count_ones())).sum())
    }
}

impl UtilityOracle for CoverageOracle {
    fn value(&self, set: &[GroundElement]) -> Result<f64> {
        Ok(self.covered_count(set)? as f64)
    }
}
