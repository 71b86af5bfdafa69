use std::fs;
use std::path::Path;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::submodular::{GroundSet, PartitionMatroid};

/// Generation parameters for the multi-sensor deployment benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InstanceParams {
    pub n: usize,
    pub num_locations: usize,
    pub locations_per_agent: usize,
    pub num_points: usize,
    pub kappa: usize,
    /// Sensor radii are drawn uniformly from `[lo, hi]`, one per agent.
    pub radius_range: [f64; 2],
    /// Points and locations are uniform over `[0, width] x [0, height]`.
    pub area: [f64; 2],
}

impl Default for InstanceParams {
    /// 8 agents, 25 locations with 12 reachable per agent, 2 sensors each and
    /// 2200 sample points on a 100 x 100 field.
    fn default() -> Self {
        Self {
            n: 8,
            num_locations: 25,
            locations_per_agent: 12,
            num_points: 2200,
            kappa: 2,
            radius_range: [10.0, 18.0],
            area: [100.0, 100.0],
        }
    }
}

/// A serialized benchmark instance. Shared instances re-run bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageInstance {
    pub seed: u64,
    pub points: Vec<[f64; 2]>,
    pub locations: Vec<[f64; 2]>,
    /// `agent_locations[i]` lists the locations agent `i` may use; local id
    /// `j` of agent `i` is location `agent_locations[i][j]`.
    pub agent_locations: Vec<Vec<usize>>,
    /// Coverage radius per agent and sensor slot. All slots of one agent
    /// must currently share a radius.
    pub radii: Vec<Vec<f64>>,
    pub kappas: Vec<usize>,
}

impl CoverageInstance {
    pub fn num_agents(&self) -> usize {
        self.agent_locations.len()
    }

    /// Radius used by every sensor of `agent`.
    pub fn radius(&self, agent: usize) -> f64 {
        self.radii[agent][0]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_agents();
        if n == 0 {
            return Err(Error::domain("instance has no agents"));
        }
        if self.radii.len() != n || self.kappas.len() != n {
            return Err(Error::structure(format!(
                "{n} agents but {} radius rows and {} capacities",
                self.radii.len(),
                self.kappas.len()
            )));
        }
        for (i, locs) in self.agent_locations.iter().enumerate() {
            if let Some(bad) = locs.iter().find(|&&b| b >= self.locations.len()) {
                return Err(Error::domain(format!(
                    "agent {i} references location {bad} of {}",
                    self.locations.len()
                )));
            }
            let mut sorted = locs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != locs.len() {
                return Err(Error::structure(format!("agent {i} lists a location twice")));
            }
            if self.kappas[i] > locs.len() {
                return Err(Error::domain(format!(
                    "agent {i} must place {} sensors on {} locations",
                    self.kappas[i],
                    locs.len()
                )));
            }
            let radii = &self.radii[i];
            if radii.is_empty() || radii.iter().any(|r| !r.is_finite() || *r <= 0.0) {
                return Err(Error::domain(format!("agent {i} needs strictly positive radii")));
            }
            if self.kappas[i] > 0 && radii.len() != self.kappas[i] {
                return Err(Error::structure(format!(
                    "agent {i} has {} radii for {} sensors",
                    radii.len(),
                    self.kappas[i]
                )));
            }
            if radii.iter().any(|r| *r != radii[0]) {
                return Err(Error::domain(format!(
                    "agent {i} has differing per-sensor radii, which is not supported"
                )));
            }
        }
        let finite = |c: &[f64; 2]| c.iter().all(|v| v.is_finite());
        if !self.points.iter().chain(&self.locations).all(finite) {
            return Err(Error::domain("coordinates must be finite"));
        }
        Ok(())
    }

    /// Block `i` holds `(i, j)` for every local location `j` of agent `i`.
    pub fn ground(&self) -> GroundSet {
        let sizes: Vec<usize> = self.agent_locations.iter().map(Vec::len).collect();
        GroundSet::from_sizes(&sizes)
    }

    pub fn matroid(&self) -> Result<PartitionMatroid> {
        PartitionMatroid::new(self.kappas.clone(), self.agent_locations.iter().map(Vec::len).collect())
    }

    /// Per-agent broadcast success probabilities drawn i.i.d. from
    /// `U[0.3, 0.9]` on a stream derived from the instance seed.
    pub fn default_agent_probs(&self) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1);
        (0..self.num_agents()).map(|_| rng.random_range(0.3..=0.9)).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Self = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

/// Samples a benchmark instance; identical `params` and `seed` give an
/// identical instance.
pub fn generate_instance(params: &InstanceParams, seed: u64) -> Result<CoverageInstance> {
    let InstanceParams {
        n,
        num_locations,
        locations_per_agent,
        num_points,
        kappa,
        radius_range: [r_lo, r_hi],
        area: [width, height],
    } = *params;
    if n == 0 {
        return Err(Error::domain("need at least one agent"));
    }
    if locations_per_agent > num_locations {
        return Err(Error::domain(format!(
            "{locations_per_agent} locations per agent but only {num_locations} exist"
        )));
    }
    if kappa > locations_per_agent {
        return Err(Error::domain(format!(
            "kappa {kappa} exceeds {locations_per_agent} locations per agent"
        )));
    }
    if !(r_lo > 0.0 && r_lo <= r_hi && r_hi.is_finite()) {
        return Err(Error::domain(format!(
            "radius range [{r_lo}, {r_hi}] must be positive and ordered"
        )));
    }
    if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
        return Err(Error::domain("area must have positive finite sides"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = |rng: &mut ChaCha8Rng| [rng.random_range(0.0..=width), rng.random_range(0.0..=height)];
    let points: Vec<[f64; 2]> = (0..num_points).map(|_| coord(&mut rng)).collect();
    let locations: Vec<[f64; 2]> = (0..num_locations).map(|_| coord(&mut rng)).collect();
    let agent_locations: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut picks = index::sample(&mut rng, num_locations, locations_per_agent).into_vec();
            picks.sort_unstable();
            picks
        })
        .collect();
    let radii: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.random_range(r_lo..=r_hi); kappa.max(1)])
        .collect();

    let inst = CoverageInstance {
        seed,
        points,
        locations,
        agent_locations,
        radii,
        kappas: vec![kappa; n],
    };
    inst.validate()?;
    Ok(inst)
}
