use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{alpha_p, ChainSpec, Engine, OutcomeMask};
use crate::coverage::instance::CoverageInstance;
use crate::coverage::oracle::CoverageOracle;
use crate::coverage::permutation::{apply_permutation, AgentOrder};
use crate::error::{Error, Result};
use crate::submodular::{brute_force_optimum_with_cap, decentralized_greedy, search_space_size, sequential_greedy};

/// Random agent orders tried when the optimum is out of reach.
pub const BEST_KNOWN_RESTARTS: usize = 200;

/// Instances with at most this many bases get their true optimum.
pub const EXACT_OPTIMUM_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimumKind {
    Exact,
    BestKnown,
}

impl OptimumKind {
    pub fn name(self) -> &'static str {
        match self {
            OptimumKind::Exact => "exact",
            OptimumKind::BestKnown => "best-known",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceOptimum {
    pub value: f64,
    pub kind: OptimumKind,
}

/// Largest full-communication greedy value over the identity order and
/// `restarts` random orders drawn from `seed`.
pub fn best_known_optimum(instance: &CoverageInstance, restarts: usize, seed: u64) -> Result<f64> {
    let oracle = CoverageOracle::new(instance);
    let n = instance.num_agents();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let mut orders = vec![AgentOrder::identity(n)];
    for _ in 0..restarts {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(&mut rng);
        orders.push(AgentOrder::new(o)?);
    }
    let values = orders
        .par_iter()
        .map(|order| {
            let (ground, matroid) = apply_permutation(instance, order)?;
            Ok(sequential_greedy(&oracle, &matroid, &ground)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// True optimum for small instances, best-known value otherwise.
pub fn reference_optimum(instance: &CoverageInstance, seed: u64) -> Result<ReferenceOptimum> {
    let matroid = instance.matroid()?;
    if search_space_size(&matroid) <= EXACT_OPTIMUM_CAP {
        let oracle = CoverageOracle::new(instance);
        let best = brute_force_optimum_with_cap(&oracle, &matroid, &instance.ground(), EXACT_OPTIMUM_CAP)?;
        return Ok(ReferenceOptimum {
            value: best.value,
            kind: OptimumKind::Exact,
        });
    }
    Ok(ReferenceOptimum {
        value: best_known_optimum(instance, BEST_KNOWN_RESTARTS, seed)?,
        kind: OptimumKind::BestKnown,
    })
}

/// Delivery outcome of iteration `iteration`, drawn from its own substream
/// of `seed` so that it does not depend on how iterations are scheduled.
pub fn sample_mask(chain: &ChainSpec, seed: u64, iteration: u64) -> OutcomeMask {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    OutcomeMask::new(
        (0..chain.num_edges())
            .map(|e| rng.random::<f64>() < chain.effective_prob(e))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub iterations: u64,
    pub mean_value: f64,
    /// Sample standard deviation of the per-iteration utility.
    pub std_dev: f64,
    /// `std_dev / sqrt(iterations)`.
    pub std_error: f64,
    pub optimum_value: f64,
    pub optimum_kind: OptimumKind,
    /// `mean_value / optimum_value`.
    pub empirical_gap: f64,
    /// Its standard error, `std_error / optimum_value`.
    pub gap_std_error: f64,
    pub alpha_p: f64,
    pub seed: u64,
}

/// Runs the decentralized greedy under random delivery outcomes and compares
/// the mean utility with the reference optimum.
pub fn monte_carlo(
    instance: &CoverageInstance,
    chain: &ChainSpec,
    order: &AgentOrder,
    iterations: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    let optimum = reference_optimum(instance, seed)?;
    monte_carlo_with_optimum(instance, chain, order, iterations, seed, optimum)
}

pub fn monte_carlo_with_optimum(
    instance: &CoverageInstance,
    chain: &ChainSpec,
    order: &AgentOrder,
    iterations: u64,
    seed: u64,
    optimum: ReferenceOptimum,
) -> Result<MonteCarloReport> {
    if iterations == 0 {
        return Err(Error::domain("need at least one iteration"));
    }
    if chain.n() != instance.num_agents() {
        return Err(Error::structure(format!(
            "chain of {} agents for an instance of {}",
            chain.n(),
            instance.num_agents()
        )));
    }
    let (ground, matroid) = apply_permutation(instance, order)?;
    let oracle = CoverageOracle::new(instance);
    let values = (0..iterations)
        .into_par_iter()
        .map(|it| {
            let mask = sample_mask(chain, seed, it);
            Ok(decentralized_greedy(&oracle, &matroid, &ground, &mask)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;

    let count = iterations as f64;
    let mean_value = values.iter().sum::<f64>() / count;
    let std_dev = if iterations > 1 {
        (values.iter().map(|v| (v - mean_value).powi(2)).sum::<f64>() / (count - 1.0)).sqrt()
    } else {
        0.0
    };
    let std_error = std_dev / count.sqrt();
    let (empirical_gap, gap_std_error) = if optimum.value > 0.0 {
        (mean_value / optimum.value, std_error / optimum.value)
    } else {
        (1.0, 0.0)
    };
    Ok(MonteCarloReport {
        iterations,
        mean_value,
        std_dev,
        std_error,
        optimum_value: optimum.value,
        optimum_kind: optimum.kind,
        empirical_gap,
        gap_std_error,
        alpha_p: alpha_p(chain, Engine::Dp)?,
        seed,
    })
}
