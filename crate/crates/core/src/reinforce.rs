//! Allocation of extra transmission trials to chain edges.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{alpha_p, ChainSpec, Engine};
use crate::error::{Error, Result};

/// Gap of `chain` with one extra trial on `edge`.
pub fn evaluate_single_reinforcement(chain: &ChainSpec, edge: usize) -> Result<f64> {
    evaluate_single_reinforcement_with(chain, edge, Engine::Dp)
}

pub fn evaluate_single_reinforcement_with(chain: &ChainSpec, edge: usize, engine: Engine) -> Result<f64> {
    alpha_p(&chain.with_extra_trials(edge, 1)?, engine)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub baseline_alpha: f64,
    /// Gap with one extra trial on each edge in turn.
    pub per_edge_alpha: Vec<f64>,
    pub best_edge: usize,
    pub best_alpha: f64,
}

/// Index of the largest value; ties go to the lowest index.
fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

/// Tries one extra trial on every edge and reports the best.
pub fn sweep_single_reinforcement(chain: &ChainSpec) -> Result<SweepReport> {
    sweep_single_reinforcement_with(chain, Engine::Dp)
}

pub fn sweep_single_reinforcement_with(chain: &ChainSpec, engine: Engine) -> Result<SweepReport> {
    if chain.num_edges() == 0 {
        return Err(Error::domain("a chain needs at least two agents to reinforce"));
    }
    let baseline_alpha = alpha_p(chain, engine)?;
    let per_edge_alpha = (0..chain.num_edges())
        .into_par_iter()
        .map(|e| evaluate_single_reinforcement_with(chain, e, engine))
        .collect::<Result<Vec<f64>>>()?;
    let best_edge = argmax(&per_edge_alpha).expect("at least one edge");
    Ok(SweepReport {
        baseline_alpha,
        best_alpha: per_edge_alpha[best_edge],
        per_edge_alpha,
        best_edge,
    })
}

/// One round of the greedy allocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyRound {
    pub edge: usize,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReinforcementPlan {
    /// Additional trials per edge.
    pub extra_trials: Vec<u32>,
    pub budget: u32,
    pub baseline_alpha: f64,
    pub final_alpha: f64,
    pub rounds: Vec<GreedyRound>,
}

impl ReinforcementPlan {
    /// The chain with the plan's extra trials added.
    pub fn apply(&self, chain: &ChainSpec) -> Result<ChainSpec> {
        if self.extra_trials.len() != chain.num_edges() {
            return Err(Error::structure(format!(
                "plan covers {} edges, chain has {}",
                self.extra_trials.len(),
                chain.num_edges()
            )));
        }
        let trials = chain
            .trials()
            .iter()
            .zip(&self.extra_trials)
            .map(|(t, x)| t + x)
            .collect();
        ChainSpec::new(chain.n(), chain.base_probs().to_vec(), trials)
    }

    pub fn spent(&self) -> u32 {
        self.extra_trials.iter().sum()
    }
}

/// Spends `budget` extra trials one at a time, each on the edge that most
/// increases the gap given the trials already placed.
pub fn greedy_multi_reinforcement(chain: &ChainSpec, budget: u32) -> Result<ReinforcementPlan> {
    if budget < 1 {
        return Err(Error::domain("budget must be at least 1"));
    }
    let baseline_alpha = alpha_p(chain, Engine::Dp)?;
    let mut current = chain.clone();
    let mut extra = vec![0u32; chain.num_edges()];
    let mut rounds = Vec::with_capacity(budget as usize);
    let mut alpha = baseline_alpha;
    for _ in 0..budget {
        let sweep = sweep_single_reinforcement(&current)?;
        extra[sweep.best_edge] += 1;
        current = current.with_extra_trials(sweep.best_edge, 1)?;
        alpha = sweep.best_alpha;
        rounds.push(GreedyRound {
            edge: sweep.best_edge,
            alpha,
        });
    }
    Ok(ReinforcementPlan {
        extra_trials: extra,
        budget,
        baseline_alpha,
        final_alpha: alpha,
        rounds,
    })
}

/// Best allocation of exactly `budget` extra trials, by trying every
/// multiset of edges. Cost grows as `C(m + budget - 1, budget)`.
pub fn exhaustive_multi_reinforcement(chain: &ChainSpec, budget: u32) -> Result<ReinforcementPlan> {
    let m = chain.num_edges();
    if m == 0 {
        return Err(Error::domain("a chain needs at least two agents to reinforce"));
    }
    let baseline_alpha = alpha_p(chain, Engine::Dp)?;
    let mut best: Option<(Vec<u32>, f64)> = None;
    let mut alloc = vec![0u32; m];
    fn visit(
        edge: usize,
        left: u32,
        alloc: &mut Vec<u32>,
        chain: &ChainSpec,
        best: &mut Option<(Vec<u32>, f64)>,
    ) -> Result<()> {
        if edge + 1 == alloc.len() {
            alloc[edge] = left;
            let trials = chain.trials().iter().zip(alloc.iter()).map(|(t, x)| t + x).collect();
            let candidate = ChainSpec::new(chain.n(), chain.base_probs().to_vec(), trials)?;
            let a = alpha_p(&candidate, Engine::Dp)?;
            if best.as_ref().is_none_or(|(_, b)| a > *b) {
                *best = Some((alloc.clone(), a));
            }
            alloc[edge] = 0;
            return Ok(());
        }
        for x in (0..=left).rev() {
            alloc[edge] = x;
            visit(edge + 1, left - x, alloc, chain, best)?;
        }
        alloc[edge] = 0;
        Ok(())
    }
    visit(0, budget, &mut alloc, chain, &mut best)?;
    let (extra_trials, final_alpha) = best.expect("at least one allocation");
    Ok(ReinforcementPlan {
        extra_trials,
        budget,
        baseline_alpha,
        final_alpha,
        rounds: Vec::new(),
    })
}
