use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::closed_form::prob_clique_at_least_closed_form;
use crate::chain::dp::prob_run_at_least;
use crate::chain::enumerate::{enumerate_pmf, DEFAULT_ENUMERATION_CAP};
use crate::chain::spec::ChainSpec;
use crate::error::{Error, Result};

/// Which computation produces the clique-number distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Run-length dynamic program; the reference engine.
    #[default]
    Dp,
    /// Closed-form sum over generating families.
    ClosedForm,
    /// Brute force over all `2^(n-1)` outcomes.
    Enumerate,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Dp, Engine::ClosedForm, Engine::Enumerate];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::ClosedForm => "paper",
            Engine::Enumerate => "enumerate",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Engine::Dp),
            "paper" | "closed-form" => Ok(Engine::ClosedForm),
            "enumerate" => Ok(Engine::Enumerate),
            other => Err(Error::domain(format!(
                "unknown engine {other:?} (expected dp, paper or enumerate)"
            ))),
        }
    }
}

/// Probability mass of the information-graph clique number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueDistribution {
    /// `pmf[l - 1] = P(W = l)` for `l = 1..=n`.
    pub pmf: Vec<f64>,
    pub engine: Engine,
}

impl CliqueDistribution {
    pub fn n(&self) -> usize {
        self.pmf.len()
    }

    /// `P(W = l)`; zero outside `1..=n`.
    pub fn prob(&self, l: usize) -> f64 {
        if l >= 1 && l <= self.n() {
            self.pmf[l - 1]
        } else {
            0.0
        }
    }

    /// `P(W >= l)` as the tail sum of the pmf.
    pub fn at_least(&self, l: usize) -> f64 {
        self.pmf.iter().skip(l.saturating_sub(1)).sum()
    }

    pub fn total(&self) -> f64 {
        self.pmf.iter().sum()
    }

    /// `Σ_l P(W = l) / (2 + n - l)`.
    pub fn alpha_p(&self) -> f64 {
        alpha_from_pmf(&self.pmf)
    }
}

/// Gap weight of clique number `l` in an `n`-agent chain.
pub fn gap_weight(n: usize, l: usize) -> f64 {
    1.0 / (2 + n - l) as f64
}

pub fn alpha_from_pmf(pmf: &[f64]) -> f64 {
    let n = pmf.len();
    pmf.iter().enumerate().map(|(i, p)| p * gap_weight(n, i + 1)).sum()
}

pub fn clique_distribution(chain: &ChainSpec, engine: Engine) -> Result<CliqueDistribution> {
    clique_distribution_with_cap(chain, engine, DEFAULT_ENUMERATION_CAP)
}

/// Like [`clique_distribution`], with an explicit edge cap for the
/// enumeration engine.
///
/// The dp engine clamps differences of tail probabilities at zero; the
/// closed-form engine reports them unclamped so its deviations stay visible.
pub fn clique_distribution_with_cap(chain: &ChainSpec, engine: Engine, cap_edges: usize) -> Result<CliqueDistribution> {
    let n = chain.n();
    let pmf = match engine {
        Engine::Enumerate => enumerate_pmf(chain, cap_edges)?,
        Engine::Dp => {
            let tails: Vec<f64> = (1..=n + 1).map(|l| prob_run_at_least(chain, l - 1)).collect();
            tails.windows(2).map(|w| (w[0] - w[1]).max(0.0)).collect()
        }
        Engine::ClosedForm => {
            let mut tails = (1..=n)
                .map(|l| prob_clique_at_least_closed_form(chain, l))
                .collect::<Result<Vec<f64>>>()?;
            tails.push(0.0);
            tails.windows(2).map(|w| w[0] - w[1]).collect()
        }
    };
    Ok(CliqueDistribution { pmf, engine })
}

/// Brute-force distribution over every outcome mask.
pub fn enumerate_outcomes(chain: &ChainSpec) -> Result<CliqueDistribution> {
    clique_distribution(chain, Engine::Enumerate)
}

/// Probabilistic optimality gap of the chain under `engine`.
pub fn alpha_p(chain: &ChainSpec, engine: Engine) -> Result<f64> {
    Ok(clique_distribution(chain, engine)?.alpha_p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn three_agent_half_chain() {
        let chain = ChainSpec::homogeneous(3, 0.5).unwrap();
        for engine in Engine::ALL {
            let d = clique_distribution(&chain, engine).unwrap();
            assert_eq!(d.pmf, vec![0.25, 0.5, 0.25], "{engine}");
            assert_abs_diff_eq!(d.alpha_p(), 0.25 / 4.0 + 0.5 / 3.0 + 0.25 / 2.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(alpha_p(&chain, Engine::Dp).unwrap(), 0.354167, epsilon = 1e-6);
    }

    #[test]
    fn degenerate_chains() {
        for engine in Engine::ALL {
            let zero = clique_distribution(&ChainSpec::homogeneous(5, 0.0).unwrap(), engine).unwrap();
            assert_eq!(zero.pmf, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
            assert_eq!(zero.alpha_p(), 1.0 / 6.0);
            let one = clique_distribution(&ChainSpec::homogeneous(5, 1.0).unwrap(), engine).unwrap();
            assert_eq!(one.pmf, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
            assert_eq!(one.alpha_p(), 0.5);
        }
    }

    #[test]
    fn two_agents() {
        let d = enumerate_outcomes(&ChainSpec::single_trial(vec![0.3]).unwrap()).unwrap();
        assert_abs_diff_eq!(d.pmf[0], 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(d.pmf[1], 0.3, epsilon = 1e-15);
    }

    #[test]
    fn single_agent_chain() {
        let chain = ChainSpec::new(1, vec![], vec![]).unwrap();
        for engine in Engine::ALL {
            let d = clique_distribution(&chain, engine).unwrap();
            assert_eq!(d.pmf, vec![1.0]);
            assert_eq!(d.alpha_p(), 0.5);
        }
    }

    #[test]
    fn at_least_is_tail_sum() {
        let d = CliqueDistribution {
            pmf: vec![0.25, 0.5, 0.25],
            engine: Engine::Dp,
        };
        assert_eq!(d.at_least(1), 1.0);
        assert_eq!(d.at_least(2), 0.75);
        assert_eq!(d.at_least(4), 0.0);
        assert_eq!(d.prob(0), 0.0);
    }

    #[test]
    fn engine_names_round_trip() {
        for e in Engine::ALL {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
        assert_eq!("closed-form".parse::<Engine>().unwrap(), Engine::ClosedForm);
        assert!("mc".parse::<Engine>().is_err());
    }
}
