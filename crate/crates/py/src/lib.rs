//! Python bindings. Agents and edges are 0-based, as in the Rust library.

use chaingreedy::chain::{self, Engine, OutcomeMask};
use chaingreedy::coverage::{self, AgentOrder, InstanceParams};
use chaingreedy::reinforce;
use chaingreedy::submodular::{self, GroundElement, GroundSet, ModularOracle, PartitionMatroid, UtilityOracle};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: chaingreedy::Error) -> PyErr {
    match e {
        chaingreedy::Error::CapExceeded { .. } | chaingreedy::Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn engine(name: &str) -> PyResult<Engine> {
    name.parse().map_err(py_err)
}

fn mask(bits: Vec<bool>) -> OutcomeMask {
    OutcomeMask::new(bits)
}

/// A line network of `n` agents with one success probability and trial
/// count per edge.
#[pyclass(name = "ChainSpec", module = "chaingreedy", frozen)]
struct PyChainSpec {
    inner: chain::ChainSpec,
}

#[pymethods]
impl PyChainSpec {
    #[new]
    #[pyo3(signature = (base_probs, trials = None))]
    fn new(base_probs: Vec<f64>, trials: Option<Vec<u32>>) -> PyResult<Self> {
        let n = base_probs.len() + 1;
        let trials = trials.unwrap_or_else(|| vec![1; base_probs.len()]);
        Ok(Self {
            inner: chain::ChainSpec::new(n, base_probs, trials).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn homogeneous(n: usize, p: f64) -> PyResult<Self> {
        Ok(Self {
            inner: chain::ChainSpec::homogeneous(n, p).map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    #[getter]
    fn base_probs(&self) -> Vec<f64> {
        self.inner.base_probs().to_vec()
    }

    #[getter]
    fn trials(&self) -> Vec<u32> {
        self.inner.trials().to_vec()
    }

    fn effective_probs(&self) -> Vec<f64> {
        self.inner.effective_probs()
    }

    fn with_extra_trials(&self, edge: usize, extra: u32) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.with_extra_trials(edge, extra).map_err(py_err)?,
        })
    }

    /// `pmf[l - 1] = P(W = l)` for `l = 1..=n`.
    #[pyo3(signature = (engine = "dp"))]
    fn clique_distribution(&self, engine: &str) -> PyResult<Vec<f64>> {
        Ok(chain::clique_distribution(&self.inner, self::engine(engine)?)
            .map_err(py_err)?
            .pmf)
    }

    #[pyo3(signature = (engine = "dp"))]
    fn alpha_p(&self, engine: &str) -> PyResult<f64> {
        chain::alpha_p(&self.inner, self::engine(engine)?).map_err(py_err)
    }

    /// Probability of one outcome mask.
    fn mask_probability(&self, bits: Vec<bool>) -> PyResult<f64> {
        mask(bits).probability(&self.inner).map_err(py_err)
    }

    /// `(baseline, per_edge, best_edge, best)` for one extra trial per edge.
    #[pyo3(signature = (engine = "dp"))]
    fn sweep(&self, engine: &str) -> PyResult<(f64, Vec<f64>, usize, f64)> {
        let r = reinforce::sweep_single_reinforcement_with(&self.inner, self::engine(engine)?).map_err(py_err)?;
        Ok((r.baseline_alpha, r.per_edge_alpha, r.best_edge, r.best_alpha))
    }

    /// `(extra_trials, edges_in_pick_order, final_alpha)`.
    fn greedy_reinforcement(&self, budget: u32) -> PyResult<(Vec<u32>, Vec<usize>, f64)> {
        let plan = reinforce::greedy_multi_reinforcement(&self.inner, budget).map_err(py_err)?;
        Ok((
            plan.extra_trials,
            plan.rounds.iter().map(|r| r.edge).collect(),
            plan.final_alpha,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "ChainSpec(base_probs={:?}, trials={:?})",
            self.inner.base_probs(),
            self.inner.trials()
        )
    }
}

/// Result of a greedy run: picks per chain position as `(agent, local_id)`.
#[pyclass(name = "Selection", module = "chaingreedy", frozen, get_all)]
struct PySelection {
    per_agent: Vec<Vec<(usize, usize)>>,
    value: f64,
    oracle_calls: u64,
}

impl From<submodular::SelectionResult> for PySelection {
    fn from(r: submodular::SelectionResult) -> Self {
        Self {
            per_agent: r
                .per_agent
                .iter()
                .map(|picks| picks.iter().map(|e| (e.agent, e.local_id)).collect())
                .collect(),
            value: r.value,
            oracle_calls: r.oracle_calls,
        }
    }
}

#[pymethods]
impl PySelection {
    fn __repr__(&self) -> String {
        format!("Selection(value={}, per_agent={:?})", self.value, self.per_agent)
    }
}

fn run_greedy<O: UtilityOracle>(
    oracle: &O,
    matroid: &PartitionMatroid,
    ground: &GroundSet,
    bits: Option<Vec<bool>>,
) -> PyResult<PySelection> {
    let result = match bits {
        None => submodular::sequential_greedy(oracle, matroid, ground),
        Some(bits) => submodular::decentralized_greedy(oracle, matroid, ground, &mask(bits)),
    };
    Ok(result.map_err(py_err)?.into())
}

/// Greedy on an additive utility: `weights[i][j]` is element `j` of agent
/// `i`. With a mask the decentralized variant runs, otherwise the
/// sequential one.
#[pyfunction]
#[pyo3(signature = (weights, capacities, mask = None))]
fn greedy_modular(weights: Vec<Vec<f64>>, capacities: Vec<usize>, mask: Option<Vec<bool>>) -> PyResult<PySelection> {
    let oracle = ModularOracle::from_blocks(&weights).map_err(py_err)?;
    let ground = GroundSet::from_sizes(&weights.iter().map(Vec::len).collect::<Vec<_>>());
    let matroid = PartitionMatroid::for_ground(capacities, &ground).map_err(py_err)?;
    run_greedy(&oracle, &matroid, &ground, mask)
}

/// Monte Carlo summary for one agent order.
#[pyclass(name = "MonteCarloReport", module = "chaingreedy", frozen, get_all)]
struct PyMonteCarloReport {
    iterations: u64,
    mean_value: f64,
    std_error: f64,
    optimum_value: f64,
    optimum_kind: String,
    empirical_gap: f64,
    gap_std_error: f64,
    alpha_p: f64,
}

#[pymethods]
impl PyMonteCarloReport {
    fn __repr__(&self) -> String {
        format!(
            "MonteCarloReport(mean_value={}, empirical_gap={}, alpha_p={})",
            self.mean_value, self.empirical_gap, self.alpha_p
        )
    }
}

/// Planar sensor-coverage instance.
#[pyclass(name = "CoverageInstance", module = "chaingreedy", frozen)]
struct PyCoverageInstance {
    inner: coverage::CoverageInstance,
}

impl PyCoverageInstance {
    fn order(&self, order: Option<&str>) -> PyResult<AgentOrder> {
        let n = self.inner.num_agents();
        match order {
            None => Ok(AgentOrder::identity(n)),
            Some(s) => AgentOrder::parse(s, n).map_err(py_err),
        }
    }
}

#[pymethods]
impl PyCoverageInstance {
    #[staticmethod]
    #[pyo3(signature = (seed, n = 8, num_locations = 25, locations_per_agent = 12, num_points = 2200, kappa = 2,
                        radius_range = (10.0, 18.0), area = (100.0, 100.0)))]
    #[allow(clippy::too_many_arguments)]
    fn generate(
        seed: u64,
        n: usize,
        num_locations: usize,
        locations_per_agent: usize,
        num_points: usize,
        kappa: usize,
        radius_range: (f64, f64),
        area: (f64, f64),
    ) -> PyResult<Self> {
        let params = InstanceParams {
            n,
            num_locations,
            locations_per_agent,
            num_points,
            kappa,
            radius_range: [radius_range.0, radius_range.1],
            area: [area.0, area.1],
        };
        Ok(Self {
            inner: coverage::generate_instance(&params, seed).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: coverage::CoverageInstance::from_json(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(py_err)
    }

    #[getter]
    fn num_agents(&self) -> usize {
        self.inner.num_agents()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    fn default_agent_probs(&self) -> Vec<f64> {
        self.inner.default_agent_probs()
    }

    /// Number of points covered by `(agent, local_id)` picks.
    fn coverage(&self, picks: Vec<(usize, usize)>) -> PyResult<u64> {
        let picks: Vec<GroundElement> = picks.into_iter().map(|(a, j)| GroundElement::new(a, j)).collect();
        coverage::coverage_value(&self.inner, &picks).map_err(py_err)
    }

    /// Sequential greedy, or the decentralized one when a mask is given.
    #[pyo3(signature = (mask = None, order = None))]
    fn greedy(&self, mask: Option<Vec<bool>>, order: Option<&str>) -> PyResult<PySelection> {
        let (ground, matroid) = coverage::apply_permutation(&self.inner, &self.order(order)?).map_err(py_err)?;
        run_greedy(&coverage::CoverageOracle::new(&self.inner), &matroid, &ground, mask)
    }

    /// `(value, kind)` where kind is "exact" or "best-known".
    #[pyo3(signature = (seed = 0))]
    fn reference_optimum(&self, seed: u64) -> PyResult<(f64, String)> {
        let opt = coverage::reference_optimum(&self.inner, seed).map_err(py_err)?;
        Ok((opt.value, opt.kind.name().to_string()))
    }

    /// Chain along `order` with each edge using the sending agent's values.
    #[pyo3(signature = (agent_probs = None, agent_trials = None, order = None))]
    fn chain(
        &self,
        agent_probs: Option<Vec<f64>>,
        agent_trials: Option<Vec<u32>>,
        order: Option<&str>,
    ) -> PyResult<PyChainSpec> {
        let n = self.inner.num_agents();
        let probs = agent_probs.unwrap_or_else(|| self.inner.default_agent_probs());
        let trials = agent_trials.unwrap_or_else(|| vec![1; n]);
        Ok(PyChainSpec {
            inner: coverage::chain_for_order(&probs, &trials, &self.order(order)?).map_err(py_err)?,
        })
    }

    #[pyo3(signature = (chain, iterations = 10_000, seed = 0, order = None))]
    fn monte_carlo(
        &self,
        chain: &PyChainSpec,
        iterations: u64,
        seed: u64,
        order: Option<&str>,
    ) -> PyResult<PyMonteCarloReport> {
        let r =
            coverage::monte_carlo(&self.inner, &chain.inner, &self.order(order)?, iterations, seed).map_err(py_err)?;
        Ok(PyMonteCarloReport {
            iterations: r.iterations,
            mean_value: r.mean_value,
            std_error: r.std_error,
            optimum_value: r.optimum_value,
            optimum_kind: r.optimum_kind.name().to_string(),
            empirical_gap: r.empirical_gap,
            gap_std_error: r.gap_std_error,
            alpha_p: r.alpha_p,
        })
    }
}

/// Longest run of delivered edges plus one.
#[pyfunction]
fn clique_number(bits: Vec<bool>) -> usize {
    mask(bits).clique_number()
}

#[pyfunction]
fn effective_edge_prob(p: f64, trials: u32) -> PyResult<f64> {
    chain::effective_edge_prob(p, trials).map_err(py_err)
}

#[pyfunction]
fn deterministic_gap_bound(n: usize, w: usize) -> PyResult<f64> {
    chain::deterministic_gap_bound(n, w).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "chaingreedy")]
fn chaingreedy_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChainSpec>()?;
    m.add_class::<PySelection>()?;
    m.add_class::<PyCoverageInstance>()?;
    m.add_class::<PyMonteCarloReport>()?;
    m.add_function(wrap_pyfunction!(greedy_modular, m)?)?;
    m.add_function(wrap_pyfunction!(clique_number, m)?)?;
    m.add_function(wrap_pyfunction!(effective_edge_prob, m)?)?;
    m.add_function(wrap_pyfunction!(deterministic_gap_bound, m)?)?;
    Ok(())
}
