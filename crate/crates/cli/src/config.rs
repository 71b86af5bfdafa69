//! Experiment configuration: a TOML file plus command-line overrides.
//!
//! ```toml
//! seed = 42
//! iterations = 10000          # default 10000
//! engine = "dp"               # dp | paper | enumerate, default dp
//! enumeration_cap = 24        # edges, default 24
//! budget = 3                  # optional greedy multi-trial budget
//! permutations = ["ABCDEFGH", "DBHGFCAE"]
//! mask = "0111011"            # solve only
//!
//! [chain]
//! base_probs = [0.5, 0.5]
//! trials = [1, 1]             # default all 1
//!
//! [instance]
//! path = "instance.json"      # or the generation fields below
//! n = 8
//! num_locations = 25
//! locations_per_agent = 12
//! num_points = 2200
//! kappa = 2
//! radius_range = [10.0, 18.0]
//! area = [100.0, 100.0]
//! agent_probs = [0.5, ...]    # per-agent broadcast probability
//!
//! [output]
//! csv = "out.csv"
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use chaingreedy::chain::{ChainSpec, Engine, OutcomeMask, DEFAULT_ENUMERATION_CAP};
use chaingreedy::coverage::{chain_for_order, generate_instance, AgentOrder, CoverageInstance, InstanceParams};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_ITERATIONS: u64 = 10_000;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub iterations: Option<u64>,
    pub engine: Option<String>,
    pub enumeration_cap: Option<usize>,
    pub budget: Option<u32>,
    pub permutations: Option<Vec<String>>,
    pub mask: Option<String>,
    pub chain: Option<ChainSection>,
    pub instance: Option<InstanceSection>,
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub n: Option<usize>,
    pub base_probs: Vec<f64>,
    pub trials: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSection {
    pub path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub num_locations: Option<usize>,
    pub locations_per_agent: Option<usize>,
    pub num_points: Option<usize>,
    pub kappa: Option<usize>,
    pub radius_range: Option<[f64; 2]>,
    pub area: Option<[f64; 2]>,
    pub agent_probs: Option<Vec<f64>>,
    pub agent_trials: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub csv: Option<PathBuf>,
}

/// Values given on the command line; each one replaces its config field.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iterations: Option<u64>,
    pub engine: Option<String>,
    pub csv: Option<PathBuf>,
    pub permutation: Option<String>,
    pub probs: Option<Vec<f64>>,
    pub trials: Option<Vec<u32>>,
    pub budget: Option<u32>,
    pub instance: Option<PathBuf>,
    pub mask: Option<String>,
    pub cap: Option<usize>,
}

/// A parsed config together with the directory relative paths resolve from.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub config: ExperimentConfig,
    base_dir: PathBuf,
}

impl Settings {
    pub fn from_toml(text: &str, base_dir: impl Into<PathBuf>) -> CliResult<Self> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        Ok(Self {
            config,
            base_dir: base_dir.into(),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_toml(&text, dir).map_err(|e| match e {
            CliError::Config(msg) => CliError::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn apply(mut self, o: Overrides) -> Self {
        let c = &mut self.config;
        if o.seed.is_some() {
            c.seed = o.seed;
        }
        if o.iterations.is_some() {
            c.iterations = o.iterations;
        }
        if o.engine.is_some() {
            c.engine = o.engine;
        }
        if o.budget.is_some() {
            c.budget = o.budget;
        }
        if o.cap.is_some() {
            c.enumeration_cap = o.cap;
        }
        if o.mask.is_some() {
            c.mask = o.mask;
        }
        if let Some(p) = o.permutation {
            c.permutations = Some(vec![p]);
        }
        if let Some(csv) = o.csv {
            c.output.get_or_insert_with(Default::default).csv = Some(csv);
        }
        if let Some(probs) = o.probs {
            let chain = c.chain.get_or_insert_with(Default::default);
            if chain.n.is_some_and(|n| n != probs.len() + 1) {
                chain.n = None;
            }
            chain.base_probs = probs;
            if o.trials.is_none() {
                chain.trials = None;
            }
        }
        if let Some(trials) = o.trials {
            c.chain.get_or_insert_with(Default::default).trials = Some(trials);
        }
        if let Some(path) = o.instance {
            let inst = c.instance.get_or_insert_with(Default::default);
            inst.path = Some(std::env::current_dir().unwrap_or_default().join(path));
        }
        self
    }

    pub fn seed(&self) -> u64 {
        self.config.seed.unwrap_or(0)
    }

    pub fn iterations(&self) -> CliResult<u64> {
        match self.config.iterations.unwrap_or(DEFAULT_ITERATIONS) {
            0 => Err(CliError::config("iterations: must be at least 1")),
            n => Ok(n),
        }
    }

    pub fn engine(&self) -> CliResult<Engine> {
        match &self.config.engine {
            None => Ok(Engine::Dp),
            Some(s) => s.parse().map_err(CliError::field("engine")),
        }
    }

    pub fn enumeration_cap(&self) -> usize {
        self.config.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP)
    }

    pub fn csv_path(&self) -> Option<PathBuf> {
        self.config
            .output
            .as_ref()
            .and_then(|o| o.csv.as_ref())
            .map(|p| self.resolve(p))
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn has_chain(&self) -> bool {
        self.config.chain.is_some()
    }

    pub fn chain(&self) -> CliResult<ChainSpec> {
        let c = self
            .config
            .chain
            .as_ref()
            .ok_or_else(|| CliError::config("missing [chain] section (or --probs)"))?;
        let m = c.base_probs.len();
        let n = c.n.unwrap_or(m + 1);
        if n != m + 1 {
            return Err(CliError::config(format!(
                "chain.base_probs: a chain of n = {n} agents needs {} probabilities, got {m}",
                n.saturating_sub(1)
            )));
        }
        let trials = c.trials.clone().unwrap_or_else(|| vec![1; m]);
        if trials.len() != m {
            return Err(CliError::config(format!(
                "chain.trials: expected {m} entries, got {}",
                trials.len()
            )));
        }
        ChainSpec::new(n, c.base_probs.clone(), trials).map_err(CliError::field("chain"))
    }

    pub fn budget(&self) -> Option<u32> {
        self.config.budget
    }

    pub fn mask(&self) -> CliResult<Option<OutcomeMask>> {
        self.config
            .mask
            .as_deref()
            .map(|s| s.parse().map_err(CliError::field("mask")))
            .transpose()
    }

    /// The benchmark instance: loaded from `instance.path`, else generated.
    pub fn instance(&self) -> CliResult<CoverageInstance> {
        let sec = self.config.instance.clone().unwrap_or_default();
        if let Some(path) = &sec.path {
            let generated = [
                sec.n.is_some(),
                sec.num_locations.is_some(),
                sec.locations_per_agent.is_some(),
                sec.num_points.is_some(),
                sec.kappa.is_some(),
                sec.radius_range.is_some(),
                sec.area.is_some(),
            ];
            if generated.iter().any(|&g| g) {
                return Err(CliError::config(
                    "instance: give either a path or generation parameters, not both",
                ));
            }
            let path = self.resolve(path);
            return CoverageInstance::load(&path).map_err(|e| match e {
                chaingreedy::Error::Io(io) => CliError::config(format!("instance.path {}: {io}", path.display())),
                other => CliError::config(format!("instance.path {}: {other}", path.display())),
            });
        }
        let d = InstanceParams::default();
        let params = InstanceParams {
            n: sec.n.unwrap_or(d.n),
            num_locations: sec.num_locations.unwrap_or(d.num_locations),
            locations_per_agent: sec.locations_per_agent.unwrap_or(d.locations_per_agent),
            num_points: sec.num_points.unwrap_or(d.num_points),
            kappa: sec.kappa.unwrap_or(d.kappa),
            radius_range: sec.radius_range.unwrap_or(d.radius_range),
            area: sec.area.unwrap_or(d.area),
        };
        generate_instance(&params, sec.seed.unwrap_or(self.seed())).map_err(CliError::field("instance"))
    }

    /// Agent orders to evaluate; the identity order when none are given.
    pub fn orders(&self, n: usize) -> CliResult<Vec<AgentOrder>> {
        match &self.config.permutations {
            None => Ok(vec![AgentOrder::identity(n)]),
            Some(list) if list.is_empty() => Err(CliError::config("permutations: list is empty")),
            Some(list) => list
                .iter()
                .map(|s| AgentOrder::parse(s, n).map_err(CliError::field("permutations")))
                .collect(),
        }
    }

    /// Chain for one agent order. An explicit `[chain]` is used as given for
    /// every order; otherwise edges inherit the sending agent's probability.
    pub fn chain_for(&self, instance: &CoverageInstance, order: &AgentOrder) -> CliResult<ChainSpec> {
        let n = instance.num_agents();
        if self.has_chain() {
            let chain = self.chain()?;
            if chain.n() != n {
                return Err(CliError::config(format!(
                    "chain: {} agents but the instance has {n}",
                    chain.n()
                )));
            }
            return Ok(chain);
        }
        let sec = self.config.instance.clone().unwrap_or_default();
        let probs = sec.agent_probs.unwrap_or_else(|| instance.default_agent_probs());
        let trials = sec.agent_trials.unwrap_or_else(|| vec![1; n]);
        if probs.len() != n {
            return Err(CliError::config(format!(
                "instance.agent_probs: expected {n} entries, got {}",
                probs.len()
            )));
        }
        if trials.len() != n {
            return Err(CliError::config(format!(
                "instance.agent_trials: expected {n} entries, got {}",
                trials.len()
            )));
        }
        chain_for_order(&probs, &trials, order).map_err(CliError::field("instance.agent_probs"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_chain_config() {
        let s = Settings::from_toml("[chain]\nbase_probs = [0.5, 0.5]\n", ".").unwrap();
        let chain = s.chain().unwrap();
        assert_eq!(chain.n(), 3);
        assert_eq!(chain.trials(), &[1, 1]);
        assert_eq!(s.engine().unwrap(), Engine::Dp);
        assert_eq!(s.iterations().unwrap(), 10_000);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = Settings::from_toml("seed = 1\n[chain]\nbase_probs = [0.5, \"x\"]\n", ".").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert_eq!(err.exit_code(), 2);

        let err = Settings::from_toml("sed = 1\n", ".").unwrap_err();
        assert!(err.to_string().contains("sed"), "{err}");
    }

    #[test]
    fn cross_field_checks() {
        let s = Settings::from_toml("[chain]\nn = 4\nbase_probs = [0.5, 0.5]\n", ".").unwrap();
        assert!(s.chain().unwrap_err().to_string().contains("chain.base_probs"));
        let s = Settings::from_toml("[chain]\nbase_probs = [0.5, 0.5]\ntrials = [1]\n", ".").unwrap();
        assert!(s.chain().unwrap_err().to_string().contains("chain.trials"));
        let s = Settings::from_toml("[chain]\nbase_probs = [1.5]\n", ".").unwrap();
        assert!(s.chain().is_err());
        let s = Settings::from_toml("engine = \"fast\"\n", ".").unwrap();
        assert!(s.engine().is_err());
        let s = Settings::from_toml("iterations = 0\n", ".").unwrap();
        assert!(s.iterations().is_err());
    }

    #[test]
    fn overrides_replace_fields() {
        let s = Settings::from_toml("seed = 1\n[chain]\nbase_probs = [0.5]\ntrials = [2]\n", ".")
            .unwrap()
            .apply(Overrides {
                seed: Some(9),
                probs: Some(vec![0.2, 0.3]),
                engine: Some("enumerate".into()),
                ..Default::default()
            });
        assert_eq!(s.seed(), 9);
        assert_eq!(s.chain().unwrap().base_probs(), &[0.2, 0.3]);
        assert_eq!(s.chain().unwrap().trials(), &[1, 1]);
        assert_eq!(s.engine().unwrap(), Engine::Enumerate);
    }

    #[test]
    fn instance_defaults_and_orders() {
        let s = Settings::from_toml("seed = 3\npermutations = [\"DBHGFCAE\"]\n", ".").unwrap();
        let inst = s.instance().unwrap();
        assert_eq!(inst.num_agents(), 8);
        assert_eq!(inst.seed, 3);
        let orders = s.orders(8).unwrap();
        assert_eq!(orders[0].label(), "DBHGFCAE");
        let chain = s.chain_for(&inst, &orders[0]).unwrap();
        assert_eq!(chain.base_probs()[0], inst.default_agent_probs()[3]);
    }
}
