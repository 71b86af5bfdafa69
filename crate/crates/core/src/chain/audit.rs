use crate::chain::closed_form::prob_clique_at_least_closed_form;
use crate::chain::distribution::{clique_distribution, Engine};
use crate::chain::dp::prob_clique_at_least_dp;
use crate::chain::spec::ChainSpec;
use crate::error::Result;

/// Closed-form vs dp comparison for one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord {
    pub n: usize,
    /// `max_l |P_closed(W >= l) - P_dp(W >= l)|`.
    pub max_tail_dev: f64,
    /// Level at which `max_tail_dev` occurs.
    pub worst_level: usize,
    pub alpha_dp: f64,
    pub alpha_closed_form: f64,
}

impl AuditRecord {
    pub fn alpha_dev(&self) -> f64 {
        (self.alpha_closed_form - self.alpha_dp).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditSummary {
    pub records: Vec<AuditRecord>,
    pub max_tail_dev: f64,
    pub max_alpha_dev: f64,
    pub mean_alpha_dev: f64,
    /// Chains whose every tail agrees within `tolerance`.
    pub agreeing: usize,
    pub tolerance: f64,
}

pub fn audit_chain(chain: &ChainSpec) -> Result<AuditRecord> {
    let mut max_tail_dev = 0.0;
    let mut worst_level = 1;
    for l in 1..=chain.n() {
        let dev = (prob_clique_at_least_closed_form(chain, l)? - prob_clique_at_least_dp(chain, l)?).abs();
        if dev > max_tail_dev {
            max_tail_dev = dev;
            worst_level = l;
        }
    }
    Ok(AuditRecord {
        n: chain.n(),
        max_tail_dev,
        worst_level,
        alpha_dp: clique_distribution(chain, Engine::Dp)?.alpha_p(),
        alpha_closed_form: clique_distribution(chain, Engine::ClosedForm)?.alpha_p(),
    })
}

/// Audits the closed-form engine against the dp engine over `chains`.
pub fn audit_closed_form(chains: &[ChainSpec], tolerance: f64) -> Result<AuditSummary> {
    let records = chains.iter().map(audit_chain).collect::<Result<Vec<_>>>()?;
    let max_tail_dev = records.iter().map(|r| r.max_tail_dev).fold(0.0, f64::max);
    let max_alpha_dev = records.iter().map(AuditRecord::alpha_dev).fold(0.0, f64::max);
    let mean_alpha_dev = if records.is_empty() {
        0.0
    } else {
        records.iter().map(AuditRecord::alpha_dev).sum::<f64>() / records.len() as f64
    };
    let agreeing = records.iter().filter(|r| r.max_tail_dev <= tolerance).count();
    Ok(AuditSummary {
        records,
        max_tail_dev,
        max_alpha_dev,
        mean_alpha_dev,
        agreeing,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_chains_agree() {
        let chain = ChainSpec::single_trial(vec![0.4, 0.9, 0.2]).unwrap();
        let s = audit_closed_form(&[chain], 1e-12).unwrap();
        assert_eq!(s.agreeing, 1);
        assert!(s.max_alpha_dev < 1e-12);
    }

    #[test]
    fn long_homogeneous_chain_deviates() {
        // nine families for run length two: the correction sum overlaps
        let chain = ChainSpec::homogeneous(11, 0.5).unwrap();
        let r = audit_chain(&chain).unwrap();
        assert!(r.max_tail_dev > 1e-6, "{r:?}");
    }
}
