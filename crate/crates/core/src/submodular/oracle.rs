use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::submodular::element::GroundElement;

/// Value-oracle access to a normal set function over ground elements.
///
/// Implementations must be safe to evaluate concurrently from several threads.
/// Callers never pass duplicates within `set`.
pub trait UtilityOracle: Sync {
    fn value(&self, set: &[GroundElement]) -> Result<f64>;
}

impl<T: UtilityOracle + ?Sized> UtilityOracle for &T {
    fn value(&self, set: &[GroundElement]) -> Result<f64> {
        (**self).value(set)
    }
}

/// `f(S ∪ {s}) - f(S)`. Fails if `s` is already in `S`.
pub fn marginal_gain<O: UtilityOracle + ?Sized>(oracle: &O, s: GroundElement, base: &[GroundElement]) -> Result<f64> {
    if base.contains(&s) {
        return Err(Error::Contract(format!("element {s} is already in the base set")));
    }
    gain_unchecked(oracle, s, base)
}

pub(crate) fn gain_unchecked<O: UtilityOracle + ?Sized>(
    oracle: &O,
    s: GroundElement,
    base: &[GroundElement],
) -> Result<f64> {
    let mut with = Vec::with_capacity(base.len() + 1);
    with.extend_from_slice(base);
    with.push(s);
    Ok(oracle.value(&with)? - oracle.value(base)?)
}

/// Additive set function: `f(S) = Σ_{s∈S} w(s)`.
#[derive(Debug, Clone, Default)]
pub struct ModularOracle {
    weights: HashMap<GroundElement, f64>,
}

impl ModularOracle {
    pub fn new(weights: impl IntoIterator<Item = (GroundElement, f64)>) -> Result<Self> {
        let weights: HashMap<_, _> = weights.into_iter().collect();
        if let Some((e, w)) = weights.iter().find(|(_, w)| w.is_nan() || **w < 0.0) {
            return Err(Error::domain(format!("weight {w} of {e} is negative")));
        }
        Ok(Self { weights })
    }

    /// Weights given block by block; `weights[i][j]` belongs to `(i, j)`.
    pub fn from_blocks(weights: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &w)| (GroundElement::new(i, j), w))),
        )
    }
}

impl UtilityOracle for ModularOracle {
    fn value(&self, set: &[GroundElement]) -> Result<f64> {
        set.iter()
            .map(|e| {
                self.weights
                    .get(e)
                    .copied()
                    .ok_or_else(|| Error::domain(format!("unknown element {e}")))
            })
            .sum()
    }
}

/// Weighted coverage over an abstract finite universe: each element covers a
/// set of items and `f(S)` is the total weight of items covered by `S`.
///
/// Normal, monotone and submodular for nonnegative item weights.
#[derive(Debug, Clone)]
pub struct SetCoverageOracle {
    item_weights: Vec<f64>,
    covers: HashMap<GroundElement, Vec<usize>>,
}

impl SetCoverageOracle {
    pub fn new(item_weights: Vec<f64>, covers: impl IntoIterator<Item = (GroundElement, Vec<usize>)>) -> Result<Self> {
        if item_weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(Error::domain("item weights must be nonnegative"));
        }
        let covers: HashMap<_, _> = covers.into_iter().collect();
        for (e, items) in &covers {
            if let Some(bad) = items.iter().find(|&&it| it >= item_weights.len()) {
                return Err(Error::domain(format!(
                    "element {e} covers item {bad} outside a universe of {}",
                    item_weights.len()
                )));
            }
        }
        Ok(Self { item_weights, covers })
    }
}

impl UtilityOracle for SetCoverageOracle {
    fn value(&self, set: &[GroundElement]) -> Result<f64> {
        let mut covered = vec![false; self.item_weights.len()];
        for e in set {
            let items = self
                .covers
                .get(e)
                .ok_or_else(|| Error::domain(format!("unknown element {e}")))?;
            for &it in items {
                covered[it] = true;
            }
        }
        Ok(covered
            .iter()
            .zip(&self.item_weights)
            .filter(|(c, _)| **c)
            .map(|(_, w)| w)
            .sum())
    }
}
