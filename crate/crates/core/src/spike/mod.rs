//! Echidnas and t-spikes: recognition, audits, and constructions.
//!
//! Arm indices are 0-based throughout.

mod construct;
mod recognize;
mod structure;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::ElementSet;

pub use construct::{make_spike, spike_down, spike_up, tip_extension, TipExtension};
pub use recognize::{
    extend_echidna, find_spike_partition, has_property, is_t_echidna, is_t_spike, Side,
    SpikeVerdict, MAX_SEARCH_ELEMENTS,
};
pub use structure::{arm_union_lambda, audit_spike, classify_circuit, CircuitClass};

/// Ordered list of pairwise disjoint 2-element sets (spines or arms).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArmPartition {
    arms: Vec<ElementSet>,
}

impl ArmPartition {
    pub fn new(arms: Vec<ElementSet>) -> Result<Self> {
        let mut seen = ElementSet::EMPTY;
        for (i, &a) in arms.iter().enumerate() {
            if a.len() != 2 {
                return Err(Error::InvalidArms(format!(
                    "arm {i} = {a} does not have exactly 2 elements"
                )));
            }
            if !a.is_disjoint(seen) {
                return Err(Error::InvalidArms(format!(
                    "arm {i} = {a} overlaps an earlier arm"
                )));
            }
            seen = seen | a;
        }
        Ok(ArmPartition { arms })
    }

    pub fn from_pairs<I: IntoIterator<Item = [usize; 2]>>(pairs: I) -> Result<Self> {
        let arms = pairs
            .into_iter()
            .map(|[a, b]| {
                if a >= 32 || b >= 32 {
                    Err(Error::InvalidArms(format!(
                        "element out of range in [{a},{b}]"
                    )))
                } else {
                    Ok(ElementSet::singleton(a).with(b))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(arms)
    }

    /// Arms `{2i, 2i+1}` for `i < order`.
    pub fn consecutive(order: usize) -> Self {
        ArmPartition {
            arms: (0..order)
                .map(|i| ElementSet::singleton(2 * i).with(2 * i + 1))
                .collect(),
        }
    }

    pub fn arms(&self) -> &[ElementSet] {
        &self.arms
    }

    pub fn order(&self) -> usize {
        self.arms.len()
    }

    pub fn arm(&self, i: usize) -> ElementSet {
        self.arms[i]
    }

    pub fn union(&self) -> ElementSet {
        self.arms.iter().fold(ElementSet::EMPTY, |acc, &a| acc | a)
    }

    /// Union of the arms with the given indices.
    pub fn union_of(&self, indices: impl IntoIterator<Item = usize>) -> ElementSet {
        indices
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, i| acc | self.arms[i])
    }

    /// Number of arms entirely inside `x`.
    pub fn arms_within(&self, x: ElementSet) -> usize {
        self.arms.iter().filter(|a| a.is_subset(x)).count()
    }

    pub fn push(&mut self, arm: ElementSet) -> Result<()> {
        if arm.len() != 2 || !arm.is_disjoint(self.union()) {
            return Err(Error::InvalidArms(format!("cannot append arm {arm}")));
        }
        self.arms.push(arm);
        Ok(())
    }

    /// Arms as `[a, b]` with `a < b`, sorted by first element.
    pub fn canonical_pairs(&self) -> Vec<[usize; 2]> {
        let mut pairs: Vec<[usize; 2]> = self
            .arms
            .iter()
            .map(|a| {
                let v = a.to_vec();
                [v[0], v[1]]
            })
            .collect();
        pairs.sort();
        pairs
    }

    /// Same arms reordered by first element.
    pub fn canonical(&self) -> ArmPartition {
        let mut arms = self.arms.clone();
        arms.sort_by_key(|a| a.first());
        ArmPartition { arms }
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        if !self.union().is_subset(ElementSet::full(n)) {
            return Err(Error::InvalidArms(format!(
                "arms {} reach outside a ground set of {n} elements",
                self.union()
            )));
        }
        Ok(())
    }
}

/// Proof that `matroid` is a `t`-spike with the given arms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpikeCertificate {
    pub matroid: Matroid,
    pub arms: ArmPartition,
    pub t: usize,
    pub order: usize,
    pub verified_circuit_unions: u64,
    pub verified_cocircuit_unions: u64,
}

impl SpikeCertificate {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            t: self.t,
            order: self.order,
            verified_circuit_unions: self.verified_circuit_unions,
            verified_cocircuit_unions: self.verified_cocircuit_unions,
        }
    }
}

/// Serialised form of a [`SpikeCertificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub t: usize,
    pub order: usize,
    pub verified_circuit_unions: u64,
    pub verified_cocircuit_unions: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arm_partition_validation() {
        assert!(ArmPartition::from_pairs([[0, 1], [2, 3]]).is_ok());
        assert!(ArmPartition::from_pairs([[0, 1], [1, 2]]).is_err());
        assert!(ArmPartition::from_pairs([[0, 0]]).is_err());
        assert!(ArmPartition::from_pairs([[0, 40]]).is_err());
        let p = ArmPartition::from_pairs([[5, 4], [1, 0]]).unwrap();
        assert_eq!(p.canonical_pairs(), vec![[0, 1], [4, 5]]);
        assert_eq!(p.canonical().arm(0), ElementSet::from_bits(0b11));
        assert_eq!(p.union_of([1]), ElementSet::from_bits(0b11));
        assert_eq!(p.arms_within(ElementSet::from_bits(0b110011)), 2);
    }
}
