use std::collections::HashSet;

use serde::Serialize;

use crate::constellation::{Constellation, SatId};
use crate::error::{Error, Result};

/// A path through the ISL graph with its Euclidean hop lengths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Route {
    pub hops: Vec<SatId>,
    pub per_hop_lengths: Vec<f64>,
    /// Left-to-right sum of `per_hop_lengths`.
    pub total_length: f64,
}

impl Route {
    pub fn single(sat: SatId) -> Self {
        Self {
            hops: vec![sat],
            per_hop_lengths: Vec::new(),
            total_length: 0.0,
        }
    }

    pub fn from_hops(constellation: &Constellation, hops: Vec<SatId>) -> Self {
        let per_hop_lengths: Vec<f64> = hops.windows(2).map(|w| constellation.distance(w[0], w[1])).collect();
        let total_length = per_hop_lengths.iter().fold(0.0, |acc, d| acc + d);
        Self {
            hops,
            per_hop_lengths,
            total_length,
        }
    }

    pub fn from_dense(constellation: &Constellation, dense: &[usize]) -> Self {
        Self::from_hops(constellation, dense.iter().map(|&k| constellation.sat(k)).collect())
    }

    pub fn hop_count(&self) -> u32 {
        (self.hops.len() - 1) as u32
    }

    pub fn src(&self) -> SatId {
        self.hops[0]
    }

    pub fn dst(&self) -> SatId {
        *self.hops.last().unwrap()
    }

    /// Checks adjacency, recomputed lengths and simplicity.
    pub fn validate(&self, constellation: &Constellation) -> Result<()> {
        if self.hops.is_empty() {
            return Err(Error::Invariant("route has no satellites".into()));
        }
        if self.per_hop_lengths.len() + 1 != self.hops.len() {
            return Err(Error::Invariant(format!(
                "{} hop lengths for {} satellites",
                self.per_hop_lengths.len(),
                self.hops.len()
            )));
        }
        for (w, &len) in self.hops.windows(2).zip(&self.per_hop_lengths) {
            if !constellation.are_adjacent(w[0], w[1]) {
                return Err(Error::Invariant(format!("{} and {} are not ISL neighbors", w[0], w[1])));
            }
            let expected = constellation.distance(w[0], w[1]);
            if (len - expected).abs() > 1e-9 * expected.max(1.0) {
                return Err(Error::Invariant(format!(
                    "hop {} -> {} has length {len}, expected {expected}",
                    w[0], w[1]
                )));
            }
        }
        let sum: f64 = self.per_hop_lengths.iter().sum();
        if (sum - self.total_length).abs() > 1e-9 * sum.max(1.0) {
            return Err(Error::Invariant(format!(
                "total length {} differs from hop sum {sum}",
                self.total_length
            )));
        }
        let mut seen = HashSet::with_capacity(self.hops.len());
        if let Some(dup) = self.hops.iter().find(|s| !seen.insert(**s)) {
            return Err(Error::Invariant(format!("route visits {dup} twice")));
        }
        Ok(())
    }
}
