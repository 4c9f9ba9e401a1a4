//! Entropy-based summary functions.
//!
//! For a finite barcode `A` with `p_i = l_i / L`, the entropy summary
//! function is
//!
//! ```text
//! S(A)[t] = -sum_{i alive at t} p_i log p_i
//! ```
//!
//! i.e. the share of the persistent entropy carried by the intervals alive
//! at `t`. Aliveness is half-open, `birth <= t < death`, which only differs
//! from the closed convention on a null set and keeps every function
//! right-continuous.
//!
//! * NES is `S / ||S||_1`, which discards the overall scale of the entropy.
//! * TES is `F(A)[t] = (T(t) / W(t)) S(A)[t]`, where `W(t)` counts the alive
//!   intervals and `T(t)` is the length of the maximal period around `t`
//!   during which the alive set does not change.
//!
//! [`feature_ranking`] reads topological features off TES: segments with the
//! highest TES values, described by their Betti profile.

mod ranking;
mod step;

pub use ranking::{feature_ranking, InfPolicy};
pub use step::{l1_distance, StepFunction};

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};

/// One maximal segment on which the set of alive intervals is constant.
#[derive(Debug, Clone, PartialEq)]
pub struct AliveProfile {
    pub start: f64,
    pub end: f64,
    /// Number of alive intervals per homology dimension (the Betti profile
    /// of the segment).
    pub alive_count_per_dim: BTreeMap<usize, usize>,
    pub tes_value: f64,
}

impl AliveProfile {
    pub fn alive_total(&self) -> usize {
        self.alive_count_per_dim.values().sum()
    }

    /// `beta_0 = 1` and every higher count 0.
    pub fn is_contractible(&self) -> bool {
        self.alive_count_per_dim
            .iter()
            .all(|(&d, &c)| if d == 0 { c == 1 } else { c == 0 })
            && self.alive_count_per_dim.get(&0) == Some(&1)
    }
}

impl Serialize for AliveProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AliveProfile", 3)?;
        s.serialize_field("segment", &[self.start, self.end])?;
        s.serialize_field("betti", &self.alive_count_per_dim)?;
        s.serialize_field("tes", &self.tes_value)?;
        s.end()
    }
}

/// A finite barcode whose intervals each carry a homology dimension.
struct Tagged<'a> {
    intervals: Vec<&'a Interval>,
    dims: Vec<usize>,
}

impl<'a> Tagged<'a> {
    fn single(a: &'a Barcode) -> Self {
        let dim = a.dim().unwrap_or(0);
        Tagged {
            intervals: a.intervals().iter().collect(),
            dims: vec![dim; a.len()],
        }
    }

    fn pooled(barcodes: &'a [Barcode]) -> Self {
        let mut intervals = Vec::new();
        let mut dims = Vec::new();
        for (k, b) in barcodes.iter().enumerate() {
            let dim = b.dim().unwrap_or(k);
            intervals.extend(b.intervals());
            dims.extend(std::iter::repeat_n(dim, b.len()));
        }
        Tagged { intervals, dims }
    }

    /// `-p_i log p_i` per interval (0 for zero-length ones).
    fn entropy_terms(&self) -> Result<Vec<f64>> {
        if self.intervals.iter().any(|i| !i.is_finite()) {
            return Err(Error::InfiniteInterval);
        }
        let total: f64 = self.intervals.iter().map(|i| i.length()).sum();
        if total <= 0.0 {
            return Err(Error::ZeroLength);
        }
        Ok(self
            .intervals
            .iter()
            .map(|i| {
                let p = i.length() / total;
                if p > 0.0 {
                    -p * p.ln()
                } else {
                    0.0
                }
            })
            .collect())
    }

    /// Consecutive distinct endpoints of positive-length intervals. Between
    /// two of them the alive set is constant, and it changes at each one.
    fn grid(&self) -> Vec<f64> {
        let mut grid: Vec<f64> = self
            .intervals
            .iter()
            .filter(|i| i.length() > 0.0)
            .flat_map(|i| [i.birth(), i.death()])
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        grid
    }

    fn alive_on(&self, start: f64, end: f64) -> impl Iterator<Item = usize> + '_ {
        self.intervals
            .iter()
            .enumerate()
            .filter(move |(_, i)| i.birth() <= start && i.death() >= end && i.length() > 0.0)
            .map(|(k, _)| k)
    }
}

fn es_of(tagged: &Tagged) -> Result<StepFunction> {
    let terms = tagged.entropy_terms()?;
    let grid = tagged.grid();
    let values = grid
        .windows(2)
        .map(|w| tagged.alive_on(w[0], w[1]).map(|k| terms[k]).sum())
        .collect();
    StepFunction::new(grid, values)
}

/// The entropy summary function of a finite barcode.
pub fn es_function(a: &Barcode) -> Result<StepFunction> {
    es_of(&Tagged::single(a))
}

/// ES normalized to unit L1 norm.
pub fn nes_function(a: &Barcode) -> Result<StepFunction> {
    normalized(es_function(a)?)
}

fn normalized(s: StepFunction) -> Result<StepFunction> {
    let norm = s.l1_norm();
    if norm <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(s.scale_values(1.0 / norm))
}

fn tes_of(tagged: &Tagged) -> Result<(StepFunction, Vec<AliveProfile>)> {
    let terms = tagged.entropy_terms()?;
    let grid = tagged.grid();
    let mut profiles = Vec::with_capacity(grid.len().saturating_sub(1));
    for w in grid.windows(2) {
        let (start, end) = (w[0], w[1]);
        let mut counts = BTreeMap::new();
        let mut s = 0.0;
        let mut alive = 0usize;
        for k in tagged.alive_on(start, end) {
            *counts.entry(tagged.dims[k]).or_insert(0) += 1;
            s += terms[k];
            alive += 1;
        }
        let tes_value = if alive == 0 {
            0.0
        } else {
            (end - start) / alive as f64 * s
        };
        profiles.push(AliveProfile {
            start,
            end,
            alive_count_per_dim: counts,
            tes_value,
        });
    }
    let f = StepFunction::new(grid, profiles.iter().map(|p| p.tes_value).collect())?;
    Ok((f, profiles))
}

/// The time-based entropy summary function and the alive-set segments it is
/// built from. Counts are keyed by the barcode's dimension tag (0 if
/// untagged).
pub fn tes_function(a: &Barcode) -> Result<(StepFunction, Vec<AliveProfile>)> {
    tes_of(&Tagged::single(a))
}

/// ES of several barcodes pooled into one; each keeps its dimension tag
/// (its position in the slice if untagged).
pub fn es_function_pooled(barcodes: &[Barcode]) -> Result<StepFunction> {
    es_of(&Tagged::pooled(barcodes))
}

pub fn nes_function_pooled(barcodes: &[Barcode]) -> Result<StepFunction> {
    normalized(es_function_pooled(barcodes)?)
}

/// TES of several barcodes pooled into one, with per-dimension counts.
pub fn tes_function_pooled(barcodes: &[Barcode]) -> Result<(StepFunction, Vec<AliveProfile>)> {
    tes_of(&Tagged::pooled(barcodes))
}
