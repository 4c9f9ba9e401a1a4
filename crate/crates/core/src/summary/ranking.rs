use std::collections::BTreeMap;

use crate::barcode::{truncate_absolute, Barcode};
use crate::error::{Error, Result};

use super::{tes_function_pooled, AliveProfile};

/// How infinite intervals are made finite before computing TES.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InfPolicy {
    /// Infinite deaths become `u + c`, `u` the largest finite coordinate of
    /// the pooled barcode.
    Tau(f64),
    /// Infinite deaths become the constant `c`.
    Phi(f64),
    /// Infinite intervals are removed.
    Drop,
}

impl InfPolicy {
    pub fn apply(&self, b: &Barcode) -> Result<Barcode> {
        if b.is_finite() {
            return Ok(b.clone());
        }
        match *self {
            InfPolicy::Tau(c) => b.truncate_relative(c),
            InfPolicy::Phi(c) => Ok(truncate_absolute(std::slice::from_ref(b), c)?.remove(0)),
            InfPolicy::Drop => Ok(b.finite_part()),
        }
    }
}

/// Ranks the Betti profiles of TES segments.
///
/// All dimensions are pooled into one barcode (each interval keeps its
/// dimension), infinite intervals are resolved with `policy`, and the TES
/// segments are sorted by value (descending, ties by earlier start).
/// Segments with nothing alive and the contractible profile are dropped,
/// only the best segment of each profile is kept, and at most `top_k`
/// profiles are returned. Every profile lists all dimensions present in
/// `barcodes`.
pub fn feature_ranking(
    barcodes: &BTreeMap<usize, Barcode>,
    policy: InfPolicy,
    top_k: usize,
) -> Result<Vec<AliveProfile>> {
    if barcodes.is_empty() {
        return Err(Error::EmptyInput("no barcodes to rank".into()));
    }
    if barcodes.keys().enumerate().any(|(i, &d)| i != d) {
        return Err(Error::OutOfDomain(
            "barcode dimensions must be contiguous from 0".into(),
        ));
    }
    let max_dim = barcodes.len() - 1;

    // Pool first so tau sees the largest finite coordinate over all
    // dimensions, then split back into tagged barcodes.
    let mut pooled = Vec::new();
    let mut dims = Vec::new();
    for (&d, b) in barcodes {
        pooled.extend_from_slice(b.intervals());
        dims.extend(std::iter::repeat_n(d, b.len()));
    }
    let pooled = Barcode::new(pooled);
    let resolved = if pooled.is_empty() {
        pooled
    } else {
        policy.apply(&pooled)?
    };
    if !resolved.is_finite() {
        return Err(Error::InfiniteInterval);
    }

    let mut tagged: Vec<Barcode> = (0..=max_dim).map(|d| Barcode::with_dim(d, Vec::new())).collect();
    if matches!(policy, InfPolicy::Drop) {
        // Dropping changes positions; rebuild from the originals.
        for (&d, b) in barcodes {
            tagged[d] = Barcode::with_dim(d, b.finite_part().into_intervals());
        }
    } else {
        let mut per_dim: Vec<Vec<_>> = vec![Vec::new(); max_dim + 1];
        for (interval, &d) in resolved.intervals().iter().zip(&dims) {
            per_dim[d].push(*interval);
        }
        for (d, iv) in per_dim.into_iter().enumerate() {
            tagged[d] = Barcode::with_dim(d, iv);
        }
    }

    if tagged.iter().map(Barcode::total_length).sum::<f64>() <= 0.0 {
        return Ok(Vec::new());
    }
    let (_, mut profiles) = tes_function_pooled(&tagged)?;

    profiles.retain(|p| p.alive_total() > 0 && !p.is_contractible());
    for p in &mut profiles {
        for d in 0..=max_dim {
            p.alive_count_per_dim.entry(d).or_insert(0);
        }
    }
    profiles.sort_by(|a, b| {
        b.tes_value
            .total_cmp(&a.tes_value)
            .then(a.start.total_cmp(&b.start))
    });
    let mut seen = Vec::new();
    profiles.retain(|p| {
        if seen.contains(&p.alive_count_per_dim) {
            false
        } else {
            seen.push(p.alive_count_per_dim.clone());
            true
        }
    });
    profiles.truncate(top_k);
    Ok(profiles)
}
