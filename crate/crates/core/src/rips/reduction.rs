//! Left-to-right column reduction of the Z/2 boundary matrix.

use std::collections::BTreeMap;

use super::FilteredComplex;
use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Reduce every column in filtration order.
    Standard,
    /// Reduce dimensions from the top down and zero out the columns of
    /// simplices already known to be paired as births.
    #[default]
    Clearing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PersistenceOptions {
    pub max_hom_dim: usize,
    /// Keep pairs whose birth and death values coincide.
    pub keep_zero_length: bool,
    pub reduction: Reduction,
}

impl PersistenceOptions {
    pub fn new(max_hom_dim: usize) -> Self {
        PersistenceOptions {
            max_hom_dim,
            keep_zero_length: false,
            reduction: Reduction::default(),
        }
    }
}

/// Persistence pairs as simplex indices into the filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPairs {
    /// `(birth, death)` pairs, sorted by death.
    pub pairs: Vec<(usize, usize)>,
    /// Unpaired positive simplices of dimension `<= max_hom_dim`, ascending.
    pub essential: Vec<usize>,
}

/// XOR of two ascending index lists.
fn add_columns(target: &mut Vec<usize>, source: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&source[j..]);
    std::mem::swap(target, scratch);
}

/// Reduces the boundary matrix restricted to dimensions `1..=max_hom_dim+1`.
pub fn reduce(fc: &FilteredComplex, max_hom_dim: usize, method: Reduction) -> ReductionPairs {
    let n = fc.len();
    let top = max_hom_dim + 1;
    let dims: Vec<usize> = fc.simplices().iter().map(|s| s.dim()).collect();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); n];
    // pivot[row] = column whose reduced lowest one is `row`.
    let mut pivot: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut scratch = Vec::new();

    let mut reduce_column = |j: usize,
                             columns: &mut Vec<Vec<usize>>,
                             pivot: &mut Vec<Option<usize>>|
     -> Option<usize> {
        let mut col = fc.boundary(j).to_vec();
        while let Some(&low) = col.last() {
            match pivot[low] {
                Some(k) => add_columns(&mut col, &columns[k], &mut scratch),
                None => break,
            }
        }
        let low = col.last().copied();
        if let Some(low) = low {
            pivot[low] = Some(j);
        }
        columns[j] = col;
        low
    };

    match method {
        Reduction::Standard => {
            for (j, d) in dims.iter().enumerate() {
                if (1..=top).contains(d) {
                    reduce_column(j, &mut columns, &mut pivot);
                }
            }
        }
        Reduction::Clearing => {
            for d in (1..=top).rev() {
                for j in 0..n {
                    if dims[j] != d || cleared[j] {
                        continue;
                    }
                    if let Some(low) = reduce_column(j, &mut columns, &mut pivot) {
                        cleared[low] = true;
                    }
                }
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = pivot
        .iter()
        .enumerate()
        .filter_map(|(row, col)| col.map(|c| (row, c)))
        .collect();
    pairs.sort_by_key(|&(_, death)| death);
    let essential = (0..n)
        .filter(|&j| dims[j] <= max_hom_dim && columns[j].is_empty() && pivot[j].is_none())
        .collect();
    ReductionPairs { pairs, essential }
}

/// Barcodes of dimensions `0..=max_hom_dim`, zero-length pairs dropped.
pub fn persistence(fc: &FilteredComplex, max_hom_dim: usize) -> Result<BTreeMap<usize, Barcode>> {
    persistence_with(fc, &PersistenceOptions::new(max_hom_dim))
}

pub fn persistence_with(
    fc: &FilteredComplex,
    options: &PersistenceOptions,
) -> Result<BTreeMap<usize, Barcode>> {
    let simplices = fc.simplices();
    let reduced = reduce(fc, options.max_hom_dim, options.reduction);
    let mut out: BTreeMap<usize, Vec<Interval>> =
        (0..=options.max_hom_dim).map(|d| (d, Vec::new())).collect();

    for &(birth, death) in &reduced.pairs {
        let b = simplices[birth].value();
        let d = simplices[death].value();
        if b == d && !options.keep_zero_length {
            continue;
        }
        let dim = simplices[birth].dim();
        let interval = Interval::new(b, d).map_err(|_| {
            Error::InvalidComplex(format!("pair ({birth}, {death}) dies before it is born"))
        })?;
        out.entry(dim).or_default().push(interval);
    }
    for &e in &reduced.essential {
        let s = &simplices[e];
        out.entry(s.dim())
            .or_default()
            .push(Interval::infinite(s.value()).expect("filtration values are finite"));
    }
    Ok(out
        .into_iter()
        .map(|(d, iv)| (d, Barcode::with_dim(d, iv)))
        .collect())
}
