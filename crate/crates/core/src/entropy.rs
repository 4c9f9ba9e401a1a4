//! Persistent entropy and its stability bounds.
//!
//! For a finite barcode with lengths `l_i` and total length `L`,
//! `E = -sum (l_i / L) log(l_i / L)`, natural logarithm by default.
//!
//! If two finite barcodes have relative error `r = r_p(A, B) < 1/4`, their
//! entropies differ by at most `2r (log n_max - log 2r)`. Dividing by
//! `log n_max` gives the relative bound tabulated by [`bound_table`].

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::metric;

/// Rows of the reference table of relative bounds.
pub const TABLE_NS: [usize; 11] = [10, 510, 1010, 1510, 2010, 2510, 3010, 3510, 4010, 4510, 5010];
/// Columns of the reference table of relative bounds.
pub const TABLE_RS: [f64; 4] = [0.1, 0.05, 0.025, 0.01];

/// Largest relative error for which the stability bound holds (exclusive).
pub const MAX_RELATIVE_ERROR: f64 = 0.25;

/// Logarithm base used to report entropy.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum LogBase {
    /// Nats.
    #[default]
    Natural,
    /// Bits.
    Two,
    Ten,
}

impl LogBase {
    fn ln_base(self) -> f64 {
        match self {
            LogBase::Natural => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::Ten => std::f64::consts::LN_10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub entropy: f64,
    /// Number of intervals, including zero-length ones.
    pub n: usize,
    pub total_length: f64,
    /// `log` of the number of positive-length intervals.
    pub max_entropy: f64,
}

/// Shannon entropy `-sum p log p` (nats) of nonnegative weights that sum to
/// one; zero weights contribute nothing.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .fold(0.0, |acc, &p| acc - p * p.ln())
}

/// Persistent entropy calculator with a configurable logarithm base.
#[derive(Debug, Clone, Copy, Default)]
pub struct PersistentEntropy {
    base: LogBase,
}

impl PersistentEntropy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_base(base: LogBase) -> Self {
        PersistentEntropy { base }
    }

    pub fn compute(&self, a: &Barcode) -> Result<EntropyReport> {
        if a.is_empty() {
            return Err(Error::EmptyBarcode);
        }
        a.require_finite()?;
        let total = a.total_length();
        if total <= 0.0 {
            return Err(Error::ZeroLength);
        }
        let probabilities: Vec<f64> = a.intervals().iter().map(|i| i.length() / total).collect();
        let support = probabilities.iter().filter(|&&p| p > 0.0).count();
        let scale = self.base.ln_base();
        Ok(EntropyReport {
            entropy: shannon_entropy(&probabilities) / scale,
            n: a.len(),
            total_length: total,
            max_entropy: (support as f64).ln() / scale,
        })
    }
}

/// Persistent entropy in nats.
pub fn persistent_entropy(a: &Barcode) -> Result<EntropyReport> {
    PersistentEntropy::new().compute(a)
}

/// `2r (log n_max - log 2r)`, valid for `0 < r < 1/4`.
pub fn entropy_stability_bound(r: f64, n_max: usize) -> Result<f64> {
    if !(r > 0.0 && r < MAX_RELATIVE_ERROR) {
        return Err(Error::OutOfDomain(format!(
            "relative error must lie in (0, 1/4), got {r}"
        )));
    }
    if n_max < 1 {
        return Err(Error::OutOfDomain("n_max must be at least 1".into()));
    }
    let two_r = 2.0 * r;
    Ok(two_r * ((n_max as f64).ln() - two_r.ln()))
}

/// Table of relative bounds: entry `[i][j]` is the bound for `(rs[j], ns[i])`
/// divided by `log ns[i]`.
pub fn bound_table(ns: &[usize], rs: &[f64]) -> Result<Vec<Vec<f64>>> {
    ns.iter()
        .map(|&n| {
            let log_n = (n as f64).ln();
            if log_n <= 0.0 {
                return Err(Error::OutOfDomain(format!(
                    "relative bound needs n_max > 1, got {n}"
                )));
            }
            rs.iter()
                .map(|&r| Ok(entropy_stability_bound(r, n)? / log_n))
                .collect()
        })
        .collect()
}

/// Bound on the entropy difference for barcodes of filter functions (or
/// Rips filtrations) at sup-distance (or Gromov-Hausdorff distance) `delta`:
/// `(4 delta / l_max) [log n_max - log(4 delta / l_max)]`, where `l_max` is
/// the larger average interval length. The hypothesis
/// `d_inf(A, B) <= l_max / 8` is the caller's to check.
pub fn filter_stability_bound(delta: f64, ell_max: f64, n_max: usize) -> Result<f64> {
    if n_max < 1 {
        return Err(Error::OutOfDomain("n_max must be at least 1".into()));
    }
    let ratio = 4.0 * delta / ell_max;
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::OutOfDomain(format!(
            "4 delta / l_max must lie in (0, 1), got {ratio}"
        )));
    }
    Ok(ratio * ((n_max as f64).ln() - ratio.ln()))
}

/// Entropy difference of two finite barcodes together with the stability
/// bound when it applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyDifference {
    pub difference: f64,
    pub relative_error: f64,
    /// `None` when `relative_error >= 1/4`.
    pub bound: Option<f64>,
}

pub fn entropy_difference(a: &Barcode, b: &Barcode, p: f64) -> Result<EntropyDifference> {
    let ea = persistent_entropy(a)?.entropy;
    let eb = persistent_entropy(b)?.entropy;
    let r = metric::relative_error(a, b, p)?;
    let n_max = a.len().max(b.len());
    let bound = if r == 0.0 {
        Some(0.0)
    } else if r < MAX_RELATIVE_ERROR {
        Some(entropy_stability_bound(r, n_max)?)
    } else {
        None
    };
    Ok(EntropyDifference {
        difference: (ea - eb).abs(),
        relative_error: r,
        bound,
    })
}
