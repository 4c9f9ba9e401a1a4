//! Exact p-Wasserstein and bottleneck distances between barcodes.
//!
//! Both barcodes are padded with zero-length intervals up to
//! `n_max = max(n_a, n_b)` and matched by a bijection. The position `t` of a
//! padding interval `[t, t]` is free; the cheapest choice for a real interval
//! `[x, y]` is the midpoint, which costs `((y - x) / 2)^p`. Matching then
//! becomes a standard assignment problem:
//!
//! * finite `p`: minimum-cost assignment on the matrix of
//!   `max{|dx|^p, |dy|^p}`,
//! * `p = inf`: bottleneck assignment (threshold search plus bipartite
//!   matching).
//!
//! Infinite intervals can only be matched with each other, where the
//! distance of the deaths counts as 0. Barcodes with different numbers of
//! infinite intervals are at infinite distance.

pub mod assignment;
mod exact;

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};

/// Above this exponent the cost matrix is rescaled by its largest entry
/// before raising to the power `p`, so `x^p` cannot overflow.
const RESCALE_ABOVE_P: f64 = 64.0;

/// An optimal bijection between the padded barcodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// `(index into padded A, index into padded B)`, one pair per row of A.
    /// Indices at or beyond the original cardinality are padding intervals.
    pub pairs: Vec<(usize, usize)>,
    /// The distance realized by `pairs`.
    pub cost: f64,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Real(Interval),
    Pad,
}

fn slots(b: &Barcode, n: usize) -> Vec<Slot> {
    let mut out: Vec<Slot> = b.intervals().iter().copied().map(Slot::Real).collect();
    out.resize(n, Slot::Pad);
    out
}

/// Pads the smaller barcode with zero-length intervals so both have
/// `max(n_a, n_b)` intervals. The placeholders sit at `[0, 0]`; their actual
/// position is chosen per pairing during matching.
pub fn pad(a: &Barcode, b: &Barcode) -> (Barcode, Barcode) {
    let n = a.len().max(b.len());
    let fill = |x: &Barcode| {
        let mut iv = x.intervals().to_vec();
        iv.resize(n, Interval::point(0.0).expect("[0, 0] is a valid interval"));
        let mut out = Barcode::new(iv);
        out.set_dim(x.dim());
        out
    };
    (fill(a), fill(b))
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// `max{|dx|, |dy|}` between two slots, with `|inf - inf| = 0`. A padding
/// slot sits at the midpoint of its partner, so the cost is half its length.
fn raw_cost(a: Slot, b: Slot) -> f64 {
    match (a, b) {
        (Slot::Real(i), Slot::Real(j)) => match (i.is_finite(), j.is_finite()) {
            (true, true) => (i.birth() - j.birth())
                .abs()
                .max((i.death() - j.death()).abs()),
            (false, false) => (i.birth() - j.birth()).abs(),
            _ => f64::INFINITY,
        },
        (Slot::Real(i), Slot::Pad) | (Slot::Pad, Slot::Real(i)) => {
            if i.is_finite() {
                0.5 * (i.death() - i.birth())
            } else {
                f64::INFINITY
            }
        }
        (Slot::Pad, Slot::Pad) => 0.0,
    }
}

/// `max{|dx|^p, |dy|^p}` with the same conventions as [`raw_cost`], after
/// dividing coordinates differences by `scale`.
fn powered_cost(a: Slot, b: Slot, p: f64, scale: f64) -> f64 {
    let term = |d: f64| (d.abs() / scale).powf(p);
    match (a, b) {
        (Slot::Real(i), Slot::Real(j)) => match (i.is_finite(), j.is_finite()) {
            (true, true) => term(i.birth() - j.birth()).max(term(i.death() - j.death())),
            (false, false) => term(i.birth() - j.birth()),
            _ => f64::INFINITY,
        },
        (Slot::Real(i), Slot::Pad) | (Slot::Pad, Slot::Real(i)) => {
            if i.is_finite() {
                term(0.5 * (i.death() - i.birth()))
            } else {
                f64::INFINITY
            }
        }
        (Slot::Pad, Slot::Pad) => 0.0,
    }
}

/// Adds the cost term of one pair to `sum`. For `p = 1` and `p = 2` the term
/// is exact, so matchings with equal real cost report identical distances.
fn add_term(sum: &mut exact::ExactSum, a: Slot, b: Slot, p: f64, scale: f64) {
    let diff = match (a, b) {
        (Slot::Real(i), Slot::Real(j)) if i.is_finite() && j.is_finite() => exact::max_pair(
            exact::abs_diff(i.birth(), j.birth()),
            exact::abs_diff(i.death(), j.death()),
        ),
        (Slot::Real(i), Slot::Real(j)) => exact::abs_diff(i.birth(), j.birth()),
        (Slot::Real(i), Slot::Pad) | (Slot::Pad, Slot::Real(i)) => {
            let (hi, lo) = exact::abs_diff(i.death(), i.birth());
            (0.5 * hi, 0.5 * lo)
        }
        (Slot::Pad, Slot::Pad) => (0.0, 0.0),
    };
    if p == 1.0 {
        sum.add(diff.0);
        sum.add(diff.1);
    } else if p == 2.0 {
        sum.add_square(diff);
    } else {
        sum.add(((diff.0 + diff.1) / scale).powf(p));
    }
}

/// Finds an optimal bijection for `d_p`, or `None` when the distance is
/// infinite (different numbers of infinite intervals).
pub fn optimal_matching(a: &Barcode, b: &Barcode, p: f64) -> Result<Option<Matching>> {
    check_exponent(p)?;
    if a.infinite_count() != b.infinite_count() {
        return Ok(None);
    }
    let n = a.len().max(b.len());
    let sa = slots(a, n);
    let sb = slots(b, n);

    let matching = if p.is_infinite() {
        let cost: Vec<f64> = sa
            .iter()
            .flat_map(|&x| sb.iter().map(move |&y| raw_cost(x, y)))
            .collect();
        let perm = assignment::bottleneck_assignment(n, &cost)
            .expect("equal infinite counts always admit a finite matching");
        let d = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| cost[i * n + j])
            .fold(0.0, f64::max);
        Matching {
            pairs: perm.into_iter().enumerate().collect(),
            cost: d,
        }
    } else {
        let scale = if p > RESCALE_ABOVE_P {
            let m = sa
                .iter()
                .flat_map(|&x| sb.iter().map(move |&y| raw_cost(x, y)))
                .filter(|c| c.is_finite())
                .fold(0.0, f64::max);
            if m > 0.0 {
                m
            } else {
                1.0
            }
        } else {
            1.0
        };
        let perm = finite_p_assignment(&sa, &sb, p, scale);
        let mut sum = exact::ExactSum::default();
        for (i, &j) in perm.iter().enumerate() {
            add_term(&mut sum, sa[i], sb[j], p, scale);
        }
        let sum = sum.total();
        Matching {
            pairs: perm.into_iter().enumerate().collect(),
            cost: scale * sum.powf(1.0 / p),
        }
    };
    Ok(Some(matching))
}

/// Solves the infinite and finite groups as two separate assignment
/// problems and stitches them into one permutation of the padded indices.
fn finite_p_assignment(sa: &[Slot], sb: &[Slot], p: f64, scale: f64) -> Vec<usize> {
    let is_inf = |s: &Slot| matches!(s, Slot::Real(i) if !i.is_finite());
    let (rows_inf, rows_fin): (Vec<usize>, Vec<usize>) = (0..sa.len()).partition(|&i| is_inf(&sa[i]));
    let (cols_inf, cols_fin): (Vec<usize>, Vec<usize>) = (0..sb.len()).partition(|&j| is_inf(&sb[j]));
    debug_assert_eq!(rows_inf.len(), cols_inf.len());

    let mut perm = vec![0usize; sa.len()];
    for (rows, cols) in [(rows_inf, cols_inf), (rows_fin, cols_fin)] {
        let k = rows.len();
        let cost: Vec<f64> = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| powered_cost(sa[i], sb[j], p, scale)))
            .collect();
        for (r, c) in assignment::min_cost_assignment(k, &cost).into_iter().enumerate() {
            perm[rows[r]] = cols[c];
        }
    }
    perm
}

/// The p-th Wasserstein distance, `p` in `[1, inf]`. Returns `+inf` when the
/// barcodes have different numbers of infinite intervals.
pub fn wasserstein(a: &Barcode, b: &Barcode, p: f64) -> Result<f64> {
    Ok(optimal_matching(a, b, p)?.map_or(f64::INFINITY, |m| m.cost))
}

/// The bottleneck distance (`p = inf`).
pub fn bottleneck(a: &Barcode, b: &Barcode) -> Result<f64> {
    wasserstein(a, b, f64::INFINITY)
}

/// `n_max^(1 - 1/p)`, which is `n_max` for `p = inf`.
pub(crate) fn cardinality_factor(n_max: usize, p: f64) -> f64 {
    let n = n_max as f64;
    if p.is_infinite() {
        n
    } else {
        n.powf(1.0 - 1.0 / p)
    }
}

/// Relative error `r_p = 2 n_max^(1 - 1/p) d_p(a, b) / L_max`.
pub fn relative_error(a: &Barcode, b: &Barcode, p: f64) -> Result<f64> {
    check_exponent(p)?;
    a.require_finite()?;
    b.require_finite()?;
    let l_max = a.total_length().max(b.total_length());
    if l_max <= 0.0 {
        return Err(Error::ZeroLength);
    }
    let d = wasserstein(a, b, p)?;
    if d.is_infinite() {
        return Err(Error::InfiniteDistance);
    }
    let n_max = a.len().max(b.len());
    Ok(2.0 * cardinality_factor(n_max, p) * d / l_max)
}
