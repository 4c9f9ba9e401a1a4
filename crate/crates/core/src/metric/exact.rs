//! Error-free transformations used to report matching costs exactly.
//!
//! Two matchings with the same real cost can round differently when their
//! terms are computed and summed in floating point. Evaluating the chosen
//! matching with exact differences, exact squares and a correctly rounded
//! sum makes the reported distance a function of the real optimum only.

/// `a - b` as an unevaluated sum `hi + lo` (Knuth's TwoSum).
fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let hi = a - b;
    let bv = a - hi;
    let av = hi + bv;
    let lo = (a - av) + (bv - b);
    (hi, lo)
}

/// `|a - b|` exactly, as a normalized `(hi, lo)` pair.
pub(super) fn abs_diff(a: f64, b: f64) -> (f64, f64) {
    let (hi, lo) = two_diff(a, b);
    if hi < 0.0 {
        (-hi, -lo)
    } else {
        (hi, lo)
    }
}

/// Larger of two normalized pairs.
pub(super) fn max_pair(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    if (x.0, x.1) >= (y.0, y.1) {
        x
    } else {
        y
    }
}

/// `a * b` as `hi + lo` (FMA-based TwoProduct).
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    (hi, a.mul_add(b, -hi))
}

/// Exact accumulator with a correctly rounded total (Shewchuk / `fsum`).
#[derive(Debug, Default)]
pub(super) struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn add(&mut self, x: f64) {
        let mut x = x;
        let mut i = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        self.partials.truncate(i);
        self.partials.push(x);
    }

    /// Adds `(hi + lo)^2` exactly.
    pub fn add_square(&mut self, (hi, lo): (f64, f64)) {
        let (a, b) = two_prod(hi, hi);
        let (c, d) = two_prod(2.0 * hi, lo);
        let (e, f) = two_prod(lo, lo);
        for t in [a, b, c, d, e, f] {
            self.add(t);
        }
    }

    pub fn total(&self) -> f64 {
        let p = &self.partials;
        let Some(mut n) = p.len().checked_sub(1) else {
            return 0.0;
        };
        let mut hi = p[n];
        let mut lo = 0.0;
        while n > 0 {
            let x = hi;
            n -= 1;
            let y = p[n];
            hi = x + y;
            lo = y - (hi - x);
            if lo != 0.0 {
                break;
            }
        }
        // Round half to even across the remaining partials.
        if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
        hi
    }
}
