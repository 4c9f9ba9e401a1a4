use crate::error::{Error, Result};

/// A right-continuous piecewise-constant function with compact support.
///
/// Value `values[i]` is held on `[breakpoints[i], breakpoints[i + 1])`; the
/// function is 0 outside `[breakpoints[0], breakpoints[last])`. Instances are
/// canonical: adjacent segments never share a value and the first and last
/// segments are nonzero, so structural equality is functional equality.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// The zero function.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(Self::zero());
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::OutOfDomain(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if breakpoints.iter().any(|t| !t.is_finite()) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutOfDomain("step function data must be finite".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfDomain("breakpoints must be strictly increasing".into()));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    /// Builds from contiguous `(start, end, value)` segments. Gaps between
    /// consecutive segments are filled with 0.
    pub fn from_segments(segments: &[(f64, f64, f64)]) -> Result<Self> {
        let mut breakpoints = Vec::with_capacity(segments.len() + 1);
        let mut values = Vec::with_capacity(segments.len());
        for &(start, end, value) in segments {
            match breakpoints.last() {
                None => breakpoints.push(start),
                Some(&last) if last < start => {
                    values.push(0.0);
                    breakpoints.push(start);
                }
                Some(&last) if last > start => {
                    return Err(Error::OutOfDomain("segments overlap or are unsorted".into()))
                }
                Some(_) => {}
            }
            breakpoints.push(end);
            values.push(value);
        }
        Self::new(breakpoints, values)
    }

    fn canonical(breakpoints: Vec<f64>, values: Vec<f64>) -> Self {
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<f64> = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            if vals.last() == Some(&v) {
                // Extend the previous segment.
                *bps.last_mut().expect("a segment has an end") = breakpoints[i + 1];
                continue;
            }
            if bps.is_empty() {
                bps.push(breakpoints[i]);
            }
            vals.push(v);
            bps.push(breakpoints[i + 1]);
        }
        // Zero segments at either end are indistinguishable from outside.
        while vals.first() == Some(&0.0) {
            vals.remove(0);
            bps.remove(0);
        }
        while vals.last() == Some(&0.0) {
            vals.pop();
            bps.pop();
        }
        if vals.is_empty() {
            bps.clear();
        }
        StepFunction {
            breakpoints: bps,
            values: vals,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `(start, end, value)` for every segment.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.breakpoints[i], self.breakpoints[i + 1], v))
    }

    /// Closed-open support `[t_0, t_k)`, `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        Some((*self.breakpoints.first()?, *self.breakpoints.last()?))
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        // Index of the last breakpoint <= t.
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        if idx == 0 || idx > self.values.len() {
            0.0
        } else {
            self.values[idx - 1]
        }
    }

    /// `sum |v_i| (t_i - t_{i-1})`.
    pub fn l1_norm(&self) -> f64 {
        self.segments().map(|(a, b, v)| v.abs() * (b - a)).sum()
    }

    /// Signed integral.
    pub fn integral(&self) -> f64 {
        self.segments().map(|(a, b, v)| v * (b - a)).sum()
    }

    /// Largest value taken, counting the 0 outside the support.
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Multiplies every value by `k`.
    pub fn scale_values(&self, k: f64) -> StepFunction {
        Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * k).collect(),
        )
    }
}

/// `integral |f - g|`, evaluated exactly on the merged breakpoint grid.
pub fn l1_distance(f: &StepFunction, g: &StepFunction) -> f64 {
    let mut grid: Vec<f64> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .copied()
        .collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid.windows(2)
        .map(|w| (f.evaluate(w[0]) - g.evaluate(w[0])).abs() * (w[1] - w[0]))
        .sum()
}
