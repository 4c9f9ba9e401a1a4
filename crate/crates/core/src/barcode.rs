//! Barcodes, subspace predicates and projections.
//!
//! A barcode is a finite multiset of intervals `[birth, death]` where the
//! death may be `+inf`. Three subspaces matter for entropy:
//!
//! * finite barcodes (no infinite deaths),
//! * origin barcodes (every birth is 0),
//! * normalized barcodes (lengths sum to 1).
//!
//! The projections move a barcode into those subspaces: [`Barcode::project_origin`]
//! translates every interval to the origin, [`Barcode::normalize`] divides
//! lengths by the total length and [`Barcode::psi`] composes the two.
//! [`Barcode::truncate_relative`] and [`truncate_absolute`] replace infinite
//! deaths by finite ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used by the subspace predicates.
pub const TOLERANCE: f64 = 1e-12;

/// One persistence class: `[birth, death]` with `death` possibly `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    birth: f64,
    death: f64,
}

impl Interval {
    pub fn new(birth: f64, death: f64) -> Result<Self> {
        let valid = birth.is_finite() && !death.is_nan() && birth <= death;
        if valid {
            Ok(Interval { birth, death })
        } else {
            Err(Error::InvalidInterval { birth, death })
        }
    }

    /// An interval that never dies.
    pub fn infinite(birth: f64) -> Result<Self> {
        Self::new(birth, f64::INFINITY)
    }

    /// A zero-length interval `[t, t]`.
    pub fn point(t: f64) -> Result<Self> {
        Self::new(t, t)
    }

    #[inline]
    pub fn birth(&self) -> f64 {
        self.birth
    }

    #[inline]
    pub fn death(&self) -> f64 {
        self.death
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }

    /// `death - birth`; `+inf` for infinite intervals.
    #[inline]
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }

    /// Half-open aliveness: `birth <= t < death`.
    #[inline]
    pub fn is_alive_at(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }

    fn scaled(&self, c: f64) -> Interval {
        Interval {
            birth: self.birth * c,
            death: self.death * c,
        }
    }
}

/// A finite multiset of intervals, optionally tagged with its homology
/// dimension.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Barcode {
    #[serde(default)]
    dim: Option<usize>,
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Barcode {
            dim: None,
            intervals,
        }
    }

    pub fn with_dim(dim: usize, intervals: Vec<Interval>) -> Self {
        Barcode {
            dim: Some(dim),
            intervals,
        }
    }

    /// Builds a barcode from `(birth, death)` pairs, validating each one.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let intervals = pairs
            .iter()
            .map(|&(b, d)| Interval::new(b, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Barcode::new(intervals))
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn set_dim(&mut self, dim: Option<usize>) {
        self.dim = dim;
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn into_intervals(self) -> Vec<Interval> {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Sum of lengths of the finite intervals.
    pub fn total_length(&self) -> f64 {
        self.intervals
            .iter()
            .filter(|i| i.is_finite())
            .map(Interval::length)
            .sum()
    }

    pub fn infinite_count(&self) -> usize {
        self.intervals.iter().filter(|i| !i.is_finite()).count()
    }

    /// True iff no interval has an infinite death.
    pub fn is_finite(&self) -> bool {
        self.intervals.iter().all(Interval::is_finite)
    }

    /// True iff every birth is 0 (within [`TOLERANCE`]).
    pub fn is_origin(&self) -> bool {
        self.intervals.iter().all(|i| i.birth.abs() <= TOLERANCE)
    }

    /// True iff the lengths sum to 1 (within [`TOLERANCE`]).
    pub fn is_normalized(&self) -> Result<bool> {
        self.require_finite()?;
        Ok((self.total_length() - 1.0).abs() <= TOLERANCE)
    }

    /// Largest finite coordinate among all births and finite deaths.
    pub fn max_finite_coordinate(&self) -> Option<f64> {
        self.intervals
            .iter()
            .flat_map(|i| {
                let death = i.is_finite().then_some(i.death);
                std::iter::once(i.birth).chain(death)
            })
            .reduce(f64::max)
    }

    /// Translates every interval to the origin: `[x, y] -> [0, y - x]`.
    pub fn project_origin(&self) -> Result<Barcode> {
        self.require_finite()?;
        Ok(self.map_intervals(|i| Interval {
            birth: 0.0,
            death: i.length(),
        }))
    }

    /// Divides every length by the total length. Requires an origin barcode.
    pub fn normalize(&self) -> Result<Barcode> {
        self.require_finite()?;
        if !self.is_origin() {
            return Err(Error::NotAtOrigin);
        }
        let total = self.total_length();
        if total <= 0.0 {
            return Err(Error::ZeroLength);
        }
        Ok(self.map_intervals(|i| Interval {
            birth: 0.0,
            death: i.length() / total,
        }))
    }

    /// Normalization composed with translation to the origin.
    pub fn psi(&self) -> Result<Barcode> {
        self.project_origin()?.normalize()
    }

    /// Replaces every infinite death by `u + c`, where `u` is the largest
    /// finite coordinate (birth or finite death) of this barcode.
    pub fn truncate_relative(&self, c: f64) -> Result<Barcode> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::OutOfDomain(format!(
                "truncation offset must be a finite nonnegative number, got {c}"
            )));
        }
        let u = self.max_finite_coordinate().ok_or(Error::EmptyBarcode)?;
        let z = u + c;
        Ok(self.map_intervals(|i| {
            if i.is_finite() {
                *i
            } else {
                Interval {
                    birth: i.birth,
                    death: z,
                }
            }
        }))
    }

    /// Multiplies every endpoint by `c > 0`.
    pub fn scaled(&self, c: f64) -> Barcode {
        self.map_intervals(|i| i.scaled(c))
    }

    /// Drops every infinite interval.
    pub fn finite_part(&self) -> Barcode {
        Barcode {
            dim: self.dim,
            intervals: self.intervals.iter().copied().filter(Interval::is_finite).collect(),
        }
    }

    pub(crate) fn require_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InfiniteInterval)
        }
    }

    fn map_intervals(&self, f: impl Fn(&Interval) -> Interval) -> Barcode {
        Barcode {
            dim: self.dim,
            intervals: self.intervals.iter().map(f).collect(),
        }
    }
}

impl FromIterator<Interval> for Barcode {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Barcode::new(iter.into_iter().collect())
    }
}

/// Replaces every infinite death in every barcode of `family` by `c`.
///
/// `c` must be at least every birth and every finite death in the family so
/// that the truncated intervals still satisfy `birth <= death`.
pub fn truncate_absolute(family: &[Barcode], c: f64) -> Result<Vec<Barcode>> {
    let required = family
        .iter()
        .filter_map(Barcode::max_finite_coordinate)
        .fold(f64::NEG_INFINITY, f64::max);
    if !c.is_finite() || c < required {
        return Err(Error::TruncationConstant {
            constant: c,
            required,
        });
    }
    Ok(family
        .iter()
        .map(|b| {
            b.map_intervals(|i| {
                if i.is_finite() {
                    *i
                } else {
                    Interval {
                        birth: i.birth,
                        death: c,
                    }
                }
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn bc(pairs: &[(f64, f64)]) -> Barcode {
        Barcode::from_pairs(pairs).unwrap()
    }

    fn pairs(b: &Barcode) -> Vec<(f64, f64)> {
        b.intervals().iter().map(|i| (i.birth(), i.death())).collect()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 0.5).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(INF, INF).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        assert!(Interval::new(2.0, 2.0).is_ok());
        assert!(Interval::infinite(3.0).is_ok());
    }

    #[test]
    fn finiteness() {
        assert!(bc(&[(0.0, 1.0), (2.0, 3.0)]).is_finite());
        assert!(!bc(&[(0.0, INF)]).is_finite());
        assert!(Barcode::default().is_finite());
    }

    #[test]
    fn origin_and_normalized() {
        let b = bc(&[(0.0, 0.5), (0.0, 0.5)]);
        assert!(b.is_origin());
        assert!(b.is_normalized().unwrap());
        assert!(!bc(&[(1.0, 2.0)]).is_origin());
        assert!(!bc(&[(0.0, 0.3), (0.0, 0.3)]).is_normalized().unwrap());
        assert_eq!(bc(&[(0.0, INF)]).is_normalized(), Err(Error::InfiniteInterval));
    }

    #[test]
    fn origin_projection() {
        assert_eq!(
            pairs(&bc(&[(1.0, 3.0), (2.0, 2.5)]).project_origin().unwrap()),
            vec![(0.0, 2.0), (0.0, 0.5)]
        );
        assert_eq!(pairs(&bc(&[(0.0, 1.0)]).project_origin().unwrap()), vec![(0.0, 1.0)]);
        assert_eq!(pairs(&bc(&[(5.0, 5.0)]).project_origin().unwrap()), vec![(0.0, 0.0)]);
        assert_eq!(bc(&[(0.0, INF)]).project_origin(), Err(Error::InfiniteInterval));
    }

    #[test]
    fn normalization() {
        assert_eq!(
            pairs(&bc(&[(0.0, 1.0), (0.0, 3.0)]).normalize().unwrap()),
            vec![(0.0, 0.25), (0.0, 0.75)]
        );
        assert_eq!(pairs(&bc(&[(0.0, 2.0)]).normalize().unwrap()), vec![(0.0, 1.0)]);
        assert_eq!(bc(&[(0.0, 0.0), (0.0, 0.0)]).normalize(), Err(Error::ZeroLength));
        assert_eq!(bc(&[(1.0, 2.0)]).normalize(), Err(Error::NotAtOrigin));
    }

    #[test]
    fn psi_projection() {
        assert_eq!(
            pairs(&bc(&[(1.0, 2.0), (4.0, 7.0)]).psi().unwrap()),
            vec![(0.0, 0.25), (0.0, 0.75)]
        );
        assert_eq!(pairs(&bc(&[(0.0, 1.0)]).psi().unwrap()), vec![(0.0, 1.0)]);
        assert_eq!(
            pairs(&bc(&[(3.0, 3.0), (0.0, 2.0)]).psi().unwrap()),
            vec![(0.0, 0.0), (0.0, 1.0)]
        );
    }

    #[test]
    fn relative_truncation() {
        assert_eq!(
            pairs(&bc(&[(0.0, 2.0), (1.0, INF)]).truncate_relative(1.0).unwrap()),
            vec![(0.0, 2.0), (1.0, 3.0)]
        );
        assert_eq!(
            pairs(&bc(&[(0.0, 3.0)]).truncate_relative(5.0).unwrap()),
            vec![(0.0, 3.0)]
        );
        // Only births are finite here; u = 4.
        assert_eq!(
            pairs(&bc(&[(0.0, INF), (4.0, INF)]).truncate_relative(0.5).unwrap()),
            vec![(0.0, 4.5), (4.0, 4.5)]
        );
        assert_eq!(Barcode::default().truncate_relative(1.0), Err(Error::EmptyBarcode));
        assert!(bc(&[(0.0, INF)]).truncate_relative(-1.0).is_err());
    }

    #[test]
    fn absolute_truncation() {
        let family = vec![bc(&[(0.0, INF)]), bc(&[(0.0, 2.0), (1.0, INF)])];
        let out = truncate_absolute(&family, 10.0).unwrap();
        assert_eq!(pairs(&out[0]), vec![(0.0, 10.0)]);
        assert_eq!(pairs(&out[1]), vec![(0.0, 2.0), (1.0, 10.0)]);

        let finite = vec![bc(&[(0.0, 1.0)]), bc(&[(0.5, 2.0)])];
        assert_eq!(truncate_absolute(&finite, 3.0).unwrap(), finite);

        let out = truncate_absolute(&[bc(&[(0.0, INF)]), bc(&[(3.0, INF)])], 5.0).unwrap();
        assert_eq!(pairs(&out[0]), vec![(0.0, 5.0)]);
        assert_eq!(pairs(&out[1]), vec![(3.0, 5.0)]);

        assert!(matches!(
            truncate_absolute(&[bc(&[(0.0, 4.0), (1.0, INF)])], 3.0),
            Err(Error::TruncationConstant { .. })
        ));
    }

    #[test]
    fn dim_tag_survives_projection() {
        let b = Barcode::with_dim(1, vec![Interval::new(1.0, 2.0).unwrap()]);
        assert_eq!(b.psi().unwrap().dim(), Some(1));
    }
}
