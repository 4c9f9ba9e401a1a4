//! Vietoris-Rips filtrations and Z/2 persistent homology.
//!
//! A simplex enters the Rips filtration at the largest pairwise distance
//! among its vertices; vertices enter at 0. [`rips_complex`] enumerates every
//! simplex up to a dimension and scale cap by expanding cliques of the
//! neighborhood graph, and [`persistence`] reduces the boundary matrix to
//! read off the barcodes.

mod reduction;

pub use reduction::{persistence, persistence_with, reduce, PersistenceOptions, Reduction, ReductionPairs};

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Symmetry tolerance for distance matrices.
const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// A nonempty set of points of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::EmptyInput("point cloud has no points".into()))?;
        let expected = first.len();
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.len() != expected) {
            return Err(Error::DimensionMismatch {
                index,
                expected,
                found: p.len(),
            });
        }
        Ok(PointCloud { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }
}

/// A symmetric nonnegative matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Row-major `n x n` entries.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidDistanceMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidDistanceMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let x = data[i * n + j];
                if !(x >= 0.0 && x.is_finite()) {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "entry ({i}, {j}) = {x} is not a finite nonnegative number"
                    )));
                }
                if (x - data[j * n + i]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Largest entry.
    pub fn diameter(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }
}

/// Euclidean distances between all pairs of points.
pub fn pairwise_distances(cloud: &PointCloud) -> DistanceMatrix {
    let n = cloud.len();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.points[i]
                .iter()
                .zip(&cloud.points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    DistanceMatrix { n, data }
}

/// A simplex with its filtration value. Vertices are sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    value: f64,
}

impl Simplex {
    pub fn new(mut vertices: Vec<usize>, value: f64) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!(
                "simplex needs distinct vertices, got {vertices:?}"
            )));
        }
        if !value.is_finite() {
            return Err(Error::InvalidComplex(format!("non-finite filtration value {value}")));
        }
        Ok(Simplex { vertices, value })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Filtration order: value, then dimension, then vertices.
    pub fn filtration_cmp(&self, other: &Simplex) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Simplices in filtration order, closed under faces.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    /// Boundary of each simplex as ascending indices of its facets.
    boundaries: Vec<Vec<usize>>,
}

impl FilteredComplex {
    /// Validates ordering and closure and builds the boundary matrix.
    pub fn new(simplices: Vec<Simplex>) -> Result<Self> {
        if let Some(k) = simplices
            .windows(2)
            .position(|w| w[0].filtration_cmp(&w[1]) != Ordering::Less)
        {
            return Err(Error::InvalidComplex(format!(
                "simplices {k} and {} are out of filtration order or repeated",
                k + 1
            )));
        }
        let index: HashMap<&[usize], usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.as_slice(), i))
            .collect();
        let mut boundaries = Vec::with_capacity(simplices.len());
        let mut facet = Vec::new();
        for (j, s) in simplices.iter().enumerate() {
            let mut column = Vec::with_capacity(s.vertices.len());
            if s.dim() > 0 {
                for skip in 0..s.vertices.len() {
                    facet.clear();
                    facet.extend(
                        s.vertices
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != skip)
                            .map(|(_, &v)| v),
                    );
                    match index.get(facet.as_slice()) {
                        Some(&i) if i < j => column.push(i),
                        Some(_) => {
                            return Err(Error::InvalidComplex(format!(
                                "face {facet:?} enters after {:?}",
                                s.vertices
                            )))
                        }
                        None => {
                            return Err(Error::InvalidComplex(format!(
                                "face {facet:?} of {:?} is missing",
                                s.vertices
                            )))
                        }
                    }
                }
                column.sort_unstable();
            }
            boundaries.push(column);
        }
        Ok(FilteredComplex {
            simplices,
            boundaries,
        })
    }

    /// Sorts `simplices` into filtration order before validating.
    pub fn from_unsorted(mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by(Simplex::filtration_cmp);
        Self::new(simplices)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub(crate) fn boundary(&self, j: usize) -> &[usize] {
        &self.boundaries[j]
    }

    /// Number of simplices of each dimension with value `<= t`.
    pub fn simplex_counts_at(&self, t: f64) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for s in self.simplices.iter().take_while(|s| s.value <= t) {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Distinct filtration values in increasing order.
    pub fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.simplices.iter().map(|s| s.value).collect();
        v.dedup();
        v
    }
}

/// The Vietoris-Rips filtration truncated at `max_scale`, with simplices up
/// to dimension `max_dim + 1` (enough to compute homology up to `max_dim`).
pub fn rips_complex(dm: &DistanceMatrix, max_dim: usize, max_scale: f64) -> Result<FilteredComplex> {
    if max_scale.is_nan() || max_scale <= 0.0 {
        return Err(Error::OutOfDomain(format!("max_scale must be positive, got {max_scale}")));
    }
    let n = dm.len();
    let top = max_dim + 1;
    // Higher neighbors only, so each clique is generated once.
    let upper: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| dm.get(i, j) <= max_scale).collect())
        .collect();

    let mut simplices = Vec::new();
    let mut stack: Vec<(Vec<usize>, f64, Vec<usize>)> = Vec::new();
    for (v, up) in upper.iter().enumerate() {
        stack.push((vec![v], 0.0, up.clone()));
        while let Some((vertices, value, candidates)) = stack.pop() {
            if vertices.len() <= top {
                for (k, &w) in candidates.iter().enumerate() {
                    let next_value = vertices.iter().map(|&u| dm.get(u, w)).fold(value, f64::max);
                    let next_candidates: Vec<usize> = candidates[k + 1..]
                        .iter()
                        .copied()
                        .filter(|&x| dm.get(w, x) <= max_scale)
                        .collect();
                    let mut next = vertices.clone();
                    next.push(w);
                    stack.push((next, next_value, next_candidates));
                }
            }
            simplices.push(Simplex { vertices, value });
        }
    }
    FilteredComplex::from_unsorted(simplices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(points: &[&[f64]]) -> PointCloud {
        PointCloud::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn unit_square() -> PointCloud {
        cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])
    }

    #[test]
    fn distances() {
        let dm = pairwise_distances(&cloud(&[&[0.0, 0.0], &[3.0, 4.0]]));
        assert_eq!(dm.get(0, 1), 5.0);
        assert_eq!(dm.get(1, 0), 5.0);
        assert_eq!(dm.get(0, 0), 0.0);

        let dm = pairwise_distances(&cloud(&[&[1.0, 2.0]]));
        assert_eq!(dm.len(), 1);
        assert_eq!(dm.get(0, 0), 0.0);

        let dm = pairwise_distances(&unit_square());
        assert_eq!(dm.get(0, 1), 1.0);
        assert_eq!(dm.get(0, 2), 2f64.sqrt());
        assert_eq!(dm.get(1, 3), 2f64.sqrt());
    }

    #[test]
    fn cloud_validation() {
        assert!(matches!(PointCloud::new(vec![]), Err(Error::EmptyInput(_))));
        assert!(matches!(
            PointCloud::new(vec![vec![0.0, 0.0], vec![1.0]]),
            Err(Error::DimensionMismatch { index: 1, expected: 2, found: 1 })
        ));
    }

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0]).is_err());
    }

    #[test]
    fn triangle_complex() {
        let dm = DistanceMatrix::new(3, vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0]).unwrap();
        let fc = rips_complex(&dm, 1, 2.0).unwrap();
        let by_dim = |d: usize| fc.simplices().iter().filter(|s| s.dim() == d).collect::<Vec<_>>();
        assert_eq!(by_dim(0).len(), 3);
        assert!(by_dim(0).iter().all(|s| s.value() == 0.0));
        assert_eq!(by_dim(1).len(), 3);
        assert!(by_dim(1).iter().all(|s| s.value() == 1.0));
        assert_eq!(by_dim(2).len(), 1);
        assert_eq!(by_dim(2)[0].value(), 1.0);
    }

    #[test]
    fn square_without_diagonals() {
        let fc = rips_complex(&pairwise_distances(&unit_square()), 1, 1.2).unwrap();
        assert_eq!(fc.simplex_counts_at(f64::INFINITY), vec![4, 4]);
        assert!(fc.simplices().iter().filter(|s| s.dim() == 1).all(|s| s.value() == 1.0));
    }

    #[test]
    fn scale_below_min_distance() {
        let fc = rips_complex(&pairwise_distances(&unit_square()), 2, 0.5).unwrap();
        assert_eq!(fc.simplex_counts_at(f64::INFINITY), vec![4]);
        assert!(rips_complex(&pairwise_distances(&unit_square()), 2, 0.0).is_err());
    }

    #[test]
    fn full_complex_sizes() {
        // Five points: C(5,1..4) simplices up to dimension 3.
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let dm = pairwise_distances(&PointCloud::new(pts).unwrap());
        let fc = rips_complex(&dm, 2, f64::INFINITY).unwrap();
        assert_eq!(fc.simplex_counts_at(f64::INFINITY), vec![5, 10, 10, 5]);
    }

    #[test]
    fn complex_validation() {
        let v = |vs: Vec<usize>, t: f64| Simplex::new(vs, t).unwrap();
        // Missing face.
        assert!(FilteredComplex::new(vec![v(vec![0], 0.0), v(vec![0, 1], 1.0)]).is_err());
        // Unsorted.
        assert!(FilteredComplex::new(vec![v(vec![1], 0.0), v(vec![0], 0.0)]).is_err());
        // Face after coface.
        assert!(FilteredComplex::new(vec![
            v(vec![0], 0.0),
            v(vec![1], 2.0),
            v(vec![0, 1], 1.0)
        ])
        .is_err());
        assert!(Simplex::new(vec![1, 1], 0.0).is_err());
        assert!(FilteredComplex::new(vec![v(vec![0], 0.0), v(vec![1], 0.0), v(vec![0, 1], 1.0)]).is_ok());
    }
}
