//! Seeded generators for point clouds and random barcodes.
//!
//! Everything here is deterministic given the seed (ChaCha8), so ordinal
//! experiment results are reproducible across platforms.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::barcode::{Barcode, Interval};
use crate::rips::PointCloud;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points on the unit circle with uniformly distributed angles.
pub fn circle_sample(n: usize, seed: u64) -> PointCloud {
    let mut rng = rng(seed);
    let points = (0..n)
        .map(|_| {
            let a = rng.random_range(0.0..TAU);
            vec![a.cos(), a.sin()]
        })
        .collect();
    PointCloud::new(points).expect("n > 0")
}

/// Quadrilateral tilings whose vertices make up the pattern clouds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    /// Unit squares.
    Squares,
    /// 2 x 1 rectangles, long side horizontal.
    Rectangles,
}

impl Pattern {
    pub const ALL: [Pattern; 2] = [Pattern::Squares, Pattern::Rectangles];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Squares => "squares",
            Pattern::Rectangles => "rectangles",
        }
    }

    /// Tile vertices of a `cols x rows` patch of the tiling.
    pub fn vertices(self, cols: usize, rows: usize) -> Vec<Vec<f64>> {
        let mut pts = Vec::new();
        match self {
            Pattern::Squares => {
                for r in 0..=rows {
                    for c in 0..=cols {
                        pts.push(vec![c as f64, r as f64]);
                    }
                }
            }
            Pattern::Rectangles => {
                for r in 0..=rows {
                    for c in 0..=cols {
                        pts.push(vec![2.0 * c as f64, r as f64]);
                    }
                }
            }
        }
        pts
    }
}

/// Patch sizes `(cols, rows)` used by the pattern experiment.
pub const PATTERN_SIZES: [(usize, usize); 2] = [(4, 4), (7, 6)];

/// Fraction of points disturbed by [`add_noise`].
pub const NOISE_FRACTION: f64 = 0.3;

/// Largest displacement applied to a disturbed point.
pub const NOISE_RADIUS: f64 = 0.2;

/// Disturbs `round(NOISE_FRACTION * n)` distinct points: each one is removed
/// or displaced (even odds) by a uniform vector in the disk of radius
/// [`NOISE_RADIUS`].
pub fn add_noise(points: &[Vec<f64>], seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    let k = (NOISE_FRACTION * points.len() as f64).round() as usize;
    let chosen = rand::seq::index::sample(&mut rng, points.len(), k).into_vec();
    let mut removed = vec![false; points.len()];
    let mut out = points.to_vec();
    for i in chosen {
        if rng.random_bool(0.5) {
            removed[i] = true;
        } else {
            let a = rng.random_range(0.0..TAU);
            let r = NOISE_RADIUS * rng.random::<f64>().sqrt();
            out[i][0] += r * a.cos();
            out[i][1] += r * a.sin();
        }
    }
    out.into_iter()
        .zip(removed)
        .filter_map(|(p, gone)| (!gone).then_some(p))
        .collect()
}

/// One cloud of the pattern experiment.
#[derive(Debug, Clone)]
pub struct PatternCloud {
    pub pattern: Pattern,
    pub size: (usize, usize),
    pub noisy: bool,
    pub cloud: PointCloud,
}

impl PatternCloud {
    pub fn label(&self) -> String {
        format!(
            "{}-{}x{}{}",
            self.pattern.name(),
            self.size.0,
            self.size.1,
            if self.noisy { "-noisy" } else { "" }
        )
    }
}

/// Both patterns at both sizes, clean and noisy.
pub fn pattern_clouds(seed: u64) -> Vec<PatternCloud> {
    let mut out = Vec::new();
    for (pi, pattern) in Pattern::ALL.into_iter().enumerate() {
        for (si, size) in PATTERN_SIZES.into_iter().enumerate() {
            let clean = pattern.vertices(size.0, size.1);
            let noisy = add_noise(&clean, seed ^ (((pi * 2 + si) as u64 + 1) * 0x9E37_79B9));
            for (pts, is_noisy) in [(clean, false), (noisy, true)] {
                out.push(PatternCloud {
                    pattern,
                    size,
                    noisy: is_noisy,
                    cloud: PointCloud::new(pts).expect("patterns are nonempty"),
                });
            }
        }
    }
    out
}

/// `n` finite intervals with births in `[0, 1)` and lengths in `(0, 1]`,
/// followed by `infinite` intervals born in `[0, 1)`.
pub fn random_barcode<R: Rng>(rng: &mut R, n: usize, infinite: usize) -> Barcode {
    let mut iv: Vec<Interval> = (0..n)
        .map(|_| {
            let b = rng.random::<f64>();
            let len = 1.0 - rng.random::<f64>();
            Interval::new(b, b + len).expect("positive length")
        })
        .collect();
    iv.extend((0..infinite).map(|_| Interval::infinite(rng.random::<f64>()).expect("finite birth")));
    Barcode::new(iv)
}

/// A copy of `a` with every finite endpoint moved by at most `delta`
/// (keeping `birth <= death`, births of infinite intervals too) and `extra`
/// new intervals of length at most `2 * delta`.
pub fn perturb<R: Rng>(rng: &mut R, a: &Barcode, delta: f64, extra: usize) -> Barcode {
    let jitter = |rng: &mut R| if delta > 0.0 { rng.random_range(-delta..=delta) } else { 0.0 };
    let mut iv: Vec<Interval> = a
        .intervals()
        .iter()
        .map(|i| {
            let b = i.birth() + jitter(rng);
            if i.is_finite() {
                let d = (i.death() + jitter(rng)).max(b);
                Interval::new(b, d).expect("ordered")
            } else {
                Interval::infinite(b).expect("finite birth")
            }
        })
        .collect();
    for _ in 0..extra {
        let b = rng.random::<f64>();
        let len = 2.0 * delta * rng.random::<f64>();
        iv.push(Interval::new(b, b + len).expect("ordered"));
    }
    Barcode::new(iv)
}
