//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use pentropy_core::rips::DistanceMatrix;
use pentropy_core::{Barcode, Interval};

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

/// `max{|dx|, |dy|}` for a pair of the padded barcodes as an exact rational,
/// `None` standing for padding and for an infinite cost.
fn raw_cost(a: Option<&Interval>, b: Option<&Interval>) -> Option<BigRational> {
    let finite_diff = |x: f64, y: f64| (rational(x) - rational(y)).abs();
    match (a, b) {
        (None, None) => Some(BigRational::zero()),
        // Best padding position: the middle of the partner.
        (Some(i), None) | (None, Some(i)) => i
            .is_finite()
            .then(|| finite_diff(i.death(), i.birth()) / BigRational::from_integer(2.into())),
        (Some(i), Some(j)) => match (i.is_finite(), j.is_finite()) {
            (true, true) => Some(finite_diff(i.birth(), j.birth()).max(finite_diff(i.death(), j.death()))),
            (false, false) => Some(finite_diff(i.birth(), j.birth())),
            _ => None,
        },
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..n {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// `d_p` by enumerating every bijection of the padded barcodes.
///
/// Costs are exact rationals for `p` in {1, 2, inf}; other exponents sum the
/// rounded `|d|^p` terms exactly. Either way the optimum is rounded once.
pub fn brute_wasserstein(a: &Barcode, b: &Barcode, p: f64) -> f64 {
    let n = a.len().max(b.len());
    let mut best: Option<BigRational> = None;
    'perm: for perm in permutations(n) {
        let mut total = BigRational::zero();
        for (i, &j) in perm.iter().enumerate() {
            let Some(c) = raw_cost(a.intervals().get(i), b.intervals().get(j)) else {
                continue 'perm;
            };
            if p.is_infinite() {
                total = total.max(c);
            } else if p == 1.0 {
                total += c;
            } else if p == 2.0 {
                total += &c * &c;
            } else {
                total += rational(c.to_f64().expect("finite").powf(p));
            }
        }
        if best.as_ref().is_none_or(|b| total < *b) {
            best = Some(total);
        }
    }
    let Some(best) = best else {
        return f64::INFINITY;
    };
    let best = best.to_f64().expect("finite");
    if p.is_infinite() || p == 1.0 {
        best
    } else {
        best.powf(1.0 / p)
    }
}

/// A Z/2 vector over at most 64 basis elements.
type Bits = u64;

fn rank(vectors: &[Bits]) -> usize {
    let mut basis: Vec<Bits> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|x, y| y.cmp(x));
        }
    }
    basis.len()
}

/// Basis of the kernel of the map sending basis vector `i` to `images[i]`.
fn kernel(images: &[Bits]) -> Vec<Bits> {
    // Row-reduce pairs (image, preimage combination).
    let mut pivots: Vec<(Bits, Bits)> = Vec::new();
    let mut out = Vec::new();
    for (i, &img) in images.iter().enumerate() {
        let (mut v, mut combo) = (img, 1u64 << i);
        while let Some(&(pv, pc)) = pivots.iter().find(|(pv, _)| v != 0 && (v ^ pv) < v) {
            v ^= pv;
            combo ^= pc;
        }
        if v == 0 {
            out.push(combo);
        } else {
            pivots.push((v, combo));
        }
    }
    out
}

struct OracleSimplex {
    vertices: Vec<usize>,
    value: f64,
}

/// Barcodes of the Rips filtration of `dm` up to homology `max_dim` and
/// scale `max_scale`, recovered from persistent Betti numbers of every pair
/// of sublevel complexes. Intervals are sorted `(birth, death)` pairs.
#[allow(clippy::needless_range_loop)]
pub fn rank_oracle(dm: &DistanceMatrix, max_dim: usize, max_scale: f64) -> BTreeMap<usize, Vec<(f64, f64)>> {
    let n = dm.len();
    // Every vertex subset of size <= max_dim + 2 within the scale.
    let mut by_dim: Vec<Vec<OracleSimplex>> = (0..=max_dim + 1).map(|_| Vec::new()).collect();
    for mask in 1u32..(1 << n) {
        let vertices: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if vertices.len() > max_dim + 2 {
            continue;
        }
        let mut value = 0.0f64;
        for (k, &u) in vertices.iter().enumerate() {
            for &v in &vertices[k + 1..] {
                value = value.max(dm.get(u, v));
            }
        }
        if value <= max_scale {
            by_dim[vertices.len() - 1].push(OracleSimplex { vertices, value });
        }
    }
    for simplices in &by_dim {
        assert!(simplices.len() <= 64, "oracle handles at most 64 simplices per dimension");
    }

    let mut times: Vec<f64> = by_dim.iter().flatten().map(|s| s.value).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();

    let boundary = |dim: usize, s: &OracleSimplex| -> Bits {
        if dim == 0 {
            return 0;
        }
        let mut bits = 0;
        for skip in 0..s.vertices.len() {
            let face: Vec<usize> = s
                .vertices
                .iter()
                .enumerate()
                .filter_map(|(k, &v)| (k != skip).then_some(v))
                .collect();
            let idx = by_dim[dim - 1]
                .iter()
                .position(|f| f.vertices == face)
                .expect("faces of a Rips simplex are in the complex");
            bits |= 1 << idx;
        }
        bits
    };

    let mut out = BTreeMap::new();
    for m in 0..=max_dim {
        // Persistent Betti number beta^{i,j} = rank [Z_m(K_i) | B_m(K_j)] - rank B_m(K_j).
        let cycles_at = |i: usize| -> Vec<Bits> {
            let members: Vec<usize> = (0..by_dim[m].len())
                .filter(|&k| by_dim[m][k].value <= times[i])
                .collect();
            let images: Vec<Bits> = members.iter().map(|&k| boundary(m, &by_dim[m][k])).collect();
            kernel(&images)
                .into_iter()
                .map(|combo| {
                    members
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| combo & (1 << bit) != 0)
                        .fold(0, |acc, (_, &k)| acc | (1 << k))
                })
                .collect()
        };
        let boundaries_at = |j: usize| -> Vec<Bits> {
            by_dim[m + 1]
                .iter()
                .filter(|s| s.value <= times[j])
                .map(|s| boundary(m + 1, s))
                .collect()
        };
        let k = times.len();
        let mut beta = vec![vec![0i64; k]; k];
        for i in 0..k {
            let z = cycles_at(i);
            for j in i..k {
                let b = boundaries_at(j);
                let mut both = z.clone();
                both.extend_from_slice(&b);
                beta[i][j] = (rank(&both) - rank(&b)) as i64;
            }
        }
        let get = |i: isize, j: usize| if i < 0 { 0 } else { beta[i as usize][j] };
        let mut intervals = Vec::new();
        for i in 0..k {
            let ii = i as isize;
            for j in i + 1..k {
                let mu = get(ii, j - 1) - get(ii, j) - get(ii - 1, j - 1) + get(ii - 1, j);
                assert!(mu >= 0, "negative multiplicity");
                intervals.extend(std::iter::repeat_n((times[i], times[j]), mu as usize));
            }
            let mu = get(ii, k - 1) - get(ii - 1, k - 1);
            assert!(mu >= 0, "negative multiplicity");
            intervals.extend(std::iter::repeat_n((times[i], f64::INFINITY), mu as usize));
        }
        intervals.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        out.insert(m, intervals);
    }
    out
}

/// Sorted `(birth, death)` pairs of a barcode.
pub fn sorted_pairs(b: &Barcode) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = b.intervals().iter().map(|i| (i.birth(), i.death())).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    v
}
