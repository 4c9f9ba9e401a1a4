use std::collections::BTreeMap;

use proptest::prelude::*;

use pentropy_core::summary::{es_function, feature_ranking, l1_distance, nes_function, tes_function};
use pentropy_core::{persistent_entropy, relative_error, wasserstein, Barcode, InfPolicy, Interval};

fn interval() -> impl Strategy<Value = Interval> {
    (0.0..4.0f64, 0.01..3.0f64).prop_map(|(b, len)| Interval::new(b, b + len).unwrap())
}

fn barcode(max: usize) -> impl Strategy<Value = Barcode> {
    prop::collection::vec(interval(), 1..=max).prop_map(Barcode::new)
}

/// At least two intervals, so ES is not identically zero.
fn barcode_with_mass(max: usize) -> impl Strategy<Value = Barcode> {
    prop::collection::vec(interval(), 2..=max).prop_map(Barcode::new)
}

/// `a` and a copy with endpoints moved by up to `delta` plus a few short
/// extra intervals.
fn nearby_pair() -> impl Strategy<Value = (Barcode, Barcode)> {
    (
        barcode_with_mass(8),
        prop::collection::vec((-1.0..=1.0f64, -1.0..=1.0f64), 8),
        -4.0..-0.5f64,
        prop::collection::vec((0.0..4.0f64, 0.0..=2.0f64), 0..=2),
    )
        .prop_map(|(a, jitter, log_delta, extra)| {
            let delta = 10f64.powf(log_delta);
            let mut iv: Vec<Interval> = a
                .intervals()
                .iter()
                .zip(&jitter)
                .map(|(i, &(jb, jd))| {
                    let b = i.birth() + delta * jb;
                    Interval::new(b, (i.death() + delta * jd).max(b)).unwrap()
                })
                .collect();
            iv.extend(extra.iter().map(|&(b, len)| Interval::new(b, b + delta * len).unwrap()));
            (a, Barcode::new(iv))
        })
}

fn es_bound(a: &Barcode, b: &Barcode) -> f64 {
    let r = relative_error(a, b, f64::INFINITY).unwrap();
    let d_inf = wasserstein(a, b, f64::INFINITY).unwrap();
    let n_max = a.len().max(b.len()) as f64;
    let l_min = a.total_length().min(b.total_length());
    let first = if r == 0.0 { 0.0 } else { 2.0 * l_min * r * (2.0 * r).ln().abs() };
    first + 2.0 * d_inf * n_max.ln()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn es_stability((a, b) in nearby_pair()) {
        prop_assume!(relative_error(&a, &b, f64::INFINITY).unwrap() <= 0.25);
        let d = l1_distance(&es_function(&a).unwrap(), &es_function(&b).unwrap());
        prop_assert!(d <= es_bound(&a, &b) + 1e-9);
    }

    #[test]
    fn nes_distance_within_twice_relative_es_distance((a, b) in nearby_pair()) {
        let (sa, sb) = (es_function(&a).unwrap(), es_function(&b).unwrap());
        let norm = sa.l1_norm().min(sb.l1_norm());
        prop_assume!(norm > 0.0);
        let d = l1_distance(&nes_function(&a).unwrap(), &nes_function(&b).unwrap());
        prop_assert!(d <= 2.0 * l1_distance(&sa, &sb) / norm + 1e-9);
    }

    #[test]
    fn integral_is_length_weighted_entropy(a in barcode(12)) {
        let l = a.total_length();
        let expected: f64 = a
            .intervals()
            .iter()
            .map(|i| {
                let p = i.length() / l;
                i.length() * -p * p.ln()
            })
            .sum();
        prop_assert!((es_function(&a).unwrap().integral() - expected).abs() <= 1e-10);
    }

    #[test]
    fn sup_bounded_by_entropy(a in barcode(12)) {
        let e = persistent_entropy(&a).unwrap().entropy;
        prop_assert!(es_function(&a).unwrap().sup() <= e + 1e-12);
    }

    #[test]
    fn sup_reaches_entropy_when_all_overlap(
        lens in prop::collection::vec((0.01..2.0f64, 0.01..2.0f64), 1..12),
        t in -5.0..5.0f64,
    ) {
        // Every interval contains t.
        let a = Barcode::new(lens.iter().map(|&(l, r)| Interval::new(t - l, t + r).unwrap()).collect());
        let e = persistent_entropy(&a).unwrap().entropy;
        let s = es_function(&a).unwrap();
        prop_assert!((s.sup() - e).abs() <= 1e-12);
        prop_assert!((s.evaluate(t) - e).abs() <= 1e-12);
    }

    #[test]
    fn nes_integrates_to_one(a in barcode_with_mass(12)) {
        let f = nes_function(&a).unwrap();
        prop_assert!((f.integral() - 1.0).abs() <= 1e-12);
        prop_assert!((f.l1_norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn nes_is_scale_free_in_value(a in barcode_with_mass(8), c in 0.1..10.0f64) {
        // Scaling lengths does not change the weights, so S(cA)(ct) = S(A)(t)
        // and the NES values shrink by c.
        let s = es_function(&a).unwrap();
        let sc = es_function(&a.scaled(c)).unwrap();
        for (lo, hi, v) in s.segments() {
            let mid = 0.5 * (lo + hi);
            prop_assert!((sc.evaluate(c * mid) - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn tes_scales_with_the_barcode(a in barcode(10), c in 0.1..10.0f64) {
        let (f, profiles) = tes_function(&a).unwrap();
        let (fc, profiles_c) = tes_function(&a.scaled(c)).unwrap();
        prop_assert_eq!(profiles.len(), profiles_c.len());
        for (p, q) in profiles.iter().zip(&profiles_c) {
            prop_assert_eq!(&p.alive_count_per_dim, &q.alive_count_per_dim);
            prop_assert!((q.tes_value - c * p.tes_value).abs() <= 1e-9 * (1.0 + c * p.tes_value));
        }
        for (lo, hi, v) in f.segments() {
            let mid = 0.5 * (lo + hi);
            prop_assert!((fc.evaluate(c * mid) - c * v).abs() <= 1e-9 * (1.0 + c * v.abs()));
        }
    }

    #[test]
    fn ranking_order_survives_rescaling(
        h0 in prop::collection::vec(0.01..3.0f64, 0..6),
        h1 in prop::collection::vec(interval(), 0..5),
        c in 0.1..10.0f64,
    ) {
        let mut d0: Vec<Interval> = h0.iter().map(|&d| Interval::new(0.0, d).unwrap()).collect();
        d0.push(Interval::infinite(0.0).unwrap());
        let input: BTreeMap<usize, Barcode> =
            BTreeMap::from([(0, Barcode::with_dim(0, d0)), (1, Barcode::with_dim(1, h1))]);
        let scaled: BTreeMap<usize, Barcode> = input
            .iter()
            .map(|(&d, b)| {
                let mut s = b.scaled(c);
                s.set_dim(Some(d));
                (d, s)
            })
            .collect();
        for policy in [InfPolicy::Tau(0.5), InfPolicy::Drop] {
            let scaled_policy = match policy {
                InfPolicy::Tau(k) => InfPolicy::Tau(c * k),
                other => other,
            };
            let r = feature_ranking(&input, policy, 10).unwrap();
            let rc = feature_ranking(&scaled, scaled_policy, 10).unwrap();
            let profiles = |v: &[pentropy_core::AliveProfile]| {
                v.iter().map(|p| p.alive_count_per_dim.clone()).collect::<Vec<_>>()
            };
            prop_assert_eq!(profiles(&r), profiles(&rc));
        }
    }

    #[test]
    fn distance_is_a_metric_on_step_functions(a in barcode(6), b in barcode(6), c in barcode(6)) {
        let (fa, fb, fc) = (es_function(&a).unwrap(), es_function(&b).unwrap(), es_function(&c).unwrap());
        prop_assert_eq!(l1_distance(&fa, &fa), 0.0);
        prop_assert!((l1_distance(&fa, &fb) - l1_distance(&fb, &fa)).abs() <= 1e-12);
        prop_assert!(l1_distance(&fa, &fb) <= l1_distance(&fa, &fc) + l1_distance(&fc, &fb) + 1e-12);
    }
}

#[test]
fn nes_distance_can_exceed_relative_es_distance() {
    // Lengthening one interval raises S(B) on a region where S(A) already
    // carries half the mass; normalization spreads the change everywhere.
    let a = Barcode::from_pairs(&[(0.0, 1.0), (0.0, 1.0), (1.0, 2.0), (1.0, 2.0)]).unwrap();
    let b = Barcode::from_pairs(&[(0.0, 1.0), (0.0, 1.0), (1.0, 2.0), (1.0, 2.05)]).unwrap();
    let (sa, sb) = (es_function(&a).unwrap(), es_function(&b).unwrap());
    let relative = l1_distance(&sa, &sb) / sa.l1_norm().min(sb.l1_norm());
    let d = l1_distance(&nes_function(&a).unwrap(), &nes_function(&b).unwrap());
    assert!((relative - 0.015955).abs() < 1e-6);
    assert!((d - 0.024935).abs() < 1e-6);
    assert!(d > relative && d <= 2.0 * relative);
}

#[test]
fn two_clusters_rank_two_components_first() {
    use pentropy_core::rips::{pairwise_distances, persistence, rips_complex, PointCloud};
    let mut pts = Vec::new();
    for &(cx, cy) in &[(0.0, 0.0), (50.0, 0.0)] {
        for k in 0..6 {
            let a = k as f64 * 1.1;
            pts.push(vec![cx + 0.3 * a.cos(), cy + 0.3 * a.sin() + 0.05 * k as f64]);
        }
    }
    let dm = pairwise_distances(&PointCloud::new(pts).unwrap());
    let fc = rips_complex(&dm, 2, dm.diameter()).unwrap();
    let bars = persistence(&fc, 1).unwrap();
    let ranking = feature_ranking(&bars, InfPolicy::Tau(0.0), 3).unwrap();
    assert_eq!(ranking[0].alive_count_per_dim, BTreeMap::from([(0, 2), (1, 0)]));
}
