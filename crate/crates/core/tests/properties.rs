//! Property tests for the descriptor and statistics invariants.

use proptest::prelude::*;

use hypoquant_core::binary::{hypo_load, subregion_counts, tessellate};
use hypoquant_core::eigen::select_components;
use hypoquant_core::preprocess::{extract_roi, normalize_intensity, normalize_roi, RoiIntensities};
use hypoquant_core::sampling::{balanced_sample, raster_shuffle_sample};
use hypoquant_core::stats::{
    accuracy, kendall_tau, rank_to_clusters, Cluster, Clustering, Ranking,
};
use hypoquant_core::{GrayImage, Hemisphere, RoiMask};

fn image_strategy() -> impl Strategy<Value = GrayImage> {
    (1usize..8, 1usize..8).prop_flat_map(|(w, h)| {
        proptest::collection::vec(-1000.0f64..1000.0, w * h)
            .prop_map(move |pixels| GrayImage::new(w, h, pixels).unwrap())
    })
}

fn roi_values() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.5f64..500.0, 1..40)
}

fn roi_from(values: Vec<f64>) -> RoiIntensities {
    let coords = (0..values.len()).map(|i| (0, i)).collect();
    RoiIntensities::new(values, coords).unwrap()
}

fn mask_strategy() -> impl Strategy<Value = RoiMask> {
    (2usize..12, 2usize..12).prop_flat_map(|(w, h)| {
        proptest::collection::btree_set((0..h, 0..w), 1..30).prop_map(move |coords| {
            RoiMask::new(w, h, coords.into_iter().collect(), Hemisphere::Whole).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn normalize_intensity_is_idempotent(image in image_strategy()) {
        let once = normalize_intensity(&image);
        let twice = normalize_intensity(&once);
        for (a, b) in once.pixels().iter().zip(twice.pixels()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let (min, max) = once.min_max();
        prop_assert!(min == 0.0);
        prop_assert!(max == 255.0 || (min == 0.0 && max == 0.0));
    }

    #[test]
    fn normalize_roi_recenters_and_commutes_with_permutation(
        values in roi_values(),
        swap in any::<prop::sample::Index>(),
    ) {
        let out = normalize_roi(&values).unwrap();
        let mean: f64 = out.iter().sum::<f64>() / out.len() as f64;
        prop_assert!(mean.abs() < 1e-12, "mean {mean}");

        // Each output depends only on its own input and the shared mean, so
        // permuting the input permutes the output the same way (up to the
        // reordered float summation in the mean).
        let mut permuted = values.clone();
        let i = swap.index(values.len());
        permuted.swap(0, i);
        let mut expected: Vec<f64> = out.clone();
        expected.swap(0, i);
        for (a, b) in normalize_roi(&permuted).unwrap().iter().zip(&expected) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn extract_roi_is_a_raster_subsequence(image in image_strategy(), seed in 0u64..1000) {
        // Build an arbitrary mask over the image grid from the seed.
        let mut rng = hypoquant_core::rng::SplitMix64::new(seed);
        let mut members = Vec::new();
        for r in 0..image.height() {
            for c in 0..image.width() {
                if rng.next_u64().is_multiple_of(3) {
                    members.push((r, c));
                }
            }
        }
        prop_assume!(!members.is_empty());
        let mask = RoiMask::new(image.width(), image.height(), members, Hemisphere::Whole).unwrap();
        let roi = extract_roi(&image, &mask).unwrap();

        // The values appear in the row-major pixel list in the same order.
        let mut remaining = image.pixels().iter();
        for &v in roi.values() {
            prop_assert!(remaining.any(|&p| p == v));
        }
    }

    #[test]
    fn balanced_sample_endpoints_and_convexity(
        values in proptest::collection::vec(-500.0f64..500.0, 2..60),
        len_fraction in 0.0f64..1.0,
    ) {
        let n = values.len();
        let len = 2 + ((n - 2) as f64 * len_fraction) as usize;
        let roi = roi_from(values.clone());
        let out = balanced_sample("s", &roi, len).unwrap().values;
        prop_assert_eq!(out.len(), len);
        prop_assert_eq!(out[0], values[0]);
        prop_assert_eq!(out[len - 1], values[n - 1]);
        let (min, max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
        for &v in &out {
            prop_assert!(v >= min - 1e-12 && v <= max + 1e-12);
        }
    }

    #[test]
    fn balanced_sample_of_affine_ramp_is_affine(
        n in 2usize..60,
        len_fraction in 0.0f64..1.0,
        slope in -10.0f64..10.0,
        intercept in -100.0f64..100.0,
    ) {
        let len = 2 + ((n - 2) as f64 * len_fraction) as usize;
        let values: Vec<f64> = (0..n).map(|i| slope * i as f64 + intercept).collect();
        let out = balanced_sample("s", &roi_from(values), len).unwrap().values;
        // An affine sequence resampled at even spacing stays affine.
        let step = (out[len - 1] - out[0]) / (len - 1) as f64;
        for (k, &v) in out.iter().enumerate() {
            prop_assert!((v - (out[0] + step * k as f64)).abs() < 1e-9);
        }
    }

    #[test]
    fn shuffle_sample_is_deterministic_multiset_subset(
        values in proptest::collection::vec(-500.0f64..500.0, 1..60),
        len_fraction in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let n = values.len();
        let len = 1 + ((n - 1) as f64 * len_fraction) as usize;
        let roi = roi_from(values.clone());
        let a = raster_shuffle_sample("s", &roi, len, seed).unwrap();
        let b = raster_shuffle_sample("s", &roi, len, seed).unwrap();
        prop_assert_eq!(&a, &b);

        let mut pool = values;
        for v in &a.values {
            let at = pool.iter().position(|p| p == v);
            prop_assert!(at.is_some(), "sampled value not drawn from input");
            pool.remove(at.unwrap());
        }
    }

    #[test]
    fn hypo_load_is_monotone_and_permutation_invariant(
        values in proptest::collection::vec(-100.0f64..100.0, 1..50),
        t1 in -120.0f64..120.0,
        t2 in -120.0f64..120.0,
        swap in any::<prop::sample::Index>(),
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let a = hypo_load(&values, lo).unwrap();
        let b = hypo_load(&values, hi).unwrap();
        prop_assert!(a.load <= b.load);

        let mut permuted = values.clone();
        let i = swap.index(values.len());
        permuted.swap(0, i);
        prop_assert_eq!(hypo_load(&permuted, lo).unwrap().load, a.load);
    }

    #[test]
    fn tessellation_partitions_and_band_counts_sum(
        mask in mask_strategy(),
        bands in 1usize..8,
        threshold in -0.5f64..1.5,
        seed in 0u64..1000,
    ) {
        let tess = tessellate(&mask, bands).unwrap();
        // Partition: every mask pixel in exactly one band.
        let mut seen: Vec<(usize, usize)> = tess.bands.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, mask.members().to_vec());

        // Pixel values from the seed; the per-band hypo counts sum to the
        // whole-ROI count, which makes the weighted band fractions equal the
        // whole-ROI load as an exact rational identity.
        let mut rng = hypoquant_core::rng::SplitMix64::new(seed);
        let values: Vec<f64> = (0..mask.len()).map(|_| rng.next_f64()).collect();
        let roi = RoiIntensities::new(values.clone(), mask.members().to_vec()).unwrap();
        let counts = subregion_counts(&tess, &roi, threshold).unwrap();
        let whole = hypo_load(&values, threshold).unwrap();
        let hypo_sum: usize = counts.iter().map(|&(h, _)| h).sum();
        let total_sum: usize = counts.iter().map(|&(_, t)| t).sum();
        prop_assert_eq!(hypo_sum, whole.hypo_count);
        prop_assert_eq!(total_sum, whole.total);
    }

    #[test]
    fn tau_symmetry_range_and_extremes(
        ids in proptest::collection::vec(0u32..1000, 2..30).prop_map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        }).prop_filter("need at least 2 distinct", |v| v.len() >= 2),
        seed in any::<u64>(),
    ) {
        let mut rng = hypoquant_core::rng::SplitMix64::new(seed);
        let order = hypoquant_core::rng::shuffled_indices(ids.len(), &mut rng);
        let shuffled: Vec<u32> = order.iter().map(|&i| ids[i]).collect();
        let reversed: Vec<u32> = shuffled.iter().rev().copied().collect();

        prop_assert_eq!(kendall_tau(&ids, &ids).unwrap().tau, 1.0);
        prop_assert_eq!(kendall_tau(&shuffled, &reversed).unwrap().tau, -1.0);
        let ab = kendall_tau(&ids, &shuffled).unwrap();
        let ba = kendall_tau(&shuffled, &ids).unwrap();
        prop_assert_eq!(ab.tau, ba.tau);
        prop_assert!((-1.0..=1.0).contains(&ab.tau));
    }

    #[test]
    fn accuracy_is_invariant_under_id_relabeling(
        labels in proptest::collection::vec(0u8..3, 3..30),
        predicted_shift in 0usize..3,
        offset in 1000usize..2000,
    ) {
        let cluster_of = |b: u8| match b { 0 => Cluster::Light, 1 => Cluster::Mid, _ => Cluster::Dark };
        // Ensure every cluster that appears in truth also appears in the
        // prediction by shifting labels cyclically only when all three exist.
        let truth_pairs: Vec<(String, Cluster)> = labels
            .iter()
            .enumerate()
            .map(|(i, &b)| (format!("s{i}"), cluster_of(b)))
            .collect();
        let has_all = [0u8, 1, 2].iter().all(|c| labels.contains(c));
        let shift = if has_all { predicted_shift as u8 } else { 0 };
        let predicted_pairs: Vec<(String, Cluster)> = labels
            .iter()
            .enumerate()
            .map(|(i, &b)| (format!("s{i}"), cluster_of((b + shift) % 3)))
            .collect();

        let truth = Clustering::from_pairs(truth_pairs.clone()).unwrap();
        let predicted = Clustering::from_pairs(predicted_pairs.clone()).unwrap();
        let base = accuracy(&predicted, &truth).unwrap();

        // Rename every id through a bijection; nothing changes.
        let rename = |pairs: &[(String, Cluster)]| {
            Clustering::from_pairs(pairs.iter().enumerate().map(|(i, (_, c))| {
                (format!("renamed{}", offset + i), *c)
            }))
            .unwrap()
        };
        let renamed = accuracy(&rename(&predicted_pairs), &rename(&truth_pairs)).unwrap();
        prop_assert_eq!(base.accuracy, renamed.accuracy);
        prop_assert_eq!(base.per_cluster.len(), renamed.per_cluster.len());
    }

    #[test]
    fn consistent_ranking_scores_full_accuracy(
        sizes in (1usize..6, 1usize..6, 1usize..6),
    ) {
        let (light, mid, dark) = sizes;
        let ids: Vec<String> = (0..light + mid + dark).map(|i| format!("s{i}")).collect();
        let ranking = Ranking::new(ids).unwrap();
        let size_list = [
            (Cluster::Light, light),
            (Cluster::Mid, mid),
            (Cluster::Dark, dark),
        ];
        let clustering = rank_to_clusters(&ranking, &size_list).unwrap();
        let report = accuracy(&clustering, &clustering).unwrap();
        prop_assert_eq!(report.accuracy, 1.0);
    }

    #[test]
    fn self_correlation_matrix_is_symmetric_with_unit_diagonal(
        columns in proptest::collection::vec(
            proptest::collection::vec(-50.0f64..50.0, 5),
            2..5,
        ),
    ) {
        let features: Vec<hypoquant_core::Feature> = columns
            .iter()
            .enumerate()
            .map(|(i, c)| hypoquant_core::Feature::scalar(format!("f{i}"), c))
            .collect();
        let m = hypoquant_core::stats::correlation_matrix(&features, &features).unwrap();
        for (i, row) in m.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                prop_assert_eq!(v, m.values[j][i], "symmetry at ({}, {})", i, j);
                if i == j {
                    if let Some(tau) = v {
                        prop_assert_eq!(tau, 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn select_components_is_monotone_in_fraction(
        spectrum in proptest::collection::vec(0.0f64..100.0, 1..20)
            .prop_map(|mut v| { v.sort_by(|a, b| b.total_cmp(a)); v })
            .prop_filter("needs variance", |v| v.iter().sum::<f64>() > 0.0),
        f1 in 0.01f64..1.0,
        f2 in 0.01f64..1.0,
    ) {
        let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
        let a = select_components(&spectrum, lo).unwrap();
        let b = select_components(&spectrum, hi).unwrap();
        prop_assert!(a <= b);
        let nonzero = spectrum.iter().filter(|&&v| v > 0.0).count();
        prop_assert_eq!(select_components(&spectrum, 1.0).unwrap(), nonzero.max(1));
    }
}
