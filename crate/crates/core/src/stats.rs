//! Rank statistics: Kendall's tau over query rankings, feature correlation
//! matrices, and agreement between a ranking and a ground-truth clustering.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Darkness cluster labels, from least to most iron-loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cluster {
    Light,
    Mid,
    Dark,
}

impl Cluster {
    pub fn as_str(self) -> &'static str {
        match self {
            Cluster::Light => "light",
            Cluster::Mid => "mid",
            Cluster::Dark => "dark",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "light" => Some(Cluster::Light),
            "mid" => Some(Cluster::Mid),
            "dark" => Some(Cluster::Dark),
            _ => None,
        }
    }
}

/// Per-cluster subject counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClusterCount {
    pub light: usize,
    pub mid: usize,
    pub dark: usize,
}

impl ClusterCount {
    pub fn tally(labels: &[Cluster]) -> Self {
        let mut count = ClusterCount::default();
        for &label in labels {
            match label {
                Cluster::Light => count.light += 1,
                Cluster::Mid => count.mid += 1,
                Cluster::Dark => count.dark += 1,
            }
        }
        count
    }

    pub fn of(&self, cluster: Cluster) -> usize {
        match cluster {
            Cluster::Light => self.light,
            Cluster::Mid => self.mid,
            Cluster::Dark => self.dark,
        }
    }

    pub fn total(&self) -> usize {
        self.light + self.mid + self.dark
    }

    /// Sizes in light, mid, dark order, skipping absent clusters. A dataset
    /// with no mid subjects yields the two-cluster form.
    pub fn ordered_sizes(&self) -> Vec<(Cluster, usize)> {
        [
            (Cluster::Light, self.light),
            (Cluster::Mid, self.mid),
            (Cluster::Dark, self.dark),
        ]
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .collect()
    }
}

/// Subject ids ordered light to dark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    ordered_ids: Vec<String>,
}

impl Ranking {
    pub fn new(ordered_ids: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for id in &ordered_ids {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(Self { ordered_ids })
    }

    pub fn ids(&self) -> &[String] {
        &self.ordered_ids
    }

    pub fn len(&self) -> usize {
        self.ordered_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered_ids.is_empty()
    }
}

/// Assignment of every subject to a cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    assignment: BTreeMap<String, Cluster>,
}

impl Clustering {
    pub fn new(assignment: BTreeMap<String, Cluster>) -> Self {
        Self { assignment }
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Cluster)>,
        S: Into<String>,
    {
        let mut assignment = BTreeMap::new();
        for (id, cluster) in pairs {
            let id = id.into();
            if assignment.insert(id.clone(), cluster).is_some() {
                return Err(Error::DuplicateId(id));
            }
        }
        Ok(Self { assignment })
    }

    pub fn get(&self, id: &str) -> Option<Cluster> {
        self.assignment.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, Cluster)> {
        self.assignment.iter().map(|(id, &c)| (id, c))
    }

    pub fn sizes(&self) -> ClusterCount {
        let labels: Vec<Cluster> = self.assignment.values().copied().collect();
        ClusterCount::tally(&labels)
    }

    /// Ids belonging to one cluster, in id order.
    pub fn members_of(&self, cluster: Cluster) -> Vec<&String> {
        self.assignment
            .iter()
            .filter(|&(_, &c)| c == cluster)
            .map(|(id, _)| id)
            .collect()
    }
}

/// Kendall rank correlation between two total orders of the same items.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauResult {
    /// Concordant pair count (P).
    pub concordant: u64,
    /// Discordant pair count (Q).
    pub discordant: u64,
    pub tau: f64,
}

/// Computes tau by aligning ranking B to ranking A's order and counting, for
/// each entry of the aligned row, the later entries ranked higher
/// (concordant) and lower (discordant): tau = (P - Q) / (N(N-1)/2).
pub fn kendall_tau<T: Ord>(rank_a: &[T], rank_b: &[T]) -> Result<TauResult> {
    if rank_a.len() != rank_b.len() {
        return Err(Error::IdSetMismatch);
    }
    let n = rank_a.len();
    if n < 2 {
        return Err(Error::TooFewSubjects { needed: 2, got: n });
    }
    let mut position_in_b = BTreeMap::new();
    for (pos, id) in rank_b.iter().enumerate() {
        if position_in_b.insert(id, pos).is_some() {
            return Err(Error::IdSetMismatch);
        }
    }
    let mut aligned = Vec::with_capacity(n);
    for id in rank_a {
        match position_in_b.get(&id) {
            Some(&pos) => aligned.push(pos),
            None => return Err(Error::IdSetMismatch),
        }
    }
    let mut concordant = 0u64;
    let mut discordant = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if aligned[j] > aligned[i] {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(TauResult {
        concordant,
        discordant,
        tau: (concordant as f64 - discordant as f64) / pairs,
    })
}

/// For every query subject, the other subjects ordered by ascending Euclidean
/// feature distance to the query (dataset order on ties). Returned as index
/// lists into the input slice.
pub fn feature_rankings(values: &[Vec<f64>]) -> Result<Vec<Vec<usize>>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooFewSubjects { needed: 2, got: n });
    }
    let dim = values[0].len();
    for v in values {
        if v.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let mut rankings = Vec::with_capacity(n);
    for query in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&i| i != query).collect();
        let dist = |i: usize| -> f64 {
            let mut sum = 0.0;
            for (a, b) in values[i].iter().zip(&values[query]) {
                let d = a - b;
                sum += d * d;
            }
            sum
        };
        others.sort_by(|&a, &b| dist(a).total_cmp(&dist(b)));
        rankings.push(others);
    }
    Ok(rankings)
}

/// A named feature column: one descriptor vector per subject, in dataset
/// order. Scalar features are one-dimensional vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub label: String,
    pub values: Vec<Vec<f64>>,
}

impl Feature {
    pub fn scalar<S: Into<String>>(label: S, values: &[f64]) -> Self {
        Self {
            label: label.into(),
            values: values.iter().map(|&v| alloc::vec![v]).collect(),
        }
    }

    fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Matrix of query-averaged Kendall correlations between two feature sets.
///
/// `None` marks a flagged entry: at least one side is constant across all
/// subjects, so its rankings carry no information beyond the tie-break.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

/// Entry (i, j) is the mean over all query subjects of the Kendall tau
/// between the retrieval rankings induced by feature i and feature j.
pub fn correlation_matrix(set_a: &[Feature], set_b: &[Feature]) -> Result<CorrMatrix> {
    if set_a.is_empty() || set_b.is_empty() {
        return Err(Error::Empty("feature set"));
    }
    let n = set_a[0].values.len();
    if n < 3 {
        return Err(Error::TooFewSubjects { needed: 3, got: n });
    }
    for f in set_a.iter().chain(set_b) {
        if f.values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: f.values.len(),
            });
        }
    }
    let rankings_a: Vec<Option<Vec<Vec<usize>>>> = set_a
        .iter()
        .map(|f| {
            if f.is_constant() {
                Ok(None)
            } else {
                feature_rankings(&f.values).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let rankings_b: Vec<Option<Vec<Vec<usize>>>> = set_b
        .iter()
        .map(|f| {
            if f.is_constant() {
                Ok(None)
            } else {
                feature_rankings(&f.values).map(Some)
            }
        })
        .collect::<Result<_>>()?;

    let mut values = Vec::with_capacity(set_a.len());
    for ra in &rankings_a {
        let mut row = Vec::with_capacity(set_b.len());
        for rb in &rankings_b {
            let entry = match (ra, rb) {
                (Some(ra), Some(rb)) => {
                    let mut sum = 0.0;
                    for (qa, qb) in ra.iter().zip(rb) {
                        sum += kendall_tau(qa, qb)?.tau;
                    }
                    Some(sum / ra.len() as f64)
                }
                _ => None,
            };
            row.push(entry);
        }
        values.push(row);
    }
    Ok(CorrMatrix {
        row_labels: set_a.iter().map(|f| f.label.clone()).collect(),
        col_labels: set_b.iter().map(|f| f.label.clone()).collect(),
        values,
    })
}

/// Cuts a light-to-dark ranking into clusters of the given sizes: the top of
/// the ranking becomes light, the bottom dark.
pub fn rank_to_clusters(ranking: &Ranking, sizes: &[(Cluster, usize)]) -> Result<Clustering> {
    let total: usize = sizes.iter().map(|&(_, n)| n).sum();
    if total != ranking.len() {
        return Err(Error::ClusterSizeMismatch {
            expected: ranking.len(),
            got: total,
        });
    }
    let mut assignment = BTreeMap::new();
    let mut ids = ranking.ids().iter();
    for &(cluster, size) in sizes {
        for _ in 0..size {
            let id = ids.next().expect("sizes sum to ranking length");
            assignment.insert(id.clone(), cluster);
        }
    }
    Ok(Clustering::new(assignment))
}

/// Agreement between a predicted clustering and the ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    /// Per cluster: (cluster, common count, ground-truth size), in light,
    /// mid, dark order over the clusters the ground truth uses.
    pub per_cluster: Vec<(Cluster, usize, usize)>,
    /// Mean over clusters of common/size.
    pub accuracy: f64,
}

/// Counts, for every ground-truth cluster, the subjects the prediction
/// placed in the same cluster; accuracy is the mean of the per-cluster
/// ratios.
pub fn accuracy(predicted: &Clustering, truth: &Clustering) -> Result<AccuracyReport> {
    if truth.is_empty() {
        return Err(Error::Empty("ground-truth clustering"));
    }
    if predicted.len() != truth.len() {
        return Err(Error::ClusterMismatch);
    }
    let truth_sizes = truth.sizes();
    let predicted_sizes = predicted.sizes();
    for cluster in [Cluster::Light, Cluster::Mid, Cluster::Dark] {
        if (truth_sizes.of(cluster) == 0) != (predicted_sizes.of(cluster) == 0) {
            return Err(Error::ClusterMismatch);
        }
    }
    let mut per_cluster = Vec::new();
    let mut ratio_sum = 0.0;
    for (cluster, size) in truth_sizes.ordered_sizes() {
        let mut common = 0usize;
        for id in truth.members_of(cluster) {
            match predicted.get(id) {
                Some(c) if c == cluster => common += 1,
                Some(_) => {}
                None => return Err(Error::ClusterMismatch),
            }
        }
        ratio_sum += common as f64 / size as f64;
        per_cluster.push((cluster, common, size));
    }
    Ok(AccuracyReport {
        accuracy: ratio_sum / per_cluster.len() as f64,
        per_cluster,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn ranking(ids: &[&str]) -> Ranking {
        Ranking::new(ids.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn tau_of_identical_and_reversed_rankings() {
        let ids = [1, 2, 3, 4, 5];
        let rev: Vec<i32> = ids.iter().rev().copied().collect();
        assert_eq!(kendall_tau(&ids, &ids).unwrap().tau, 1.0);
        assert_eq!(kendall_tau(&ids, &rev).unwrap().tau, -1.0);
    }

    #[test]
    fn tau_worked_example() {
        // Aligned B-row [3,4,1,2,5,7,8,6] against A = identity gives
        // P = 22, Q = 6, tau = 16/28.
        let a = [1u32, 2, 3, 4, 5, 6, 7, 8];
        // Ranking B as an ordered list: item with B-rank 1 first.
        let b = [3u32, 4, 1, 2, 5, 8, 6, 7];
        let result = kendall_tau(&a, &b).unwrap();
        assert_eq!(result.concordant, 22);
        assert_eq!(result.discordant, 6);
        assert_eq!(result.tau, 16.0 / 28.0);
    }

    #[test]
    fn tau_rejects_mismatched_id_sets() {
        assert_eq!(
            kendall_tau(&[1, 2, 3], &[1, 2, 4]),
            Err(Error::IdSetMismatch)
        );
        assert_eq!(kendall_tau(&[1, 2], &[1, 2, 3]), Err(Error::IdSetMismatch));
    }

    #[test]
    fn feature_rankings_scalar_example() {
        let values = vec![vec![0.0], vec![1.0], vec![3.0]];
        let rankings = feature_rankings(&values).unwrap();
        assert_eq!(rankings[0], vec![1, 2]);
        assert_eq!(rankings[1], vec![0, 2]);
        assert_eq!(rankings[2], vec![1, 0]);
    }

    #[test]
    fn feature_rankings_tie_break_uses_dataset_order() {
        // Subjects 1 and 2 are equidistant from subject 0.
        let values = vec![vec![0.0], vec![1.0], vec![-1.0]];
        let rankings = feature_rankings(&values).unwrap();
        assert_eq!(rankings[0], vec![1, 2]);
    }

    #[test]
    fn feature_rankings_identical_features_fall_back_to_dataset_order() {
        let values = vec![vec![5.0]; 4];
        let rankings = feature_rankings(&values).unwrap();
        assert_eq!(rankings[2], vec![0, 1, 3]);
    }

    #[test]
    fn correlation_of_feature_with_itself_is_one() {
        let features = [Feature::scalar("f", &[0.3, 1.7, -2.0, 0.9])];
        let m = correlation_matrix(&features, &features).unwrap();
        assert_eq!(m.values[0][0], Some(1.0));
    }

    #[test]
    fn correlation_with_negation_is_one_under_distance_ranking() {
        // Negation preserves pairwise distances, so retrieval rankings are
        // identical and the correlation is +1.
        let f = Feature::scalar("f", &[0.3, 1.7, -2.0, 0.9]);
        let neg = Feature::scalar("neg", &[-0.3, -1.7, 2.0, -0.9]);
        let m = correlation_matrix(&[f], &[neg]).unwrap();
        assert_eq!(m.values[0][0], Some(1.0));
    }

    #[test]
    fn independent_random_features_have_weak_correlation() {
        // Monte-Carlo null check: for 20 subjects, two unrelated features
        // should land well inside |tau| < 0.35.
        for seed in [1u64, 2, 3, 4, 5] {
            let mut rng = crate::rng::SplitMix64::new(seed);
            let a: Vec<f64> = (0..20).map(|_| rng.next_f64()).collect();
            let b: Vec<f64> = (0..20).map(|_| rng.next_f64()).collect();
            let m = correlation_matrix(&[Feature::scalar("a", &a)], &[Feature::scalar("b", &b)])
                .unwrap();
            let tau = m.values[0][0].unwrap();
            assert!(tau.abs() < 0.35, "seed {seed}: null tau {tau}");
        }
    }

    #[test]
    fn correlation_flags_constant_features() {
        let f = Feature::scalar("f", &[1.0, 2.0, 3.0]);
        let constant = Feature::scalar("c", &[7.0, 7.0, 7.0]);
        let m = correlation_matrix(&[f.clone(), constant.clone()], &[f, constant]).unwrap();
        assert_eq!(m.values[0][0], Some(1.0));
        assert_eq!(m.values[0][1], None);
        assert_eq!(m.values[1][0], None);
        assert_eq!(m.values[1][1], None);
    }

    #[test]
    fn rank_to_clusters_cuts_in_order() {
        let r = ranking(&["a", "b", "c"]);
        let sizes = [(Cluster::Light, 1), (Cluster::Mid, 1), (Cluster::Dark, 1)];
        let clustering = rank_to_clusters(&r, &sizes).unwrap();
        assert_eq!(clustering.get("a"), Some(Cluster::Light));
        assert_eq!(clustering.get("b"), Some(Cluster::Mid));
        assert_eq!(clustering.get("c"), Some(Cluster::Dark));
    }

    #[test]
    fn rank_to_clusters_handles_dataset_scale_sizes() {
        let ids: Vec<String> = (1..=37).map(|i| alloc::format!("s{i}")).collect();
        let r = Ranking::new(ids).unwrap();
        let sizes = [
            (Cluster::Light, 13),
            (Cluster::Mid, 13),
            (Cluster::Dark, 11),
        ];
        let clustering = rank_to_clusters(&r, &sizes).unwrap();
        let count = clustering.sizes();
        assert_eq!((count.light, count.mid, count.dark), (13, 13, 11));
    }

    #[test]
    fn rank_to_clusters_two_cluster_mode() {
        let ids: Vec<String> = (1..=20).map(|i| alloc::format!("g{i}")).collect();
        let r = Ranking::new(ids).unwrap();
        let sizes = [(Cluster::Light, 13), (Cluster::Dark, 7)];
        let clustering = rank_to_clusters(&r, &sizes).unwrap();
        let count = clustering.sizes();
        assert_eq!((count.light, count.mid, count.dark), (13, 0, 7));
    }

    #[test]
    fn rank_to_clusters_rejects_bad_sizes() {
        let r = ranking(&["a", "b", "c"]);
        assert!(matches!(
            rank_to_clusters(&r, &[(Cluster::Light, 1), (Cluster::Dark, 1)]),
            Err(Error::ClusterSizeMismatch { .. })
        ));
    }

    #[test]
    fn accuracy_perfect_and_disjoint() {
        let truth = Clustering::from_pairs([
            ("a", Cluster::Light),
            ("b", Cluster::Mid),
            ("c", Cluster::Dark),
        ])
        .unwrap();
        let report = accuracy(&truth, &truth).unwrap();
        assert_eq!(report.accuracy, 1.0);

        let swapped = Clustering::from_pairs([
            ("a", Cluster::Dark),
            ("b", Cluster::Light),
            ("c", Cluster::Mid),
        ])
        .unwrap();
        let report = accuracy(&swapped, &truth).unwrap();
        assert_eq!(report.accuracy, 0.0);
    }

    #[test]
    fn accuracy_rejects_vocabulary_mismatch() {
        let truth = Clustering::from_pairs([("a", Cluster::Light), ("b", Cluster::Dark)]).unwrap();
        let two_of_three =
            Clustering::from_pairs([("a", Cluster::Light), ("b", Cluster::Mid)]).unwrap();
        assert_eq!(accuracy(&two_of_three, &truth), Err(Error::ClusterMismatch));
    }
}
